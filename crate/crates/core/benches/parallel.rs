use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twinefold::folding::fold_named;
use twinefold::fusion::{fusion_table_with, level_data, VerlindeData, DEFAULT_TABLE_BUDGET};
use twinefold::par::Parallelism;
use twinefold::twining::Twining;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn verlinde_values(c: &mut Criterion) {
    let mut group = c.benchmark_group("verlinde_values");
    group.sample_size(10);
    for (g, k, level) in [("A3", "flip", 3), ("D4", "rot", 3)] {
        let ctx = fold_named(g, k).unwrap();
        let tw = Twining::new(&ctx).unwrap();
        let data = level_data(&ctx, level).unwrap();
        for (name, par) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{g}-{k}-k{level}")), &par, |b, &par| {
                b.iter(|| VerlindeData::new(&tw, &data, par).unwrap())
            });
        }
    }
    group.finish();
}

fn fusion_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("fusion_table");
    group.sample_size(10);
    let ctx = fold_named("A2", "flip").unwrap();
    for level in [3, 5] {
        for (name, par) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("A2-flip-k{level}")), &par, |b, &par| {
                b.iter(|| fusion_table_with(&ctx, level, DEFAULT_TABLE_BUDGET, par).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, verlinde_values, fusion_tables);
criterion_main!(benches);
