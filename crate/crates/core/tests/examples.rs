//! Worked examples across modules, with frozen expected values.

use std::collections::BTreeMap;

use num_complex::Complex64;
use twinefold::alcove::{det_diff_conj, fold_to_alcove, stabilizer_datum, AlcoveNode};
use twinefold::cli::run;
use twinefold::folding::{fold_named, list_automorphisms};
use twinefold::fusion::{
    basis_element, fusion_table, involution, level_data, phi_project, ring_product, trace0,
};
use twinefold::rational::{rat, RatVec};
use twinefold::rootcore::{
    decompose_into_irreducibles, irreducible_character, lattice_quotient, parse_datum, weyl_dimension, weyl_group,
    FiniteAbelianGroup, Lattice,
};
use twinefold::twining::{adjoint_oracle, random_regular_points, Twining};

fn half(v: &[i64]) -> RatVec {
    RatVec(v.iter().map(|&x| rat(x, 2)).collect())
}

#[test]
fn f4_roots_and_weyl_group() {
    let f4 = parse_datum("F4").unwrap();
    assert_eq!(f4.positive_roots().len(), 24);
    assert_eq!(f4.all_roots().len(), 48);
    assert_eq!(f4.norm2(f4.highest_root()), rat(2, 1));
    assert_eq!(weyl_group(&f4).unwrap().len(), 1152);
    assert_eq!(weyl_dimension(&f4, &[0, 0, 0, 0]).unwrap(), 1);
}

#[test]
fn classical_characters_and_tensor_products() {
    let a2 = parse_datum("A2").unwrap();
    let adj = irreducible_character(&a2, &[1, 1]).unwrap();
    assert_eq!(adj.coefficient(&[0, 0]), 2);
    assert_eq!(adj.mass(), 8);
    let prod = irreducible_character(&a2, &[1, 0]).unwrap().mul(&irreducible_character(&a2, &[0, 1]).unwrap()).unwrap();
    let parts = decompose_into_irreducibles(&a2, &prod).unwrap();
    assert_eq!(parts, BTreeMap::from([(vec![0, 0], 1), (vec![1, 1], 1)]));

    let a1 = parse_datum("A1").unwrap();
    let sq = irreducible_character(&a1, &[1]).unwrap().mul(&irreducible_character(&a1, &[1]).unwrap()).unwrap();
    assert_eq!(decompose_into_irreducibles(&a1, &sq).unwrap(), BTreeMap::from([(vec![0], 1), (vec![2], 1)]));
}

#[test]
fn a2_root_lattice_has_index_three() {
    let a2 = parse_datum("A2").unwrap();
    let q = Lattice::span(a2.simple_roots(), 2);
    let p = Lattice::span(a2.fundamental_weights(), 2);
    assert_eq!(lattice_quotient(&q, &p).unwrap(), FiniteAbelianGroup::from_cyclic_orders([3]));
}

#[test]
fn automorphism_counts() {
    for (g, n) in [("A2", 2), ("D4", 6), ("B2", 1), ("E6", 2)] {
        assert_eq!(list_automorphisms(&parse_datum(g).unwrap()).len(), n, "{g}");
    }
}

#[test]
fn projections_and_special_roots() {
    let a2 = fold_named("A2", "flip").unwrap();
    assert_eq!(a2.project(&RatVec::from_ints(&[1, 0])).unwrap(), half(&[1, 1]));
    assert_eq!(a2.special_roots().0, RatVec::from_ints(&[2, 2]));
    assert_eq!(a2.folded.label, "A1⊔A1");

    let a5 = fold_named("A5", "flip").unwrap();
    assert_eq!(a5.project(&RatVec::from_ints(&[0, 0, 1, 0, 0])).unwrap(), RatVec::from_ints(&[0, 0, 1, 0, 0]));
    let (long, short) = a5.special_roots();
    assert_eq!(short, *a5.base.highest_root());
    assert_eq!(a5.base.norm2(&long), rat(4, 1));

    let a4 = fold_named("A4", "flip").unwrap();
    assert_eq!(a4.special_roots().0, a4.base.highest_root().scale(&rat(2, 1)));
}

#[test]
fn fixed_intersections_and_fixed_subgroups() {
    for (g, k, factors) in [("A3", "flip", vec![2]), ("D4", "rot", vec![3]), ("A5", "flip", vec![2, 2])] {
        assert_eq!(fold_named(g, k).unwrap().fixed_intersection.invariant_factors, factors, "{g} {k}");
    }
    for (g, label, pi1) in [("A4", "B2", vec![2]), ("E6", "F4", vec![]), ("A3", "C2", vec![])] {
        let (l, p) = fold_named(g, "flip").unwrap().fixed_subgroup_data().unwrap();
        assert_eq!((l.as_str(), p.invariant_factors), (label, pi1), "{g}");
    }
}

#[test]
fn alcove_points() {
    let c = fold_named("A2", "flip").unwrap();
    let zero = RatVec::zeros(2);
    let s = stabilizer_datum(&c, &zero).unwrap();
    assert_eq!(s.surviving_nodes, vec![AlcoveNode::Simple(0)]);
    assert_eq!(det_diff_conj(&c, &zero).unwrap(), 0.0);
    let mid = RatVec(vec![rat(1, 8), rat(1, 8)]);
    assert!((det_diff_conj(&c, &mid).unwrap() - 8.0).abs() < 1e-12);

    let (x, g) = fold_to_alcove(&c, &mid).unwrap();
    assert_eq!(x, mid);
    assert!(g.is_identity());
    let shifted = RatVec(vec![rat(1, 8) + rat(1, 2), rat(1, 8) + rat(1, 2)]);
    let (x, g) = fold_to_alcove(&c, &shifted).unwrap();
    assert_eq!(x, mid);
    assert!(g.linear.is_identity());
    assert_eq!(g.translation, half(&[-1, -1]));
}

#[test]
fn twining_characters_at_the_identity() {
    for (g, k, expect) in [("A2", "flip", 2.0), ("A3", "flip", 5.0), ("D4", "rot", 7.0)] {
        let c = fold_named(g, k).unwrap();
        let theta = c.base.integral_labels(c.base.highest_root()).unwrap();
        let chi = Twining::new(&c).unwrap().character(&theta).unwrap();
        assert_eq!(chi.poly.mass() as f64, expect, "{g} {k}");
        let e = adjoint_oracle(&c, &RatVec::zeros(c.base.rank())).unwrap();
        assert!((e - Complex64::new(expect, 0.0)).norm() < 1e-12, "{g} {k}: {e}");
    }
}

#[test]
fn e6_jantzen_ratio_matches_polynomial() {
    let c = fold_named("E6", "flip").unwrap();
    let tw = Twining::new(&c).unwrap();
    let theta = c.base.integral_labels(c.base.highest_root()).unwrap();
    let chi = tw.character(&theta).unwrap();
    for xi in random_regular_points(&c, 5, 7) {
        let a = tw.jantzen_eval(&theta, &xi).unwrap();
        let b = tw.evaluate(&chi.poly, &xi).unwrap();
        assert!((a - b).norm() <= 1e-9 * b.norm().max(1.0), "{xi}: {a} vs {b}");
        assert!((tw.jantzen_eval(&[0; 6], &xi).unwrap() - 1.0).norm() < 1e-12);
    }
}

#[test]
fn orbit_ring_products() {
    let c = fold_named("A2", "flip").unwrap();
    let tw = Twining::new(&c).unwrap();
    let w = basis_element(&[1]);
    let sq = ring_product(&tw, &w, &w).unwrap();
    assert_eq!(sq, BTreeMap::from([(vec![0], 1), (vec![2], 1)]));
    assert_eq!(trace0(&sq), 1);
    assert_eq!(involution(&tw, &w), w);

    let e6 = fold_named("E6", "flip").unwrap();
    let tw = Twining::new(&e6).unwrap();
    let theta = e6.base.integral_labels(e6.base.highest_root()).unwrap();
    let ls = e6.orbit_labels(&theta).unwrap();
    let sq = ring_product(&tw, &basis_element(&ls), &basis_element(&ls)).unwrap();
    assert_eq!(trace0(&sq), 1);
}

#[test]
fn level_data_and_phi() {
    let c = fold_named("A2", "flip").unwrap();
    let l = level_data(&c, 1).unwrap();
    assert_eq!((l.dual_coxeter, l.rescale.clone()), (2, rat(4, 1)));
    assert_eq!(l.level_weights, vec![vec![0], vec![1]]);
    assert_eq!(phi_project(&c, &l, &[1]).unwrap(), Some((1, vec![1])));
    assert_eq!(phi_project(&c, &l, &[2]).unwrap(), None);
    assert_eq!(phi_project(&c, &l, &[3]).unwrap(), Some((-1, vec![1])));
    assert_eq!(level_data(&fold_named("E6", "flip").unwrap(), 1).unwrap().dual_coxeter, 9);
}

#[test]
fn small_fusion_rings() {
    let a2 = fold_named("A2", "flip").unwrap();
    let t = fusion_table(&a2, 1).unwrap();
    assert_eq!(t.get(&[1], &[1], &[0]), Some(1));
    assert_eq!(t.get(&[1], &[1], &[1]), Some(0));
    let t = fusion_table(&a2, 2).unwrap();
    assert_eq!(t.get(&[1], &[1], &[2]), Some(1));

    let su2 = fusion_table(&fold_named("A1", "id").unwrap(), 2).unwrap();
    assert_eq!(su2.get(&[1], &[1], &[2]), Some(1));
    assert_eq!(su2.get(&[2], &[2], &[2]), Some(0));

    let g2 = fusion_table(&fold_named("D4", "rot").unwrap(), 1).unwrap();
    assert_eq!(g2.size(), 2);
    let tau = g2.level.level_weights.iter().find(|w| w.iter().any(|&x| x != 0)).unwrap().clone();
    let zero = vec![0; tau.len()];
    assert_eq!(g2.get(&tau, &tau, &tau), Some(1));
    assert_eq!(g2.get(&tau, &tau, &zero), Some(1));
}

#[test]
fn cli_examples() {
    let out = run(["twinefold", "fusion", "A2", "flip", "--level", "1"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["weights"].as_array().unwrap().len(), 2);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);

    let out = run(["twinefold", "verify", "--suite", "tables"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["failed"], 0);

    let out = run(["twinefold", "--format", "csv", "fold", "A3", "flip"]);
    assert!(out.stdout.starts_with("field,value\n"));
    assert!(out.stdout.contains("orbit.type,B2\n"));
}
