//! Self-verification suites run by `twinefold verify`.

use std::collections::BTreeSet;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

use crate::alcove::{fundamental_alcove, stabilizer_datum};
use crate::error::Result;
use crate::folding::{fold_named, FoldingContext};
use crate::fusion::{fusion_table, level_data};
use crate::rational::{rat, to_f64, RatVec};
use crate::rootcore::SimpleType;
use crate::twining::{adjoint_oracle, random_regular_points, Twining};

/// Relative tolerance when comparing complex evaluations.
pub const EVAL_TOLERANCE: f64 = 1e-9;
/// Largest accepted distance of a Verlinde sum from an integer.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Group, automorphism, folded type, orbit type.
pub const FOLDINGS: &[(&str, &str, &str, &str)] = &[
    ("A2", "flip", "A1⊔A1", "A1"),
    ("A3", "flip", "C2", "B2"),
    ("A4", "flip", "BC2", "C2"),
    ("A5", "flip", "C3", "B3"),
    ("A6", "flip", "BC3", "C3"),
    ("D4", "flip", "B3", "C3"),
    ("D4", "rot", "G2", "G2"),
    ("D5", "flip", "B4", "C4"),
    ("D6", "flip", "B5", "C5"),
    ("E6", "flip", "F4", "F4"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Tables,
    Lattices,
    Characters,
    Fusion,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Lattices => "lattices",
            Suite::Characters => "characters",
            Suite::Fusion => "fusion",
            Suite::All => "all",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Tables, Suite::Lattices, Suite::Characters, Suite::Fusion],
            s => vec![s],
        }
    }
}

/// An empty selector means every suite.
pub fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    if s.trim().is_empty() {
        return Ok(Suite::All);
    }
    Suite::from_str(s.trim(), true).map_err(|_| format!("unknown suite {s:?}; expected tables, lattices, characters, fusion or all"))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub check: String,
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suites: Vec<&'static str>,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Options for the numeric suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub points: usize,
}

struct Recorder {
    suite: &'static str,
    out: Vec<CheckRecord>,
}

impl Recorder {
    fn push(&mut self, check: &str, subject: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.out.push(CheckRecord {
            suite: self.suite,
            check: check.to_string(),
            subject: subject.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// Records an error from the computation itself as a failed check.
    fn guard<T>(&mut self, check: &str, subject: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(check, subject, false, e.to_string());
                None
            }
        }
    }
}

pub fn run(suite: Suite, opts: VerifyOptions) -> Report {
    let suites = suite.expand();
    let mut checks = Vec::new();
    for s in &suites {
        let mut rec = Recorder { suite: s.name(), out: Vec::new() };
        match s {
            Suite::Tables => tables(&mut rec),
            Suite::Lattices => lattices(&mut rec),
            Suite::Characters => characters(&mut rec, opts),
            Suite::Fusion => fusion(&mut rec),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.out);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    Report {
        suites: suites.iter().map(|s| s.name()).collect(),
        seed: opts.seed,
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

/// The foldings of [`FOLDINGS`] that build, with their expected types.
fn contexts(rec: &mut Recorder) -> Vec<(String, FoldingContext, &'static str, &'static str)> {
    FOLDINGS
        .iter()
        .filter_map(|&(g, k, f, o)| {
            let subject = format!("{g} {k}");
            let c = rec.guard("folding", &subject, fold_named(g, k))?;
            Some((subject, c, f, o))
        })
        .collect()
}

fn tables(rec: &mut Recorder) {
    for (subject, c, f, o) in &contexts(rec) {
        let (f, o) = (*f, *o);
        let got = format!("{}/{}", c.folded.label, c.orbit.datum.label());
        rec.push("folded and orbit types", subject, c.folded.label == f && c.orbit.datum.label() == o, got);
        let direct: BTreeSet<_> = c.folded.roots.iter().cloned().collect();
        let closure: BTreeSet<_> = c.folded_by_closure().into_iter().collect();
        rec.push("folded roots equal closure of folded simple roots", subject, direct == closure, format!("{} roots", direct.len()));
        rec.push("equal half-sums of positive roots", subject, c.base.weyl_vector() == &c.orbit.half_sum, c.orbit.half_sum.to_string());

        let expect = if c.kappa.order() == 3 { vec![3] } else { vec![2; c.moving_dim] };
        rec.push(
            "T^κ∩T_κ invariant factors",
            subject,
            c.fixed_intersection.invariant_factors == expect,
            c.fixed_intersection.to_string(),
        );
        let classical = o.parse::<SimpleType>().ok().and_then(|t| t.weyl_order());
        rec.push(
            "outer Weyl order is |T^κ∩T_κ|·|W^κ|",
            subject,
            classical == Some(c.orbit_weyl_order)
                && c.outer_weyl_order == c.fixed_intersection.order() as u128 * c.orbit_weyl_order,
            format!("|W^κ| = {}, outer {}", c.orbit_weyl_order, c.outer_weyl_order),
        );
        if let Some(l) = rec.guard("dual Coxeter number", subject, level_data(c, 1)) {
            let textbook = o.parse::<SimpleType>().ok().and_then(|t| t.dual_coxeter());
            rec.push(
                "dual Coxeter number",
                subject,
                l.dual_coxeter == l.dual_coxeter_from_comarks && textbook == Some(l.dual_coxeter as u64),
                format!("h∨ = {}, from comarks {}", l.dual_coxeter, l.dual_coxeter_from_comarks),
            );
        }
    }
}

fn lattices(rec: &mut Recorder) {
    for (subject, c, _, _) in contexts(rec) {
        for check in c.lattices.checks() {
            rec.push(&check.statement, &subject, check.holds, "");
        }
    }
    if let Some(c) = rec.guard("alcove", "A2 flip", fold_named("A2", "flip")) {
        let a = fundamental_alcove(&c);
        let far = a.vertices.iter().find(|v| !v.is_zero()).cloned();
        let ok = a.vertices.len() == 2 && far == Some(RatVec(vec![rat(1, 4), rat(1, 4)]));
        let len = far.map(|v| to_f64(&c.base.norm2(&v)).sqrt()).unwrap_or(f64::NAN);
        rec.push("alcove is a segment of length √2/4", "A2 flip", ok && (len - 2f64.sqrt() / 4.0).abs() < 1e-12, format!("length {len}"));
    }
    for (g, label, pi1) in [("A4", "B2", vec![2]), ("E6", "F4", vec![])] {
        let subject = format!("{g} flip");
        let Some(c) = rec.guard("stabilizer at the origin", &subject, fold_named(g, "flip")) else { continue };
        if let Some(s) = rec.guard("stabilizer at the origin", &subject, stabilizer_datum(&c, &RatVec::zeros(c.base.rank()))) {
            rec.push(
                "stabilizer at the origin",
                &subject,
                s.dual_label == label && s.pi1.invariant_factors == pi1 && s.pi1_free_rank == 0,
                format!("{} with π1 {}", s.dual_label, s.pi1),
            );
        }
    }
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= EVAL_TOLERANCE * b.norm().max(1.0)
}

fn characters(rec: &mut Recorder, opts: VerifyOptions) {
    for (subject, c, _, _) in contexts(rec) {
        let Some(tw) = rec.guard("Jantzen formula", &subject, Twining::new(&c)) else { continue };
        let Some(theta) = rec.guard("Jantzen formula", &subject, c.base.integral_labels(c.base.highest_root())) else { continue };
        let Some(chi) = rec.guard("Jantzen formula", &subject, tw.character(&theta)) else { continue };
        let mut worst: f64 = 0.0;
        let mut failure = None;
        for xi in random_regular_points(&c, opts.points, opts.seed) {
            let values: Result<_> = (|| Ok((tw.jantzen_eval(&theta, &xi)?, tw.evaluate(&chi.poly, &xi)?, adjoint_oracle(&c, &xi)?)))();
            match values {
                Ok((ratio, poly, oracle)) => {
                    worst = worst.max((ratio - poly).norm()).max((oracle - poly).norm());
                    if failure.is_none() && !(close(ratio, poly) && close(oracle, poly)) {
                        failure = Some(format!("at {xi}: ratio {ratio}, polynomial {poly}, oracle {oracle}"));
                    }
                }
                Err(e) => failure = failure.or(Some(e.to_string())),
            }
        }
        let pass = failure.is_none();
        let detail = failure.unwrap_or_else(|| format!("{} points, worst deviation {worst:.1e}", opts.points));
        rec.push("Jantzen ratio, polynomial and adjoint oracle agree", &subject, pass, detail);
    }
    for (g, k) in [("A2", "flip"), ("A3", "flip"), ("A4", "flip"), ("D4", "rot")] {
        let subject = format!("{g} {k}");
        let Some(c) = rec.guard("orthonormality", &subject, fold_named(g, k)) else { continue };
        let Some(tw) = rec.guard("orthonormality", &subject, Twining::new(&c)) else { continue };
        let weights = c.fixed_dominant_weights(3);
        let chars: Result<Vec<_>> = weights.iter().map(|w| tw.character(w).map(|t| t.poly)).collect();
        let Some(chars) = rec.guard("orthonormality", &subject, chars) else { continue };
        let mut bad = None;
        for (i, f) in chars.iter().enumerate() {
            for (j, h) in chars.iter().enumerate() {
                let expect = if i == j { rat(1, 1) } else { rat(0, 1) };
                match tw.inner_product(f, h) {
                    Ok(v) if v == expect => {}
                    Ok(v) => bad = bad.or(Some(format!("⟨{:?}, {:?}⟩ = {v}", weights[i], weights[j]))),
                    Err(e) => bad = bad.or(Some(e.to_string())),
                }
            }
        }
        let n = weights.len();
        rec.push("exact orthonormality", &subject, bad.is_none(), bad.unwrap_or_else(|| format!("{n} characters, {} pairs", n * n)));
    }
}

fn fusion(rec: &mut Recorder) {
    for (g, k, levels) in [("A2", "flip", 1..=3), ("A3", "flip", 1..=2), ("D4", "rot", 1..=2)] {
        let Some(c) = rec.guard("fusion routes", &format!("{g} {k}"), fold_named(g, k)) else { continue };
        for level in levels {
            let subject = format!("{g} {k} level {level}");
            let Some(t) = rec.guard("Verlinde and algebraic routes agree", &subject, fusion_table(&c, level)) else { continue };
            let n = t.size();
            let zero = t.level.level_weights.iter().position(|w| w.iter().all(|&x| x == 0));
            let unit = zero.is_some_and(|z| (0..n).all(|m| (0..n).all(|v| t.coefficients[z][m][v] == i64::from(m == v))));
            rec.push(
                "Verlinde and algebraic routes agree",
                &subject,
                t.max_residual < RESIDUAL_TOLERANCE && unit,
                format!("{} entries, worst residual {:.1e}", n * n * n, t.max_residual),
            );
        }
    }
    let twisted = rec.guard("orbit ring isomorphism", "A2 flip", fold_named("A2", "flip"));
    let plain = rec.guard("orbit ring isomorphism", "A1 id", fold_named("A1", "id"));
    if let (Some(a), Some(b)) = (twisted, plain) {
        for k in 1..=3 {
            let subject = format!("A2 flip level {k}");
            let pair: Result<_> = (|| Ok((fusion_table(&a, k)?, fusion_table(&b, k)?)))();
            if let Some((x, y)) = rec.guard("orbit ring isomorphism", &subject, pair) {
                let same = x.level.level_weights == y.level.level_weights && x.entries() == y.entries();
                rec.push("twisted ring equals the A1 ring", &subject, same, format!("{} weights", x.size()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_selector() {
        assert_eq!(parse_suite("").unwrap(), Suite::All);
        assert_eq!(parse_suite("Tables").unwrap(), Suite::Tables);
        assert!(parse_suite("bogus").is_err());
        assert_eq!(Suite::All.expand().len(), 4);
    }

    #[test]
    fn tables_suite_passes() {
        let r = run(Suite::Tables, VerifyOptions { seed: 1, points: 1 });
        assert!(r.all_pass(), "{:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 6 * FOLDINGS.len());
    }
}
