//! Documents emitted by the command-line interface and their rendering.

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::rational::{RatVec, Rational};
use crate::rootcore::FiniteAbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational(r: &Rational) -> String {
    r.to_string()
}

pub fn vector(v: &RatVec) -> Vec<String> {
    v.iter().map(rational).collect()
}

pub fn vectors(vs: &[RatVec]) -> Vec<Vec<String>> {
    vs.iter().map(vector).collect()
}

pub fn complex(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
pub struct GroupView {
    pub invariant_factors: Vec<u64>,
    pub order: u64,
}

impl From<&FiniteAbelianGroup> for GroupView {
    fn from(g: &FiniteAbelianGroup) -> Self {
        GroupView { invariant_factors: g.invariant_factors.clone(), order: g.order() }
    }
}

/// A point of `𝔱^κ` in two coordinate systems.
#[derive(Serialize)]
pub struct PointView {
    pub coroot_coordinates: Vec<String>,
    pub root_coordinates: Vec<String>,
}

#[derive(Serialize)]
pub struct FoldedView {
    #[serde(rename = "type")]
    pub label: String,
    pub root_count: usize,
    pub simple_roots: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_simple_roots: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct OrbitView {
    #[serde(rename = "type")]
    pub label: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub highest_root: Vec<String>,
    pub highest_short_root: Vec<String>,
    pub half_sum: Vec<String>,
    pub weyl_order: u128,
}

#[derive(Serialize)]
pub struct IndexView {
    pub quotient: String,
    pub group: GroupView,
}

#[derive(Serialize)]
pub struct CheckView {
    pub statement: String,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct FixedSubgroupView {
    #[serde(rename = "type")]
    pub label: String,
    pub pi1: GroupView,
}

#[derive(Serialize)]
pub struct FoldDoc {
    pub group: String,
    pub automorphism: String,
    pub permutation: Vec<usize>,
    pub order: usize,
    pub case: String,
    pub fixed_dim: usize,
    pub moving_dim: usize,
    pub folded: FoldedView,
    pub orbit: OrbitView,
    pub fixed_intersection: GroupView,
    pub outer_weyl_order: u128,
    pub fixed_subgroup: FixedSubgroupView,
    pub lattice_indices: Vec<IndexView>,
    pub lattice_checks: Vec<CheckView>,
}

#[derive(Serialize)]
pub struct FoldedPointView {
    pub input: PointView,
    pub image: PointView,
    pub linear_word: Vec<usize>,
    pub translation: Vec<String>,
    pub sign: i64,
}

#[derive(Serialize)]
pub struct AlcoveDoc {
    pub group: String,
    pub automorphism: String,
    pub walls: Vec<Vec<String>>,
    pub ceiling: Vec<String>,
    pub vertices: Vec<PointView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fold: Option<FoldedPointView>,
}

#[derive(Serialize)]
pub struct StabilizerDoc {
    pub group: String,
    pub automorphism: String,
    pub point: PointView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub folded_from: Option<PointView>,
    /// `0` is the lowest-root node, `1..=r` the orbit simple roots.
    pub surviving_nodes: Vec<usize>,
    pub subsystem_type: String,
    pub subsystem_simple_roots: Vec<Vec<String>>,
    pub subsystem_root_count: usize,
    pub centralizer_type: String,
    pub centralizer_simple_roots: Vec<Vec<String>>,
    pub pi1: GroupView,
    pub pi1_free_rank: usize,
}

#[derive(Serialize)]
pub struct TermView {
    pub orbit_labels: Vec<i64>,
    pub base_labels: Vec<i64>,
    pub multiplicity: i64,
}

#[derive(Serialize)]
pub struct CharDoc {
    pub group: String,
    pub automorphism: String,
    pub base_labels: Vec<i64>,
    pub orbit_labels: Vec<i64>,
    pub highest_weight: Vec<String>,
    pub value_at_identity: i64,
    pub term_count: usize,
    pub terms: Vec<TermView>,
}

#[derive(Serialize)]
pub struct EvalPoint {
    pub point: PointView,
    pub jantzen: [f64; 2],
    pub polynomial: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjoint_oracle: Option<[f64; 2]>,
    pub deviation: f64,
}

#[derive(Serialize)]
pub struct EvalDoc {
    pub group: String,
    pub automorphism: String,
    pub base_labels: Vec<i64>,
    pub orbit_labels: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub points: Vec<EvalPoint>,
}

#[derive(Serialize)]
pub struct LevelWeightView {
    pub index: usize,
    pub orbit_labels: Vec<i64>,
    pub base_labels: Vec<i64>,
}

#[derive(Serialize)]
pub struct FusionEntry {
    pub lambda: usize,
    pub mu: usize,
    pub nu: usize,
    pub coefficient: i64,
}

#[derive(Serialize)]
pub struct FusionDoc {
    pub group: String,
    pub automorphism: String,
    pub level: u32,
    pub dual_coxeter: i64,
    pub rescale: String,
    pub comarks: Vec<i64>,
    pub t_group_order: u64,
    pub weights: Vec<LevelWeightView>,
    pub max_residual: f64,
    /// Nonzero coefficients only, indexed into `weights`.
    pub entries: Vec<FusionEntry>,
}

#[derive(Serialize)]
pub struct ErrorView {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct ErrorDoc {
    pub error: ErrorView,
}

impl From<&Error> for ErrorDoc {
    fn from(e: &Error) -> Self {
        ErrorDoc { error: ErrorView { kind: error_kind(e), message: e.to_string() } }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidType { .. } => "invalid_type",
        Error::NotCrystallographic(_) => "not_crystallographic",
        Error::WeylCapExceeded { .. } => "weyl_cap_exceeded",
        Error::NotDominant(_) => "not_dominant",
        Error::NotIntegral(_) => "not_integral",
        Error::NotInvariant(_) => "not_invariant",
        Error::NotSublattice(_) => "not_sublattice",
        Error::RankMismatch { .. } => "rank_mismatch",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::NotAutomorphism(_) => "not_automorphism",
        Error::UnsupportedFolding(_) => "unsupported_folding",
        Error::LatticeIdentity(_) => "lattice_identity",
        Error::NotFixed(_) => "not_fixed",
        Error::OutsideAlcove(_) => "outside_alcove",
        Error::SingularPoint { .. } => "singular_point",
        Error::LatticeTagMismatch(..) => "lattice_tag_mismatch",
        Error::Normalization { .. } => "normalization",
        Error::RouteDisagreement { .. } => "route_disagreement",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::Parse(_) => "parse",
    }
}

/// Pretty JSON, or a two-column `field,value` CSV of the flattened document.
pub fn render<T: Serialize>(doc: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let value = serde_json::to_value(doc).expect("documents serialize");
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 output")
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Arrays of scalars become one space-separated cell; everything else is
/// expanded with dotted paths.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(xs) => {
            if let Some(cells) = xs.iter().map(scalar).collect::<Option<Vec<_>>>() {
                rows.push((prefix.to_string(), cells.join(" ")));
            } else {
                for (i, x) in xs.iter().enumerate() {
                    flatten(&join(&i.to_string()), x, rows);
                }
            }
        }
        _ => rows.push((prefix.to_string(), scalar(v).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rationals_round_trip() {
        for r in [rat(3, 4), rat(-7, 2), rat(5, 1), rat(0, 1)] {
            assert_eq!(crate::rational::parse_rational(&rational(&r)).unwrap(), r);
        }
        assert_eq!(rational(&rat(6, 3)), "2");
    }

    #[test]
    fn csv_flattens_nested_documents() {
        let doc = GroupView { invariant_factors: vec![2, 2], order: 4 };
        let out = render(&doc, Format::Csv);
        assert_eq!(out, "field,value\ninvariant_factors,2 2\norder,4\n");
    }

    #[test]
    fn error_documents_carry_a_kind() {
        let doc = ErrorDoc::from(&Error::NotFixed("(1, 0)".into()));
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["error"]["kind"], "not_fixed");
    }
}
