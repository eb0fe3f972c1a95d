//! Folded and orbit root systems of a diagram automorphism.

pub mod automorphism;
pub mod lattices;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rational::{int, rank, RatMatrix, RatVec, Rational};
use crate::rootcore::{classify, lattice_quotient, weyl_traverse, FiniteAbelianGroup, Lattice, RootDatum};

pub use automorphism::{list_automorphisms, parse_automorphism, DiagramAutomorphism};
pub use lattices::{LatticeCheck, LatticeSuite};

/// Which construction of the orbit system applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldingCase {
    /// `κ = id`: folded and orbit systems are the base system.
    Trivial,
    /// `A_{2n-1}`, `D_{n+1}`, `E6`: the orbit system is dual to the folded one.
    Dual,
    /// `A_{2n}`: the folded system is `BC_n`; the orbit system is dual to its
    /// `B_n` part.
    EvenA { n: usize },
}

/// The image of the root system under `p`, with a labelled simple system.
#[derive(Clone, Debug)]
pub struct FoldedSystem {
    pub label: String,
    /// All folded roots, without repetition, in a stable order.
    pub roots: Vec<RatVec>,
    /// `Π_F`, or the simple roots of the `B_n` part when the system is `BC_n`.
    pub simple_roots: Vec<RatVec>,
    /// Simple roots of the `C_n` part of `BC_n`.
    pub c_simple_roots: Option<Vec<RatVec>>,
}

/// The orbit root system realized in the `κ`-fixed subspace.
#[derive(Clone, Debug)]
pub struct OrbitDatum {
    pub datum: RootDatum,
    /// `Q_O^∨ = Λ_(κ) = p(Λ)`.
    pub coroot_lattice: Lattice,
    /// `P_O = (Λ*)^κ`.
    pub weight_lattice: Lattice,
    pub highest_root: RatVec,
    pub highest_short_root: RatVec,
    pub half_sum: RatVec,
}

/// Everything derived from a pair `(R, κ)`.
#[derive(Clone, Debug)]
pub struct FoldingContext {
    pub base: RootDatum,
    pub kappa: DiagramAutomorphism,
    pub kappa_name: String,
    pub case: FoldingCase,
    /// `p` on simple-root coordinates.
    pub projection: RatMatrix,
    pub fixed_dim: usize,
    pub moving_dim: usize,
    pub folded: FoldedSystem,
    pub orbit: OrbitDatum,
    pub lattices: LatticeSuite,
    /// `T^κ ∩ T_κ ≅ Λ_(κ)/Λ^κ`.
    pub fixed_intersection: FiniteAbelianGroup,
    pub orbit_weyl_order: u128,
    pub outer_weyl_order: u128,
}

fn dual_root(datum: &RootDatum, v: &RatVec) -> RatVec {
    datum.coroot(v)
}

fn dedup(vs: impl IntoIterator<Item = RatVec>) -> Vec<RatVec> {
    let set: BTreeSet<RatVec> = vs.into_iter().collect();
    set.into_iter().collect()
}

fn is_non_reduced(roots: &[RatVec]) -> bool {
    let set: BTreeSet<&RatVec> = roots.iter().collect();
    roots.iter().any(|r| set.contains(&r.scale(&int(2))))
}

/// Builds the full folding package; every lattice identity is verified.
pub fn fold(base: &RootDatum, kappa: &DiagramAutomorphism) -> Result<FoldingContext> {
    if kappa.rank() != base.rank() {
        return Err(Error::DimensionMismatch { expected: base.rank(), got: kappa.rank() });
    }
    DiagramAutomorphism::new(base, kappa.permutation().to_vec())?;
    let label = base.label().to_string();
    let r = base.rank();
    let case = if kappa.is_trivial() {
        FoldingCase::Trivial
    } else if label.starts_with('A') && r.is_multiple_of(2) && kappa.order() == 2 {
        FoldingCase::EvenA { n: r / 2 }
    } else if (label.starts_with('A') || label.starts_with('D') || label == "E6") && base.is_standard_normalized() {
        FoldingCase::Dual
    } else {
        return Err(Error::UnsupportedFolding(format!("{label} with {kappa}")));
    };
    if base.ambient_dim() != r {
        return Err(Error::UnsupportedFolding("base datum must be standard".into()));
    }

    let projection = kappa.averaging_projection();
    let fixed_dim = rank(&(0..r).map(|j| projection.column(j)).collect::<Vec<_>>());
    let orbits = kappa.orbits();
    let proj = |v: &RatVec| projection.mul_vec(v);
    let simple = base.simple_roots();

    let folded_roots = dedup(base.all_roots().iter().map(proj));
    let pf: Vec<RatVec> = orbits.iter().map(|o| proj(&simple[o[0]])).collect();
    let (folded_simple, c_simple) = match case {
        FoldingCase::EvenA { .. } => {
            let mut c = pf.clone();
            let last = c.len() - 1;
            c[last] = c[last].scale(&int(2));
            (pf.clone(), Some(c))
        }
        _ => (pf.clone(), None),
    };
    let folded_label = if case == FoldingCase::Trivial {
        label.clone()
    } else if is_non_reduced(&folded_roots) {
        if fixed_dim == 1 {
            "A1⊔A1".to_string()
        } else {
            format!("BC{fixed_dim}")
        }
    } else {
        let cartan = crate::rootcore::cartan::cartan_from_gram(&RatMatrix::from_fn(pf.len(), pf.len(), |i, j| {
            base.inner(&pf[i], &pf[j])
        }))?;
        classify(&cartan).ok_or_else(|| Error::NotCrystallographic("folded system".into()))?
    };
    let folded = FoldedSystem { label: folded_label, roots: folded_roots, simple_roots: folded_simple, c_simple_roots: c_simple };

    let orbit_simple: Vec<RatVec> = match case {
        FoldingCase::Trivial => simple.to_vec(),
        _ => folded.simple_roots.iter().map(|b| dual_root(base, b)).collect(),
    };
    let tag = if case == FoldingCase::Trivial {
        base.lattice_tag().to_string()
    } else {
        format!("P_O({label},{})", kappa.name(base))
    };
    let orbit_datum = RootDatum::realize(None, tag, base.ambient_gram().clone(), orbit_simple)?;

    let lattices = LatticeSuite::build(base, kappa, &projection, &folded, &orbit_datum, case)?;
    let failures: Vec<String> = lattices.checks().iter().filter(|c| !c.holds).map(|c| c.statement.clone()).collect();
    if !failures.is_empty() {
        return Err(Error::LatticeIdentity(failures.join("; ")));
    }

    let fixed_intersection = lattice_quotient(&lattices.lambda_fixed, &lattices.lambda_orbit)?;
    let orbit_weyl_order = weyl_traverse(&orbit_datum)?.count() as u128;
    let outer_weyl_order = fixed_intersection.order() as u128 * orbit_weyl_order;
    let orbit = OrbitDatum {
        coroot_lattice: lattices.lambda_orbit.clone(),
        weight_lattice: lattices.weights_fixed.clone(),
        highest_root: orbit_datum.highest_root().clone(),
        highest_short_root: orbit_datum.highest_short_root().clone(),
        half_sum: orbit_datum.half_sum_positive(),
        datum: orbit_datum,
    };
    Ok(FoldingContext {
        base: base.clone(),
        kappa_name: kappa.name(base),
        kappa: kappa.clone(),
        case,
        projection,
        fixed_dim,
        moving_dim: r - fixed_dim,
        folded,
        orbit,
        lattices,
        fixed_intersection,
        orbit_weyl_order,
        outer_weyl_order,
    })
}

/// Convenience: build the base datum and resolve the automorphism by name.
pub fn fold_named(group: &str, automorphism: &str) -> Result<FoldingContext> {
    let base = crate::rootcore::parse_datum(group)?;
    let kappa = parse_automorphism(&base, automorphism)?;
    fold(&base, &kappa)
}

impl FoldingContext {
    /// `p(v)` for `v` in simple-root coordinates of the base.
    pub fn project(&self, v: &RatVec) -> Result<RatVec> {
        if v.dim() != self.base.rank() {
            return Err(Error::DimensionMismatch { expected: self.base.rank(), got: v.dim() });
        }
        Ok(self.projection.mul_vec(v))
    }

    pub fn is_fixed(&self, v: &RatVec) -> bool {
        self.projection.mul_vec(v) == *v
    }

    pub fn orbit_datum(&self) -> &RootDatum {
        &self.orbit.datum
    }

    /// `(θ_(κ),l, θ_(κ),s)`.
    pub fn special_roots(&self) -> (RatVec, RatVec) {
        (self.orbit.highest_root.clone(), self.orbit.highest_short_root.clone())
    }

    pub fn fixed_intersection_group(&self) -> &FiniteAbelianGroup {
        &self.fixed_intersection
    }

    /// Root system type of `G^κ` and its fundamental group.
    pub fn fixed_subgroup_data(&self) -> Result<(String, FiniteAbelianGroup)> {
        let pf = &self.folded.simple_roots;
        let cartan = crate::rootcore::cartan::cartan_from_gram(&RatMatrix::from_fn(pf.len(), pf.len(), |i, j| {
            self.base.inner(&pf[i], &pf[j])
        }))?;
        let label = classify(&cartan).ok_or_else(|| Error::NotCrystallographic("fixed subgroup".into()))?;
        let pi1 = lattice_quotient(&self.lattices.q_f_co, &self.lattices.lambda_fixed)?;
        Ok((label, pi1))
    }

    /// The folded root set regenerated by reflection closure of its simple
    /// roots; equal to `folded.roots` as a set.
    pub fn folded_by_closure(&self) -> Vec<RatVec> {
        let mut gens = self.folded.simple_roots.clone();
        if let Some(c) = &self.folded.c_simple_roots {
            gens.extend(c.iter().cloned());
        }
        reflection_closure(&self.base, &gens)
    }

    /// Base weight from fundamental-weight coordinates.
    pub fn base_weight(&self, coords: &[Rational]) -> Result<RatVec> {
        if coords.len() != self.base.rank() {
            return Err(Error::DimensionMismatch { expected: self.base.rank(), got: coords.len() });
        }
        Ok(self.base.weight_from_rational_labels(coords))
    }

    /// Dynkin labels on the orbit datum of a `κ`-fixed base weight that is
    /// dominant for the base.
    pub fn orbit_labels(&self, base_labels: &[i64]) -> Result<Vec<i64>> {
        if base_labels.len() != self.base.rank() {
            return Err(Error::DimensionMismatch { expected: self.base.rank(), got: base_labels.len() });
        }
        if base_labels.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(format!("{base_labels:?}")));
        }
        if (0..base_labels.len()).any(|i| base_labels[self.kappa.apply(i)] != base_labels[i]) {
            return Err(Error::NotFixed(format!("{base_labels:?}")));
        }
        let v = self.base.weight_from_labels(base_labels);
        self.orbit.datum.integral_labels(&v)
    }

    /// Base Dynkin labels of an orbit weight.
    pub fn base_labels(&self, orbit_labels: &[i64]) -> Vec<i64> {
        let v = self.orbit.datum.weight_from_labels(orbit_labels);
        self.base.integral_labels(&v).expect("orbit weights are base weights")
    }

    /// The `κ`-fixed dominant base weights whose base-coordinate height is at
    /// most `h`, as base labels, in lexicographic order.
    pub fn fixed_dominant_weights(&self, h: i64) -> Vec<Vec<i64>> {
        let r = self.base.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; r];
        fn rec(ctx: &FoldingContext, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == cur.len() {
                if (0..cur.len()).all(|j| cur[ctx.kappa.apply(j)] == cur[j]) {
                    out.push(cur.clone());
                }
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                rec(ctx, i + 1, left - x, cur, out);
            }
            cur[i] = 0;
        }
        rec(self, 0, h, &mut cur, &mut out);
        out.sort();
        out
    }
}

/// Closure of a vector set under the reflections it defines.
pub fn reflection_closure(datum: &RootDatum, gens: &[RatVec]) -> Vec<RatVec> {
    let mut set: BTreeSet<RatVec> = gens.iter().flat_map(|g| [g.clone(), -g]).collect();
    loop {
        let current: Vec<RatVec> = set.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                if set.insert(datum.reflect(b, a)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set.into_iter().collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ctx(g: &str, k: &str) -> FoldingContext {
        fold_named(g, k).unwrap()
    }

    #[test]
    fn a2_folding() {
        let c = ctx("A2", "flip");
        assert_eq!(c.folded.label, "A1⊔A1");
        assert_eq!(c.orbit.datum.label(), "A1");
        let half = RatVec(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(c.project(&RatVec::from_ints(&[1, 0])).unwrap(), half);
        let expect: BTreeSet<RatVec> =
            [half.clone(), -&half, RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[-1, -1])].into_iter().collect();
        assert_eq!(c.folded.roots.iter().cloned().collect::<BTreeSet<_>>(), expect);
        assert_eq!(c.orbit.datum.positive_roots(), &[RatVec::from_ints(&[2, 2])]);
        assert_eq!(c.fixed_intersection.invariant_factors, vec![2]);
    }

    #[test]
    fn table_rows() {
        for (g, k, f, o) in [
            ("A3", "flip", "C2", "B2"),
            ("A4", "flip", "BC2", "C2"),
            ("A5", "flip", "C3", "B3"),
            ("D4", "flip", "B3", "C3"),
            ("D4", "rot", "G2", "G2"),
            ("D5", "flip", "B4", "C4"),
            ("E6", "flip", "F4", "F4"),
        ] {
            let c = ctx(g, k);
            assert_eq!((c.folded.label.as_str(), c.orbit.datum.label()), (f, o), "{g} {k}");
        }
    }

    #[test]
    fn a5_middle_node_is_fixed() {
        let c = ctx("A5", "flip");
        let a3 = RatVec::from_ints(&[0, 0, 1, 0, 0]);
        assert_eq!(c.project(&a3).unwrap(), a3);
        assert_eq!(c.fixed_intersection.invariant_factors, vec![2, 2]);
        assert!(c.project(&RatVec::from_ints(&[1, 0])).is_err());
    }

    #[test]
    fn special_roots_a2_and_a4() {
        let (l, _) = ctx("A2", "flip").special_roots();
        assert_eq!(l, RatVec::from_ints(&[2, 2]));
        let c = ctx("A4", "flip");
        let (l, s) = c.special_roots();
        assert_eq!(l, c.base.highest_root().scale(&int(2)));
        assert_eq!(s, RatVec::from_ints(&[1, 2, 2, 1]));
    }

    #[test]
    fn fixed_subgroups() {
        let (l, g) = ctx("A4", "flip").fixed_subgroup_data().unwrap();
        assert_eq!((l.as_str(), g.invariant_factors.clone()), ("B2", vec![2]));
        let (l, g) = ctx("E6", "flip").fixed_subgroup_data().unwrap();
        assert_eq!(l, "F4");
        assert!(g.is_trivial());
        let (l, g) = ctx("A3", "flip").fixed_subgroup_data().unwrap();
        assert_eq!(l, "C2");
        assert!(g.is_trivial());
    }

    #[test]
    fn trivial_folding_is_the_base() {
        let c = ctx("B2", "id");
        assert_eq!(c.case, FoldingCase::Trivial);
        assert_eq!(c.orbit.datum.label(), "B2");
        assert_eq!(c.folded.label, "B2");
        assert!(c.fixed_intersection.is_trivial());
        assert_eq!(c.outer_weyl_order, 8);
    }

    #[test]
    fn unsupported_pairs() {
        let b = crate::rootcore::build_root_datum("A", 3).unwrap();
        let k = parse_automorphism(&b, "flip").unwrap();
        let b2 = crate::rootcore::build_root_datum("B", 3).unwrap();
        assert!(fold(&b2, &k).is_err());
    }
}
