//! The lattices attached to a folding and the identities relating them.

use crate::error::Result;
use crate::folding::automorphism::DiagramAutomorphism;
use crate::folding::{FoldedSystem, FoldingCase};
use crate::rational::{RatMatrix, RatVec};
use crate::rootcore::{lattice_quotient, Lattice, RootDatum};

/// Lattices in the fixed subspace (the torus and its dual are identified
/// through the inner product).
#[derive(Clone, Debug)]
pub struct LatticeSuite {
    /// Root lattice of the folded system (of its `B_n` part for `A_{2n}`).
    pub q_f: Lattice,
    /// Its coroot lattice.
    pub q_f_co: Lattice,
    pub p_f: Lattice,
    pub p_f_co: Lattice,
    pub q_o: Lattice,
    pub q_o_co: Lattice,
    pub p_o: Lattice,
    pub p_o_co: Lattice,
    /// `Λ^κ = Λ ∩ t^κ`.
    pub lambda_fixed: Lattice,
    /// `p(Λ)`.
    pub p_lambda: Lattice,
    /// `p(Λ*)`.
    pub p_weights: Lattice,
    /// `p(Q)`.
    pub p_roots: Lattice,
    /// `p(P^∨)`.
    pub p_coweights: Lattice,
    /// `Q^κ`.
    pub q_fixed: Lattice,
    /// `(Λ*)^κ`.
    pub weights_fixed: Lattice,
    /// `(P^∨)^κ`.
    pub coweights_fixed: Lattice,
    /// `Λ_(κ)`, obtained as the dual of `(Λ*)^κ` inside `t^κ`.
    pub lambda_orbit: Lattice,
    case: FoldingCase,
}

/// One containment or equality, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCheck {
    pub statement: String,
    pub holds: bool,
}

enum Relation {
    Equal,
    Contained,
    Index(u64),
}

impl LatticeSuite {
    pub(crate) fn build(
        base: &RootDatum,
        kappa: &DiagramAutomorphism,
        projection: &RatMatrix,
        folded: &FoldedSystem,
        orbit: &RootDatum,
        case: FoldingCase,
    ) -> Result<Self> {
        let r = base.rank();
        let gram = base.ambient_gram();
        let span = |gens: &[RatVec]| Lattice::span(gens, r);
        let fixed_space: Vec<RatVec> = kappa.orbits().iter().map(|o| projection.mul_vec(&base.simple_roots()[o[0]])).collect();

        let q = span(base.simple_roots());
        let lambda = span(&base.simple_coroots());
        let weights = span(base.fundamental_weights());
        let coweights = q.dual(gram);

        let folded_coroots: Vec<RatVec> = folded.simple_roots.iter().map(|b| base.coroot(b)).collect();
        let q_f = span(&folded.simple_roots);
        let q_f_co = span(&folded_coroots);
        let q_o = span(orbit.simple_roots());
        let q_o_co = span(&orbit.simple_coroots());
        let weights_fixed = weights.intersect_subspace(&fixed_space);

        Ok(LatticeSuite {
            p_f: q_f_co.dual(gram),
            p_f_co: q_f.dual(gram),
            p_o: q_o_co.dual(gram),
            p_o_co: q_o.dual(gram),
            lambda_fixed: lambda.intersect_subspace(&fixed_space),
            p_lambda: lambda.image(projection),
            p_weights: weights.image(projection),
            p_roots: q.image(projection),
            p_coweights: coweights.image(projection),
            q_fixed: q.intersect_subspace(&fixed_space),
            coweights_fixed: coweights.intersect_subspace(&fixed_space),
            lambda_orbit: weights_fixed.dual(gram),
            weights_fixed,
            q_f,
            q_f_co,
            q_o,
            q_o_co,
            case,
        })
    }

    fn relation(name: &str, a: &Lattice, rel: Relation, b: &Lattice) -> LatticeCheck {
        let holds = match rel {
            Relation::Equal => a.same_as(b),
            Relation::Contained => a.is_sublattice_of(b),
            Relation::Index(k) => lattice_quotient(a, b).is_ok_and(|g| g.invariant_factors == [k]),
        };
        let statement = match rel {
            Relation::Index(k) => format!("{name} (index {k})"),
            _ => name.to_string(),
        };
        LatticeCheck { statement, holds }
    }

    /// Every identity relating the lattices, for the case at hand.
    pub fn checks(&self) -> Vec<LatticeCheck> {
        use Relation::*;
        let c = |a: &Lattice, rel: Relation, b: &Lattice, name: &str| Self::relation(name, a, rel, b);
        let mut out = Vec::new();
        match self.case {
            FoldingCase::EvenA { .. } => {
                out.push(c(&self.q_f_co, Index(2), &self.lambda_fixed, "folded coroots in fixed integral lattice"));
                out.push(c(&self.lambda_fixed, Contained, &self.p_f_co, "fixed integral lattice in folded coweights"));
                out.push(c(&self.p_f_co, Equal, &self.coweights_fixed, "folded coweights are fixed coweights"));
                out.push(c(&self.q_f, Equal, &self.p_roots, "folded roots are projected roots"));
                out.push(c(&self.p_roots, Contained, &self.p_weights, "projected roots in projected weights"));
                out.push(c(&self.p_weights, Index(2), &self.p_f, "projected weights in folded weights"));
                out.push(c(&self.lambda_orbit, Equal, &self.p_lambda, "orbit lattice is projected integral lattice"));
                out.push(c(&self.q_o_co, Equal, &self.p_lambda, "orbit coroots span projected integral lattice"));
                out.push(c(&self.p_lambda, Contained, &self.p_coweights, "projected integral lattice in projected coweights"));
                out.push(c(&self.p_coweights, Index(2), &self.p_o_co, "projected coweights in orbit coweights"));
                out.push(c(&self.q_o, Index(2), &self.q_fixed, "orbit roots in fixed roots"));
                out.push(c(&self.q_fixed, Contained, &self.weights_fixed, "fixed roots in fixed weights"));
                out.push(c(&self.weights_fixed, Equal, &self.p_o, "fixed weights are orbit weights"));
            }
            _ => {
                out.push(c(&self.q_f_co, Equal, &self.lambda_fixed, "folded coroots span fixed integral lattice"));
                out.push(c(&self.lambda_fixed, Contained, &self.p_f_co, "fixed integral lattice in folded coweights"));
                out.push(c(&self.p_f_co, Equal, &self.coweights_fixed, "folded coweights are fixed coweights"));
                out.push(c(&self.q_f, Equal, &self.p_roots, "folded roots are projected roots"));
                out.push(c(&self.p_roots, Contained, &self.p_weights, "projected roots in projected weights"));
                out.push(c(&self.p_weights, Equal, &self.p_f, "projected weights are folded weights"));
                out.push(c(&self.lambda_orbit, Equal, &self.p_lambda, "orbit lattice is projected integral lattice"));
                out.push(c(&self.q_o_co, Equal, &self.p_lambda, "orbit coroots span projected integral lattice"));
                out.push(c(&self.p_lambda, Contained, &self.p_coweights, "projected integral lattice in projected coweights"));
                out.push(c(&self.p_coweights, Equal, &self.p_o_co, "projected coweights are orbit coweights"));
                out.push(c(&self.q_o, Equal, &self.q_fixed, "orbit roots span fixed roots"));
                out.push(c(&self.q_fixed, Contained, &self.weights_fixed, "fixed roots in fixed weights"));
                out.push(c(&self.weights_fixed, Equal, &self.p_o, "fixed weights are orbit weights"));
            }
        }
        out.push(c(&self.q_o_co, Equal, &self.lambda_orbit, "orbit group is simply connected"));
        out
    }
}
