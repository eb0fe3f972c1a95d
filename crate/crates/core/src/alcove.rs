//! The twisted affine Weyl group `Λ_(κ) ⋊ W^κ` acting on `t^κ`, its
//! fundamental alcove, and stabilizer data of alcove points.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::folding::{reflection_closure, FoldingCase, FoldingContext};
use crate::rational::{int, solve_in_span, RatMatrix, RatVec, Rational};
use crate::rootcore::cartan::cartan_from_gram;
use crate::rootcore::{classify, lattice_quotient_general, FiniteAbelianGroup, Lattice, WeylElement};
use crate::twining::Denominator;

/// `ξ ↦ w(ξ) + t` with `w ∈ W^κ` and `t ∈ Λ_(κ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElement {
    pub linear: WeylElement,
    pub translation: RatVec,
}

impl AffineElement {
    pub fn identity(ctx: &FoldingContext) -> Self {
        let d = ctx.orbit_datum();
        AffineElement { linear: WeylElement::identity(d.rank()), translation: RatVec::zeros(d.ambient_dim()) }
    }

    pub fn translation(ctx: &FoldingContext, t: RatVec) -> Self {
        AffineElement { linear: WeylElement::identity(ctx.orbit_datum().rank()), translation: t }
    }

    pub fn linear(ctx: &FoldingContext, w: WeylElement) -> Self {
        AffineElement { linear: w, translation: RatVec::zeros(ctx.orbit_datum().ambient_dim()) }
    }

    pub fn apply(&self, ctx: &FoldingContext, xi: &RatVec) -> RatVec {
        &self.linear.act(ctx.orbit_datum(), xi) + &self.translation
    }

    /// `self ∘ other`: `(w, t)(w', t') = (ww', w t' + t)`.
    pub fn compose(&self, ctx: &FoldingContext, other: &AffineElement) -> AffineElement {
        AffineElement {
            linear: self.linear.compose(&other.linear),
            translation: &self.linear.act(ctx.orbit_datum(), &other.translation) + &self.translation,
        }
    }

    /// `det` of the linear part.
    pub fn sign(&self) -> i64 {
        self.linear.det()
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }
}

/// `{ξ ∈ t^κ : (α̃, ξ) ≥ 0 for α̃ ∈ Π_(κ), (θ_(κ),l, ξ) ≤ 1}`.
#[derive(Clone, Debug)]
pub struct AlcoveDescription {
    pub walls: Vec<RatVec>,
    pub ceiling: RatVec,
    pub vertices: Vec<RatVec>,
}

impl AlcoveDescription {
    pub fn contains(&self, ctx: &FoldingContext, xi: &RatVec) -> bool {
        let b = &ctx.base;
        self.walls.iter().all(|a| b.inner(a, xi) >= Rational::zero()) && b.inner(&self.ceiling, xi) <= int(1)
    }
}

/// The fundamental alcove with its vertices, found by solving every
/// rank-sized subset of the constraints exactly.
pub fn fundamental_alcove(ctx: &FoldingContext) -> AlcoveDescription {
    let orbit = ctx.orbit_datum();
    let b = &ctx.base;
    let walls = orbit.simple_roots().to_vec();
    let ceiling = orbit.highest_root().clone();
    let r = walls.len();
    let mut constraints: Vec<(RatVec, Rational)> = walls.iter().map(|a| (a.clone(), int(0))).collect();
    constraints.push((ceiling.clone(), int(1)));
    let mut alcove = AlcoveDescription { walls: walls.clone(), ceiling, vertices: Vec::new() };
    for skip in (0..=r).rev() {
        let active: Vec<&(RatVec, Rational)> =
            constraints.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| c).collect();
        let m = RatMatrix::from_fn(r, r, |j, k| b.inner(&active[j].0, &walls[k]));
        let Some(inv) = m.inverse() else { continue };
        let rhs = RatVec(active.iter().map(|c| c.1.clone()).collect());
        let coeffs = inv.mul_vec(&rhs);
        let v = orbit.from_root_coords(&coeffs.0);
        if alcove.contains(ctx, &v) && !alcove.vertices.contains(&v) {
            alcove.vertices.push(v);
        }
    }
    alcove
}

/// The reflection `s_θ` for the highest orbit root, as a word in simple
/// reflections obtained by conjugating a simple reflection.
fn highest_reflection(ctx: &FoldingContext) -> WeylElement {
    let orbit = ctx.orbit_datum();
    let simple = orbit.simple_roots();
    let mut beta = orbit.highest_root().clone();
    let mut path = Vec::new();
    loop {
        if let Some(j) = simple.iter().position(|a| *a == beta) {
            let mut word = path.clone();
            word.push(j);
            word.extend(path.iter().rev());
            return WeylElement::from_word(orbit, &word);
        }
        let i = (0..simple.len())
            .find(|&i| orbit.inner(&beta, &simple[i]) > Rational::zero())
            .expect("a non-simple positive root pairs positively with some simple root");
        beta = orbit.reflect(&beta, &simple[i]);
        path.push(i);
    }
}

/// Moves `ξ ∈ t^κ` into the fundamental alcove; returns the image and the
/// affine element achieving it.
pub fn fold_to_alcove(ctx: &FoldingContext, xi: &RatVec) -> Result<(RatVec, AffineElement)> {
    if !ctx.is_fixed(xi) {
        return Err(Error::NotFixed(xi.to_string()));
    }
    let orbit = ctx.orbit_datum();
    let coroots = orbit.simple_coroots();
    let simple = orbit.simple_roots();
    let theta = orbit.highest_root();
    let theta_co = orbit.coroot(theta);

    let c = solve_in_span(&coroots, xi).ok_or_else(|| Error::NotFixed(xi.to_string()))?;
    let mut t = RatVec::zeros(xi.dim());
    for (ci, a) in c.iter().zip(&coroots) {
        let f = ci.numer().div_floor(ci.denom());
        if !f.is_zero() {
            t = &t - &a.scale(&Rational::from_integer(f));
        }
    }
    let mut g = AffineElement::translation(ctx, t);
    let mut x = g.apply(ctx, xi);
    let s_theta = highest_reflection(ctx);
    let affine = AffineElement { linear: s_theta, translation: theta_co };
    loop {
        if let Some(i) = (0..simple.len()).find(|&i| orbit.inner(&simple[i], &x) < Rational::zero()) {
            let s = AffineElement::linear(ctx, WeylElement::simple(orbit, i));
            x = orbit.reflect(&x, &simple[i]);
            g = s.compose(ctx, &g);
        } else if orbit.inner(theta, &x) > int(1) {
            x = affine.apply(ctx, &x);
            g = affine.compose(ctx, &g);
        } else {
            break;
        }
    }
    debug_assert_eq!(g.apply(ctx, xi), x);
    Ok((x, g))
}

/// A node of the extended diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AlcoveNode {
    Simple(usize),
    /// `−θ_(κ),l`.
    Lowest,
}

/// The centralizer data at an alcove point.
#[derive(Clone, Debug)]
pub struct StabilizerDatum {
    pub surviving_nodes: Vec<AlcoveNode>,
    /// Simple roots of the surviving subsystem of `R_(κ)`.
    pub subsystem_simple: Vec<RatVec>,
    pub subsystem_roots: Vec<RatVec>,
    pub subsystem_label: String,
    /// Roots of the centralizer itself: the coroot directions of the
    /// surviving nodes (the nodes themselves when `κ` is trivial).
    pub dual_simple: Vec<RatVec>,
    pub dual_label: String,
    pub pi1: FiniteAbelianGroup,
    pub pi1_free_rank: usize,
}

fn label_of(ctx: &FoldingContext, simple: &[RatVec]) -> Result<String> {
    if simple.is_empty() {
        return Ok("torus".into());
    }
    let g = RatMatrix::from_fn(simple.len(), simple.len(), |i, j| ctx.base.inner(&simple[i], &simple[j]));
    classify(&cartan_from_gram(&g)?).ok_or_else(|| Error::NotCrystallographic("stabilizer subsystem".into()))
}

/// Deletes the nodes of the extended diagram whose constraints are strict at
/// `ξ`, and reads off the centralizer.
pub fn stabilizer_datum(ctx: &FoldingContext, xi: &RatVec) -> Result<StabilizerDatum> {
    if !ctx.is_fixed(xi) {
        return Err(Error::NotFixed(xi.to_string()));
    }
    let alcove = fundamental_alcove(ctx);
    if !alcove.contains(ctx, xi) {
        return Err(Error::OutsideAlcove(xi.to_string()));
    }
    let orbit = ctx.orbit_datum();
    let b = &ctx.base;
    let mut nodes = Vec::new();
    let mut simple = Vec::new();
    for (i, a) in orbit.simple_roots().iter().enumerate() {
        if b.inner(a, xi).is_zero() {
            nodes.push(AlcoveNode::Simple(i));
            simple.push(a.clone());
        }
    }
    if b.inner(orbit.highest_root(), xi) == int(1) {
        nodes.push(AlcoveNode::Lowest);
        simple.push(-orbit.highest_root());
    }
    let dual_simple: Vec<RatVec> = if ctx.case == FoldingCase::Trivial {
        simple.clone()
    } else {
        simple.iter().map(|a| b.coroot(a)).collect()
    };
    let coroot_gens: Vec<RatVec> = dual_simple.iter().map(|a| b.coroot(a)).collect();
    let q_xi = Lattice::span(&coroot_gens, b.rank());
    let quotient = lattice_quotient_general(&q_xi, &ctx.lattices.lambda_fixed)?;
    Ok(StabilizerDatum {
        surviving_nodes: nodes,
        subsystem_roots: if simple.is_empty() { Vec::new() } else { reflection_closure(orbit, &simple) },
        subsystem_label: label_of(ctx, &simple)?,
        dual_label: label_of(ctx, &dual_simple)?,
        subsystem_simple: simple,
        dual_simple,
        pi1: quotient.torsion,
        pi1_free_rank: quotient.free_rank,
    })
}

/// `|T^κ ∩ T_κ| · |Δ̃(e^ξ)|²`; exactly zero on the walls.
pub fn det_diff_conj(ctx: &FoldingContext, xi: &RatVec) -> Result<f64> {
    let den = Denominator::new(ctx);
    if den.singular_root(ctx, xi)?.is_some() {
        return Ok(0.0);
    }
    let v = den.eval(ctx, xi)?;
    Ok(ctx.fixed_intersection.order() as f64 * v.norm_sqr())
}
