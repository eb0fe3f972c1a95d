//! Twining characters as characters of the orbit datum, with the twisted
//! Weyl denominator, the Jantzen ratio, an adjoint-trace oracle and the
//! exact Fourier inner product.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::folding::{FoldingCase, FoldingContext};
use crate::rational::{common_denominator, rat, RatVec, Rational};
use crate::rootcore::{weyl_group, CharacterCache, FourierPolynomial, RootDatum, WeylElement};
use crate::unity::UnitySum;

/// `ξ ↦ (μ, ξ) mod 1` on Dynkin labels `μ`, exactly.
#[derive(Clone, Debug)]
pub struct PhaseMap {
    den: BigInt,
    nums: Vec<BigInt>,
}

impl PhaseMap {
    /// From the pairings `(ϖ_i, ξ)` of the fundamental weights with `ξ`.
    pub fn new(pairings: &[Rational]) -> Self {
        let den = common_denominator(pairings);
        let nums = pairings.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer().mod_floor(&den)).collect();
        PhaseMap { den, nums }
    }

    pub fn for_point(datum: &RootDatum, xi: &RatVec) -> Self {
        let p: Vec<Rational> = datum.fundamental_weights().iter().map(|w| datum.inner(w, xi)).collect();
        Self::new(&p)
    }

    fn residue(&self, key: &[i64]) -> BigInt {
        let s: BigInt = key.iter().zip(&self.nums).map(|(m, n)| BigInt::from(*m) * n).sum();
        s.mod_floor(&self.den)
    }

    /// The exact phase in turns, in `[0, 1)`.
    pub fn exact_turns(&self, key: &[i64]) -> Rational {
        Rational::new(self.residue(key), self.den.clone())
    }

    /// The phase in turns, in `[0, 1)`.
    pub fn turns(&self, key: &[i64]) -> f64 {
        let r = self.residue(key);
        r.to_f64().unwrap_or(0.0) / self.den.to_f64().unwrap_or(1.0)
    }

    pub fn is_integral(&self, key: &[i64]) -> bool {
        self.residue(key).is_zero()
    }
}

fn check_fixed(ctx: &FoldingContext, xi: &RatVec) -> Result<()> {
    if xi.dim() != ctx.base.rank() {
        return Err(Error::DimensionMismatch { expected: ctx.base.rank(), got: xi.dim() });
    }
    if !ctx.is_fixed(xi) {
        return Err(Error::NotFixed(xi.to_string()));
    }
    Ok(())
}

/// `Δ̃ = ∏_{α̃ ∈ R_(κ)+} (1 − e^{−α̃})` in orbit Dynkin labels.
#[derive(Clone, Debug)]
pub struct Denominator {
    pub poly: FourierPolynomial,
}

impl Denominator {
    pub fn new(ctx: &FoldingContext) -> Self {
        let d = ctx.orbit_datum();
        let tag = d.lattice_tag().clone();
        let r = d.rank();
        let mut poly = FourierPolynomial::constant(tag.clone(), r, 1);
        for a in d.positive_roots() {
            let labels = d.integral_labels(a).expect("roots are weights");
            let factor = FourierPolynomial::from_terms(
                tag.clone(),
                r,
                [(vec![0; r], 1), (labels.iter().map(|x| -x).collect(), -1)],
            );
            poly = poly.mul(&factor).expect("same lattice");
        }
        Denominator { poly }
    }

    /// The first positive orbit root with `(α̃, ξ) ∈ Z`, if any.
    pub fn singular_root(&self, ctx: &FoldingContext, xi: &RatVec) -> Result<Option<RatVec>> {
        check_fixed(ctx, xi)?;
        let d = ctx.orbit_datum();
        Ok(d.positive_roots().iter().find(|a| d.inner(a, xi).is_integer()).cloned())
    }

    pub fn eval(&self, ctx: &FoldingContext, xi: &RatVec) -> Result<Complex64> {
        check_fixed(ctx, xi)?;
        let phase = PhaseMap::for_point(ctx.orbit_datum(), xi);
        Ok(self.poly.evaluate(|k| phase.turns(k)))
    }
}

pub fn weyl_denominator(ctx: &FoldingContext) -> Denominator {
    Denominator::new(ctx)
}

/// `χ̃_λ` for a `κ`-fixed dominant base weight.
#[derive(Clone, Debug)]
pub struct TwiningCharacter {
    pub highest_weight: RatVec,
    pub base_labels: Vec<i64>,
    pub orbit_labels: Vec<i64>,
    pub poly: FourierPolynomial,
}

/// Cached data for repeated twining computations on one folding.
pub struct Twining<'a> {
    ctx: &'a FoldingContext,
    cache: CharacterCache<'a>,
    weyl: Vec<WeylElement>,
    denominator: Denominator,
    density: FourierPolynomial,
}

impl<'a> Twining<'a> {
    pub fn new(ctx: &'a FoldingContext) -> Result<Self> {
        let denominator = Denominator::new(ctx);
        let density = denominator.poly.mul(&denominator.poly.conjugate())?;
        Ok(Twining {
            ctx,
            cache: CharacterCache::new(ctx.orbit_datum()),
            weyl: weyl_group(ctx.orbit_datum())?,
            denominator,
            density,
        })
    }

    pub fn context(&self) -> &FoldingContext {
        self.ctx
    }

    pub fn cache(&self) -> &CharacterCache<'a> {
        &self.cache
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn denominator(&self) -> &Denominator {
        &self.denominator
    }

    /// `Δ̃ · conj(Δ̃)`.
    pub fn density(&self) -> &FourierPolynomial {
        &self.density
    }

    pub fn character(&self, base_labels: &[i64]) -> Result<TwiningCharacter> {
        let orbit_labels = self.ctx.orbit_labels(base_labels)?;
        Ok(TwiningCharacter {
            highest_weight: self.ctx.base.weight_from_labels(base_labels),
            base_labels: base_labels.to_vec(),
            poly: self.cache.character(&orbit_labels)?,
            orbit_labels,
        })
    }

    /// `χ̃` by orbit labels.
    pub fn orbit_character(&self, orbit_labels: &[i64]) -> Result<FourierPolynomial> {
        self.cache.character(orbit_labels)
    }

    pub fn phase(&self, xi: &RatVec) -> Result<PhaseMap> {
        check_fixed(self.ctx, xi)?;
        Ok(PhaseMap::for_point(self.ctx.orbit_datum(), xi))
    }

    pub fn evaluate(&self, poly: &FourierPolynomial, xi: &RatVec) -> Result<Complex64> {
        let phase = self.phase(xi)?;
        Ok(poly.evaluate(|k| phase.turns(k)))
    }

    /// `J̃_λ(ξ) = Σ_{w ∈ W^κ} det(w) e^{2πi (w(λ+ρ), ξ)}`, by orbit labels.
    pub fn jantzen_sum(&self, orbit_labels: &[i64], phase: &PhaseMap) -> Complex64 {
        let shifted: Vec<i64> = orbit_labels.iter().map(|x| x + 1).collect();
        let mut acc = UnitySum::default();
        for w in &self.weyl {
            acc.add(w.det(), &phase.exact_turns(&w.act_labels(&shifted)));
        }
        acc.value()
    }

    /// `J̃_λ(ξ)/J̃_0(ξ)` at a regular point.
    pub fn jantzen_eval(&self, base_labels: &[i64], xi: &RatVec) -> Result<Complex64> {
        let orbit_labels = self.ctx.orbit_labels(base_labels)?;
        if let Some(root) = self.denominator.singular_root(self.ctx, xi)? {
            return Err(Error::SingularPoint { root: root.to_string() });
        }
        let phase = self.phase(xi)?;
        let zero = vec![0; orbit_labels.len()];
        Ok(self.jantzen_sum(&orbit_labels, &phase) / self.jantzen_sum(&zero, &phase))
    }

    /// Exact `(1/|W^κ|) · CT(conj(f) · g · Δ̃ · conj(Δ̃))`.
    pub fn inner_product(&self, f: &FourierPolynomial, g: &FourierPolynomial) -> Result<Rational> {
        let tag = self.ctx.orbit_datum().lattice_tag();
        for p in [f, g] {
            if p.lattice() != tag {
                return Err(Error::LatticeTagMismatch(p.lattice().to_string(), tag.to_string()));
            }
        }
        let mut total: i64 = 0;
        for (a, x) in f.terms() {
            for (b, y) in g.terms() {
                let diff: Vec<i64> = a.iter().zip(b).map(|(p, q)| p - q).collect();
                total += x * y * self.density.coefficient(&diff);
            }
        }
        Ok(rat(total, self.weyl.len() as i64))
    }
}

/// `χ̃_λ` for base labels `λ`.
pub fn twining_character(ctx: &FoldingContext, base_labels: &[i64]) -> Result<TwiningCharacter> {
    Twining::new(ctx)?.character(base_labels)
}

pub fn jantzen_eval(ctx: &FoldingContext, base_labels: &[i64], xi: &RatVec) -> Result<Complex64> {
    Twining::new(ctx)?.jantzen_eval(base_labels, xi)
}

pub fn inner_product(ctx: &FoldingContext, f: &FourierPolynomial, g: &FourierPolynomial) -> Result<Rational> {
    Twining::new(ctx)?.inner_product(f, g)
}

/// Trace of `κ` on the adjoint representation at `e^ξ`, normalized so that
/// the highest root vector is fixed:
/// `ε [tr(κ|t) + Σ_{κ(α) = α} c_α e^{2πi(α, ξ)}]`.
pub fn adjoint_oracle(ctx: &FoldingContext, xi: &RatVec) -> Result<Complex64> {
    check_fixed(ctx, xi)?;
    let b = &ctx.base;
    let even_a = matches!(ctx.case, FoldingCase::EvenA { .. });
    let eps = if even_a { -1.0 } else { 1.0 };
    let mut sum = Complex64::new(ctx.kappa.fixed_nodes().len() as f64, 0.0);
    let perm = ctx.kappa.permutation();
    let coords = b.positive_coords();
    for (c, a) in coords.iter().zip(b.positive_roots()) {
        if (0..c.len()).any(|i| c[perm[i]] != c[i]) {
            continue;
        }
        let height: i64 = c.iter().sum();
        let sign = if even_a && height % 2 == 0 { -1.0 } else { 1.0 };
        let q = b.inner(a, xi);
        let turns = (q.numer().mod_floor(q.denom())).to_f64().unwrap_or(0.0) / q.denom().to_f64().unwrap_or(1.0);
        let e = Complex64::from_polar(1.0, std::f64::consts::TAU * turns);
        sum += (e + e.conj()) * sign;
    }
    Ok(sum * eps)
}

/// Points of `t^κ` with small random rational coordinates in the orbit
/// coroot basis, regular for the orbit system.
pub fn random_regular_points(ctx: &FoldingContext, count: usize, seed: u64) -> Vec<RatVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orbit = ctx.orbit_datum();
    let coroots = orbit.simple_coroots();
    let den = Denominator { poly: FourierPolynomial::zero(orbit.lattice_tag().clone(), orbit.rank()) };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut xi = RatVec::zeros(ctx.base.rank());
        for c in &coroots {
            let q: i64 = rng.gen_range(7..=97);
            let p: i64 = rng.gen_range(-3 * q..=3 * q);
            xi = &xi + &c.scale(&rat(p, q));
        }
        if matches!(den.singular_root(ctx, &xi), Ok(None)) {
            out.push(xi);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::fold_named;
    use crate::rational::int;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-9 * (1.0 + b.norm())
    }

    #[test]
    fn a2_denominator() {
        let ctx = fold_named("A2", "flip").unwrap();
        let d = Denominator::new(&ctx);
        assert_eq!(d.poly.len(), 2);
        assert_eq!(d.poly.coefficient(&[-2]), -1);
        assert!(d.eval(&ctx, &RatVec::zeros(2)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn trivial_a1_denominator() {
        let ctx = fold_named("A1", "id").unwrap();
        let d = Denominator::new(&ctx);
        assert_eq!(d.poly.coefficient(&[0]), 1);
        assert_eq!(d.poly.coefficient(&[-2]), -1);
    }

    #[test]
    fn characters_at_identity() {
        let a2 = fold_named("A2", "flip").unwrap();
        let t = Twining::new(&a2).unwrap();
        assert_eq!(t.character(&[0, 0]).unwrap().poly.mass(), 1);
        let adj = t.character(&[1, 1]).unwrap();
        assert_eq!(adj.poly.len(), 2);
        assert_eq!(adj.poly.mass(), 2);
        let a3 = fold_named("A3", "flip").unwrap();
        assert_eq!(twining_character(&a3, &[1, 0, 1]).unwrap().poly.mass(), 5);
        assert!(twining_character(&a3, &[1, 0, 0]).is_err());
    }

    #[test]
    fn oracle_at_identity() {
        for (g, k, v) in [("A2", "flip", 2.0), ("A3", "flip", 5.0), ("D4", "rot", 7.0), ("A1", "id", 3.0)] {
            let ctx = fold_named(g, k).unwrap();
            let z = adjoint_oracle(&ctx, &RatVec::zeros(ctx.base.rank())).unwrap();
            assert!(close(z, Complex64::new(v, 0.0)), "{g} {z}");
        }
    }

    #[test]
    fn jantzen_matches_polynomial() {
        let ctx = fold_named("A3", "flip").unwrap();
        let t = Twining::new(&ctx).unwrap();
        let chi = t.character(&[1, 0, 1]).unwrap();
        for xi in random_regular_points(&ctx, 5, 7) {
            let a = t.jantzen_eval(&[1, 0, 1], &xi).unwrap();
            let b = t.evaluate(&chi.poly, &xi).unwrap();
            let c = adjoint_oracle(&ctx, &xi).unwrap();
            assert!(close(a, b) && close(b, c), "{a} {b} {c}");
        }
        assert!(matches!(t.jantzen_eval(&[0, 0, 0], &RatVec::zeros(3)), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn a2_inner_products() {
        let ctx = fold_named("A2", "flip").unwrap();
        let t = Twining::new(&ctx).unwrap();
        assert_eq!(t.density().constant_term(), 2);
        let c0 = t.character(&[0, 0]).unwrap().poly;
        let c1 = t.character(&[1, 1]).unwrap().poly;
        assert_eq!(t.inner_product(&c0, &c0).unwrap(), int(1));
        assert_eq!(t.inner_product(&c1, &c1).unwrap(), int(1));
        assert_eq!(t.inner_product(&c0, &c1).unwrap(), int(0));
    }

    #[test]
    fn phases_are_exact() {
        let p = PhaseMap::new(&[rat(1, 3), rat(-1, 2)]);
        assert!(p.is_integral(&[3, 2]));
        assert!((p.turns(&[1, 0]) - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.turns(&[0, 1]) - 0.5).abs() < 1e-15);
    }
}
