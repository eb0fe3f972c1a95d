//! The twining representation ring and its level-`k` fusion quotient, with
//! fusion coefficients computed by a Verlinde-type sum and by the signed
//! affine projection.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::alcove::fold_to_alcove;
use crate::error::{Error, Result};
use crate::folding::FoldingContext;
use crate::par::Parallelism;
use crate::rational::{int, to_i64, RatVec, Rational};
use crate::rootcore::{lattice_quotient, longest_element, FourierPolynomial, WeylElement};
use crate::twining::{PhaseMap, Twining};

/// Largest number of triples a table may contain by default.
pub const DEFAULT_TABLE_BUDGET: usize = 1_000_000;

/// Largest allowed distance of a Verlinde sum from the nearest integer.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Orbit labels of `(λ, μ, ν)`.
pub type Triple = (Vec<i64>, Vec<i64>, Vec<i64>);

/// `Σ c_λ [λ]` over `κ`-fixed dominant weights, keyed by orbit labels.
pub type RingElement = BTreeMap<Vec<i64>, i64>;

pub fn basis_element(labels: &[i64]) -> RingElement {
    [(labels.to_vec(), 1)].into_iter().collect()
}

fn accumulate(into: &mut RingElement, key: Vec<i64>, c: i64) {
    let e = into.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        into.retain(|_, v| *v != 0);
    }
}

/// The polynomial `Σ c_λ χ̃_λ`.
pub fn to_polynomial(tw: &Twining, a: &RingElement) -> Result<FourierPolynomial> {
    let d = tw.context().orbit_datum();
    let mut p = FourierPolynomial::zero(d.lattice_tag().clone(), d.rank());
    for (k, c) in a {
        p = p.add(&tw.orbit_character(k)?.scale(*c))?;
    }
    Ok(p)
}

fn check_support(tw: &Twining, a: &RingElement) -> Result<()> {
    let r = tw.context().orbit_datum().rank();
    for k in a.keys() {
        if k.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: k.len() });
        }
        if k.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(format!("{k:?}")));
        }
    }
    Ok(())
}

/// Product in the twining representation ring.
pub fn ring_product(tw: &Twining, a: &RingElement, b: &RingElement) -> Result<RingElement> {
    check_support(tw, a)?;
    check_support(tw, b)?;
    let p = to_polynomial(tw, a)?.mul(&to_polynomial(tw, b)?)?;
    Ok(tw.cache().decompose(&p)?.into_iter().filter(|(_, c)| *c != 0).collect())
}

/// `[λ] ↦ [−w₀λ]`.
pub fn involution(tw: &Twining, a: &RingElement) -> RingElement {
    let w0 = longest_element(tw.context().orbit_datum());
    a.iter().map(|(k, c)| (dual_labels(&w0, k), *c)).collect()
}

fn dual_labels(w0: &WeylElement, labels: &[i64]) -> Vec<i64> {
    w0.act_labels(labels).into_iter().map(|x| -x).collect()
}

/// Coefficient of the unit `[0]`.
pub fn trace0(a: &RingElement) -> i64 {
    a.iter().filter(|(k, _)| k.iter().all(|&x| x == 0)).map(|(_, c)| *c).sum()
}

/// Level-`k` data on the orbit side.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub k: u32,
    /// `(θ_(κ),l, θ_(κ),l)/2`: the basic inner product is `B / rescale`
    /// on the torus side.
    pub rescale: Rational,
    /// `1 + (ρ, θ_(κ),l)/rescale`.
    pub dual_coxeter: i64,
    /// `1 + Σ` of the coroot coefficients of `θ_(κ),l^∨`.
    pub dual_coxeter_from_comarks: i64,
    pub comarks: Vec<i64>,
    /// Orbit labels of the level weights, in lexicographic order of base labels.
    pub level_weights: Vec<Vec<i64>>,
    pub base_weights: Vec<Vec<i64>>,
    /// `s_λ = (λ + ρ)/((k + h^∨)·rescale)`.
    pub s_points: Vec<RatVec>,
    pub t_group_order: u64,
}

impl LevelData {
    /// `(k + h^∨) · rescale`.
    pub fn shift(&self) -> Rational {
        int(self.k as i64 + self.dual_coxeter) * &self.rescale
    }

    pub fn index_of(&self, orbit_labels: &[i64]) -> Option<usize> {
        self.level_weights.iter().position(|w| w == orbit_labels)
    }
}

pub fn level_data(ctx: &FoldingContext, k: u32) -> Result<LevelData> {
    if k == 0 {
        return Err(Error::Parse("level must be at least 1".into()));
    }
    let d = ctx.orbit_datum();
    let theta = d.highest_root();
    let rescale = d.norm2(theta) / int(2);
    let rho = d.weyl_vector();
    let h_ratio = d.inner(rho, theta) / &rescale;
    let dual_coxeter =
        1 + to_i64(&h_ratio).ok_or_else(|| Error::NotIntegral(format!("(ρ, θ)/rescale = {h_ratio}")))?;
    let theta_co = d.coroot(theta);
    let comarks: Vec<i64> = d.fundamental_weights().iter().map(|w| d.inner(w, &theta_co)).map(|q| to_i64(&q)).collect::<Option<_>>()
        .ok_or_else(|| Error::NotIntegral(theta_co.to_string()))?;
    let dual_coxeter_from_comarks = 1 + comarks.iter().sum::<i64>();

    let r = d.rank();
    let mut level_weights = Vec::new();
    let mut cur = vec![0i64; r];
    fn rec(i: usize, left: i64, comarks: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let mut m = 0;
        while m * comarks[i] <= left {
            cur[i] = m;
            rec(i + 1, left - m * comarks[i], comarks, cur, out);
            m += 1;
        }
        cur[i] = 0;
    }
    rec(0, k as i64, &comarks, &mut cur, &mut level_weights);
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> =
        level_weights.into_iter().map(|w| (ctx.base_labels(&w), w)).collect();
    pairs.sort();
    let (base_weights, level_weights): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();

    let shift = int(k as i64 + dual_coxeter) * &rescale;
    let inv = int(1) / &shift;
    let s_points = level_weights.iter().map(|w| (&d.weight_from_labels(w) + rho).scale(&inv)).collect();
    let t_lattice = ctx.lattices.weights_fixed.scaled(&inv);
    let t_group_order = lattice_quotient(&ctx.lattices.lambda_orbit, &t_lattice)?.order();
    Ok(LevelData {
        k,
        rescale,
        dual_coxeter,
        dual_coxeter_from_comarks,
        comarks,
        level_weights,
        base_weights,
        s_points,
        t_group_order,
    })
}

/// `Φ([μ])`: `None` on an affine wall, else `(det w, w •_k μ)`.
pub fn phi_project(ctx: &FoldingContext, level: &LevelData, orbit_labels: &[i64]) -> Result<Option<(i64, Vec<i64>)>> {
    let d = ctx.orbit_datum();
    if orbit_labels.len() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: orbit_labels.len() });
    }
    let shift = level.shift();
    let v = &d.weight_from_labels(orbit_labels) + d.weyl_vector();
    let xi = v.scale(&(int(1) / &shift));
    if d.positive_roots().iter().any(|a| d.inner(a, &xi).is_integer()) {
        return Ok(None);
    }
    let (x0, g) = fold_to_alcove(ctx, &xi)?;
    let lam = &x0.scale(&shift) - d.weyl_vector();
    Ok(Some((g.sign(), d.integral_labels(&lam)?)))
}

/// `Φ` extended linearly.
pub fn phi_ring(ctx: &FoldingContext, level: &LevelData, a: &RingElement) -> Result<RingElement> {
    let mut out = RingElement::new();
    for (k, c) in a {
        if let Some((s, lam)) = phi_project(ctx, level, k)? {
            accumulate(&mut out, lam, s * c);
        }
    }
    Ok(out)
}

/// Character values at the `s` points, for all level weights.
pub struct VerlindeData {
    /// `values[a][p] = χ̃_a(s_p)`.
    pub values: Vec<Vec<Complex64>>,
    /// `|J̃_0(s_p)|²`.
    pub weights: Vec<f64>,
    pub t_group_order: u64,
}

impl VerlindeData {
    pub fn new(tw: &Twining, level: &LevelData, par: Parallelism) -> Result<Self> {
        let phases: Vec<PhaseMap> = level.s_points.iter().map(|s| tw.phase(s)).collect::<Result<_>>()?;
        let zero = vec![0; tw.context().orbit_datum().rank()];
        let weights = par.map(&phases, |p| tw.jantzen_sum(&zero, p).norm_sqr());
        let chars: Vec<FourierPolynomial> =
            level.level_weights.iter().map(|w| tw.orbit_character(w)).collect::<Result<_>>()?;
        let values = par.map(&chars, |c| phases.iter().map(|p| c.evaluate(|k| p.turns(k))).collect());
        Ok(VerlindeData { values, weights, t_group_order: level.t_group_order })
    }

    /// The unrounded sum for indices into the level weights.
    pub fn raw(&self, a: usize, b: usize, c: usize) -> Complex64 {
        let sum: Complex64 = (0..self.weights.len())
            .map(|p| self.values[a][p] * self.values[b][p] * self.values[c][p] * self.weights[p])
            .sum();
        sum / self.t_group_order as f64
    }
}

/// A rounded Verlinde value with its distance from the integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rounded {
    pub value: i64,
    pub residual: f64,
}

fn round_checked(z: Complex64, triple: &str, t_order: u64) -> Result<Rounded> {
    let value = z.re.round();
    let residual = (z - Complex64::new(value, 0.0)).norm();
    if residual >= INTEGRALITY_TOLERANCE || !value.is_finite() {
        return Err(Error::Normalization { triple: triple.to_string(), value: z.re, residual, t_order });
    }
    Ok(Rounded { value: value as i64, residual })
}

/// Multiplicity of `[ν]` in `[λ]·[μ]` at level `k`, from the Verlinde-type sum
/// `(1/|T|) Σ_α |J̃_0(s_α)|² χ̃_λ(s_α) χ̃_μ(s_α) χ̃_{ν*}(s_α)`.
pub fn verlinde_coefficient(tw: &Twining, level: &LevelData, lambda: &[i64], mu: &[i64], nu: &[i64]) -> Result<Rounded> {
    let w0 = longest_element(tw.context().orbit_datum());
    let idx = |w: &[i64]| level.index_of(w).ok_or_else(|| Error::OutsideAlcove(format!("{w:?} is not a level-{} weight", level.k)));
    let (a, b, c) = (idx(lambda)?, idx(mu)?, idx(&dual_labels(&w0, nu))?);
    let data = VerlindeData::new(tw, level, Parallelism::Sequential)?;
    round_checked(data.raw(a, b, c), &format!("{lambda:?},{mu:?},{nu:?}"), level.t_group_order)
}

/// The same multiplicity as `Tr₀(Φ([λ]·[μ]·[ν*]))`.
pub fn algebraic_coefficient(tw: &Twining, level: &LevelData, lambda: &[i64], mu: &[i64], nu: &[i64]) -> Result<i64> {
    let w0 = longest_element(tw.context().orbit_datum());
    let p = tw.orbit_character(lambda)?.mul(&tw.orbit_character(mu)?)?;
    algebraic_from_product(tw, level, &p, &dual_labels(&w0, nu))
}

fn algebraic_from_product(tw: &Twining, level: &LevelData, pair: &FourierPolynomial, nu_dual: &[i64]) -> Result<i64> {
    let triple = pair.mul(&tw.orbit_character(nu_dual)?)?;
    let decomposed = tw.cache().decompose(&triple)?;
    Ok(trace0(&phi_ring(tw.context(), level, &decomposed)?))
}

/// Full table at level `k`, each entry computed by both routes.
#[derive(Clone, Debug)]
pub struct FusionTable {
    pub level: LevelData,
    /// `coefficients[a][b][c]`: multiplicity of weight `c` in `a·b`, all
    /// indices into `level.level_weights`.
    pub coefficients: Vec<Vec<Vec<i64>>>,
    pub max_residual: f64,
}

impl FusionTable {
    pub fn size(&self) -> usize {
        self.level.level_weights.len()
    }

    /// Entry by orbit labels.
    pub fn get(&self, lambda: &[i64], mu: &[i64], nu: &[i64]) -> Option<i64> {
        Some(self.coefficients[self.level.index_of(lambda)?][self.level.index_of(mu)?][self.level.index_of(nu)?])
    }

    /// Nonzero entries keyed by orbit labels.
    pub fn entries(&self) -> BTreeMap<Triple, i64> {
        let w = &self.level.level_weights;
        let n = w.len();
        let mut out = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.coefficients[a][b][c];
                    if v != 0 {
                        out.insert((w[a].clone(), w[b].clone(), w[c].clone()), v);
                    }
                }
            }
        }
        out
    }
}

pub fn fusion_table(ctx: &FoldingContext, k: u32) -> Result<FusionTable> {
    fusion_table_with(ctx, k, DEFAULT_TABLE_BUDGET, Parallelism::default())
}

pub fn fusion_table_with(ctx: &FoldingContext, k: u32, budget: usize, par: Parallelism) -> Result<FusionTable> {
    let level = level_data(ctx, k)?;
    let n = level.level_weights.len();
    let needed = n.saturating_mul(n).saturating_mul(n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let tw = Twining::new(ctx)?;
    let w0 = longest_element(ctx.orbit_datum());
    let duals: Vec<usize> = level
        .level_weights
        .iter()
        .map(|w| level.index_of(&dual_labels(&w0, w)).expect("duality preserves the level"))
        .collect();
    let verlinde = VerlindeData::new(&tw, &level, par)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let rows = par.try_map(&pairs, |&(a, b)| -> Result<Vec<(i64, f64)>> {
        let wa = &level.level_weights[a];
        let wb = &level.level_weights[b];
        let pair = tw.orbit_character(wa)?.mul(&tw.orbit_character(wb)?)?;
        (0..n)
            .map(|c| {
                let triple = format!("{wa:?},{wb:?},{:?}", level.level_weights[c]);
                let v = round_checked(verlinde.raw(a, b, duals[c]), &triple, level.t_group_order)?;
                let alg = algebraic_from_product(&tw, &level, &pair, &level.level_weights[duals[c]])?;
                if alg != v.value {
                    return Err(Error::RouteDisagreement { triple, verlinde: v.value, algebraic: alg });
                }
                Ok((v.value, v.residual))
            })
            .collect()
    })?;
    let mut coefficients = vec![vec![vec![0; n]; n]; n];
    let mut max_residual: f64 = 0.0;
    for ((a, b), row) in pairs.iter().zip(rows) {
        for (c, (v, res)) in row.into_iter().enumerate() {
            coefficients[*a][*b][c] = v;
            max_residual = max_residual.max(res);
        }
    }
    Ok(FusionTable { level, coefficients, max_residual })
}

/// Whether `Φ(a)·Φ(b)` and `Φ(a·b)` agree after projecting the former again.
pub fn phi_is_multiplicative(tw: &Twining, level: &LevelData, a: &RingElement, b: &RingElement) -> Result<bool> {
    let ctx = tw.context();
    let lhs = phi_ring(ctx, level, &ring_product(tw, &phi_ring(ctx, level, a)?, &phi_ring(ctx, level, b)?)?)?;
    let rhs = phi_ring(ctx, level, &ring_product(tw, a, b)?)?;
    Ok(lhs == rhs)
}

/// Largest `|J̃_λ(s)|` over the `s` points; zero when `λ + ρ` lies on an
/// affine wall.
pub fn max_jantzen_at_s_points(tw: &Twining, level: &LevelData, orbit_labels: &[i64]) -> Result<f64> {
    let mut m: f64 = 0.0;
    for s in &level.s_points {
        let p = tw.phase(s)?;
        m = m.max(tw.jantzen_sum(orbit_labels, &p).norm());
    }
    Ok(m)
}
