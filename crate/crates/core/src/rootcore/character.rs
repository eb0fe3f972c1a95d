//! Irreducible characters by Freudenthal's recursion, Weyl dimensions, and
//! decomposition of invariant polynomials into irreducibles.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, to_i64, RatMatrix, Rational};
use crate::rootcore::datum::RootDatum;
use crate::rootcore::polynomial::FourierPolynomial;

/// Integer-scaled weight geometry of a datum, all in Dynkin labels.
#[derive(Clone, Debug)]
pub struct WeightGeometry {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// `scale · (ϖ_i, ϖ_j)`.
    form: Vec<Vec<i64>>,
    /// `scale · (α_j, α_j)/2`.
    half_norms: Vec<i64>,
    positive_coords: Vec<Vec<i64>>,
    positive_labels: Vec<Vec<i64>>,
    /// `height(μ) · det(A) = Σ_k height_row[k] μ_k`.
    height_row: Vec<i64>,
}

impl WeightGeometry {
    pub fn new(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let cartan = datum.cartan().to_vec();
        let fw = datum.fundamental_weights();
        let q = RatMatrix::from_fn(n, n, |i, j| datum.inner(&fw[i], &fw[j]));
        let halves: Vec<Rational> = (0..n).map(|j| &datum.gram()[(j, j)] / int(2)).collect();
        let mut scale = BigInt::one();
        for i in 0..n {
            scale = scale.lcm(halves[i].denom());
            for j in 0..n {
                scale = scale.lcm(q[(i, j)].denom());
            }
        }
        let s = Rational::from_integer(scale);
        let to = |r: &Rational| to_i64(&(r * &s)).expect("scaled form is integral");
        let form = (0..n).map(|i| (0..n).map(|j| to(&q[(i, j)])).collect()).collect();
        let half_norms = halves.iter().map(to).collect();
        let positive_coords = datum.positive_coords().to_vec();
        let positive_labels = positive_coords
            .iter()
            .map(|c| (0..n).map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum()).collect())
            .collect();
        let a = RatMatrix::from_fn(n, n, |i, j| int(cartan[i][j]));
        let det = a.det();
        let inv = a.inverse().expect("Cartan matrices are invertible");
        let height_row = (0..n)
            .map(|k| {
                let col: Rational = (0..n).fold(Rational::zero(), |acc, j| acc + &inv[(j, k)]);
                to_i64(&(col * &det)).expect("adjugate is integral")
            })
            .collect();
        WeightGeometry { rank: n, cartan, form, half_norms, positive_coords, positive_labels, height_row }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Scaled `(μ, ν)` for Dynkin labels.
    pub fn form(&self, mu: &[i64], nu: &[i64]) -> i64 {
        let mut acc = 0;
        for (m, row) in mu.iter().zip(&self.form) {
            if *m == 0 {
                continue;
            }
            acc += m * row.iter().zip(nu).map(|(f, n)| f * n).sum::<i64>();
        }
        acc
    }

    /// Scaled `(μ, β)` for `μ` in labels and `β` in simple-root coordinates.
    pub fn pair_root(&self, mu: &[i64], beta: &[i64]) -> i64 {
        (0..self.rank).map(|j| beta[j] * mu[j] * self.half_norms[j]).sum()
    }

    /// Height scaled by `det(A)`; comparable between weights.
    pub fn scaled_height(&self, mu: &[i64]) -> i64 {
        mu.iter().zip(&self.height_row).map(|(a, b)| a * b).sum()
    }

    pub fn positive_labels(&self) -> &[Vec<i64>] {
        &self.positive_labels
    }

    /// Labels of `α_i`.
    pub fn simple_root_labels(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|k| self.cartan[k][i]).collect()
    }

    /// Reflects into the dominant chamber.
    pub fn dominant(&self, mu: &[i64]) -> Vec<i64> {
        let mut v = mu.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            let d = v[i];
            for (x, row) in v.iter_mut().zip(&self.cartan) {
                *x -= d * row[i];
            }
        }
        v
    }

    /// The Weyl orbit of a dominant weight.
    pub fn orbit(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(mu.to_vec());
        queue.push_back(mu.to_vec());
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v[i] > 0 {
                    let d = v[i];
                    let w: Vec<i64> = (0..self.rank).map(|k| v[k] - d * self.cartan[k][i]).collect();
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Dominant weights `μ ≤ λ`, in order of increasing depth below `λ`.
    pub fn dominant_weights_below(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.to_vec());
        queue.push_back(lambda.to_vec());
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for r in &self.positive_labels {
                let w: Vec<i64> = v.iter().zip(r).map(|(a, b)| a - b).collect();
                if w.iter().all(|&x| x >= 0) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
            out.push(v);
        }
        out.sort_by_key(|v| (std::cmp::Reverse(self.scaled_height(v)), v.clone()));
        out
    }
}

fn check_dominant(lambda: &[i64], rank: usize) -> Result<()> {
    if lambda.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: lambda.len() });
    }
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    Ok(())
}

/// Multiplicities of the dominant weights of the irreducible module `V(λ)`.
pub fn dominant_multiplicities(geom: &WeightGeometry, lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, i64>> {
    check_dominant(lambda, geom.rank)?;
    let n = geom.rank;
    let rho = vec![1i64; n];
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let top = geom.form(&lr, &lr);
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    for mu in geom.dominant_weights_below(lambda) {
        if mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum: i64 = 0;
        for (beta, labels) in geom.positive_coords.iter().zip(&geom.positive_labels) {
            let mut k = 1;
            loop {
                let shifted: Vec<i64> = mu.iter().zip(labels).map(|(a, b)| a + k * b).collect();
                let m = mult.get(&geom.dominant(&shifted)).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                sum += m * geom.pair_root(&shifted, beta);
                k += 1;
            }
        }
        let mr = shift(&mu);
        let gap = top - geom.form(&mr, &mr);
        debug_assert!(gap > 0);
        let num = 2 * sum;
        if num % gap != 0 {
            return Err(Error::NotIntegral(format!("Freudenthal quotient {num}/{gap} at {mu:?}")));
        }
        mult.insert(mu, num / gap);
    }
    Ok(mult.into_iter().filter(|(_, m)| *m != 0).collect())
}

/// Character of the irreducible module of highest weight `λ` (Dynkin labels).
pub fn irreducible_character(datum: &RootDatum, lambda: &[i64]) -> Result<FourierPolynomial> {
    irreducible_character_with(datum, &WeightGeometry::new(datum), lambda)
}

pub fn irreducible_character_with(
    datum: &RootDatum,
    geom: &WeightGeometry,
    lambda: &[i64],
) -> Result<FourierPolynomial> {
    let dom = dominant_multiplicities(geom, lambda)?;
    let mut p = FourierPolynomial::zero(datum.lattice_tag().clone(), geom.rank);
    for (mu, m) in dom {
        for w in geom.orbit(&mu) {
            p.add_term(w, m);
        }
    }
    Ok(p)
}

/// Dimension of `V(λ)` by the product formula.
pub fn weyl_dimension(datum: &RootDatum, lambda: &[i64]) -> Result<u64> {
    let geom = WeightGeometry::new(datum);
    check_dominant(lambda, geom.rank)?;
    let rho = vec![1i64; geom.rank];
    let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for beta in &geom.positive_coords {
        num *= geom.pair_root(&lr, beta);
        den *= geom.pair_root(&rho, beta);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q.to_u64().expect("dimension fits in u64"))
}

/// Characters of one datum with memoization; shareable across threads.
pub struct CharacterCache<'a> {
    datum: &'a RootDatum,
    geom: WeightGeometry,
    cache: Mutex<HashMap<Vec<i64>, FourierPolynomial>>,
}

impl<'a> CharacterCache<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        CharacterCache { datum, geom: WeightGeometry::new(datum), cache: Mutex::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    pub fn geometry(&self) -> &WeightGeometry {
        &self.geom
    }

    pub fn character(&self, lambda: &[i64]) -> Result<FourierPolynomial> {
        if let Some(p) = self.cache.lock().expect("cache lock").get(lambda) {
            return Ok(p.clone());
        }
        let p = irreducible_character_with(self.datum, &self.geom, lambda)?;
        self.cache.lock().expect("cache lock").insert(lambda.to_vec(), p.clone());
        Ok(p)
    }

    /// Multiplicities `m_λ` with `Σ m_λ χ_λ = poly`.
    pub fn decompose(&self, poly: &FourierPolynomial) -> Result<BTreeMap<Vec<i64>, i64>> {
        if poly.lattice() != self.datum.lattice_tag() {
            return Err(Error::LatticeTagMismatch(poly.lattice().to_string(), self.datum.lattice_tag().to_string()));
        }
        let mut rest = poly.clone();
        let mut out = BTreeMap::new();
        while !rest.is_zero() {
            let (key, c) = rest
                .terms()
                .iter()
                .max_by(|(a, _), (b, _)| {
                    self.geom.scaled_height(a).cmp(&self.geom.scaled_height(b)).then_with(|| a.cmp(b))
                })
                .map(|(k, c)| (k.clone(), *c))
                .expect("nonempty");
            if key.iter().any(|&x| x < 0) {
                return Err(Error::NotInvariant(format!("{key:?}")));
            }
            let chi = self.character(&key)?;
            rest = rest.sub(&chi.scale(c))?;
            out.insert(key, c);
        }
        Ok(out)
    }
}

/// Multiplicities of irreducibles in a Weyl-invariant polynomial.
pub fn decompose_into_irreducibles(datum: &RootDatum, poly: &FourierPolynomial) -> Result<BTreeMap<Vec<i64>, i64>> {
    CharacterCache::new(datum).decompose(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::datum::build_root_datum;

    #[test]
    fn a1_fundamental() {
        let d = build_root_datum("A", 1).unwrap();
        let c = irreducible_character(&d, &[1]).unwrap();
        let expect: BTreeMap<Vec<i64>, i64> = [(vec![-1], 1), (vec![1], 1)].into_iter().collect();
        assert_eq!(c.terms(), &expect);
    }

    #[test]
    fn a2_adjoint() {
        let d = build_root_datum("A", 2).unwrap();
        let c = irreducible_character(&d, &[1, 1]).unwrap();
        assert_eq!(c.constant_term(), 2);
        assert_eq!(c.mass(), 8);
        assert_eq!(weyl_dimension(&d, &[1, 1]).unwrap(), 8);
        assert_eq!(irreducible_character(&d, &[0, 0]).unwrap().terms().len(), 1);
    }

    #[test]
    fn dominance_is_required() {
        let d = build_root_datum("A", 2).unwrap();
        assert!(matches!(irreducible_character(&d, &[1, -1]), Err(Error::NotDominant(_))));
        assert!(matches!(weyl_dimension(&d, &[-1, 0]), Err(Error::NotDominant(_))));
    }

    #[test]
    fn known_dimensions() {
        let g2 = build_root_datum("G", 2).unwrap();
        assert_eq!(weyl_dimension(&g2, &[1, 0]).unwrap(), 7);
        assert_eq!(weyl_dimension(&g2, &[0, 1]).unwrap(), 14);
        let f4 = build_root_datum("F", 4).unwrap();
        assert_eq!(weyl_dimension(&f4, &[0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(weyl_dimension(&f4, &[0, 0, 0, 1]).unwrap(), 26);
        assert_eq!(weyl_dimension(&f4, &[1, 0, 0, 0]).unwrap(), 52);
        let e6 = build_root_datum("E", 6).unwrap();
        assert_eq!(weyl_dimension(&e6, &[1, 0, 0, 0, 0, 0]).unwrap(), 27);
        assert_eq!(weyl_dimension(&e6, &[0, 1, 0, 0, 0, 0]).unwrap(), 78);
    }

    #[test]
    fn clebsch_gordan_on_a1() {
        let d = build_root_datum("A", 1).unwrap();
        let c = irreducible_character(&d, &[1]).unwrap();
        let dec = decompose_into_irreducibles(&d, &c.mul(&c).unwrap()).unwrap();
        let expect: BTreeMap<Vec<i64>, i64> = [(vec![0], 1), (vec![2], 1)].into_iter().collect();
        assert_eq!(dec, expect);
    }

    #[test]
    fn three_times_antithree() {
        let d = build_root_datum("A", 2).unwrap();
        let a = irreducible_character(&d, &[1, 0]).unwrap();
        let b = irreducible_character(&d, &[0, 1]).unwrap();
        let dec = decompose_into_irreducibles(&d, &a.mul(&b).unwrap()).unwrap();
        let expect: BTreeMap<Vec<i64>, i64> = [(vec![0, 0], 1), (vec![1, 1], 1)].into_iter().collect();
        assert_eq!(dec, expect);
    }

    #[test]
    fn non_invariant_input_is_detected() {
        let d = build_root_datum("A", 1).unwrap();
        let p = FourierPolynomial::monomial(d.lattice_tag().clone(), vec![-1], 1);
        assert!(matches!(decompose_into_irreducibles(&d, &p), Err(Error::NotInvariant(_))));
    }
}
