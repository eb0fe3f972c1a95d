//! Realized root data.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, RatMatrix, RatVec, Rational};
use crate::rootcore::cartan::{cartan_from_gram, classify, SimpleType};

/// A reduced root system realized in a rational ambient space.
///
/// Simple roots are vectors of the ambient space; the ambient inner product
/// is `ambient_gram`. For a standard datum the ambient space is spanned by
/// the simple roots themselves.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    tag: Arc<str>,
    ambient_gram: RatMatrix,
    simple_roots: Vec<RatVec>,
    gram: RatMatrix,
    cartan: Vec<Vec<i64>>,
    positive_coords: Vec<Vec<i64>>,
    positive_roots: Vec<RatVec>,
    fundamental_weights: Vec<RatVec>,
    weyl_vector: RatVec,
    highest_root: RatVec,
    highest_short_root: RatVec,
}

/// Standard datum of a simple type, in its own simple-root basis.
pub fn build_root_datum(label: &str, rank: usize) -> Result<RootDatum> {
    parse_datum(&format!("{label}{rank}"))
}

/// Standard datum from a label such as `"E6"`.
pub fn parse_datum(label: &str) -> Result<RootDatum> {
    let t: SimpleType = label.parse()?;
    if t.series == crate::rootcore::cartan::Series::BC {
        return Err(Error::InvalidType {
            label: t.to_string(),
            reason: "BC is non-reduced; use rootcore::bc_system for its vector set".into(),
        });
    }
    standard_datum(t)
}

pub fn standard_datum(t: SimpleType) -> Result<RootDatum> {
    let gram = t.gram();
    let simple: Vec<RatVec> = (0..t.rank).map(|i| RatVec::unit(t.rank, i)).collect();
    RootDatum::realize(Some(t.to_string()), format!("P({t})"), gram, simple)
}

impl RootDatum {
    /// Builds a datum from simple roots inside an ambient space. The label is
    /// computed by Cartan matching when not supplied.
    pub fn realize(
        label: Option<String>,
        tag: impl Into<Arc<str>>,
        ambient_gram: RatMatrix,
        simple_roots: Vec<RatVec>,
    ) -> Result<Self> {
        let n = simple_roots.len();
        if n == 0 {
            return Err(Error::InvalidType { label: "empty".into(), reason: "no simple roots".into() });
        }
        for v in &simple_roots {
            if v.dim() != ambient_gram.rows {
                return Err(Error::DimensionMismatch { expected: ambient_gram.rows, got: v.dim() });
            }
        }
        let gram = RatMatrix::from_fn(n, n, |i, j| simple_roots[i].dot(&simple_roots[j], &ambient_gram));
        let cartan = cartan_from_gram(&gram)?;
        let label = match label {
            Some(l) => l,
            None => classify(&cartan)
                .ok_or_else(|| Error::NotCrystallographic(format!("unrecognized Cartan matrix {cartan:?}")))?,
        };
        let positive_coords = positive_root_closure(&cartan)?;
        let combine = |c: &[i64]| {
            let mut v = RatVec::zeros(ambient_gram.rows);
            for (k, &x) in c.iter().enumerate() {
                if x != 0 {
                    v = &v + &simple_roots[k].scale(&int(x));
                }
            }
            v
        };
        let positive_roots: Vec<RatVec> = positive_coords.iter().map(|c| combine(c)).collect();

        // ϖ_i = Σ_k c_ik α_k with (ϖ_i, α_j) = δ_ij (α_j, α_j)/2.
        let inv = gram.inverse().ok_or_else(|| Error::NotCrystallographic("degenerate Gram matrix".into()))?;
        let half = Rational::new(1.into(), 2.into());
        let fundamental_weights: Vec<RatVec> = (0..n)
            .map(|i| {
                let mut v = RatVec::zeros(ambient_gram.rows);
                for k in 0..n {
                    let c = &gram[(i, i)] * &half * &inv[(i, k)];
                    if !c.is_zero() {
                        v = &v + &simple_roots[k].scale(&c);
                    }
                }
                v
            })
            .collect();
        let weyl_vector = fundamental_weights.iter().fold(RatVec::zeros(ambient_gram.rows), |a, w| &a + w);

        let height = |c: &Vec<i64>| c.iter().sum::<i64>();
        let highest = positive_coords.iter().max_by_key(|c| height(c)).expect("nonempty");
        let norms: Vec<Rational> = positive_roots.iter().map(|r| r.dot(r, &ambient_gram)).collect();
        let short = norms.iter().min().expect("nonempty").clone();
        let highest_short = positive_coords
            .iter()
            .zip(&norms)
            .filter(|(_, n)| **n == short)
            .max_by_key(|(c, _)| height(c))
            .map(|(c, _)| c)
            .expect("nonempty");
        let highest_root = combine(highest);
        let highest_short_root = combine(highest_short);

        Ok(RootDatum {
            label,
            tag: tag.into(),
            ambient_gram,
            simple_roots,
            gram,
            cartan,
            positive_coords,
            positive_roots,
            fundamental_weights,
            weyl_vector,
            highest_root,
            highest_short_root,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Name of the weight lattice that carries characters of this datum.
    pub fn lattice_tag(&self) -> &Arc<str> {
        &self.tag
    }

    pub fn simple_type(&self) -> Option<SimpleType> {
        self.label.parse().ok()
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_gram.rows
    }

    pub fn ambient_gram(&self) -> &RatMatrix {
        &self.ambient_gram
    }

    pub fn simple_roots(&self) -> &[RatVec] {
        &self.simple_roots
    }

    /// Inner products of simple roots.
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots as integer coordinates in the simple roots.
    pub fn positive_coords(&self) -> &[Vec<i64>] {
        &self.positive_coords
    }

    pub fn positive_roots(&self) -> &[RatVec] {
        &self.positive_roots
    }

    pub fn all_roots(&self) -> Vec<RatVec> {
        self.positive_roots.iter().flat_map(|r| [r.clone(), -r]).collect()
    }

    pub fn fundamental_weights(&self) -> &[RatVec] {
        &self.fundamental_weights
    }

    pub fn weyl_vector(&self) -> &RatVec {
        &self.weyl_vector
    }

    pub fn highest_root(&self) -> &RatVec {
        &self.highest_root
    }

    pub fn highest_short_root(&self) -> &RatVec {
        &self.highest_short_root
    }

    pub fn inner(&self, a: &RatVec, b: &RatVec) -> Rational {
        a.dot(b, &self.ambient_gram)
    }

    pub fn norm2(&self, a: &RatVec) -> Rational {
        self.inner(a, a)
    }

    /// `α^∨ = 2α/(α, α)`, with the torus identified with its dual through the
    /// ambient inner product.
    pub fn coroot(&self, a: &RatVec) -> RatVec {
        a.scale(&(int(2) / self.norm2(a)))
    }

    pub fn simple_coroots(&self) -> Vec<RatVec> {
        self.simple_roots.iter().map(|a| self.coroot(a)).collect()
    }

    /// Dynkin labels `⟨λ, α_i^∨⟩` of an ambient vector.
    pub fn dynkin_labels(&self, v: &RatVec) -> Vec<Rational> {
        self.simple_roots
            .iter()
            .zip(0..)
            .map(|(a, i)| int(2) * self.inner(v, a) / &self.gram[(i, i)])
            .collect()
    }

    /// Integral Dynkin labels, or an error if `v` is not in the weight lattice
    /// (or has a component orthogonal to the roots).
    pub fn integral_labels(&self, v: &RatVec) -> Result<Vec<i64>> {
        let labels = self.dynkin_labels(v);
        let out: Option<Vec<i64>> = labels.iter().map(crate::rational::to_i64).collect();
        let out = out.ok_or_else(|| Error::NotIntegral(v.to_string()))?;
        if self.weight_from_labels(&out) != *v {
            return Err(Error::NotIntegral(format!("{v} (not in the span of the roots)")));
        }
        Ok(out)
    }

    pub fn weight_from_labels(&self, labels: &[i64]) -> RatVec {
        let mut v = RatVec::zeros(self.ambient_dim());
        for (l, w) in labels.iter().zip(&self.fundamental_weights) {
            if *l != 0 {
                v = &v + &w.scale(&int(*l));
            }
        }
        v
    }

    pub fn weight_from_rational_labels(&self, labels: &[Rational]) -> RatVec {
        let mut v = RatVec::zeros(self.ambient_dim());
        for (l, w) in labels.iter().zip(&self.fundamental_weights) {
            v = &v + &w.scale(l);
        }
        v
    }

    pub fn is_dominant_labels(labels: &[i64]) -> bool {
        labels.iter().all(|&x| x >= 0)
    }

    /// Ambient vector from coordinates in the simple roots.
    pub fn from_root_coords(&self, c: &[Rational]) -> RatVec {
        let mut v = RatVec::zeros(self.ambient_dim());
        for (x, a) in c.iter().zip(&self.simple_roots) {
            v = &v + &a.scale(x);
        }
        v
    }

    /// Reflection of an ambient vector in the hyperplane orthogonal to `root`.
    pub fn reflect(&self, v: &RatVec, root: &RatVec) -> RatVec {
        let c = int(2) * self.inner(v, root) / self.norm2(root);
        v - &root.scale(&c)
    }

    /// Half the sum of positive roots, computed independently of the weights.
    pub fn half_sum_positive(&self) -> RatVec {
        let s = self.positive_roots.iter().fold(RatVec::zeros(self.ambient_dim()), |a, r| &a + r);
        s.scale(&Rational::new(One::one(), 2.into()))
    }

    /// Whether every long root has squared length 2.
    pub fn is_standard_normalized(&self) -> bool {
        let two = int(2);
        self.positive_roots.iter().map(|r| self.norm2(r)).max() == Some(two)
    }
}

/// Positive roots as simple-root coordinates, by closing the simple roots
/// under simple reflections.
pub fn positive_root_closure(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        order.push(b.clone());
        if order.len() > 10_000 {
            return Err(Error::NotCrystallographic("root closure does not terminate (not of finite type)".into()));
        }
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| b[j] * cartan[i][j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut r = b.clone();
            r[i] -= pairing;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    order.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
    Ok(order)
}

/// Vector set of the non-reduced system BC_n, realized in the C_n Gram
/// matrix: the roots of C_n together with halves of its long roots.
pub fn bc_system(n: usize) -> Result<Vec<RatVec>> {
    let t = SimpleType::new(crate::rootcore::cartan::Series::C, n.max(2))?;
    if n == 1 {
        let half = Rational::new(1.into(), 2.into());
        let a = RatVec::from_ints(&[1]);
        return Ok(vec![a.scale(&half), -&a.scale(&half), a.clone(), -&a]);
    }
    let c = standard_datum(t)?;
    let mut out = c.all_roots();
    let long = int(2);
    let half = Rational::new(1.into(), 2.into());
    for r in c.all_roots() {
        if c.norm2(&r) == long {
            out.push(r.scale(&half));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn a2_has_three_positive_roots() {
        let d = build_root_datum("A", 2).unwrap();
        assert_eq!(d.positive_roots().len(), 3);
        assert_eq!(d.all_roots().len(), 6);
        assert_eq!(d.highest_root(), &RatVec::from_ints(&[1, 1]));
    }

    #[test]
    fn a1_rho_is_half_root() {
        let d = build_root_datum("A", 1).unwrap();
        assert_eq!(d.positive_roots(), &[RatVec::from_ints(&[1])]);
        assert_eq!(d.weyl_vector(), &RatVec(vec![rat(1, 2)]));
    }

    #[test]
    fn f4_root_count_and_highest_root() {
        let d = build_root_datum("F", 4).unwrap();
        assert_eq!(d.all_roots().len(), 48);
        assert_eq!(d.norm2(d.highest_root()), int(2));
        assert_eq!(d.highest_root(), &RatVec::from_ints(&[2, 3, 4, 2]));
        assert_eq!(d.highest_short_root(), &RatVec::from_ints(&[1, 2, 3, 2]));
    }

    #[test]
    fn invalid_types_are_rejected() {
        assert!(build_root_datum("D", 3).is_err());
        assert!(build_root_datum("B", 1).is_err());
        assert!(build_root_datum("BC", 2).is_err());
        assert_eq!(bc_system(2).unwrap().len(), 12);
        assert_eq!(bc_system(1).unwrap().len(), 4);
    }

    #[test]
    fn labels_round_trip() {
        let d = build_root_datum("G", 2).unwrap();
        let w = d.weight_from_labels(&[3, 1]);
        assert_eq!(d.integral_labels(&w).unwrap(), vec![3, 1]);
        assert!(d.integral_labels(&RatVec(vec![rat(1, 7), int(0)])).is_err());
    }
}
