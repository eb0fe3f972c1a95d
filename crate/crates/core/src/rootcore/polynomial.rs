//! Sparse Laurent polynomials on a weight lattice.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `Σ c_μ e^μ` with integer coefficients, keyed by integer coordinates of
/// `μ` in the basis of the tagged lattice. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct FourierPolynomial {
    terms: BTreeMap<Vec<i64>, i64>,
    lattice: Arc<str>,
    dim: usize,
}

impl FourierPolynomial {
    pub fn zero(lattice: Arc<str>, dim: usize) -> Self {
        FourierPolynomial { terms: BTreeMap::new(), lattice, dim }
    }

    pub fn constant(lattice: Arc<str>, dim: usize, c: i64) -> Self {
        Self::monomial(lattice, vec![0; dim], c)
    }

    pub fn monomial(lattice: Arc<str>, key: Vec<i64>, c: i64) -> Self {
        let dim = key.len();
        let mut p = Self::zero(lattice, dim);
        p.add_term(key, c);
        p
    }

    pub fn from_terms(lattice: Arc<str>, dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Self {
        let mut p = Self::zero(lattice, dim);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn lattice(&self) -> &Arc<str> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, key: &[i64]) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coefficient(&vec![0; self.dim])
    }

    /// Sum of all coefficients, i.e. the value at the identity.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, key: Vec<i64>, c: i64) {
        debug_assert_eq!(key.len(), self.dim);
        if c == 0 {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice || self.dim != other.dim {
            return Err(Error::LatticeTagMismatch(self.lattice.to_string(), other.lattice.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.lattice.clone(), self.dim);
        }
        FourierPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            lattice: self.lattice.clone(),
            dim: self.dim,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let k: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(k).or_insert(0) += x * y;
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(FourierPolynomial { terms: acc, lattice: self.lattice.clone(), dim: self.dim })
    }

    /// `e^μ ↦ e^{−μ}`; complex conjugation on the compact torus.
    pub fn conjugate(&self) -> Self {
        FourierPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.iter().map(|x| -x).collect(), *v)).collect(),
            lattice: self.lattice.clone(),
            dim: self.dim,
        }
    }

    /// Relabels keys with a map into another lattice.
    pub fn map_keys(&self, lattice: Arc<str>, dim: usize, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        Self::from_terms(lattice, dim, self.terms.iter().map(|(k, v)| (f(k), *v)))
    }

    /// `Σ c_μ e^{2πi φ(μ)}`, where `phase` returns `φ(μ)` in turns.
    pub fn evaluate(&self, phase: impl Fn(&[i64]) -> f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * phase(k)))
            .sum()
    }
}

impl fmt::Debug for FourierPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.lattice)?;
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k:?}: {v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag() -> Arc<str> {
        Arc::from("P(A1)")
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = FourierPolynomial::monomial(tag(), vec![1], 2);
        p.add_term(vec![1], -2);
        assert!(p.is_zero());
    }

    #[test]
    fn product_and_conjugate() {
        let x = FourierPolynomial::from_terms(tag(), 1, [(vec![1], 1), (vec![-1], 1)]);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.coefficient(&[2]), 1);
        assert_eq!(sq.constant_term(), 2);
        assert_eq!(sq.mass(), 4);
        assert_eq!(x.conjugate(), x);
    }

    #[test]
    fn mismatched_lattices_are_rejected() {
        let a = FourierPolynomial::constant(tag(), 1, 1);
        let b = FourierPolynomial::constant(Arc::from("P(B1)"), 1, 1);
        assert!(matches!(a.mul(&b), Err(Error::LatticeTagMismatch(..))));
    }

    #[test]
    fn evaluation_at_a_point() {
        let x = FourierPolynomial::from_terms(tag(), 1, [(vec![1], 1), (vec![-1], 1)]);
        let v = x.evaluate(|k| k[0] as f64 / 4.0);
        assert!(v.norm() < 1e-12);
    }
}
