//! Exact rational scalars, vectors and matrices.
//!
//! Every coordinate in the crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// A vector of rationals in a fixed ambient space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(pub Vec<Rational>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatVec(self.0.iter().map(|x| x * c).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// Inner product under a symmetric Gram matrix.
    pub fn dot(&self, other: &RatVec, gram: &RatMatrix) -> Rational {
        debug_assert_eq!(self.dim(), gram.rows);
        let mut acc = Rational::zero();
        for i in 0..gram.rows {
            if self.0[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..gram.cols {
                if !other.0[j].is_zero() {
                    row += &gram[(i, j)] * &other.0[j];
                }
            }
            acc += &self.0[i] * row;
        }
        acc
    }

    /// Plain coordinate sum; the height of a vector in a simple-root basis.
    pub fn coordinate_sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |a, x| a + x)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for RatVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RatVec]) -> Self {
        let rows = cols.first().map_or(0, RatVec::dim);
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn column(&self, j: usize) -> RatVec {
        RatVec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        debug_assert_eq!(self.cols, v.dim());
        RatVec(
            (0..self.rows)
                .map(|i| {
                    let mut acc = Rational::zero();
                    for j in 0..self.cols {
                        if !v[j].is_zero() && !self[(i, j)].is_zero() {
                            acc += &self[(i, j)] * &v[j];
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by fraction-free elimination over the rationals.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &piv;
                for k in c..n {
                    let t = &f * &a[(c, k)];
                    a[(r, k)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].clone();
            for k in 0..n {
                a[(c, k)] /= &piv;
                inv[(c, k)] /= &piv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for k in 0..n {
                    let t = &f * &a[(c, k)];
                    a[(r, k)] -= t;
                    let t = &f * &inv[(c, k)];
                    inv[(r, k)] -= t;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o[(k, j)].is_zero() {
                        let t = &self[(i, k)] * &o[(k, j)];
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {}", RatVec((0..self.cols).map(|j| self[(i, j)].clone()).collect()))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut RatMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let piv = a[(row, c)].clone();
        for k in c..a.cols {
            a[(row, k)] /= &piv;
        }
        for r in 0..a.rows {
            if r == row || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for k in c..a.cols {
                let t = &f * &a[(row, k)];
                a[(r, k)] -= t;
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[RatVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m = RatMatrix::from_columns(vectors).transpose();
    rref(&mut m).len()
}

/// Coefficients `x` with `Σ x_i basis_i = v`, if any. `basis` must be linearly
/// independent for the answer to be unique.
pub fn solve_in_span(basis: &[RatVec], v: &RatVec) -> Option<Vec<Rational>> {
    let n = basis.len();
    if n == 0 {
        return v.is_zero().then(Vec::new);
    }
    let dim = v.dim();
    let mut aug = RatMatrix::zeros(dim, n + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..dim {
            aug[(i, j)] = b[i].clone();
        }
    }
    for i in 0..dim {
        aug[(i, n)] = v[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)].clone();
    }
    Some(x)
}

/// Basis of `{x : M x = 0}` for a rational matrix `M`.
pub fn null_space(m: &RatMatrix) -> Vec<RatVec> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = RatVec::zeros(m.cols);
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Integer determinant by Bareiss elimination.
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(rat(3, -6).to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn inverse_and_det() {
        let a = RatMatrix::from_fn(2, 2, |i, j| int([[2, -1], [-1, 2]][i][j]));
        assert_eq!(a.det(), int(3));
        let inv = a.inverse().unwrap();
        assert_eq!(inv[(0, 0)], rat(2, 3));
        assert_eq!(&a * &inv, RatMatrix::identity(2));
        assert_eq!(int_det(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(int_det(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn span_solve_and_kernel() {
        let b = vec![RatVec::from_ints(&[1, 0, 1]), RatVec::from_ints(&[0, 1, 0])];
        let x = solve_in_span(&b, &RatVec::from_ints(&[2, 3, 2])).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve_in_span(&b, &RatVec::from_ints(&[1, 0, 0])).is_none());
        let m = RatMatrix::from_fn(1, 3, |_, j| int([1, 0, -1][j]));
        let k = null_space(&m);
        assert_eq!(k.len(), 2);
        assert_eq!(rank(&k), 2);
    }
}
