//! Integer lattices inside a rational ambient space.
//!
//! Spans of dependent generators are reduced with an integer row echelon
//! form; quotients are read off the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, null_space, solve_in_span, RatMatrix, RatVec, Rational};

/// A finitely generated abelian group given by its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Normalizes arbitrary cyclic orders into a divisibility chain.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut d: Vec<u64> = orders.into_iter().filter(|&x| x > 1).collect();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
            }
        }
        d.retain(|&x| x > 1);
        FiniteAbelianGroup { invariant_factors: d }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Quotient of a lattice by a sublattice of possibly smaller rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub torsion: FiniteAbelianGroup,
    pub free_rank: usize,
}

/// A lattice given by a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<RatVec>,
    ambient_dim: usize,
}

impl Lattice {
    pub fn from_basis(basis: Vec<RatVec>, ambient_dim: usize) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: v.dim() });
        }
        if crate::rational::rank(&basis) != basis.len() {
            return Err(Error::LatticeIdentity("basis vectors are linearly dependent".into()));
        }
        Ok(Lattice { basis, ambient_dim })
    }

    /// The lattice generated by arbitrary (possibly dependent) vectors.
    pub fn span(generators: &[RatVec], ambient_dim: usize) -> Self {
        let mut frame: Vec<RatVec> = Vec::new();
        for g in generators {
            let mut trial = frame.clone();
            trial.push(g.clone());
            if crate::rational::rank(&trial) == trial.len() {
                frame = trial;
            }
        }
        if frame.is_empty() {
            return Lattice { basis: Vec::new(), ambient_dim };
        }
        let coords: Vec<Vec<Rational>> = generators
            .iter()
            .map(|g| solve_in_span(&frame, g).expect("generator lies in its own span"))
            .collect();
        let den = common_denominator(coords.iter().flatten());
        let rows: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|c| c.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let reduced = echelon(rows, frame.len());
        let den = Rational::from_integer(den);
        let basis = reduced
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| {
                let mut v = RatVec::zeros(ambient_dim);
                for (c, f) in r.iter().zip(&frame) {
                    if !c.is_zero() {
                        v = &v + &f.scale(&(Rational::from_integer(c.clone()) / &den));
                    }
                }
                v
            })
            .collect();
        Lattice { basis, ambient_dim }
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &RatVec) -> Option<Vec<Rational>> {
        solve_in_span(&self.basis, v)
    }

    pub fn contains(&self, v: &RatVec) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Rational::is_integer))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        self.rank() == other.rank() && self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }

    pub fn scaled(&self, c: &Rational) -> Lattice {
        Lattice { basis: self.basis.iter().map(|b| b.scale(c)).collect(), ambient_dim: self.ambient_dim }
    }

    /// Image under a linear map of the ambient space.
    pub fn image(&self, map: &RatMatrix) -> Lattice {
        let gens: Vec<RatVec> = self.basis.iter().map(|b| map.mul_vec(b)).collect();
        Lattice::span(&gens, map.rows)
    }

    /// Intersection with the rational subspace spanned by `subspace`.
    pub fn intersect_subspace(&self, subspace: &[RatVec]) -> Lattice {
        let n = self.rank();
        if n == 0 {
            return self.clone();
        }
        // Rows of `ann` cut out the subspace by the plain coordinate dot product.
        let ann: Vec<RatVec> = if subspace.is_empty() {
            (0..self.ambient_dim).map(|i| RatVec::unit(self.ambient_dim, i)).collect()
        } else {
            null_space(&RatMatrix::from_columns(subspace).transpose())
        };
        if ann.is_empty() {
            return self.clone();
        }
        let cond = RatMatrix::from_fn(ann.len(), n, |i, j| {
            ann[i].iter().zip(self.basis[j].iter()).fold(Rational::zero(), |a, (x, y)| a + x * y)
        });
        let kernel = integer_kernel(&cond);
        let gens: Vec<RatVec> = kernel
            .iter()
            .map(|x| {
                let mut v = RatVec::zeros(self.ambient_dim);
                for (c, b) in x.iter().zip(&self.basis) {
                    if !c.is_zero() {
                        v = &v + &b.scale(&Rational::from_integer(c.clone()));
                    }
                }
                v
            })
            .collect();
        Lattice::span(&gens, self.ambient_dim)
    }

    /// The dual lattice `{v in span(L) : (v, b) in Z for all b in L}`.
    pub fn dual(&self, gram: &RatMatrix) -> Lattice {
        let n = self.rank();
        let g = RatMatrix::from_fn(n, n, |i, j| self.basis[i].dot(&self.basis[j], gram));
        let inv = g.inverse().expect("lattice Gram matrix is nondegenerate");
        let basis = (0..n)
            .map(|j| {
                let mut v = RatVec::zeros(self.ambient_dim);
                for k in 0..n {
                    v = &v + &self.basis[k].scale(&inv[(j, k)]);
                }
                v
            })
            .collect();
        Lattice { basis, ambient_dim: self.ambient_dim }
    }

    /// Integer coordinates of `sub`'s basis in this lattice's basis.
    fn coordinate_matrix(&self, sub: &Lattice) -> Result<Vec<Vec<BigInt>>> {
        sub.basis
            .iter()
            .map(|b| {
                let c = self
                    .coordinates(b)
                    .filter(|c| c.iter().all(Rational::is_integer))
                    .ok_or_else(|| Error::NotSublattice(b.to_string()))?;
                Ok(c.into_iter().map(|x| x.to_integer()).collect())
            })
            .collect()
    }
}

/// `sup / sub` for lattices of equal rank.
pub fn lattice_quotient(sub: &Lattice, sup: &Lattice) -> Result<FiniteAbelianGroup> {
    if sub.rank() != sup.rank() {
        return Err(Error::RankMismatch { sub: sub.rank(), sup: sup.rank() });
    }
    Ok(lattice_quotient_general(sub, sup)?.torsion)
}

/// `sup / sub` allowing `sub` of lower rank; the free part is reported separately.
pub fn lattice_quotient_general(sub: &Lattice, sup: &Lattice) -> Result<LatticeQuotient> {
    let m = sup.coordinate_matrix(sub)?;
    let diag = smith_diagonal(m, sup.rank());
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let orders = diag
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.to_u64().expect("invariant factor fits in u64"));
    Ok(LatticeQuotient {
        torsion: FiniteAbelianGroup::from_cyclic_orders(orders),
        free_rank: sup.rank() - nonzero,
    })
}

/// Integer row echelon form on the first `cols` columns. Row operations are
/// unimodular, so the row lattice is preserved.
fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut top = 0;
    for c in 0..cols {
        while let Some(p) =
            (top..rows.len()).filter(|&r| !rows[r][c].is_zero()).min_by_key(|&r| rows[r][c].magnitude().clone())
        {
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[top][c]);
                let pivot = rows[top].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    rows
}

/// Basis of `{x in Z^n : M x = 0}`.
pub fn integer_kernel(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut data: Vec<Vec<BigInt>> = Vec::with_capacity(cols);
    // Clear denominators row by row of M (column by column of M^T).
    let dens: Vec<BigInt> = (0..rows)
        .map(|i| common_denominator((0..cols).map(|j| &m[(i, j)])))
        .collect();
    for j in 0..cols {
        let mut row: Vec<BigInt> = (0..rows)
            .map(|i| (&m[(i, j)] * Rational::from_integer(dens[i].clone())).to_integer())
            .collect();
        row.extend((0..cols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
        data.push(row);
    }
    echelon(data, rows)
        .into_iter()
        .filter(|r| r[..rows].iter().all(Zero::is_zero))
        .map(|r| r[rows..].to_vec())
        .collect()
}

/// Diagonal of the Smith normal form (unsorted, zeros included) of an
/// `m x n` integer matrix, padded to `min(m, n)` entries.
fn smith_diagonal(mut a: Vec<Vec<BigInt>>, n: usize) -> Vec<BigInt> {
    let m = a.len();
    let k = m.min(n);
    for t in 0..k {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].magnitude().clone());
            let Some((pi, pj)) = pivot else {
                return (0..k)
                    .map(|i| if i < t { a[i][i].magnitude().clone().into() } else { BigInt::zero() })
                    .collect();
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pr = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
    }
    (0..k).map(|i| a[i][i].magnitude().clone().into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn z2(scale: i64) -> Lattice {
        Lattice::from_basis(vec![RatVec::from_ints(&[scale, 0]), RatVec::from_ints(&[0, scale])], 2).unwrap()
    }

    #[test]
    fn quotient_by_doubled_lattice() {
        let g = lattice_quotient(&z2(2), &z2(1)).unwrap();
        assert_eq!(g.invariant_factors, vec![2, 2]);
        assert!(lattice_quotient(&z2(1), &z2(1)).unwrap().is_trivial());
        assert!(matches!(lattice_quotient(&z2(1), &z2(2)), Err(Error::NotSublattice(_))));
    }

    #[test]
    fn cyclic_orders_normalize() {
        assert_eq!(FiniteAbelianGroup::from_cyclic_orders([2, 3]).invariant_factors, vec![6]);
        assert_eq!(FiniteAbelianGroup::from_cyclic_orders([4, 6]).invariant_factors, vec![2, 12]);
        assert_eq!(FiniteAbelianGroup::from_cyclic_orders([2, 2]).to_string(), "Z2 x Z2");
    }

    #[test]
    fn span_of_dependent_generators() {
        let l = Lattice::span(
            &[RatVec::from_ints(&[2, 0]), RatVec::from_ints(&[3, 0]), RatVec::from_ints(&[0, 4])],
            2,
        );
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&RatVec::from_ints(&[1, 0])));
        assert!(!l.contains(&RatVec::from_ints(&[0, 2])));
        assert_eq!(lattice_quotient(&l, &z2(1)).unwrap().invariant_factors, vec![4]);
    }

    #[test]
    fn intersection_with_line() {
        let diag = vec![RatVec(vec![int(1), int(1)])];
        let l = z2(1).intersect_subspace(&diag);
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&RatVec::from_ints(&[1, 1])));
        assert!(!l.contains(&RatVec(vec![rat(1, 2), rat(1, 2)])));
    }

    #[test]
    fn dual_and_free_rank() {
        let gram = RatMatrix::from_fn(2, 2, |i, j| int([[2, -1], [-1, 2]][i][j]));
        let q = z2(1);
        let p = q.dual(&gram);
        assert_eq!(lattice_quotient(&q, &p).unwrap().invariant_factors, vec![3]);
        let line = Lattice::from_basis(vec![RatVec::from_ints(&[2, 0])], 2).unwrap();
        let quo = lattice_quotient_general(&line, &q).unwrap();
        assert_eq!((quo.torsion.invariant_factors.clone(), quo.free_rank), (vec![2], 1));
    }
}
