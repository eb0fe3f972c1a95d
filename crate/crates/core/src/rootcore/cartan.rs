//! Simple types, their Gram matrices, and Cartan-matrix classification.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, rat, RatMatrix, Rational};

/// Cartan series letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

/// A simple type such as `A5` or `F4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A | Series::BC => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => rank == 6,
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        let t = SimpleType { series, rank };
        if ok {
            Ok(t)
        } else {
            Err(Error::InvalidType { label: t.to_string(), reason: "unsupported rank for this series".into() })
        }
    }

    /// Order of the Weyl group, or `None` for the non-reduced series.
    pub fn weyl_order(&self) -> Option<u128> {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        Some(match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => 51840,
            Series::F => 1152,
            Series::G => 12,
            Series::BC => return None,
        })
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::BC => n * n + n,
            Series::D => n * (n - 1),
            Series::E => 36,
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Classical dual Coxeter number.
    pub fn dual_coxeter(&self) -> Option<u64> {
        let n = self.rank as u64;
        Some(match self.series {
            Series::A => n + 1,
            Series::B => 2 * n - 1,
            Series::C => n + 1,
            Series::D => 2 * n - 2,
            Series::E => 12,
            Series::F => 9,
            Series::G => 4,
            Series::BC => return None,
        })
    }

    /// Gram matrix of the simple roots in Bourbaki labelling, long roots of
    /// squared length 2.
    pub fn gram(&self) -> RatMatrix {
        let n = self.rank;
        let mut g = RatMatrix::zeros(n, n);
        let link = |g: &mut RatMatrix, i: usize, j: usize, v: Rational| {
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        };
        match self.series {
            Series::A => {
                for i in 0..n {
                    g[(i, i)] = int(2);
                    if i + 1 < n {
                        link(&mut g, i, i + 1, int(-1));
                    }
                }
            }
            Series::B => {
                for i in 0..n {
                    g[(i, i)] = int(2);
                    if i + 1 < n {
                        link(&mut g, i, i + 1, int(-1));
                    }
                }
                g[(n - 1, n - 1)] = int(1);
            }
            Series::C | Series::BC => {
                for i in 0..n {
                    g[(i, i)] = int(1);
                    if i + 1 < n {
                        link(&mut g, i, i + 1, rat(-1, 2));
                    }
                }
                g[(n - 1, n - 1)] = int(2);
                if n >= 2 {
                    link(&mut g, n - 2, n - 1, int(-1));
                }
            }
            Series::D => {
                for i in 0..n {
                    g[(i, i)] = int(2);
                }
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, int(-1));
                }
                link(&mut g, n - 3, n - 1, int(-1));
            }
            Series::E => {
                for i in 0..n {
                    g[(i, i)] = int(2);
                }
                for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
                    link(&mut g, i, j, int(-1));
                }
            }
            Series::F => {
                g[(0, 0)] = int(2);
                g[(1, 1)] = int(2);
                g[(2, 2)] = int(1);
                g[(3, 3)] = int(1);
                link(&mut g, 0, 1, int(-1));
                link(&mut g, 1, 2, int(-1));
                link(&mut g, 2, 3, rat(-1, 2));
            }
            Series::G => {
                g[(0, 0)] = rat(2, 3);
                g[(1, 1)] = int(2);
                link(&mut g, 0, 1, int(-1));
            }
        }
        g
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        cartan_from_gram(&self.gram()).expect("standard types are crystallographic")
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.series {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
            Series::BC => "BC",
        };
        write!(f, "{s}{}", self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (letters, digits) = s.split_at(split);
        let series = match letters.to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            "BC" => Series::BC,
            _ => {
                return Err(Error::InvalidType { label: s.into(), reason: "unknown series".into() });
            }
        };
        let rank = digits
            .parse()
            .map_err(|_| Error::InvalidType { label: s.into(), reason: "missing or malformed rank".into() })?;
        SimpleType::new(series, rank)
    }
}

/// `a_ij = 2 (α_i, α_j) / (α_i, α_i)`, checked to be integral.
pub fn cartan_from_gram(gram: &RatMatrix) -> Result<Vec<Vec<i64>>> {
    let n = gram.rows;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        if gram[(i, i)] <= Rational::zero() {
            return Err(Error::NotCrystallographic(format!("simple root {} has nonpositive norm", i + 1)));
        }
        for j in 0..n {
            let v = int(2) * &gram[(i, j)] / &gram[(i, i)];
            a[i][j] = crate::rational::to_i64(&v).ok_or_else(|| {
                Error::NotCrystallographic(format!("Cartan entry ({}, {}) = {v}", i + 1, j + 1))
            })?;
        }
    }
    Ok(a)
}

/// Candidate types of a given rank, in the order matching is attempted.
fn candidates(rank: usize) -> Vec<SimpleType> {
    [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G]
        .into_iter()
        .filter_map(|s| SimpleType::new(s, rank).ok())
        .collect()
}

/// Identifies a connected Cartan matrix up to relabelling of the nodes.
/// Returns the type and the permutation sending our node `i` to the
/// standard node `perm[i]`. The identity labelling is preferred.
pub fn classify_connected(cartan: &[Vec<i64>]) -> Option<(SimpleType, Vec<usize>)> {
    let n = cartan.len();
    let cands = candidates(n);
    let ident: Vec<usize> = (0..n).collect();
    for t in &cands {
        if t.cartan() == cartan {
            return Some((*t, ident));
        }
    }
    for t in &cands {
        let target = t.cartan();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if match_nodes(cartan, &target, 0, &mut perm, &mut used) {
            return Some((*t, perm));
        }
    }
    None
}

fn match_nodes(a: &[Vec<i64>], b: &[Vec<i64>], i: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
    let n = a.len();
    if i == n {
        return true;
    }
    for c in 0..n {
        if used[c] || a[i][i] != b[c][c] {
            continue;
        }
        if (0..i).all(|j| a[i][j] == b[c][perm[j]] && a[j][i] == b[perm[j]][c]) {
            perm[i] = c;
            used[c] = true;
            if match_nodes(a, b, i + 1, perm, used) {
                return true;
            }
            used[c] = false;
        }
    }
    false
}

/// Connected components of the Dynkin diagram, each sorted by node index.
pub fn components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Classification label of a possibly reducible Cartan matrix, e.g. `"A1xA1"`.
pub fn classify(cartan: &[Vec<i64>]) -> Option<String> {
    let labels: Option<Vec<String>> = components(cartan)
        .into_iter()
        .map(|c| {
            let sub: Vec<Vec<i64>> = c.iter().map(|&i| c.iter().map(|&j| cartan[i][j]).collect()).collect();
            classify_connected(&sub).map(|(t, _)| t.to_string())
        })
        .collect();
    labels.map(|l| l.join("x"))
}
