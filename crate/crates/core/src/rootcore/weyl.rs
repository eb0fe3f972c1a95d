//! Weyl group elements and breadth-first traversal.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::rational::{int, int_det, RatMatrix, RatVec};
use crate::rootcore::datum::RootDatum;

/// Default bound on the number of elements a traversal may produce.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_WEYL_CAP`].
pub const WEYL_CAP_ENV: &str = "TWINEFOLD_WEYL_CAP";

pub fn weyl_cap() -> usize {
    std::env::var(WEYL_CAP_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_WEYL_CAP)
}

/// An element of the Weyl group, stored by its integer actions on simple-root
/// coordinates and on Dynkin labels, together with a word in the simple
/// reflections (`s_{word[0]} s_{word[1]} ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    root_matrix: Vec<Vec<i64>>,
    weight_matrix: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { word: Vec::new(), root_matrix: identity(rank), weight_matrix: identity(rank) }
    }

    /// The simple reflection `s_i`.
    pub fn simple(datum: &RootDatum, i: usize) -> Self {
        let a = datum.cartan();
        let n = datum.rank();
        // s_i(α_j) = α_j − a_ij α_i on root coordinates.
        let mut r = identity(n);
        for j in 0..n {
            r[i][j] -= a[i][j];
        }
        // s_i on labels: d ↦ d − d_i · (labels of α_i), labels of α_i are a_ki.
        let mut w = identity(n);
        for k in 0..n {
            w[k][i] -= a[k][i];
        }
        WeylElement { word: vec![i], root_matrix: r, weight_matrix: w }
    }

    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(datum.rank()), |acc, &i| acc.compose(&Self::simple(datum, i)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            root_matrix: mat_mul(&self.root_matrix, &other.root_matrix),
            weight_matrix: mat_mul(&self.weight_matrix, &other.weight_matrix),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            root_matrix: invert_unimodular(&self.root_matrix),
            weight_matrix: invert_unimodular(&self.weight_matrix),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length_of_word(&self) -> usize {
        self.word.len()
    }

    pub fn root_matrix(&self) -> &[Vec<i64>] {
        &self.root_matrix
    }

    pub fn weight_matrix(&self) -> &[Vec<i64>] {
        &self.weight_matrix
    }

    /// `det(w) = ±1`, by Bareiss elimination on the integer matrix.
    pub fn det(&self) -> i64 {
        int_det(&self.weight_matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.weight_matrix == identity(self.weight_matrix.len())
    }

    /// Action on Dynkin labels.
    pub fn act_labels(&self, labels: &[i64]) -> Vec<i64> {
        mat_vec(&self.weight_matrix, labels)
    }

    /// Action on simple-root coordinates.
    pub fn act_root_coords(&self, coords: &[i64]) -> Vec<i64> {
        mat_vec(&self.root_matrix, coords)
    }

    /// Action on an arbitrary ambient vector. Directions orthogonal to the
    /// roots are fixed.
    pub fn act(&self, datum: &RootDatum, v: &RatVec) -> RatVec {
        let simple = datum.simple_roots();
        self.word.iter().rev().fold(v.clone(), |acc, &i| datum.reflect(&acc, &simple[i]))
    }

    /// Exact matrix of the action on the ambient space.
    pub fn ambient_matrix(&self, datum: &RootDatum) -> RatMatrix {
        let d = datum.ambient_dim();
        let cols: Vec<RatVec> = (0..d).map(|j| self.act(datum, &RatVec::unit(d, j))).collect();
        RatMatrix::from_columns(&cols)
    }
}

fn invert_unimodular(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let r = RatMatrix::from_fn(n, n, |i, j| int(m[i][j]));
    let inv = r.inverse().expect("Weyl matrices are invertible");
    (0..n)
        .map(|i| (0..n).map(|j| crate::rational::to_i64(&inv[(i, j)]).expect("unimodular")).collect())
        .collect()
}

/// Every element of the Weyl group, each once, identity first, with words of
/// minimal length (breadth-first order).
pub fn weyl_traverse(datum: &RootDatum) -> Result<WeylTraversal> {
    weyl_traverse_capped(datum, weyl_cap())
}

pub fn weyl_traverse_capped(datum: &RootDatum, cap: usize) -> Result<WeylTraversal> {
    if let Some(order) = datum.simple_type().and_then(|t| t.weyl_order()) {
        if order > cap as u128 {
            return Err(Error::WeylCapExceeded { label: datum.label().to_string(), order, cap });
        }
    }
    let n = datum.rank();
    let rho = vec![1; n];
    let mut seen = HashSet::new();
    seen.insert(rho);
    let mut queue = VecDeque::new();
    queue.push_back(WeylElement::identity(n));
    let simples = (0..n).map(|i| WeylElement::simple(datum, i)).collect();
    Ok(WeylTraversal { simples, seen, queue, cap, yielded: 0, label: datum.label().to_string() })
}

/// Iterator returned by [`weyl_traverse`].
pub struct WeylTraversal {
    simples: Vec<WeylElement>,
    seen: HashSet<Vec<i64>>,
    queue: VecDeque<WeylElement>,
    cap: usize,
    yielded: usize,
    label: String,
}

impl Iterator for WeylTraversal {
    type Item = Result<WeylElement>;

    fn next(&mut self) -> Option<Self::Item> {
        let w = self.queue.pop_front()?;
        self.yielded += 1;
        if self.yielded > self.cap {
            self.queue.clear();
            return Some(Err(Error::WeylCapExceeded {
                label: self.label.clone(),
                order: self.yielded as u128,
                cap: self.cap,
            }));
        }
        let rho = vec![1; w.weight_matrix.len()];
        for s in &self.simples {
            // Left multiplication keeps words reduced in BFS order.
            let next = s.compose(&w);
            // w·ρ is regular, so it determines w.
            let key = next.act_labels(&rho);
            if self.seen.insert(key) {
                self.queue.push_back(next);
            }
        }
        Some(Ok(w))
    }
}

/// The whole group, collected.
pub fn weyl_group(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    weyl_traverse(datum)?.collect()
}

/// The longest element, found by descending from a strictly anti-dominant
/// chamber.
pub fn longest_element(datum: &RootDatum) -> WeylElement {
    let n = datum.rank();
    let mut w = WeylElement::identity(n);
    loop {
        let img = w.act_labels(&vec![1; n]);
        match img.iter().position(|&x| x > 0) {
            Some(i) => w = WeylElement::simple(datum, i).compose(&w),
            None => return w,
        }
    }
}
