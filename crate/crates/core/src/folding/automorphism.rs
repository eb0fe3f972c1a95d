//! Dynkin diagram automorphisms.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{rat, RatMatrix, Rational};
use crate::rootcore::RootDatum;

/// A permutation of the simple roots preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    permutation: Vec<usize>,
    order: usize,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { permutation: (0..rank).collect(), order: 1 }
    }

    /// Validates `permutation` (0-based, `i ↦ permutation[i]`) against the
    /// Cartan matrix of `datum`.
    pub fn new(datum: &RootDatum, permutation: Vec<usize>) -> Result<Self> {
        let n = datum.rank();
        let mut seen = vec![false; n];
        if permutation.len() != n || permutation.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
            return Err(Error::NotAutomorphism(format!("{permutation:?} is not a permutation of {n} nodes")));
        }
        let a = datum.cartan();
        for i in 0..n {
            for j in 0..n {
                if a[permutation[i]][permutation[j]] != a[i][j] {
                    return Err(Error::NotAutomorphism(format!("{permutation:?}")));
                }
            }
        }
        let mut order = 1;
        let mut power = permutation.clone();
        while power.iter().enumerate().any(|(i, &j)| i != j) {
            power = power.iter().map(|&j| permutation[j]).collect();
            order += 1;
        }
        Ok(DiagramAutomorphism { permutation, order })
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn apply(&self, i: usize) -> usize {
        self.permutation[i]
    }

    pub fn fixed_nodes(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.permutation[i] == i).collect()
    }

    /// Node orbits, each sorted, ordered by their smallest node.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut j = self.permutation[s];
            while j != s {
                seen[j] = true;
                orbit.push(j);
                j = self.permutation[j];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Matrix of the action on simple-root coordinates: `α_i ↦ α_{κ(i)}`.
    pub fn matrix(&self) -> RatMatrix {
        let n = self.rank();
        let mut k = RatMatrix::zeros(n, n);
        for i in 0..n {
            k[(self.permutation[i], i)] = Rational::from_integer(1.into());
        }
        k
    }

    /// `p = (1/|κ|) Σ_j κ^j`.
    pub fn averaging_projection(&self) -> RatMatrix {
        let n = self.rank();
        let k = self.matrix();
        let mut power = RatMatrix::identity(n);
        let mut sum = RatMatrix::zeros(n, n);
        for _ in 0..self.order {
            for i in 0..n {
                for j in 0..n {
                    let v = &sum[(i, j)] + &power[(i, j)];
                    sum[(i, j)] = v;
                }
            }
            power = &k * &power;
        }
        sum.scale(&rat(1, self.order as i64))
    }

    /// Conventional name: `id`, `flip`, `rot`, `rot2`, or `swapNM` (1-based).
    pub fn name(&self, datum: &RootDatum) -> String {
        if self.is_trivial() {
            return "id".into();
        }
        if self.order == 3 {
            return if self.permutation[0] == 2 { "rot".into() } else { "rot2".into() };
        }
        if datum.label() == "D4" {
            let moved: Vec<usize> = (0..4).filter(|&i| self.permutation[i] != i).collect();
            if moved != [2, 3] {
                return format!("swap{}{}", moved[0] + 1, moved[1] + 1);
            }
        }
        "flip".into()
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.permutation.iter().map(|j| (j + 1).to_string()).collect();
        write!(f, "[{}]", images.join(" "))
    }
}

/// The identity followed by every nontrivial Cartan-preserving permutation.
pub fn list_automorphisms(datum: &RootDatum) -> Vec<DiagramAutomorphism> {
    let n = datum.rank();
    let a = datum.cartan();
    let mut found = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(a, 0, &mut perm, &mut used, &mut found);
    let mut out: Vec<DiagramAutomorphism> = found
        .into_iter()
        .map(|p| DiagramAutomorphism::new(datum, p).expect("search only yields automorphisms"))
        .collect();
    out.sort_by_key(|k| (k.order, k.permutation.clone()));
    out
}

fn search(a: &[Vec<i64>], i: usize, perm: &mut [usize], used: &mut [bool], found: &mut Vec<Vec<usize>>) {
    let n = a.len();
    if i == n {
        found.push(perm.to_vec());
        return;
    }
    for c in 0..n {
        if used[c] || a[c][c] != a[i][i] {
            continue;
        }
        if (0..i).all(|j| a[c][perm[j]] == a[i][j] && a[perm[j]][c] == a[j][i]) {
            perm[i] = c;
            used[c] = true;
            search(a, i + 1, perm, used, found);
            used[c] = false;
        }
    }
}

/// Resolves a conventional automorphism name for `datum`.
pub fn parse_automorphism(datum: &RootDatum, name: &str) -> Result<DiagramAutomorphism> {
    let n = datum.rank();
    let bad = |why: &str| Error::Parse(format!("automorphism {name:?} for {}: {why}", datum.label()));
    let name = name.trim();
    match name {
        "id" | "identity" => return Ok(DiagramAutomorphism::identity(n)),
        "flip" => {
            let label = datum.label();
            let perm: Vec<usize> = if label.starts_with('A') && n >= 2 {
                (0..n).map(|i| n - 1 - i).collect()
            } else if label.starts_with('D') {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                p
            } else if label == "E6" {
                vec![5, 1, 4, 3, 2, 0]
            } else {
                return Err(bad("no order-2 diagram symmetry"));
            };
            return DiagramAutomorphism::new(datum, perm);
        }
        "rot" | "rot2" if datum.label() == "D4" => {
            let rot = vec![2, 1, 3, 0];
            let perm = if name == "rot" { rot } else { vec![3, 1, 0, 2] };
            return DiagramAutomorphism::new(datum, perm);
        }
        _ => {}
    }
    if let Some(digits) = name.strip_prefix("swap") {
        let d: Vec<usize> = digits.chars().filter_map(|c| c.to_digit(10)).map(|x| x as usize).collect();
        if d.len() != 2 || d.iter().any(|&x| x == 0 || x > n) || d[0] == d[1] {
            return Err(bad("expected swapNM with two distinct 1-based node indices"));
        }
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(d[0] - 1, d[1] - 1);
        return DiagramAutomorphism::new(datum, p);
    }
    if let Some(list) = name.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let p: std::result::Result<Vec<usize>, _> =
            list.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse::<usize>().map(|x| x.wrapping_sub(1))).collect();
        return DiagramAutomorphism::new(datum, p.map_err(|_| bad("malformed permutation"))?);
    }
    Err(bad("unknown name"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::build_root_datum;

    #[test]
    fn automorphism_counts() {
        for (l, r, count) in [("A", 2, 2), ("A", 5, 2), ("D", 4, 6), ("D", 5, 2), ("E", 6, 2), ("B", 2, 1), ("F", 4, 1)] {
            let d = build_root_datum(l, r).unwrap();
            assert_eq!(list_automorphisms(&d).len(), count, "{l}{r}");
        }
    }

    #[test]
    fn a2_swap() {
        let d = build_root_datum("A", 2).unwrap();
        let all = list_automorphisms(&d);
        assert!(all[0].is_trivial());
        assert_eq!(all[1].permutation(), &[1, 0]);
        assert_eq!(all[1].name(&d), "flip");
    }

    #[test]
    fn d4_names_round_trip() {
        let d = build_root_datum("D", 4).unwrap();
        for k in list_automorphisms(&d) {
            let name = k.name(&d);
            assert_eq!(parse_automorphism(&d, &name).unwrap(), k, "{name}");
        }
        let rot = parse_automorphism(&d, "rot").unwrap();
        assert_eq!(rot.order(), 3);
        assert_eq!(rot.orbits(), vec![vec![0, 2, 3], vec![1]]);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let d = build_root_datum("A", 3).unwrap();
        assert!(matches!(parse_automorphism(&d, "swap12"), Err(Error::NotAutomorphism(_))));
        assert!(parse_automorphism(&d, "rot").is_err());
        assert!(DiagramAutomorphism::new(&d, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn projection_is_idempotent() {
        let d = build_root_datum("A", 5).unwrap();
        let k = parse_automorphism(&d, "flip").unwrap();
        let p = k.averaging_projection();
        assert_eq!(&p * &p, p);
    }
}
