//! Property tests over random inputs.

use std::sync::OnceLock;

use proptest::prelude::*;
use twinefold::alcove::{fold_to_alcove, fundamental_alcove};
use twinefold::folding::{fold_named, FoldingContext};
use twinefold::fusion::{basis_element, fusion_table, involution, level_data, phi_is_multiplicative, FusionTable};
use twinefold::rational::{rat, RatVec};
use twinefold::rootcore::{
    decompose_into_irreducibles, irreducible_character, parse_datum, weyl_dimension, FourierPolynomial, RootDatum,
    WeylElement,
};
use twinefold::twining::Twining;

const FOLDINGS: &[(&str, &str)] =
    &[("A1", "id"), ("A2", "flip"), ("A3", "flip"), ("A4", "flip"), ("D4", "flip"), ("D4", "rot"), ("E6", "flip")];

fn contexts() -> &'static [FoldingContext] {
    static CELL: OnceLock<Vec<FoldingContext>> = OnceLock::new();
    CELL.get_or_init(|| FOLDINGS.iter().map(|(g, k)| fold_named(g, k).unwrap()).collect())
}

fn small_rational() -> impl Strategy<Value = twinefold::rational::Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

/// A folding index together with a random vector of the base rank.
fn folding_and_vector() -> impl Strategy<Value = (usize, RatVec)> {
    (0..FOLDINGS.len()).prop_flat_map(|i| {
        let r = contexts()[i].base.rank();
        (Just(i), prop::collection::vec(small_rational(), r).prop_map(RatVec))
    })
}

fn datum(label: &str) -> &'static RootDatum {
    static CELL: OnceLock<Vec<(String, RootDatum)>> = OnceLock::new();
    let all = CELL.get_or_init(|| {
        ["A2", "A3", "B2", "B3", "G2"].iter().map(|l| (l.to_string(), parse_datum(l).unwrap())).collect()
    });
    &all.iter().find(|(l, _)| l == label).unwrap().1
}

fn recompose(d: &RootDatum, parts: &std::collections::BTreeMap<Vec<i64>, i64>) -> FourierPolynomial {
    let mut p = FourierPolynomial::zero(d.lattice_tag().clone(), d.rank());
    for (k, c) in parts {
        p = p.add(&irreducible_character(d, k).unwrap().scale(*c)).unwrap();
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_idempotent((i, v) in folding_and_vector()) {
        let c = &contexts()[i];
        let p = c.project(&v).unwrap();
        prop_assert_eq!(c.project(&p).unwrap(), p.clone());
        prop_assert!(c.is_fixed(&p));
    }

    #[test]
    fn folding_into_the_alcove_is_a_retraction((i, v) in folding_and_vector()) {
        let c = &contexts()[i];
        let xi = c.project(&v).unwrap();
        let (x, g) = fold_to_alcove(c, &xi).unwrap();
        prop_assert!(fundamental_alcove(c).contains(c, &x));
        prop_assert_eq!(g.apply(c, &xi), x.clone());
        prop_assert_eq!(fold_to_alcove(c, &x).unwrap().0, x);
        prop_assert!(g.sign() == 1 || g.sign() == -1);
    }

    #[test]
    fn weyl_determinant_is_word_parity(
        label in prop::sample::select(vec!["A3", "B3", "G2"]),
        word in prop::collection::vec(0usize..3, 0..12),
    ) {
        let d = datum(label);
        let word: Vec<usize> = word.into_iter().map(|i| i % d.rank()).collect();
        let w = WeylElement::from_word(d, &word);
        prop_assert_eq!(w.det(), if word.len().is_multiple_of(2) { 1 } else { -1 });
    }

    #[test]
    fn character_mass_is_weyl_dimension(
        label in prop::sample::select(vec!["A2", "B2", "G2", "A3"]),
        labels in prop::collection::vec(0i64..3, 3),
    ) {
        let d = datum(label);
        let lambda = &labels[..d.rank()];
        let chi = irreducible_character(d, lambda).unwrap();
        prop_assert_eq!(chi.mass() as u64, weyl_dimension(d, lambda).unwrap());
    }

    #[test]
    fn tensor_products_recompose(
        label in prop::sample::select(vec!["A2", "B2", "G2"]),
        a in prop::collection::vec(0i64..3, 2),
        b in prop::collection::vec(0i64..3, 2),
    ) {
        let d = datum(label);
        let product = irreducible_character(d, &a).unwrap().mul(&irreducible_character(d, &b).unwrap()).unwrap();
        let parts = decompose_into_irreducibles(d, &product).unwrap();
        prop_assert!(parts.values().all(|&c| c > 0));
        prop_assert_eq!(recompose(d, &parts), product);
    }

    #[test]
    fn twining_character_at_identity_is_an_orbit_dimension(i in 1..FOLDINGS.len(), h in 0i64..4, pick in any::<prop::sample::Index>()) {
        let c = &contexts()[i];
        let weights = c.fixed_dominant_weights(h);
        let w = pick.get(&weights);
        let tw = Twining::new(c).unwrap();
        let chi = tw.character(w).unwrap();
        prop_assert_eq!(chi.poly.mass() as u64, weyl_dimension(c.orbit_datum(), &chi.orbit_labels).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_is_a_ring_map(
        i in prop::sample::select(vec![1usize, 2, 5]),
        k in 1u32..=3,
        a in prop::collection::vec(0i64..4, 2),
        b in prop::collection::vec(0i64..4, 2),
    ) {
        let c = &contexts()[i];
        let r = c.orbit_datum().rank();
        let tw = Twining::new(c).unwrap();
        let level = level_data(c, k).unwrap();
        let a = basis_element(&a.iter().cycle().take(r).copied().collect::<Vec<_>>());
        let b = basis_element(&b.iter().cycle().take(r).copied().collect::<Vec<_>>());
        prop_assert!(phi_is_multiplicative(&tw, &level, &a, &b).unwrap());
    }
}

struct SymmetryCase {
    table: FusionTable,
    dual: Vec<usize>,
}

fn symmetry_cases() -> &'static [SymmetryCase] {
    static CELL: OnceLock<Vec<SymmetryCase>> = OnceLock::new();
    CELL.get_or_init(|| {
        [(1usize, 3u32), (2, 2), (5, 2)]
            .iter()
            .map(|&(i, k)| {
                let c = &contexts()[i];
                let tw = Twining::new(c).unwrap();
                let table = fusion_table(c, k).unwrap();
                let dual = table
                    .level
                    .level_weights
                    .iter()
                    .map(|w| {
                        let d = involution(&tw, &basis_element(w));
                        table.level.index_of(d.keys().next().unwrap()).unwrap()
                    })
                    .collect();
                SymmetryCase { table, dual }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fusion_coefficients_have_s3_symmetry(case in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let s = &symmetry_cases()[case];
        let n = s.table.size();
        let (a, b, c) = (a.index(n), b.index(n), c.index(n));
        let big_n = &s.table.coefficients;
        prop_assert_eq!(big_n[a][b][c], big_n[b][a][c]);
        prop_assert_eq!(big_n[a][b][c], big_n[a][s.dual[c]][s.dual[b]]);
        prop_assert!(big_n[a][b][c] >= 0);
    }
}
