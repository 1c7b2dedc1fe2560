use std::sync::Arc;

use proptest::prelude::*;

use zetalie::arith::{qi, Q};
use zetalie::associator::{coeff_i, coeff_numeric, respects_depth};
use zetalie::braidlie::{braid_lie, braid_lie_mod_p};
use zetalie::freelie::{lyndon_words, LiePoly};
use zetalie::mzv::{formal_eval, in_m, MzvEvaluator};
use zetalie::ncalg::{default_alphabet, NcSeries};
use zetalie::sda::{self, Derivation};

fn xy_names() -> Vec<String> {
    vec!["x".to_string(), "y".to_string()]
}

fn lie_element(weight: usize) -> impl Strategy<Value = LiePoly> {
    let n = lyndon_words(weight, 2).len();
    prop::collection::vec(-4i64..=4, n)
        .prop_map(move |c| LiePoly::from_lyndon_coords(&xy_names(), weight, &c.into_iter().map(qi).collect::<Vec<_>>()))
}

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 1..=max)
}

fn series(n: usize) -> impl Strategy<Value = NcSeries<Q>> {
    prop::collection::vec((word(n), -3i64..=3), 0..6)
        .prop_map(move |ts| NcSeries::from_terms(default_alphabet(), n, ts.into_iter().map(|(w, c)| (w, qi(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(a in lie_element(2), b in lie_element(3), c in lie_element(2)) {
        prop_assert!(a.bracket(&b).add(&b.bracket(&a)).is_zero());
        let jac = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
        prop_assert!(jac.is_zero());
        prop_assert!(a.bracket(&b).check_lie().is_ok());
    }

    #[test]
    fn lyndon_coordinates_round_trip(coords in prop::collection::vec(-5i64..=5, lyndon_words(6, 2).len())) {
        let coords: Vec<Q> = coords.into_iter().map(qi).collect();
        let f = LiePoly::from_lyndon_coords(&xy_names(), 6, &coords);
        prop_assert_eq!(f.lyndon_coords(6).unwrap(), coords);
    }

    #[test]
    fn shuffle_is_commutative_and_associative(a in series(5), b in series(5), c in series(5)) {
        let ab = a.shuffle_mul(&b).unwrap();
        let ba = b.shuffle_mul(&a).unwrap();
        prop_assert_eq!(ab.terms(), ba.terms());
        let left = ab.shuffle_mul(&c).unwrap();
        let right = a.shuffle_mul(&b.shuffle_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left.terms(), right.terms());
        let one = NcSeries::one(default_alphabet(), 5);
        let a1 = a.shuffle_mul(&one).unwrap();
        prop_assert_eq!(a1.terms(), a.terms());
    }

    #[test]
    fn exp_and_log_are_inverse(a in series(4)) {
        let x = a.sub(&NcSeries::from_terms(default_alphabet(), 4, [(Vec::new(), a.constant_term())])).unwrap();
        let back = x.exp().unwrap().log().unwrap();
        prop_assert_eq!(back.terms(), x.terms());
    }

    #[test]
    fn pure_powers_vanish(n in 1usize..=9, letter in 0u8..2) {
        prop_assert!(coeff_i(&vec![letter; n]).to_string() == "0");
    }

    #[test]
    fn coefficients_respect_weight_and_depth(w in word(7)) {
        prop_assert!(respects_depth(&w, &coeff_i(&w)));
    }

    #[test]
    fn symbolic_and_numeric_coefficients_agree(w in word(6)) {
        let mut ev = MzvEvaluator::new(40);
        let sym = formal_eval(&coeff_i(&w), &mut ev);
        let num = coeff_numeric(&w, 40);
        prop_assert!((&sym.re - &num).log10_abs() < -30.0);
        prop_assert!(sym.im.log10_abs() < -30.0);
    }

    #[test]
    fn duality_of_mzvs(w in word(7)) {
        prop_assume!(in_m(&w));
        let dual: Vec<u8> = w.iter().rev().map(|&l| 1 - l).collect();
        prop_assert!(in_m(&dual));
        let mut ev = MzvEvaluator::new(40);
        let d = &ev.word_value(&w).unwrap() - &ev.word_value(&dual).unwrap();
        prop_assert!(d.log10_abs() < -30.0);
    }

    #[test]
    fn braid_dims_modulo_large_primes(k in 0usize..4) {
        let p = [1_000_000_007u64, 998_244_353, 2_147_483_629, 65_521][k];
        prop_assert_eq!(braid_lie_mod_p(5, 5, p).unwrap().dims(), braid_lie(5, 5).unwrap().dims());
    }
}

fn basis(w: usize) -> Vec<Derivation> {
    sda::solve_dw(w).unwrap()
}

#[test]
fn derivation_coordinates_round_trip() {
    for w in [3, 5, 8, 10] {
        for d in basis(w) {
            let c = sda::coordinates(&d).unwrap();
            let back = LiePoly::from_lyndon_coords(&xy_names(), w, &c);
            assert_eq!(back, d.f);
            let j = serde_json::to_string(&d.to_json()).unwrap();
            let again = Derivation::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
            assert_eq!(again, d);
        }
    }
}

#[test]
fn bracket_closes_in_d() {
    let gens: Vec<Derivation> = [3, 5, 7].iter().map(|&w| basis(w).remove(0)).collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = sda::sda_bracket(a, b).unwrap();
            assert!(!c.f.is_zero());
            assert!(sda::check_conditions(&c.f, c.weight).unwrap().all());
            assert!(sda::in_span(&c, &basis(c.weight)).unwrap());
            // brackets of depth-one generators start in depth two
            assert!(c.depth >= 2);
        }
    }
}

#[test]
fn adapted_basis_matches_filtration() {
    for w in 2..=10 {
        let b = basis(w);
        let dims = sda::filtration_dims(w).unwrap();
        assert_eq!(dims[0], b.len());
        let levels = sda::depth_filtration(w).unwrap();
        for (m, piece) in levels.iter().enumerate() {
            assert_eq!(piece.len(), dims[m], "w={w} m={}", m + 1);
            assert!(piece.iter().all(|d| d.depth > m));
        }
        for d in &b {
            assert_eq!(sda::filtration_level(&d.f), d.depth);
        }
    }
}

#[test]
fn depth_one_generators_have_unit_c() {
    for w in [3, 5, 7, 9] {
        let g = sda::depth_one_generator(w).unwrap().expect("odd weight generator");
        assert_eq!(g.depth, 1);
        assert_eq!(g.c, qi(1));
    }
    for w in [2, 4, 6, 8, 10] {
        assert!(sda::depth_one_generator(w).unwrap().is_none());
    }
}

#[test]
fn solver_equivalences_up_to_weight_ten() {
    for w in 2..=10 {
        let e = sda::equivalence_report(w).unwrap();
        assert!(e.pentagon_implies_antisymmetry, "w={w}");
        assert!(e.bracketed_form_equivalent, "w={w}");
    }
}

#[test]
fn modular_dims_agree_with_exact() {
    for w in 2..=10 {
        assert_eq!(sda::modular_dim(w, 1_000_000_007), basis(w).len(), "w={w}");
    }
}

#[test]
fn psi_ranks_stay_within_bounds() {
    for w in 3..=10 {
        let rep = zetalie::associator::psi_report(w).unwrap();
        let row = sda::nz_bound_row(w, &sda::filtration_dims(w).unwrap());
        for (m, r) in rep.depth_ranks.iter().enumerate() {
            let bound = row.bounds.get(m).or(row.bounds.last()).copied().unwrap_or(0);
            assert!(*r <= bound, "w={w} m={}: rank {r} exceeds {bound}", m + 1);
        }
    }
}

#[test]
fn presented_enveloping_algebra_is_consistent() {
    let lie = Arc::new(braid_lie(5, 4).unwrap());
    let env = zetalie::braidlie::TruncatedEnveloping::new(lie.clone(), 4).unwrap();
    let dims: Vec<usize> = lie.dims();
    let gf = zetalie::braidlie::pbw_generating_function(&dims, 4);
    assert_eq!(env.pbw_dims().iter().map(|&d| d.into()).collect::<Vec<num_bigint::BigInt>>(), gf);
}
