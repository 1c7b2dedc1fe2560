//! Values checked against independent oracles written here, and against
//! published tables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use zetalie::arith::{q, qi, Q};
use zetalie::associator::{coeff_i, default_basis_values};
use zetalie::fixed::{bits_for_digits, Fixed};
use zetalie::freelie::LiePoly;
use zetalie::mzv::{parse_ab_word, relation_basis, zeta_eval, MzvEvaluator, MzvIndex};
use zetalie::sda;

const DIGITS: u32 = 60;

fn binom(n: u64, k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - k + i) / BigInt::from(i))
}

// Machin's formula, summed exactly.
fn pi_oracle() -> Q {
    let atan_inv = |x: i64, terms: i64| -> Q {
        let mut s = Q::zero();
        for k in 0..terms {
            let t = Q::new(BigInt::one(), BigInt::from(2 * k + 1) * BigInt::from(x).pow((2 * k + 1) as u32));
            s += if k % 2 == 0 { t } else { -t };
        }
        s
    };
    qi(16) * atan_inv(5, 60) - qi(4) * atan_inv(239, 30)
}

// ζ(3) = 5/2 Σ (-1)^{n+1} / (n^3 C(2n, n)).
fn zeta3_oracle() -> Q {
    let mut s = Q::zero();
    for n in 1..=120u64 {
        let t = Q::new(BigInt::one(), BigInt::from(n).pow(3) * binom(2 * n, n));
        s += if n % 2 == 1 { t } else { -t };
    }
    s * q(5, 2)
}

fn fixed(x: &Q) -> Fixed {
    Fixed::from_q(x, bits_for_digits(DIGITS))
}

fn z(k: &[u32]) -> Fixed {
    zeta_eval(&MzvIndex::new(k.to_vec()).unwrap(), DIGITS).unwrap()
}

fn close(a: &Fixed, b: &Fixed, digits: f64) -> bool {
    (a - b).log10_abs() < -digits
}

#[test]
fn even_zeta_values_match_pi_powers() {
    let p = fixed(&pi_oracle());
    let p2 = &p * &p;
    let p4 = &p2 * &p2;
    assert!(close(&z(&[2]), &p2.div_int(6), 55.0));
    assert!(close(&z(&[4]), &p4.div_int(90), 55.0));
    assert!(close(&z(&[1, 3]), &p4.div_int(360), 55.0));
    assert!(close(&z(&[6]), &(&p4 * &p2).div_int(945), 55.0));
}

#[test]
fn zeta_three_matches_apery_series() {
    let oracle = fixed(&zeta3_oracle());
    assert!(close(&z(&[3]), &oracle, 55.0));
    assert!(close(&z(&[1, 2]), &oracle, 55.0));
}

#[test]
fn evaluation_at_fifty_digits() {
    let a = zeta_eval(&MzvIndex::new(vec![3]).unwrap(), 50).unwrap();
    let oracle = Fixed::from_q(&zeta3_oracle(), a.precision());
    assert!(close(&a, &oracle, 48.0));
}

#[test]
fn sum_theorem() {
    for w in 3..=7u32 {
        let total = z(&[w]);
        for depth in 1..w as usize {
            let mut s = Fixed::zero();
            for k in MzvIndex::all_of_weight(w).iter().filter(|k| k.depth() == depth) {
                s = &s + &z(k.entries());
            }
            assert!(close(&s, &total, 50.0), "w={w} depth={depth}");
        }
    }
}

#[test]
fn stuffle_products() {
    let mut ev = MzvEvaluator::new(DIGITS);
    let mut zz = |k: &[u32]| ev.zeta(&MzvIndex::new(k.to_vec()).unwrap());
    let lhs = &zz(&[2]) * &zz(&[3]);
    let rhs = &(&zz(&[2, 3]) + &zz(&[3, 2])) + &zz(&[5]);
    assert!(close(&lhs, &rhs, 55.0));
    let lhs = &zz(&[2]) * &zz(&[2]);
    let rhs = &zz(&[2, 2]).mul_int(2) + &zz(&[4]);
    assert!(close(&lhs, &rhs, 55.0));
}

#[test]
fn mzv_counts_per_weight() {
    for w in 2..=10u32 {
        assert_eq!(MzvIndex::all_of_weight(w).len(), 1 << (w - 2));
    }
    assert!(MzvIndex::new(vec![2, 1]).is_err());
}

#[test]
fn weight_four_relations_are_recovered() {
    let rb = relation_basis(&MzvIndex::all_of_weight(4), 80).unwrap();
    assert_eq!(rb.basis.len(), 1);
    let coeff_of = |k: &[u32]| {
        let idx = MzvIndex::new(k.to_vec()).unwrap();
        let (_, e) = rb.expressions.iter().find(|(x, _)| *x == idx).expect("expression");
        assert_eq!(e.len(), 1);
        e[0].1.clone()
    };
    // ζ(4) = 4ζ(1,3) = 4/3 ζ(2,2)
    assert_eq!(coeff_of(&[1, 3]), "1/4");
    assert_eq!(coeff_of(&[2, 2]), "3/4");
}

#[test]
fn low_degree_associator_terms() {
    for (w, want) in [("AB", "-ζ(2)"), ("AAB", "-ζ(3)"), ("ABB", "ζ(1,2)"), ("AABB", "ζ(1,3)"), ("ABBB", "-ζ(1,1,2)")] {
        assert_eq!(coeff_i(&parse_ab_word(w).unwrap()).to_string(), want, "{w}");
    }
}

#[test]
fn published_generators_f3_and_f5() {
    let (x, y) = LiePoly::xy();
    let b = |a: &LiePoly, c: &LiePoly| a.bracket(c);
    let xy = b(&x, &y);
    let f3 = b(&x, &xy).add(&b(&y, &xy));
    let terms = [
        (2, b(&x, &b(&x, &b(&x, &xy)))),
        (4, b(&y, &b(&x, &b(&x, &xy)))),
        (4, b(&y, &b(&y, &b(&x, &xy)))),
        (2, b(&y, &b(&y, &b(&y, &xy)))),
        (1, b(&xy, &b(&x, &xy))),
        (3, b(&xy, &b(&y, &xy))),
    ];
    let f5 = terms.iter().fold(x.zero_like(), |acc, (c, t)| acc.add(&t.scale(&qi(*c))));
    assert_eq!(sda::solve_dw(3).unwrap()[0].f, f3);
    // the published f5 has c = 2; ours is normalized to c = 1
    assert_eq!(sda::solve_dw(5).unwrap()[0].f.scale(&qi(2)), f5);
}

#[test]
fn published_generator_lists_have_expected_sizes() {
    let d = sda::d_sequence(12);
    let dims = [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2];
    for w in 2..=12 {
        let b = default_basis_values(w).unwrap();
        assert_eq!(b.len() as u64, d[w], "w={w}");
        assert_eq!(b.iter().filter(|v| v.new).count(), dims[w - 1], "w={w}");
    }
}

#[test]
fn braid_algebra_dims_follow_the_fibration() {
    // five-point sphere: free Lie algebras of rank 2 and 3
    let dims = zetalie::braidlie::braid_lie(5, 6).unwrap().dims();
    let want: Vec<usize> =
        (1..=6u32).map(|n| (zetalie::freelie::witt(n, 2) + zetalie::freelie::witt(n, 3)) as usize).collect();
    assert_eq!(dims, want);
}
