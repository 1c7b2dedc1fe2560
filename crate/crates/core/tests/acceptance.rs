//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRunner};

use zetalie::arith::{q, qi, Q};
use zetalie::associator::{self, Relation};
use zetalie::braidlie::{braid_lie, braid_lie_mod_p, TruncatedEnveloping};
use zetalie::fixed::Fixed;
use zetalie::freelie::{lyndon_words, witt, LiePoly};
use zetalie::mzv::{formal_eval, zeta_eval, FormalMzvPoly, MzvEvaluator, MzvIndex, Symbol};
use zetalie::ncalg::{default_alphabet, shuffle_words, Coeff, NcSeries};
use zetalie::sda;

const DIMS: [usize; 12] = [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2];

// rows F^1..F^5, columns w = 1..12
const FILTRATION: [[usize; 12]; 5] = [
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
];

// rows NZ^{<=1}..NZ^{<=4} and NZ, columns w = 1..12
const NZ_TABLE: [[usize; 12]; 5] = [
    [0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 1],
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2],
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2],
];

const D_SEQ: [u64; 13] = [1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn padded(dims: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|i| dims.get(i).copied().unwrap_or(0)).collect()
}

fn filtration_table() -> Vec<Vec<usize>> {
    (1..=12).map(|w| padded(&sda::filtration_dims(w).unwrap(), 5)).collect()
}

// ---------------------------------------------------------------------------

fn dims_criterion() -> Outcome {
    let t = Instant::now();
    let base: Vec<usize> = (1..=10).map(|w| sda::filtration_dims(w).unwrap()[0]).collect();
    let t_base = t.elapsed();
    let t = Instant::now();
    let ext: Vec<usize> = (11..=12).map(|w| sda::filtration_dims(w).unwrap()[0]).collect();
    let t_ext = t.elapsed();
    let pass = base[..] == DIMS[..10]
        && ext[..] == DIMS[10..]
        && t_base <= Duration::from_secs(300)
        && t_ext <= Duration::from_secs(3600);
    outcome(pass, format!("w<=10 {base:?} in {t_base:.1?}; w=11,12 {ext:?} in {t_ext:.1?}"))
}

fn filtration_criterion(table: &[Vec<usize>]) -> Outcome {
    let mut bad = Vec::new();
    for (wi, col) in table.iter().enumerate() {
        let want: Vec<usize> = FILTRATION.iter().map(|row| row[wi]).collect();
        if *col != want {
            bad.push(format!("w={}: {col:?} != {want:?}", wi + 1));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "F^1..F^5 match for w=1..12".into() } else { bad.join("; ") })
}

fn depth_structure_criterion(table: &[Vec<usize>]) -> Outcome {
    let mut bad = Vec::new();
    for (wi, f) in table.iter().enumerate() {
        let w = wi + 1;
        // f[m-1] = dim F^m
        for m in 1..f.len() {
            if (w + m) % 2 == 1 && f[m - 1] != f[m] {
                bad.push(format!("parity w={w} m={m}"));
            }
            if 2 * m > w && f[m - 1] != 0 {
                bad.push(format!("vanishing w={w} m={m}"));
            }
        }
        let gr1 = f[0] - f[1];
        let want1 = usize::from(w >= 3 && w % 2 == 1);
        if gr1 != want1 {
            bad.push(format!("F1/F2 w={w}: {gr1} != {want1}"));
        }
        let gr2 = f[1] - f[2];
        let want2 = if w % 2 == 1 { 0 } else { (w.max(2) - 2) / 6 };
        if gr2 != want2 {
            bad.push(format!("F2/F3 w={w}: {gr2} != {want2}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "parity, vanishing, F1/F2, F2/F3 hold for w<=12".into() } else { bad.join("; ") })
}

fn ihara_takao_criterion() -> Outcome {
    let it = sda::ihara_takao().unwrap();
    let pass = it.verified && it.unique_up_to_scale && it.a != "0" && it.b != "0";
    outcome(pass, format!("{} [f3,f9] + {} [f5,f7] in F^3 D_12, unique up to scale: {}", it.a, it.b, it.unique_up_to_scale))
}

fn sequences_criterion(table: &[Vec<usize>]) -> Outcome {
    let mut bad = Vec::new();
    let d = sda::d_sequence(12);
    if d[..] != D_SEQ[..] {
        bad.push(format!("d = {d:?}"));
    }
    let mut worst = f64::NEG_INFINITY;
    for (w, &dw) in D_SEQ.iter().enumerate() {
        let r = (&sda::d_closed_form(w, 40) - &Fixed::from_int(dw)).log10_abs();
        worst = worst.max(r);
    }
    if worst >= -20.0 {
        bad.push(format!("closed form residual 1e{worst:.1}"));
    }
    let dims: Vec<usize> = table.iter().map(|f| f[0]).collect();
    let dprime = sda::dprime_sequence(&dims, 12);
    if dprime.iter().zip(&D_SEQ).any(|(a, &b)| *a != BigInt::from(b)) {
        bad.push(format!("d' = {dprime:?}"));
    }
    for (wi, f) in table.iter().enumerate() {
        let w = wi + 1;
        let row = sda::nz_bound_row(w, f);
        for (m, want_row) in NZ_TABLE[..4].iter().enumerate() {
            let got = row.bounds.get(m).or(row.bounds.last()).copied().unwrap_or(0);
            if got != want_row[wi] {
                bad.push(format!("NZ^<={} w={w}: {got} != {}", m + 1, want_row[wi]));
            }
        }
        if row.total != NZ_TABLE[4][wi] {
            bad.push(format!("NZ w={w}: {} != {}", row.total, NZ_TABLE[4][wi]));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("d, d'=d, NZ table ok; closed form within 1e{worst:.1}") } else { bad.join("; ") })
}

fn zeta(k: &[u32], ev: &mut MzvEvaluator) -> Fixed {
    ev.zeta(&MzvIndex::new(k.to_vec()).unwrap())
}

fn numerics_criterion() -> Outcome {
    let mut bad = Vec::new();
    let mut worst_time = Duration::ZERO;
    for digits in [40u32, 80] {
        let tol = -((digits - 10) as f64);
        let mut ev = MzvEvaluator::new(digits);
        let p = ev.pi();
        let z2 = zeta(&[2], &mut ev);
        let z3 = zeta(&[3], &mut ev);
        let z4 = zeta(&[4], &mut ev);
        let checks = [
            ("z(2)-pi^2/6", &z2 - &(&p * &p).div_int(6)),
            ("z(1,2)-z(3)", &zeta(&[1, 2], &mut ev) - &z3),
            ("z(4)-4z(1,3)", &z4 - &zeta(&[1, 3], &mut ev).mul_int(4)),
            ("z(4)-4/3z(2,2)", &z4 - &zeta(&[2, 2], &mut ev).mul_q(&q(4, 3))),
        ];
        for (name, r) in checks {
            if r.log10_abs() >= tol {
                bad.push(format!("{name} at {digits}: 1e{:.1}", r.log10_abs()));
            }
        }
        for n in 1..=5 {
            let e = associator::euler_check(n, digits).unwrap();
            if !e.passed || e.residual_log10 >= tol {
                bad.push(format!("Euler n={n} at {digits}"));
            }
        }
    }
    for k in MzvIndex::all_of_weight(4).iter().chain(&MzvIndex::all_of_weight(3)).chain(&MzvIndex::all_of_weight(2)) {
        let t = Instant::now();
        zeta_eval(k, 40).unwrap();
        worst_time = worst_time.max(t.elapsed());
    }
    if worst_time >= Duration::from_secs(1) {
        bad.push(format!("slowest weight<=4 evaluation {worst_time:.2?}"));
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("all residuals below 1e-(digits-10); slowest eval {worst_time:.1?}") } else { bad.join("; ") })
}

// Reference expansion of Φ_KZ through weight 4, as Lie brackets with MZV
// coefficients plus the ζ(2)²[A,B]²/2 term. `sign4` is the sign of the
// ζ(4)[A,[A,[A,B]]] term.
fn reference_expansion(sign4: i64) -> NcSeries<FormalMzvPoly> {
    let ab = ["A", "B"];
    let a = LiePoly::generator(&ab, 0);
    let b = LiePoly::generator(&ab, 1);
    let ab_ = a.bracket(&b);
    let z = |k: &[u32]| FormalMzvPoly::zeta(MzvIndex::new(k.to_vec()).unwrap());
    let terms: Vec<(FormalMzvPoly, LiePoly)> = vec![
        (z(&[2]).neg(), ab_.clone()),
        (z(&[3]).neg(), a.bracket(&ab_)),
        (z(&[1, 2]), ab_.bracket(&b)),
        (z(&[4]).scale_q(&qi(sign4)), a.bracket(&a.bracket(&ab_))),
        (z(&[1, 3]), a.bracket(&ab_.bracket(&b))),
        (z(&[1, 1, 2]).neg(), ab_.bracket(&b).bracket(&b)),
    ];
    let mut s = NcSeries::one(default_alphabet(), 4);
    for (c, l) in terms {
        for (w, x) in l.terms() {
            s.add_term(w.clone(), c.scale_q(x));
        }
    }
    let lie2 = NcSeries::from_terms(default_alphabet(), 4, ab_.terms().iter().map(|(w, x)| (w.clone(), FormalMzvPoly::from_q(x))));
    let sq = lie2.concat_mul(&lie2).unwrap();
    let z2sq = z(&[2]).mul(&z(&[2])).scale_q(&q(1, 2));
    for (w, x) in sq.terms() {
        s.add_term(w.clone(), x.mul(&z2sq));
    }
    s
}

fn swap<C: Coeff>(s: &NcSeries<C>) -> NcSeries<C> {
    NcSeries::from_terms(s.alphabet().clone(), s.truncation(), s.terms().iter().map(|(w, c)| (w.iter().map(|&l| 1 - l).collect(), c.clone())))
}

fn duality_defect(s: &NcSeries<FormalMzvPoly>, ev: &mut MzvEvaluator) -> f64 {
    let prod = s.concat_mul(&swap(s)).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for (w, c) in prod.terms() {
        let c = if w.is_empty() { c.sub(&FormalMzvPoly::one_c()) } else { c.clone() };
        worst = worst.max(formal_eval(&c, ev).max_abs().log10_abs());
    }
    worst
}

// Weight <= 4 products of MZVs rewritten in the basis ζ(2), ζ(3), ζ(4).
fn reduce_weight4(p: &FormalMzvPoly, ev: &mut MzvEvaluator) -> (FormalMzvPoly, bool) {
    let zs = |k: &[u32]| Symbol::Zeta(MzvIndex::new(k.to_vec()).unwrap());
    let z4 = FormalMzvPoly::zeta(MzvIndex::new(vec![4]).unwrap());
    let z3 = FormalMzvPoly::zeta(MzvIndex::new(vec![3]).unwrap());
    let rules: Vec<(Vec<(Symbol, u32)>, FormalMzvPoly)> = vec![
        (vec![(zs(&[1, 2]), 1)], z3.clone()),
        (vec![(zs(&[1, 3]), 1)], z4.scale_q(&q(1, 4))),
        (vec![(zs(&[2, 2]), 1)], z4.scale_q(&q(3, 4))),
        (vec![(zs(&[1, 1, 2]), 1)], z4.clone()),
        (vec![(zs(&[2]), 2)], z4.scale_q(&q(5, 2))),
    ];
    // each rule is itself checked numerically
    let mut rules_ok = true;
    for (m, rhs) in &rules {
        let mut lhs = FormalMzvPoly::default();
        lhs.add_term(m.clone(), Q::one());
        rules_ok &= formal_eval(&lhs.sub(rhs), ev).max_abs().log10_abs() < -50.0;
    }
    let mut out = FormalMzvPoly::default();
    for (m, c) in p.terms() {
        match rules.iter().find(|(k, _)| k == m) {
            Some((_, rhs)) => out = out.add(&rhs.scale_q(c)),
            None => out.add_term(m.clone(), c.clone()),
        }
    }
    (out, rules_ok)
}

fn associator_criterion() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut ev = MzvEvaluator::new(60);
    let phi = associator::phi_formal(4);

    // The printed ζ(4) sign contradicts duality; the corrected sign is
    // adopted only after checking that it restores Φ(A,B)Φ(B,A) = 1.
    let printed = reference_expansion(1);
    let corrected = reference_expansion(-1);
    let printed_defect = duality_defect(&printed, &mut ev);
    let corrected_defect = duality_defect(&corrected, &mut ev);
    if !(printed_defect > -1.0 && corrected_defect < -50.0) {
        bad.push(format!("sign check: printed 1e{printed_defect:.1}, corrected 1e{corrected_defect:.1}"));
    }

    // Lie-basis coefficients match symbol for symbol.
    for (word, want) in [("AB", "-ζ(2)"), ("AAB", "-ζ(3)"), ("ABB", "ζ(1,2)"), ("AAAB", "-ζ(4)"), ("AABB", "ζ(1,3)"), ("ABBB", "-ζ(1,1,2)")] {
        let w = zetalie::mzv::parse_ab_word(word).unwrap();
        let got = phi.coeff(&w).to_string();
        if got != want || corrected.coeff(&w).to_string() != want {
            bad.push(format!("{word}: {got} != {want}"));
        }
    }
    // All other words agree exactly once both sides are written in ζ(2), ζ(3), ζ(4).
    for w in associator::words_up_to(4) {
        let diff = phi.coeff(&w).sub(&corrected.coeff(&w));
        let (r, rules_ok) = reduce_weight4(&diff, &mut ev);
        if !rules_ok || !r.is_zero_c() {
            bad.push(format!("{}: difference {r}", zetalie::mzv::render_ab_word(&w)));
        }
    }

    for (rel, n) in [
        (Relation::Duality, 6),
        (Relation::Hexagon, 5),
        (Relation::Pentagon, 4),
        (Relation::Projection, Relation::Projection.default_degree()),
        (Relation::Abelianization, Relation::Abelianization.default_degree()),
    ] {
        let r = associator::verify_relation(rel, n, 40).unwrap();
        if !r.passed || r.residual_log10 >= -25.0 {
            bad.push(format!("{} N={n}: {}", rel.name(), r.residual));
        }
    }
    let elapsed = t.elapsed();
    if elapsed > Duration::from_secs(900) {
        bad.push(format!("runtime {elapsed:.1?}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("weight<=4 expansion matches (ζ(4) sign fixed by duality); 5 relations below 1e-25 in {elapsed:.1?}")
        } else {
            bad.join("; ")
        },
    )
}

fn witness_criterion() -> Outcome {
    let mut bad = Vec::new();
    for w in 3..=8 {
        let wt = associator::nz_witness(w, 200, &associator::default_basis_values(w).unwrap()).unwrap();
        let all_verified = wt.coordinates.iter().filter_map(|c| c.relation.as_ref()).all(|r| r.verified);
        if !(wt.relations_verified && all_verified && wt.in_dw) {
            bad.push(format!("w={w}: verified {} in D_w {}", wt.relations_verified, wt.in_dw));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "w=3..8 at 200 digits: relations re-verified, surviving part in D_w".into() } else { bad.join("; ") })
}

fn random_lie(runner: &mut TestRunner, weight: usize) -> LiePoly {
    let n = lyndon_words(weight, 2).len();
    let coords: Vec<Q> = (0..n)
        .map(|_| qi((-3i64..=3).new_tree(runner).unwrap().current()))
        .collect();
    LiePoly::from_lyndon_coords(&["x".to_string(), "y".to_string()], weight, &coords)
}

fn property_criterion() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut runner = TestRunner::new(Config { cases: 24, ..Config::default() });

    // Jacobi and antisymmetry
    for _ in 0..24 {
        let (a, b, c) = (random_lie(&mut runner, 2), random_lie(&mut runner, 3), random_lie(&mut runner, 1));
        let jac = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
        if !jac.is_zero() || !a.bracket(&b).add(&b.bracket(&a)).is_zero() || a.bracket(&b).check_lie().is_err() {
            bad.push("jacobi".to_string());
            break;
        }
    }

    // shuffle product: commutative, associative, counts binomial
    let word = prop::collection::vec(0u8..2, 0..5);
    let shuffle = runner.run(&(word.clone(), word.clone(), word), |(u, v, w)| {
        let uv = shuffle_words(&u, &v);
        prop_assert_eq!(&uv, &shuffle_words(&v, &u));
        let total: u64 = uv.values().sum();
        let binom = (1..=v.len() as u64).fold(1u64, |acc, i| acc * (u.len() as u64 + i) / i);
        prop_assert_eq!(total, binom);
        let s = |x: &[u8]| NcSeries::<Q>::word(default_alphabet(), 15, x);
        let left = s(&u).shuffle_mul(&s(&v)).unwrap().shuffle_mul(&s(&w)).unwrap();
        let right = s(&u).shuffle_mul(&s(&v).shuffle_mul(&s(&w)).unwrap()).unwrap();
        prop_assert_eq!(left.terms(), right.terms());
        Ok(())
    });
    if let Err(e) = shuffle {
        bad.push(format!("shuffle: {e}"));
    }

    // Witt counts
    for r in 2..=3u8 {
        for n in 1..=10 {
            if lyndon_words(n, r).len() as u64 != witt(n as u32, r as u64) {
                bad.push(format!("witt n={n} r={r}"));
            }
        }
    }

    // filtration levels of the adapted basis against the filtration dims
    for w in 2..=10 {
        let basis = sda::solve_dw(w).unwrap();
        let dims = sda::filtration_dims(w).unwrap();
        for (m, &d) in dims.iter().enumerate() {
            let count = basis.iter().filter(|b| sda::filtration_level(&b.f) > m).count();
            if count != d {
                bad.push(format!("filtration w={w} m={}", m + 1));
            }
        }
        if !basis.iter().all(|b| sda::check_conditions(&b.f, w).unwrap().all()) {
            bad.push(format!("conditions w={w}"));
        }
    }

    // solver equivalences
    for w in 2..=10 {
        let e = sda::equivalence_report(w).unwrap();
        if !(e.pentagon_implies_antisymmetry && e.bracketed_form_equivalent) {
            bad.push(format!("equivalence w={w}"));
        }
    }

    // PBW: the five-point sphere braid algebra has 5 generators in degree one
    // and its enveloping algebra has Hilbert series 1/((1-2t)(1-3t))
    let p5 = Arc::new(braid_lie(5, 5).unwrap());
    let env = TruncatedEnveloping::new(p5.clone(), 5).unwrap();
    let mut want = vec![BigInt::zero(); 6];
    want[0] = BigInt::one();
    for k in 2..=3i64 {
        for d in 1..=5 {
            let prev = want[d - 1].clone();
            want[d] += prev * k;
        }
    }
    if env.pbw_dims().iter().zip(&want).any(|(a, b)| BigInt::from(*a) != *b) {
        bad.push(format!("PBW {:?}", env.pbw_dims()));
    }

    // modular against exact
    for w in 2..=10 {
        if sda::modular_dim(w, 1_000_000_007) != sda::filtration_dims(w).unwrap()[0] {
            bad.push(format!("modular w={w}"));
        }
    }
    if braid_lie_mod_p(5, 5, 65_521).unwrap().dims() != p5.dims() {
        bad.push("modular braid dims".into());
    }

    let elapsed = t.elapsed();
    if elapsed > Duration::from_secs(600) {
        bad.push(format!("runtime {elapsed:.1?}"));
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("all property suites pass in {elapsed:.1?}") } else { bad.join("; ") })
}

fn main() {
    let started = Instant::now();
    let dims = dims_criterion();
    let table = filtration_table();
    let results = [
        ("1 dimensions of D_w, w<=12", dims),
        ("2 depth filtration table", filtration_criterion(&table)),
        ("3 depth filtration structure", depth_structure_criterion(&table)),
        ("4 Ihara-Takao combination", ihara_takao_criterion()),
        ("5 d, d' and NZ bounds", sequences_criterion(&table)),
        ("6 MZV numerics", numerics_criterion()),
        ("7 associator coefficients and relations", associator_criterion()),
        ("8 new-zeta witness", witness_criterion()),
        ("9 property suites", property_criterion()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} passed in {:.1?}", results.len() - failed, results.len(), started.elapsed());
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

