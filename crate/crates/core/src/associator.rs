//! The Drinfel'd associator `Φ_KZ(A,B) = 1 + Σ_W I(W) W`.
//!
//! Coefficients are produced exactly as rational combinations of MZV
//! symbols, then evaluated numerically to check the defining relations and to
//! extract the new-zeta part of `log Φ_KZ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{q_to_string, qi, Q};
use crate::braidlie::{braid_generators, braid_lie, EnvElem, TruncatedEnveloping};
use crate::error::{Error, Result};
use crate::fixed::{sci_from_log10, Complex, Fixed};
use crate::freelie::{lyndon_expansion, lyndon_words, render_word, LiePoly, LiePolyJson, Word};
use crate::mzv::{formal_eval, integer_relation, FormalMzvPoly, IntegerRelation, Monomial, Symbol};
use crate::mzv::{bernoulli, in_m, render_ab_word, word_to_index, MzvEvaluator, MzvIndex, LETTER_A, LETTER_B};
use crate::ncalg::{default_alphabet, shuffle_words, Coeff, NcSeries, SeriesAlgebra, TruncAlgebra};
use crate::sda;

// ---------------------------------------------------------------------------
// Coefficients

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Z(W)` for `W` empty or in `M`.
fn z_symbol(w: &[u8]) -> FormalMzvPoly {
    if w.is_empty() {
        FormalMzvPoly::constant(Q::one())
    } else {
        FormalMzvPoly::zeta(word_to_index(w).expect("word in M"))
    }
}

/// Exact coefficient `I(W)` of the word `W` in `Φ_KZ(A,B)`.
///
/// Writing `W = B^r V A^s` with `V` empty or in `M`,
/// `I(W) = (-1)^{dp W} Σ_{a≤r, b≤s} (-1)^{a+b} Z(f(B^a ⧢ B^{r-a} V A^{s-b} ⧢ A^b))`
/// where `f` drops the words that start with `B` or end with `A`.
pub fn coeff_i(w: &[u8]) -> FormalMzvPoly {
    let r = w.iter().take_while(|&&c| c == LETTER_B).count();
    let rest = &w[r..];
    let s = rest.iter().rev().take_while(|&&c| c == LETTER_A).count();
    let v = &rest[..rest.len() - s];
    let depth = w.iter().filter(|&&c| c == LETTER_B).count();
    let mut acc: BTreeMap<Word, Q> = BTreeMap::new();
    for a in 0..=r {
        for b in 0..=s {
            let mut middle = vec![LETTER_B; r - a];
            middle.extend_from_slice(v);
            middle.extend(std::iter::repeat(LETTER_A).take(s - b));
            let left = shuffle_words(&vec![LETTER_B; a], &middle);
            let sg = sign(a + b);
            for (u, mu) in left {
                for (t, nu) in shuffle_words(&u, &vec![LETTER_A; b]) {
                    if t.is_empty() || in_m(&t) {
                        *acc.entry(t).or_insert_with(Q::zero) += qi(sg * (mu * nu) as i64);
                    }
                }
            }
        }
    }
    let mut out = FormalMzvPoly::default();
    let ds = qi(sign(depth));
    for (t, c) in acc {
        if !c.is_zero() {
            out = out.add(&z_symbol(&t).scale_q(&(&c * &ds)));
        }
    }
    out
}

/// All words over `A, B` of length `1..=n`, shortest first.
pub fn words_up_to(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for k in 1..=n {
        for i in 0..(1usize << k) {
            out.push((0..k).map(|j| ((i >> (k - 1 - j)) & 1) as u8).collect());
        }
    }
    out
}

/// `Φ_KZ(A,B)` truncated at degree `n` with exact symbolic coefficients.
pub fn phi_formal(n: usize) -> NcSeries<FormalMzvPoly> {
    let mut s = NcSeries::one(default_alphabet(), n);
    for w in words_up_to(n) {
        let c = coeff_i(&w);
        if !c.is_zero_c() {
            s.add_term(w, c);
        }
    }
    s
}

/// Numerical `Φ_KZ(A,B)` at the evaluator's precision.
pub fn phi_numeric(n: usize, ev: &mut MzvEvaluator) -> NcSeries<Complex> {
    let formal = phi_formal(n);
    let mut s = NcSeries::zero(default_alphabet(), n);
    for (w, c) in formal.terms() {
        s.add_term(w.clone(), formal_eval(c, ev));
    }
    s
}

/// Numerical `log Φ_KZ(A,B)`.
pub fn log_phi_numeric(n: usize, ev: &mut MzvEvaluator) -> Result<NcSeries<Complex>> {
    phi_numeric(n, ev).log()
}

fn swap_letters<C: Coeff>(s: &NcSeries<C>) -> NcSeries<C> {
    NcSeries::from_terms(
        s.alphabet().clone(),
        s.truncation(),
        s.terms().iter().map(|(w, c)| (w.iter().map(|&l| 1 - l).collect::<Word>(), c.clone())),
    )
}

// ---------------------------------------------------------------------------
// Relations

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `Φ(A,B) Φ(B,A) = 1`
    Duality,
    /// `e^{πiA} Φ(C,A) e^{πiC} Φ(B,C) e^{πiB} Φ(A,B) = 1` with `A+B+C = 0`
    Hexagon,
    /// the five-term product in the enveloping algebra of the five-strand
    /// braid Lie algebra
    Pentagon,
    /// the pentagon product under `x12, x23, x34, x45, x51 ↦ A, B, A, 0, 0`
    /// compared with the duality product
    Projection,
    /// `Φ` maps to 1 in the commutative quotient
    Abelianization,
}

impl Relation {
    pub const ALL: [Relation; 5] =
        [Relation::Duality, Relation::Hexagon, Relation::Pentagon, Relation::Projection, Relation::Abelianization];

    pub fn parse(s: &str) -> Result<Relation> {
        match s.to_ascii_lowercase().as_str() {
            "duality" | "duality-i" | "i" => Ok(Relation::Duality),
            "hexagon" | "hexagon-ii" | "ii" => Ok(Relation::Hexagon),
            "pentagon" | "pentagon-iii" | "iii" => Ok(Relation::Pentagon),
            "projection" => Ok(Relation::Projection),
            "abelianization" | "abelian" => Ok(Relation::Abelianization),
            _ => Err(Error::InvalidInput(format!(
                "unknown relation {s:?}; expected duality, hexagon, pentagon, projection or abelianization"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Duality => "duality",
            Relation::Hexagon => "hexagon",
            Relation::Pentagon => "pentagon",
            Relation::Projection => "projection",
            Relation::Abelianization => "abelianization",
        }
    }

    /// Degree used when none is given.
    pub fn default_degree(&self) -> usize {
        match self {
            Relation::Duality => 6,
            Relation::Hexagon => 5,
            Relation::Pentagon | Relation::Projection => 4,
            Relation::Abelianization => 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: Relation,
    pub degree: usize,
    pub digits: u32,
    /// largest absolute coefficient of the defect, in scientific notation
    pub residual: String,
    pub residual_log10: f64,
    pub tolerance_log10: f64,
    pub passed: bool,
}

/// Residuals must stay below `10^-(digits - RELATION_SLACK_DIGITS)`.
pub const RELATION_SLACK_DIGITS: u32 = 15;

fn max_defect<C: Coeff>(s: &NcSeries<C>, one: bool, abs: impl Fn(&C) -> Fixed) -> Fixed {
    let mut worst = Fixed::zero();
    let mut seen_empty = false;
    for (w, c) in s.terms() {
        let d = if w.is_empty() && one {
            seen_empty = true;
            abs(&c.sub(&C::one_c()))
        } else {
            abs(c)
        };
        if d > worst {
            worst = d;
        }
    }
    if one && !seen_empty {
        worst = Fixed::one();
    }
    worst
}

fn env_defect(e: &EnvElem<Complex>) -> Fixed {
    let mut worst = Fixed::zero();
    let mut seen_empty = false;
    for (m, c) in e {
        let d = if m.is_empty() {
            seen_empty = true;
            (c - &Complex::one()).max_abs()
        } else {
            c.max_abs()
        };
        if d > worst {
            worst = d;
        }
    }
    if !seen_empty {
        worst = Fixed::one();
    }
    worst
}

/// Evaluates `phi` at images in a truncated algebra.
fn phi_at<T: TruncAlgebra<Complex>>(phi: &NcSeries<Complex>, x: &T::Elem, y: &T::Elem, target: &T) -> Result<T::Elem> {
    phi.substitute(&[x.clone(), y.clone()], target)
}

/// Numerically checks one defining relation at truncation degree `n`.
pub fn verify_relation(rel: Relation, n: usize, digits: u32) -> Result<RelationReport> {
    if n < 1 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if digits < 20 {
        return Err(Error::InvalidInput("relation checks need at least 20 digits".into()));
    }
    let mut ev = MzvEvaluator::new(digits);
    let phi = phi_numeric(n, &mut ev);
    let abs = |c: &Complex| c.max_abs();
    let residual = match rel {
        Relation::Duality => max_defect(&phi.concat_mul(&swap_letters(&phi))?, true, abs),
        Relation::Abelianization => {
            let ab = phi.abelianize();
            let mut worst = Fixed::zero();
            for (e, c) in &ab {
                let d = if e.iter().all(|&k| k == 0) { (c - &Complex::one()).max_abs() } else { c.max_abs() };
                if d > worst {
                    worst = d;
                }
            }
            worst
        }
        Relation::Hexagon => {
            let alg = SeriesAlgebra { alphabet: default_alphabet(), n };
            let a: NcSeries<Complex> = NcSeries::letter(default_alphabet(), n, LETTER_A);
            let b: NcSeries<Complex> = NcSeries::letter(default_alphabet(), n, LETTER_B);
            let c = a.add(&b)?.neg();
            let pi_i = Complex::new(Fixed::zero(), ev.pi());
            let e = |x: &NcSeries<Complex>| x.scale(&pi_i).exp();
            let mut prod = e(&a)?;
            prod = prod.concat_mul(&phi_at(&phi, &c, &a, &alg)?)?;
            prod = prod.concat_mul(&e(&c)?)?;
            prod = prod.concat_mul(&phi_at(&phi, &b, &c, &alg)?)?;
            prod = prod.concat_mul(&e(&b)?)?;
            prod = prod.concat_mul(&phi)?;
            max_defect(&prod, true, abs)
        }
        Relation::Pentagon => {
            let lie = Arc::new(braid_lie(5, n)?);
            let u = TruncatedEnveloping::new(lie.clone(), n)?;
            let gens = braid_generators(5);
            let x = |i: usize, j: usize| -> EnvElem<Complex> {
                let g = gens.iter().position(|&p| p == (i.min(j), i.max(j))).expect("generator");
                u.from_lie(&lie.generator(g), 1)
            };
            let mut prod: EnvElem<Complex> = TruncAlgebra::<Complex>::one(&u);
            for (p, q) in pentagon_product_order() {
                let f = phi_at(&phi, &x(p.0, p.1), &x(q.0, q.1), &u)?;
                prod = u.env_mul(&prod, &f);
            }
            env_defect(&prod)
        }
        Relation::Projection => {
            let alg = SeriesAlgebra { alphabet: default_alphabet(), n };
            let a: NcSeries<Complex> = NcSeries::letter(default_alphabet(), n, LETTER_A);
            let b: NcSeries<Complex> = NcSeries::letter(default_alphabet(), n, LETTER_B);
            let zero = NcSeries::zero(default_alphabet(), n);
            let image = |g: (usize, usize)| match g {
                (1, 2) | (3, 4) => a.clone(),
                (2, 3) => b.clone(),
                _ => zero.clone(),
            };
            let mut prod = NcSeries::one(default_alphabet(), n);
            for (p, q) in pentagon_product_order() {
                prod = prod.concat_mul(&phi_at(&phi, &image(p), &image(q), &alg)?)?;
            }
            let duality = phi.concat_mul(&swap_letters(&phi))?;
            max_defect(&prod.sub(&duality)?, false, abs)
        }
    };
    let l = residual.log10_abs();
    let tol = -((digits - RELATION_SLACK_DIGITS) as f64);
    Ok(RelationReport {
        relation: rel,
        degree: n,
        digits,
        residual: sci_from_log10(l, 1),
        residual_log10: round3(l),
        tolerance_log10: tol,
        passed: l < tol,
    })
}

fn round3(x: f64) -> f64 {
    if x.is_finite() {
        (x * 1000.0).round() / 1000.0
    } else {
        -1.0e9
    }
}

/// Factor order of the pentagon product:
/// `Φ(x12,x23) Φ(x34,x45) Φ(x51,x12) Φ(x23,x34) Φ(x45,x51)`.
pub fn pentagon_product_order() -> [((usize, usize), (usize, usize)); 5] {
    [((1, 2), (2, 3)), ((3, 4), (4, 5)), ((5, 1), (1, 2)), ((2, 3), (3, 4)), ((4, 5), (5, 1))]
}

// ---------------------------------------------------------------------------
// Lie coordinates of numerical series

/// Lyndon coordinates of the weight-`k` part of a numerical series, with the
/// largest coefficient left over after elimination (zero for Lie elements).
pub fn numeric_lyndon_coords(s: &NcSeries<Complex>, k: usize) -> (Vec<(Word, Complex)>, Fixed) {
    let mut rest: BTreeMap<Word, Complex> =
        s.terms().iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect();
    let alphabet = s.alphabet().to_vec();
    let mut coords = Vec::new();
    for l in lyndon_words(k, 2) {
        let c = rest.get(&l).cloned().unwrap_or_else(Complex::zero);
        if !c.is_zero() {
            for (w, x) in lyndon_expansion(&l, &alphabet).terms() {
                let e = rest.entry(w.clone()).or_insert_with(Complex::zero);
                *e = &*e - &c.scale_q(x);
            }
        }
        coords.push((l, c));
    }
    let mut worst = Fixed::zero();
    for c in rest.values() {
        let d = c.max_abs();
        if d > worst {
            worst = d;
        }
    }
    (coords, worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct LieCheck {
    pub weight: usize,
    pub residual_log10: f64,
    pub is_lie: bool,
}

/// Checks numerically that each homogeneous part of `log Φ_KZ` is a Lie
/// element.
pub fn log_phi_lie_check(n: usize, digits: u32) -> Result<Vec<LieCheck>> {
    let mut ev = MzvEvaluator::new(digits);
    let lg = log_phi_numeric(n, &mut ev)?;
    Ok((1..=n)
        .map(|k| {
            let (_, r) = numeric_lyndon_coords(&lg, k);
            let l = r.log10_abs();
            LieCheck { weight: k, residual_log10: round3(l), is_lie: l < -((digits - 10) as f64) }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Euler's formula

#[derive(Clone, Debug, Serialize)]
pub struct EulerCheck {
    pub n: usize,
    pub digits: u32,
    pub bernoulli: String,
    pub residual_log10: f64,
    pub passed: bool,
}

/// `|ζ(2n) - (-1)^{n+1} (2π)^{2n} B_{2n} / (2 (2n)!)|` with `B_2 = 1/6`.
pub fn euler_check(n: usize, digits: u32) -> Result<EulerCheck> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let mut ev = MzvEvaluator::new(digits);
    let k = MzvIndex::new(vec![2 * n as u32])?;
    let z = ev.zeta(&k);
    let b = bernoulli(2 * n);
    let mut fact = BigInt::one();
    for i in 1..=(2 * n) {
        fact *= i;
    }
    let coeff = &b * Q::new(BigInt::from(sign(n + 1)), BigInt::from(2) * fact);
    let two_pi = ev.pi().mul_int(2);
    let target = two_pi.powi(2 * n as u32).mul_q(&coeff);
    let l = (&z - &target).log10_abs();
    Ok(EulerCheck {
        n,
        digits,
        bernoulli: q_to_string(&b),
        residual_log10: round3(l),
        passed: l < -((digits - 10) as f64),
    })
}

// ---------------------------------------------------------------------------
// New-zeta witness

/// A spanning value of `Z_w`: a monomial in `π` and MZVs.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisValue {
    pub monomial: Monomial,
    /// not a product of lower-weight values
    pub new: bool,
}

impl BasisValue {
    pub fn render(&self) -> String {
        FormalMzvPoly::default().add(&monomial_poly(&self.monomial)).to_string()
    }
}

fn monomial_poly(m: &Monomial) -> FormalMzvPoly {
    let mut p = FormalMzvPoly::default();
    p.add_term(m.clone(), Q::one());
    p
}

/// Parses `"pi^2*z(3)"`, `"z(3)^2"`, `"z(3,5)"`; a leading `!` marks a new
/// generator.
fn parse_basis_value(s: &str) -> BasisValue {
    let (new, body) = match s.strip_prefix('!') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let mut m: BTreeMap<Symbol, u32> = BTreeMap::new();
    for factor in body.split('*') {
        let (base, exp) = match factor.rsplit_once('^') {
            Some((b, e)) if !b.ends_with('(') => (b, e.parse::<u32>().expect("exponent")),
            _ => (factor, 1),
        };
        let sym = if base == "pi" {
            Symbol::Pi
        } else {
            let inner = base.strip_prefix("z(").and_then(|t| t.strip_suffix(')')).expect("z(...)");
            Symbol::Zeta(MzvIndex::parse(inner).expect("admissible index"))
        };
        *m.entry(sym).or_insert(0) += exp;
    }
    BasisValue { monomial: m.into_iter().collect(), new }
}

const BASIS_TABLE: &[(usize, &[&str])] = &[
    (2, &["pi^2"]),
    (3, &["!z(3)"]),
    (4, &["pi^4"]),
    (5, &["pi^2*z(3)", "!z(5)"]),
    (6, &["pi^6", "z(3)^2"]),
    (7, &["pi^4*z(3)", "pi^2*z(5)", "!z(7)"]),
    (8, &["pi^8", "pi^2*z(3)^2", "z(3)*z(5)", "!z(3,5)"]),
    (9, &["pi^6*z(3)", "pi^4*z(5)", "pi^2*z(7)", "z(3)^3", "!z(9)"]),
    (10, &["pi^10", "pi^4*z(3)^2", "pi^2*z(3)*z(5)", "pi^2*z(3,5)", "z(3)*z(7)", "z(5)^2", "!z(3,7)"]),
    (
        11,
        &[
            "pi^8*z(3)",
            "pi^6*z(5)",
            "pi^4*z(7)",
            "pi^2*z(3)^3",
            "pi^2*z(9)",
            "z(3)^2*z(5)",
            "z(3)*z(3,5)",
            "!z(11)",
            "!z(2,1,8)",
        ],
    ),
    (
        12,
        &[
            "pi^12",
            "pi^6*z(3)^2",
            "pi^4*z(3)*z(5)",
            "pi^4*z(3,5)",
            "pi^2*z(3)*z(7)",
            "pi^2*z(5)^2",
            "pi^2*z(3,7)",
            "z(3)^4",
            "z(3)*z(9)",
            "z(5)*z(7)",
            "!z(3,9)",
            "!z(2,1,1,8)",
        ],
    ),
];

/// Default spanning list of `Z_w` for `2 ≤ w ≤ 12`.
pub fn default_basis_values(w: usize) -> Result<Vec<BasisValue>> {
    BASIS_TABLE
        .iter()
        .find(|(k, _)| *k == w)
        .map(|(_, l)| l.iter().map(|s| parse_basis_value(s)).collect())
        .ok_or_else(|| Error::InvalidInput(format!("no default spanning list at weight {w}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCoordinate {
    /// Lyndon word in `A, B`
    pub word: String,
    /// `(basis value, rational coefficient)` pairs
    pub decomposition: Vec<(String, String)>,
    pub relation: Option<IntegerRelation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NzWitness {
    pub weight: usize,
    pub digits: u32,
    pub basis: Vec<String>,
    pub new_generators: Vec<String>,
    pub coordinates: Vec<WitnessCoordinate>,
    /// one exact Lie element per new generator: the coefficient of that
    /// generator after discarding products and powers of `π`
    pub surviving: Vec<(String, LiePolyJson)>,
    pub dim_dw: usize,
    pub relations_verified: bool,
    pub in_dw: bool,
}

fn basis_numbers(basis: &[BasisValue], ev: &mut MzvEvaluator) -> Vec<Fixed> {
    basis.iter().map(|b| formal_eval(&monomial_poly(&b.monomial), ev).re).collect()
}

/// Extracts the new-zeta part of the weight-`w` piece of `log Φ_KZ` and
/// checks that it lies in `NZ_w ⊗ D_w`.
///
/// Each Lyndon coordinate is decomposed over the spanning list by integer
/// relation detection, verified at twice the precision; the decompositions
/// are empirical.
pub fn nz_witness(w: usize, digits: u32, basis: &[BasisValue]) -> Result<NzWitness> {
    if w < 2 {
        return Err(Error::InvalidInput("weight must be at least 2".into()));
    }
    let mut lo = MzvEvaluator::new(digits);
    let mut hi = MzvEvaluator::new(2 * digits);
    let coords_lo = numeric_lyndon_coords(&log_phi_numeric(w, &mut lo)?, w).0;
    let coords_hi = numeric_lyndon_coords(&log_phi_numeric(w, &mut hi)?, w).0;
    let b_lo = basis_numbers(basis, &mut lo);
    let b_hi = basis_numbers(basis, &mut hi);
    let tiny = -(digits as f64) * 0.8;
    let new_idx: Vec<usize> = basis.iter().enumerate().filter(|(_, b)| b.new).map(|(i, _)| i).collect();
    let alphabet = vec!["A".to_string(), "B".to_string()];
    let mut surviving: Vec<BTreeMap<Word, Q>> = vec![BTreeMap::new(); new_idx.len()];
    let mut coordinates = Vec::new();
    let mut verified = true;
    for ((word, c_lo), (_, c_hi)) in coords_lo.iter().zip(&coords_hi) {
        if c_lo.re.log10_abs() < tiny && c_hi.re.log10_abs() < -((2 * digits) as f64) * 0.8 {
            coordinates.push(WitnessCoordinate { word: render_word(word, &alphabet), decomposition: Vec::new(), relation: None });
            continue;
        }
        let rel = integer_relation(
            |d| {
                let (c, b) = if d == digits { (c_lo, &b_lo) } else { (c_hi, &b_hi) };
                std::iter::once(c.re.clone()).chain(b.iter().cloned()).collect()
            },
            digits,
        )?;
        let Some(rel) = rel else {
            return Err(Error::Numerical(format!(
                "no decomposition of the {} coordinate at {digits} digits; raise the precision",
                render_word(word, &alphabet)
            )));
        };
        let r = rel.coefficients_big();
        if r[0].is_zero() {
            return Err(Error::Numerical(format!("the spanning list at weight {w} is dependent at {digits} digits")));
        }
        verified &= rel.verified;
        let coeffs: Vec<Q> = r[1..].iter().map(|x| Q::new(-x.clone(), r[0].clone())).collect();
        for (slot, &i) in new_idx.iter().enumerate() {
            if !coeffs[i].is_zero() {
                *surviving[slot].entry(word.clone()).or_insert_with(Q::zero) += &coeffs[i];
            }
        }
        let decomposition = basis
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.render(), q_to_string(c)))
            .collect();
        coordinates.push(WitnessCoordinate { word: render_word(word, &alphabet), decomposition, relation: Some(rel) });
    }
    let dw = sda::solve_dw(w)?;
    let mut in_dw = true;
    let mut surviving_out = Vec::new();
    let lyn = lyndon_words(w, 2);
    for (slot, &i) in new_idx.iter().enumerate() {
        let coords: Vec<Q> = lyn.iter().map(|l| surviving[slot].get(l).cloned().unwrap_or_else(Q::zero)).collect();
        let f = LiePoly::from_lyndon_coords(&["x".to_string(), "y".to_string()], w, &coords);
        if !f.is_zero() {
            let d = sda::Derivation::new(f.clone(), w)?;
            in_dw &= sda::in_span(&d, &dw)?;
        }
        surviving_out.push((basis[i].render(), f.to_json()));
    }
    Ok(NzWitness {
        weight: w,
        digits,
        basis: basis.iter().map(|b| b.render()).collect(),
        new_generators: new_idx.iter().map(|&i| basis[i].render()).collect(),
        coordinates,
        surviving: surviving_out,
        dim_dw: dw.len(),
        relations_verified: verified,
        in_dw,
    })
}

// ---------------------------------------------------------------------------
// Pairing table

#[derive(Clone, Debug, Serialize)]
pub struct PsiRow {
    pub word: String,
    pub depth: usize,
    /// coefficient of the word in each basis element of `D_w`
    pub pairing: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub weight: usize,
    pub dim: usize,
    pub rows: Vec<PsiRow>,
    /// rank of the rows with depth at most `m`, for `m = 1..`; equals
    /// `dim D_w - dim F^{m+1} D_w`
    pub depth_ranks: Vec<usize>,
}

/// Pairs every word of weight `w` with the basis of `D_w` and lists `I(W)`.
pub fn psi_report(w: usize) -> Result<PsiReport> {
    let dw = sda::solve_dw(w)?;
    let mut rows = Vec::new();
    let mut vectors: Vec<(usize, Vec<Q>)> = Vec::new();
    for word in words_up_to(w).into_iter().filter(|x| x.len() == w) {
        let depth = word.iter().filter(|&&c| c == LETTER_B).count();
        let v: Vec<Q> = dw.iter().map(|d| d.f.coeff(&word)).collect();
        rows.push(PsiRow {
            word: render_ab_word(&word),
            depth,
            pairing: v.iter().map(q_to_string).collect(),
            coefficient: coeff_i(&word).to_string(),
        });
        vectors.push((depth, v));
    }
    let depth_ranks = (1..=w)
        .map(|m| {
            let sel: Vec<Vec<Q>> = vectors.iter().filter(|(d, _)| *d <= m).map(|(_, v)| v.clone()).collect();
            rank_q(&sel, dw.len())
        })
        .collect();
    Ok(PsiReport { weight: w, dim: dw.len(), rows, depth_ranks })
}

fn rank_q(rows: &[Vec<Q>], ncols: usize) -> usize {
    if ncols == 0 {
        return 0;
    }
    ncols - crate::arith::rational_kernel(rows, ncols).len()
}

/// Numerical value of `I(W)` at `digits`.
pub fn coeff_numeric(w: &[u8], digits: u32) -> Fixed {
    let mut ev = MzvEvaluator::new(digits);
    formal_eval(&coeff_i(w), &mut ev).re
}

/// `true` when `I(W)` is a combination of single MZV symbols of weight
/// `|W|` and depth at most `dp(W)`.
pub fn respects_depth(w: &[u8], c: &FormalMzvPoly) -> bool {
    let depth = w.iter().filter(|&&l| l == LETTER_B).count();
    c.terms().keys().all(|m| {
        matches!(m.as_slice(), [(Symbol::Zeta(k), 1)] if k.weight() as usize == w.len() && k.depth() <= depth)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mzv::parse_ab_word;

    fn i_of(s: &str) -> String {
        coeff_i(&parse_ab_word(s).unwrap()).to_string()
    }

    #[test]
    fn low_weight_coefficients() {
        assert_eq!(i_of("AB"), "-ζ(2)");
        assert_eq!(i_of("BA"), "ζ(2)");
        assert_eq!(i_of("AAB"), "-ζ(3)");
        assert_eq!(i_of("BBA"), "ζ(1,2)");
        assert_eq!(i_of("A"), "0");
        assert_eq!(i_of("AAAA"), "0");
        assert_eq!(i_of("BBB"), "0");
    }

    #[test]
    fn basis_table_parses() {
        let b = default_basis_values(11).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b.iter().filter(|x| x.new).count(), 2);
        assert_eq!(b[3].render(), "ζ(3)^3*π^2");
    }

    #[test]
    fn euler_small() {
        for n in 1..=3 {
            assert!(euler_check(n, 40).unwrap().passed);
        }
    }
}
