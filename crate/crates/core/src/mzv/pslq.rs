//! Integer-relation detection (PSLQ in fixed-point arithmetic).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{MzvEvaluator, MzvIndex};
use crate::arith::Q;
use crate::error::Result;
use crate::fixed::{bits_for_digits, Fixed};

fn round_fixed(x: &BigInt, prec: u32) -> BigInt {
    ((x + (BigInt::one() << (prec - 1))) >> prec) << prec
}

/// PSLQ search for an integer vector `r` with `Σ r_i x_i ≈ 0`.
///
/// `tol` bounds the accepted residual; the search stops when the norm bound
/// on any relation exceeds `maxcoeff`, or after `maxsteps` iterations.
pub fn pslq(xs: &[Fixed], tol: &Fixed, maxcoeff: &BigInt, maxsteps: usize) -> Option<Vec<BigInt>> {
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let base = xs.iter().map(|x| x.precision()).max().unwrap().max(tol.precision());
    let prec = base + 60;
    let tol = tol.with_precision(prec).mantissa().abs();
    let mut x: Vec<BigInt> = vec![BigInt::zero()];
    x.extend(xs.iter().map(|v| v.with_precision(prec).mantissa().clone()));
    let minx = x[1..].iter().map(|v| v.abs()).min().unwrap();
    if minx.is_zero() || minx < &tol / 100 {
        return None;
    }
    let one = BigInt::one() << prec;
    let sqrt_fixed = |v: &BigInt| -> BigInt { (v << prec).sqrt() };
    let g = sqrt_fixed(&((BigInt::from(4) << prec) / 3));
    let idx = |i: usize, j: usize| i * (n + 1) + j;
    let sz = (n + 1) * (n + 1);
    let mut a = vec![BigInt::zero(); sz];
    let mut b = vec![BigInt::zero(); sz];
    let mut h = vec![BigInt::zero(); sz];
    for i in 1..=n {
        a[idx(i, i)] = one.clone();
        b[idx(i, i)] = one.clone();
    }
    let mut s = vec![BigInt::zero(); n + 1];
    for k in 1..=n {
        let mut t = BigInt::zero();
        for j in k..=n {
            t += (&x[j] * &x[j]) >> prec;
        }
        s[k] = sqrt_fixed(&t);
    }
    let t = s[1].clone();
    let mut y = x.clone();
    for k in 1..=n {
        y[k] = (&x[k] << prec).div_floor(&t);
        s[k] = (&s[k] << prec).div_floor(&t);
    }
    for i in 1..=n {
        if i < n {
            h[idx(i, i)] = if s[i].is_zero() { BigInt::zero() } else { (&s[i + 1] << prec).div_floor(&s[i]) };
        }
        for j in 1..i {
            let sjj1 = &s[j] * &s[j + 1];
            h[idx(i, j)] = if sjj1.is_zero() { BigInt::zero() } else { ((-&y[i] * &y[j]) << prec).div_floor(&sjj1) };
        }
    }
    let reduce = |i: usize, j: usize, h: &mut Vec<BigInt>, a: &mut Vec<BigInt>, b: &mut Vec<BigInt>, y: &mut Vec<BigInt>| -> bool {
        if h[idx(j, j)].is_zero() {
            return false;
        }
        let t = round_fixed(&(&h[idx(i, j)] << prec).div_floor(&h[idx(j, j)]), prec);
        y[j] = &y[j] + ((&t * &y[i]) >> prec);
        for k in 1..=j {
            h[idx(i, k)] = &h[idx(i, k)] - ((&t * &h[idx(j, k)]) >> prec);
        }
        for k in 1..=n {
            a[idx(i, k)] = &a[idx(i, k)] - ((&t * &a[idx(j, k)]) >> prec);
            b[idx(k, j)] = &b[idx(k, j)] + ((&t * &b[idx(k, i)]) >> prec);
        }
        true
    };
    for i in 2..=n {
        for j in (1..i).rev() {
            reduce(i, j, &mut h, &mut a, &mut b, &mut y);
        }
    }
    for _ in 0..maxsteps {
        let mut m = 0;
        let mut szmax = BigInt::from(-1);
        let mut gpow = BigInt::one();
        for i in 1..n {
            gpow = if i == 1 { g.clone() } else { &gpow * &g };
            let sz = (&gpow * h[idx(i, i)].abs()) >> (prec as usize * (i - 1));
            if sz > szmax {
                m = i;
                szmax = sz;
            }
        }
        y.swap(m, m + 1);
        for i in 1..=n {
            h.swap(idx(m, i), idx(m + 1, i));
            a.swap(idx(m, i), idx(m + 1, i));
            b.swap(idx(i, m), idx(i, m + 1));
        }
        if m + 2 <= n {
            let t0 = sqrt_fixed(&((&h[idx(m, m)] * &h[idx(m, m)] + &h[idx(m, m + 1)] * &h[idx(m, m + 1)]) >> prec));
            if t0.is_zero() {
                break;
            }
            let t1 = (&h[idx(m, m)] << prec).div_floor(&t0);
            let t2 = (&h[idx(m, m + 1)] << prec).div_floor(&t0);
            for i in m..=n {
                let t3 = h[idx(i, m)].clone();
                let t4 = h[idx(i, m + 1)].clone();
                h[idx(i, m)] = (&t1 * &t3 + &t2 * &t4) >> prec;
                h[idx(i, m + 1)] = (-&t2 * &t3 + &t1 * &t4) >> prec;
            }
        }
        let mut exhausted = false;
        for i in (m + 1)..=n {
            for j in (1..=(i - 1).min(m + 1)).rev() {
                if !reduce(i, j, &mut h, &mut a, &mut b, &mut y) {
                    exhausted = true;
                    break;
                }
            }
        }
        for i in 1..=n {
            if y[i].abs() < tol {
                let vec: Vec<BigInt> = (1..=n).map(|j| round_fixed(&b[idx(j, i)], prec) >> prec).collect();
                if vec.iter().all(|v| v.abs() < *maxcoeff) && vec.iter().any(|v| !v.is_zero()) {
                    return Some(vec);
                }
            }
        }
        if exhausted {
            break;
        }
        let recnorm = h.iter().map(|v| v.abs()).max().unwrap();
        if !recnorm.is_zero() {
            let norm = (((BigInt::one() << (2 * prec)) / recnorm) >> prec) / 100;
            if norm >= *maxcoeff {
                break;
            }
        }
    }
    None
}

/// A detected relation together with its verification at doubled precision.
#[derive(Clone, Debug, Serialize)]
pub struct IntegerRelation {
    /// coefficient strings, one per input value
    pub coefficients: Vec<String>,
    pub digits: u32,
    pub residual_log10: f64,
    pub verify_digits: u32,
    pub verify_residual_log10: f64,
    pub verified: bool,
    /// detected numerically, not proved
    pub empirical: bool,
}

impl IntegerRelation {
    pub fn coefficients_big(&self) -> Vec<BigInt> {
        self.coefficients.iter().map(|s| s.parse().unwrap()).collect()
    }
}

fn dot(r: &[BigInt], v: &[Fixed]) -> Fixed {
    let mut acc = Fixed::zero();
    for (c, x) in r.iter().zip(v) {
        acc = &acc + &(x * &Fixed::from_int(c.clone()));
    }
    acc
}

fn default_maxcoeff(digits: u32) -> BigInt {
    BigInt::from(10).pow((digits / 5).clamp(4, 40))
}

/// Searches for an integer relation among values produced by `eval` at
/// `digits` digits, then re-evaluates at `2*digits` to verify it.
pub fn integer_relation(mut eval: impl FnMut(u32) -> Vec<Fixed>, digits: u32) -> Result<Option<IntegerRelation>> {
    let values = eval(digits);
    let bits = bits_for_digits(digits);
    let tol = Fixed::from_q(&Q::new(BigInt::one(), BigInt::from(10).pow(digits / 2)), bits);
    let Some(rel) = pslq(&values, &tol, &default_maxcoeff(digits), 20_000) else {
        return Ok(None);
    };
    let residual = dot(&rel, &values).log10_abs();
    let v2 = eval(2 * digits);
    let r2 = dot(&rel, &v2).log10_abs();
    let verified = r2 < -(2.0 * digits as f64) + 5.0;
    Ok(Some(IntegerRelation {
        coefficients: rel.iter().map(|c| c.to_string()).collect(),
        digits,
        residual_log10: residual,
        verify_digits: 2 * digits,
        verify_residual_log10: r2,
        verified,
        empirical: true,
    }))
}

/// A greedy basis of the span of some MZVs with every other value expressed
/// over it.
#[derive(Clone, Debug, Serialize)]
pub struct RelationBasis {
    pub basis: Vec<MzvIndex>,
    /// (value, [(basis element, rational coefficient)])
    pub expressions: Vec<(MzvIndex, Vec<(MzvIndex, String)>)>,
    pub relations: Vec<IntegerRelation>,
}

/// Runs relation detection over `indices` in order, keeping a value as a new
/// basis element whenever no relation with the current basis is found.
pub fn relation_basis(indices: &[MzvIndex], digits: u32) -> Result<RelationBasis> {
    let mut lo = MzvEvaluator::new(digits);
    let mut hi = MzvEvaluator::new(2 * digits);
    let mut basis: Vec<MzvIndex> = Vec::new();
    let mut expressions = Vec::new();
    let mut relations = Vec::new();
    for k in indices {
        if basis.is_empty() {
            basis.push(k.clone());
            continue;
        }
        let mut list = basis.clone();
        list.push(k.clone());
        let found = integer_relation(
            |d| {
                let ev = if d == digits { &mut lo } else { &mut hi };
                list.iter().map(|i| ev.zeta(i)).collect()
            },
            digits,
        )?;
        match found {
            Some(rel) if rel.verified && rel.coefficients.last().map(|c| c != "0").unwrap_or(false) => {
                let r = rel.coefficients_big();
                let last = r.last().unwrap().clone();
                let expr = basis
                    .iter()
                    .zip(r.iter())
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(b, c)| (b.clone(), crate::arith::q_to_string(&Q::new(-c.clone(), last.clone()))))
                    .collect();
                expressions.push((k.clone(), expr));
                relations.push(rel);
            }
            _ => basis.push(k.clone()),
        }
    }
    Ok(RelationBasis { basis, expressions, relations })
}
