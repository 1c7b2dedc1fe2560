//! Numerical evaluation by splitting the iterated integral at 1/2.
//!
//! With `Z(W) = ∫_{1>t_1>⋯>t_n>0} ω_{w_1}(t_1)⋯ω_{w_n}(t_n)`, path
//! composition at 1/2 and the reflection `t ↦ 1-t` (which swaps `A` and `B`)
//! give
//!
//! `Z(W) = Σ_k L(σ(w_k ⋯ w_1)) · L(w_{k+1} ⋯ w_n)`
//!
//! where `L(V)` is the multiple polylogarithm of the word `V` at `z = 1/2`:
//! for `V = A^{a_1-1}B ⋯ A^{a_d-1}B`,
//! `L(V) = Σ_{n_1>⋯>n_d≥1} 2^{-n_1} / (n_1^{a_1} ⋯ n_d^{a_d})`.
//! Every series converges like `2^{-N}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MzvIndex, LETTER_A, LETTER_B};
use crate::error::{Error, Result};
use crate::fixed::{bits_for_digits, pi, Fixed};
use crate::freelie::Word;

/// Guard digits added on top of the requested precision.
pub const GUARD_DIGITS: u32 = 10;

/// Evaluator at a fixed precision, memoizing polylogarithms at 1/2.
pub struct MzvEvaluator {
    digits: u32,
    bits: u32,
    memo: HashMap<Word, Fixed>,
    pi: Option<Fixed>,
}

impl MzvEvaluator {
    pub fn new(digits: u32) -> Self {
        let bits = bits_for_digits(digits + GUARD_DIGITS) + 32;
        MzvEvaluator { digits, bits, memo: HashMap::new(), pi: None }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn pi(&mut self) -> Fixed {
        if self.pi.is_none() {
            self.pi = Some(pi(self.bits));
        }
        self.pi.clone().unwrap()
    }

    /// Multiple polylogarithm of a word ending in `B` (or empty) at 1/2.
    pub fn li_half(&mut self, w: &[u8]) -> Fixed {
        if w.is_empty() {
            return Fixed::one();
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        debug_assert_eq!(*w.last().unwrap(), LETTER_B);
        let mut exps = Vec::new();
        let mut run = 0u32;
        for &c in w {
            if c == LETTER_A {
                run += 1;
            } else {
                exps.push(run + 1);
                run = 0;
            }
        }
        let v = self.polylog_half(&exps, w.len() as u32);
        self.memo.insert(w.to_vec(), v.clone());
        v
    }

    fn polylog_half(&self, exps: &[u32], weight: u32) -> Fixed {
        let bits = self.bits;
        let d = exps.len() as u32;
        // 2^{-N} (1 + ln N)^{d-1} below 2^{-bits}; 4 bits per nesting level
        // is ample for N below 2^16.
        let n_terms = (bits + 4 * d + weight + 8) as usize;
        let one = BigInt::one() << bits;
        // t[n-1] carries the innermost-out nested value at n
        let mut t: Vec<BigInt> = (1..=n_terms).map(|n| one.div_floor(&BigInt::from(n).pow(exps[d as usize - 1]))).collect();
        for j in (0..exps.len() - 1).rev() {
            let mut acc = BigInt::zero();
            let mut next = Vec::with_capacity(n_terms);
            for n in 1..=n_terms {
                // strict partial sum over m < n
                let val = acc.div_floor(&BigInt::from(n).pow(exps[j]));
                acc += &t[n - 1];
                next.push(val);
            }
            t = next;
        }
        let mut sum = BigInt::zero();
        for (i, v) in t.iter().enumerate() {
            sum += v >> (i + 1);
        }
        Fixed::from_raw(sum, bits)
    }

    /// `Z(W)` for a word in `M`.
    pub fn word_value(&mut self, w: &[u8]) -> Result<Fixed> {
        if !super::in_m(w) {
            return Err(Error::InvalidInput("word must start with A and end with B".into()));
        }
        let mut total = Fixed::zero();
        for k in 0..=w.len() {
            let head: Word = w[..k].iter().rev().map(|&c| 1 - c).collect();
            let a = self.li_half(&head);
            let b = self.li_half(&w[k..]);
            total = &total + &(&a * &b);
        }
        Ok(total)
    }

    pub fn zeta(&mut self, k: &MzvIndex) -> Fixed {
        self.word_value(&k.to_word()).expect("index words lie in M")
    }
}

/// `ζ(k)` to `digits` decimal digits (plus guard digits).
pub fn zeta_eval(k: &MzvIndex, digits: u32) -> Result<Fixed> {
    if digits < 10 {
        return Err(Error::InvalidInput("at least 10 digits are required".into()));
    }
    Ok(MzvEvaluator::new(digits).zeta(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn z(s: &str, digits: u32) -> Fixed {
        zeta_eval(&MzvIndex::parse(s).unwrap(), digits).unwrap()
    }

    #[test]
    fn zeta2_is_pi_squared_over_six() {
        let v = z("2", 40);
        let p = pi(v.precision());
        let r = &v - &(&p * &p).mul_q(&q(1, 6));
        assert!(r.log10_abs() < -45.0, "{}", r.to_sci());
    }

    #[test]
    fn euler_relation() {
        let r = &z("1,2", 40) - &z("3", 40);
        assert!(r.log10_abs() < -45.0);
    }

    #[test]
    fn weight_four_relations() {
        let z4 = z("4", 50);
        let r1 = &z4 - &z("1,3", 50).mul_int(4);
        let r2 = &z4 - &z("2,2", 50).mul_q(&q(4, 3));
        assert!(r1.log10_abs() < -55.0);
        assert!(r2.log10_abs() < -55.0);
    }

    #[test]
    fn zeta3_digits() {
        assert!(z("3", 30).to_decimal(30).starts_with("1.202056903159594285399738161511"));
    }
}
