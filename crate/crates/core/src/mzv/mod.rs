//! Multiple zeta values: indices, numerical evaluation, formal symbols and
//! integer-relation detection.
//!
//! Index convention: `ζ(k_1,…,k_m) = Σ_{0<n_1<⋯<n_m} n_1^{-k_1}⋯n_m^{-k_m}`
//! with `k_m ≥ 2`, so the last entry carries the convergence condition.

mod eval;
mod formal;
mod pslq;

pub use eval::{zeta_eval, MzvEvaluator};
pub use formal::{formal_eval, FormalMzvPoly, Monomial, Symbol};
pub use pslq::{integer_relation, pslq, relation_basis, IntegerRelation, RelationBasis};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{qi, Q};
use crate::error::{Error, Result};
use crate::freelie::Word;

/// Letters of the word algebra: `A = du/u`, `B = du/(1-u)`.
pub const LETTER_A: u8 = 0;
pub const LETTER_B: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MzvIndex(Vec<u32>);

impl MzvIndex {
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.is_empty() || k.contains(&0) {
            return Err(Error::InvalidInput(format!("index {k:?} must be a nonempty list of positive integers")));
        }
        if *k.last().unwrap() < 2 {
            return Err(Error::InvalidInput(format!("index {k:?} is not admissible: last entry must exceed 1")));
        }
        Ok(MzvIndex(k))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let k: std::result::Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let k = k.map_err(|_| Error::InvalidInput(format!("cannot parse index {s:?}")))?;
        MzvIndex::new(k)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// The word `A^{k_m-1}B ⋯ A^{k_1-1}B`.
    pub fn to_word(&self) -> Word {
        let mut w = Vec::new();
        for &k in self.0.iter().rev() {
            w.extend(std::iter::repeat(LETTER_A).take(k as usize - 1));
            w.push(LETTER_B);
        }
        w
    }

    /// All admissible indices of a weight, ordered by depth and then
    /// lexicographically in reverse so that `ζ(w)` comes first.
    pub fn all_of_weight(w: u32) -> Vec<MzvIndex> {
        let mut out = Vec::new();
        fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<MzvIndex>) {
            if rem == 0 {
                if cur.last().is_some_and(|&k| k >= 2) {
                    out.push(MzvIndex(cur.clone()));
                }
                return;
            }
            for k in 1..=rem {
                cur.push(k);
                rec(rem - k, cur, out);
                cur.pop();
            }
        }
        rec(w, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.depth().cmp(&b.depth()).then(b.0.iter().rev().cmp(a.0.iter().rev())));
        out
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "ζ({})", parts.join(","))
    }
}

/// Whether a word lies in `M`: starts with `A` and ends with `B`.
pub fn in_m(w: &[u8]) -> bool {
    !w.is_empty() && w[0] == LETTER_A && *w.last().unwrap() == LETTER_B
}

/// `A^{e_1}B A^{e_2}B ⋯ A^{e_d}B ↦ (e_d+1, …, e_1+1)`.
pub fn word_to_index(w: &[u8]) -> Result<MzvIndex> {
    if !in_m(w) {
        return Err(Error::InvalidInput("word must start with A and end with B".into()));
    }
    let mut k = Vec::new();
    let mut run = 0u32;
    for &c in w {
        if c == LETTER_A {
            run += 1;
        } else if c == LETTER_B {
            k.push(run + 1);
            run = 0;
        } else {
            return Err(Error::InvalidInput("word over A, B expected".into()));
        }
    }
    k.reverse();
    MzvIndex::new(k)
}

pub fn parse_ab_word(s: &str) -> Result<Word> {
    s.chars()
        .map(|c| match c {
            'A' => Ok(LETTER_A),
            'B' => Ok(LETTER_B),
            _ => Err(Error::InvalidInput(format!("unexpected letter {c:?}; words use A and B"))),
        })
        .collect()
}

pub fn render_ab_word(w: &[u8]) -> String {
    w.iter().map(|&c| if c == LETTER_A { 'A' } else { 'B' }).collect()
}

/// Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Q {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=n {
        // sum_{k<m} C(m+1,k) B_k + (m+1) B_m = 0
        let mut s = Q::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / qi(m as i64 + 1));
    }
    b[n].clone()
}
