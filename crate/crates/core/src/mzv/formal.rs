//! Polynomials in MZV symbols, `π` and `i` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{MzvEvaluator, MzvIndex};
use crate::arith::{q_to_string, Q};
use crate::fixed::{Complex, Fixed};
use crate::ncalg::Coeff;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zeta(MzvIndex),
    Pi,
    I,
}

impl Symbol {
    pub fn weight(&self) -> u32 {
        match self {
            Symbol::Zeta(k) => k.weight(),
            Symbol::Pi => 1,
            Symbol::I => 0,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zeta(k) => write!(f, "{k}"),
            Symbol::Pi => write!(f, "π"),
            Symbol::I => write!(f, "i"),
        }
    }
}

/// Sorted symbol/exponent pairs with positive exponents; `i` appears with
/// exponent at most one.
pub type Monomial = Vec<(Symbol, u32)>;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FormalMzvPoly {
    terms: BTreeMap<Monomial, Q>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> (Monomial, bool) {
    let mut m: BTreeMap<Symbol, u32> = a.iter().cloned().collect();
    for (s, e) in b {
        *m.entry(s.clone()).or_insert(0) += e;
    }
    let mut negate = false;
    if let Some(e) = m.get_mut(&Symbol::I) {
        if (*e / 2) % 2 == 1 {
            negate = true;
        }
        *e %= 2;
        if *e == 0 {
            m.remove(&Symbol::I);
        }
    }
    (m.into_iter().collect(), negate)
}

impl FormalMzvPoly {
    pub fn constant(c: Q) -> Self {
        let mut p = FormalMzvPoly::default();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = FormalMzvPoly::default();
        p.add_term(vec![(s, 1)], Q::one());
        p
    }

    pub fn zeta(k: MzvIndex) -> Self {
        Self::symbol(Symbol::Zeta(k))
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Total weights of the monomials that occur.
    pub fn weights(&self) -> std::collections::BTreeSet<u32> {
        self.terms.keys().map(|m| m.iter().map(|(s, e)| s.weight() * e).sum()).collect()
    }

    /// True when every monomial is a single MZV symbol to the first power.
    pub fn is_linear_in_zetas(&self) -> bool {
        self.terms.keys().all(|m| m.len() == 1 && m[0].1 == 1 && matches!(m[0].0, Symbol::Zeta(_)))
    }

    /// Coefficients of single MZV symbols.
    pub fn linear_zeta_terms(&self) -> Vec<(MzvIndex, Q)> {
        self.terms
            .iter()
            .filter_map(|(m, c)| match m.as_slice() {
                [(Symbol::Zeta(k), 1)] => Some((k.clone(), c.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut s: Vec<Symbol> = self.terms.keys().flat_map(|m| m.iter().map(|(s, _)| s.clone())).collect();
        s.sort();
        s.dedup();
        s
    }
}

impl fmt::Display for FormalMzvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = m
                .iter()
                .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", q_to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", q_to_string(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Coeff for FormalMzvPoly {
    fn zero_c() -> Self {
        FormalMzvPoly::default()
    }
    fn one_c() -> Self {
        FormalMzvPoly::constant(Q::one())
    }
    fn is_zero_c(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = FormalMzvPoly::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (m, negate) = mono_mul(a, b);
                let c = x * y;
                out.add_term(m, if negate { -c } else { c });
            }
        }
        out
    }
    fn neg(&self) -> Self {
        FormalMzvPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn from_q(x: &Q) -> Self {
        FormalMzvPoly::constant(x.clone())
    }
    fn scale_q(&self, x: &Q) -> Self {
        if x.is_zero() {
            return FormalMzvPoly::default();
        }
        FormalMzvPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * x)).collect() }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Numerical value of a formal polynomial at the evaluator's precision.
pub fn formal_eval(p: &FormalMzvPoly, ev: &mut MzvEvaluator) -> Complex {
    let mut acc = Complex::zero();
    for (m, c) in p.terms() {
        let mut re = Fixed::one();
        let mut imag = false;
        for (s, e) in m {
            match s {
                Symbol::I => imag = true,
                Symbol::Pi => re = &re * &ev.pi().powi(*e),
                Symbol::Zeta(k) => re = &re * &ev.zeta(k).powi(*e),
            }
        }
        let v = re.with_precision(ev.bits()).mul_q(c);
        let term = if imag { Complex::new(Fixed::zero(), v) } else { Complex::real(v) };
        acc = &acc + &term;
    }
    acc
}
