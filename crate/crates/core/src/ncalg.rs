//! Truncated noncommutative power series over a pluggable coefficient ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::sync::Arc;

use crate::arith::{q_to_string, qi, Q};
use crate::error::{Error, Result};
use crate::fixed::Complex;
use crate::freelie::{render_word, Word};

/// Coefficient rings for [`NcSeries`].
pub trait Coeff: Clone + Debug {
    fn zero_c() -> Self;
    fn one_c() -> Self;
    fn is_zero_c(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_q(x: &Q) -> Self;
    fn render(&self) -> String;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale_q(&self, x: &Q) -> Self {
        self.mul(&Self::from_q(x))
    }
}

impl Coeff for Q {
    fn zero_c() -> Self {
        num_traits::Zero::zero()
    }
    fn one_c() -> Self {
        num_traits::One::one()
    }
    fn is_zero_c(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn render(&self) -> String {
        q_to_string(self)
    }
}

/// Precision used when a rational enters the complex ring.
pub const COMPLEX_Q_BITS: u32 = 4096;

impl Coeff for Complex {
    fn zero_c() -> Self {
        Complex::zero()
    }
    fn one_c() -> Self {
        Complex::one()
    }
    fn is_zero_c(&self) -> bool {
        Complex::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: &Q) -> Self {
        Complex::real(crate::fixed::Fixed::from_q(x, COMPLEX_Q_BITS))
    }
    fn scale_q(&self, x: &Q) -> Self {
        Complex::scale_q(self, x)
    }
    fn render(&self) -> String {
        let d = ((self.re.precision().max(self.im.precision()) as f64) * std::f64::consts::LOG10_2).floor() as usize;
        if self.im.is_zero() {
            self.re.to_decimal(d)
        } else {
            format!("{} + {}i", self.re.to_decimal(d), self.im.to_decimal(d))
        }
    }
}

pub fn default_alphabet() -> Arc<Vec<String>> {
    Arc::new(vec!["A".to_string(), "B".to_string()])
}

/// A noncommutative series truncated above degree `n`.
#[derive(Clone, Debug)]
pub struct NcSeries<C: Coeff> {
    alphabet: Arc<Vec<String>>,
    n: usize,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> NcSeries<C> {
    pub fn zero(alphabet: Arc<Vec<String>>, n: usize) -> Self {
        NcSeries { alphabet, n, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Arc<Vec<String>>, n: usize) -> Self {
        let mut s = Self::zero(alphabet, n);
        s.terms.insert(Vec::new(), C::one_c());
        s
    }

    /// Single word with coefficient one (zero if longer than `n`).
    pub fn word(alphabet: Arc<Vec<String>>, n: usize, w: &[u8]) -> Self {
        let mut s = Self::zero(alphabet, n);
        s.add_term(w.to_vec(), C::one_c());
        s
    }

    pub fn letter(alphabet: Arc<Vec<String>>, n: usize, i: u8) -> Self {
        Self::word(alphabet, n, &[i])
    }

    pub fn from_terms(alphabet: Arc<Vec<String>>, n: usize, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut s = Self::zero(alphabet, n);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn alphabet(&self) -> &Arc<Vec<String>> {
        &self.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Word, C> {
        &self.terms
    }

    pub fn coeff(&self, w: &[u8]) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero_c)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if w.len() > self.n || c.is_zero_c() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero_c() {
                    self.terms.remove(&w);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::InvalidInput("series over different alphabets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = NcSeries { alphabet: self.alphabet.clone(), n: self.n.min(other.n), terms: BTreeMap::new() };
        for (w, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.scale_q(c));
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcSeries<D> {
        let mut out = NcSeries::zero(self.alphabet.clone(), self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), f(x));
        }
        out
    }

    /// Concatenation product, truncated at the smaller truncation degree.
    pub fn concat_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n.min(other.n);
        let mut acc: BTreeMap<Word, C> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() > n {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                let p = a.mul(b);
                match acc.get_mut(&w) {
                    Some(e) => *e = e.add(&p),
                    None => {
                        acc.insert(w, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero_c());
        Ok(NcSeries { alphabet: self.alphabet.clone(), n, terms: acc })
    }

    /// Shuffle product, truncated at the smaller truncation degree.
    pub fn shuffle_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n.min(other.n);
        let mut out = Self::zero(self.alphabet.clone(), n);
        let mut memo = HashMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() > n {
                    continue;
                }
                let p = a.mul(b);
                for (w, k) in shuffle_words_memo(u, v, &mut memo).iter() {
                    out.add_term(w.clone(), p.scale_q(&qi(*k as i64)));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.alphabet.clone(), self.n);
        for _ in 0..k {
            acc = acc.concat_mul(self)?;
        }
        Ok(acc)
    }

    /// `exp(s)` for `s` without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero_c() {
            return Err(Error::InvalidInput("exp needs a series without constant term".into()));
        }
        let mut acc = Self::one(self.alphabet.clone(), self.n);
        let mut power = Self::one(self.alphabet.clone(), self.n);
        let mut fact = <Q as Coeff>::one_c();
        for k in 1..=self.n {
            power = power.concat_mul(self)?;
            fact *= qi(k as i64);
            acc = acc.add(&power.scale_q(&fact.recip()))?;
        }
        Ok(acc)
    }

    /// `log(s)` for `s` with constant term one.
    pub fn log(&self) -> Result<Self> {
        let c = self.constant_term();
        if !c.sub(&C::one_c()).is_zero_c() {
            return Err(Error::InvalidInput("log needs a series with constant term 1".into()));
        }
        let mut t = self.clone();
        t.terms.remove(&Vec::new());
        let mut acc = Self::zero(self.alphabet.clone(), self.n);
        let mut power = Self::one(self.alphabet.clone(), self.n);
        for k in 1..=self.n {
            power = power.concat_mul(&t)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale_q(&Q::new(sign.into(), (k as i64).into())))?;
        }
        Ok(acc)
    }

    /// Projection keeping the empty word and the words that start with the
    /// first letter and end with the second.
    pub fn reg_project(&self) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), self.n);
        for (w, c) in &self.terms {
            if w.is_empty() || (w[0] == 0 && *w.last().unwrap() == 1) {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), self.n);
        for (w, c) in &self.terms {
            if w.len() == k {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Re-truncates at a lower degree.
    pub fn truncate(&self, n: usize) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), n.min(self.n));
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Evaluates the series on images of the letters in a truncated
    /// associative algebra; terms beyond the target's degree are dropped by
    /// the target's own truncation.
    pub fn substitute<T: TruncAlgebra<C>>(&self, images: &[T::Elem], target: &T) -> Result<T::Elem> {
        if images.len() != self.alphabet.len() {
            return Err(Error::InvalidInput("one image per letter is required".into()));
        }
        let mut prefix: HashMap<Word, T::Elem> = HashMap::new();
        prefix.insert(Vec::new(), target.one());
        let mut acc = target.zero();
        for (w, c) in &self.terms {
            let img = word_image(w, images, target, &mut prefix);
            acc = target.add(&acc, &target.scale(&img, c));
        }
        Ok(acc)
    }

    /// Image in the commutative polynomial ring; keys are letter exponent
    /// vectors.
    pub fn abelianize(&self) -> BTreeMap<Vec<usize>, C> {
        let mut out: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut e = vec![0usize; self.alphabet.len()];
            for &l in w {
                e[l as usize] += 1;
            }
            match out.get_mut(&e) {
                Some(x) => *x = x.add(c),
                None => {
                    out.insert(e, c.clone());
                }
            }
        }
        out.retain(|_, c| !c.is_zero_c());
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let ws = if w.is_empty() { "1".to_string() } else { render_word(w, &self.alphabet) };
                format!("({})*{}", c.render(), ws)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `word -> coefficient string` map for serialization.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(w, c)| (if w.is_empty() { String::new() } else { render_word(w, &self.alphabet) }, c.render()))
            .collect()
    }
}

fn word_image<C: Coeff, T: TruncAlgebra<C>>(w: &[u8], images: &[T::Elem], target: &T, prefix: &mut HashMap<Word, T::Elem>) -> T::Elem {
    if let Some(e) = prefix.get(w) {
        return e.clone();
    }
    let head = word_image(&w[..w.len() - 1], images, target, prefix);
    let e = target.mul(&head, &images[*w.last().unwrap() as usize]);
    prefix.insert(w.to_vec(), e.clone());
    e
}

/// Degree-truncated associative algebras that series can be evaluated in.
pub trait TruncAlgebra<C: Coeff> {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &C) -> Self::Elem;
}

/// Series over a fixed alphabet and truncation, as a substitution target.
pub struct SeriesAlgebra {
    pub alphabet: Arc<Vec<String>>,
    pub n: usize,
}

impl<C: Coeff> TruncAlgebra<C> for SeriesAlgebra {
    type Elem = NcSeries<C>;
    fn zero(&self) -> NcSeries<C> {
        NcSeries::zero(self.alphabet.clone(), self.n)
    }
    fn one(&self) -> NcSeries<C> {
        NcSeries::one(self.alphabet.clone(), self.n)
    }
    fn add(&self, a: &NcSeries<C>, b: &NcSeries<C>) -> NcSeries<C> {
        a.add(b).expect("same alphabet")
    }
    fn mul(&self, a: &NcSeries<C>, b: &NcSeries<C>) -> NcSeries<C> {
        a.concat_mul(b).expect("same alphabet")
    }
    fn scale(&self, a: &NcSeries<C>, c: &C) -> NcSeries<C> {
        a.scale(c)
    }
}

/// Shuffle of two words with multiplicities.
pub fn shuffle_words(u: &[u8], v: &[u8]) -> BTreeMap<Word, u64> {
    let mut memo = HashMap::new();
    shuffle_words_memo(u, v, &mut memo).as_ref().clone()
}

type ShuffleMemo = HashMap<(Word, Word), Arc<BTreeMap<Word, u64>>>;

fn shuffle_words_memo(u: &[u8], v: &[u8], memo: &mut ShuffleMemo) -> Arc<BTreeMap<Word, u64>> {
    if u.is_empty() || v.is_empty() {
        let mut m = BTreeMap::new();
        m.insert([u, v].concat(), 1);
        return Arc::new(m);
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let mut out: BTreeMap<Word, u64> = BTreeMap::new();
    // aU ш bV = a(U ш bV) + b(aU ш V)
    for (w, k) in shuffle_words_memo(&u[1..], v, memo).iter() {
        let mut nw = vec![u[0]];
        nw.extend_from_slice(w);
        *out.entry(nw).or_insert(0) += k;
    }
    for (w, k) in shuffle_words_memo(u, &v[1..], memo).iter() {
        let mut nw = vec![v[0]];
        nw.extend_from_slice(w);
        *out.entry(nw).or_insert(0) += k;
    }
    let r = Arc::new(out);
    memo.insert(key, r.clone());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = NcSeries<Q>;

    fn w(s: &str) -> Word {
        s.bytes().map(|b| b - b'A').collect()
    }

    fn ab(n: usize) -> (S, S) {
        (S::letter(default_alphabet(), n, 0), S::letter(default_alphabet(), n, 1))
    }

    #[test]
    fn concat_examples() {
        let (a, b) = ab(4);
        let one = S::one(default_alphabet(), 4);
        let p = one.add(&a).unwrap().concat_mul(&one.add(&b).unwrap()).unwrap();
        assert_eq!(p.terms().len(), 4);
        assert_eq!(p.coeff(&w("AB")), qi(1));
        assert!(p.coeff(&w("BA")).is_zero_c());
        let (a1, b1) = ab(1);
        assert!(a1.concat_mul(&b1).unwrap().is_zero());
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffle_words(&w("AB"), &w("A"));
        assert_eq!(s.get(&w("AAB")), Some(&2));
        assert_eq!(s.get(&w("ABA")), Some(&1));
        assert_eq!(s.len(), 2);
        let s = shuffle_words(&w("AB"), &w("AB"));
        assert_eq!(s.get(&w("ABAB")), Some(&2));
        assert_eq!(s.get(&w("AABB")), Some(&4));
        assert_eq!(s.len(), 2);
        let s = shuffle_words(&w("AB"), &[]);
        assert_eq!(s.get(&w("AB")), Some(&1));
    }

    #[test]
    fn exp_log_scalar() {
        let (a, b) = ab(4);
        let one = S::one(default_alphabet(), 3);
        let l = one.add(&a.truncate(3)).unwrap().log().unwrap();
        assert_eq!(l.coeff(&w("A")), qi(1));
        assert_eq!(l.coeff(&w("AA")), crate::arith::q(-1, 2));
        assert_eq!(l.coeff(&w("AAA")), crate::arith::q(1, 3));
        let s = S::one(default_alphabet(), 4).add(&a).unwrap().add(&b).unwrap();
        let back = s.log().unwrap().exp().unwrap();
        assert_eq!(back.terms(), s.terms());
    }

    #[test]
    fn reg_projection() {
        let s = S::from_terms(default_alphabet(), 4, [(w("BA"), qi(1)), (w("AB"), qi(1)), (w("AA"), qi(1)), (vec![], qi(1))]);
        let p = s.reg_project();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.coeff(&w("AB")), qi(1));
        assert_eq!(p.constant_term(), qi(1));
    }

    #[test]
    fn abelianization() {
        let s = S::from_terms(default_alphabet(), 4, [(vec![], qi(1)), (w("AB"), qi(1)), (w("BA"), qi(1))]);
        let a = s.abelianize();
        assert_eq!(a.get(&vec![1, 1]), Some(&qi(2)));
        let c = S::from_terms(default_alphabet(), 4, [(w("AB"), qi(1)), (w("BA"), qi(-1))]);
        assert!(c.abelianize().is_empty());
    }

    #[test]
    fn identity_substitution() {
        let s = S::from_terms(default_alphabet(), 3, [(vec![], qi(1)), (w("AB"), qi(-2)), (w("BAB"), qi(5))]);
        let alg = SeriesAlgebra { alphabet: default_alphabet(), n: 3 };
        let (a, b) = ab(3);
        let img = s.substitute(&[a, b], &alg).unwrap();
        assert_eq!(img.terms(), s.terms());
    }
}
