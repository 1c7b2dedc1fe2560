//! Free graded Lie algebras over `Q` on an ordered alphabet.
//!
//! Elements are stored as noncommutative polynomials. The Lyndon basis with
//! standard bracketing is used for coordinates: the expansion `P_l` of the
//! standard bracketing of a Lyndon word `l` is `l` plus lexicographically
//! larger words, so coordinates come out of a single left-to-right sweep.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{q_parse, q_to_string, Q};
use crate::error::{Error, Result};

/// A word over an alphabet, as letter indices.
pub type Word = Vec<u8>;

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the weight-`n` piece of the free Lie algebra on `r`
/// generators.
pub fn witt(n: u32, r: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut s: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            s += mobius(d as u64) as i128 * (r as i128).pow(n / d);
        }
    }
    (s / n as i128) as u64
}

/// Lyndon words of length exactly `n` over `r` letters, lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(n: usize, r: u8) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || r == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // extend periodically to length n
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == r - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot: Vec<u8> = w[i..].iter().chain(w[..i].iter()).copied().collect();
        w < rot.as_slice()
    })
}

/// Standard factorization `l = u v` with `v` the longest proper Lyndon
/// suffix.
pub fn standard_factorization(l: &[u8]) -> (Word, Word) {
    assert!(l.len() >= 2);
    for i in 1..l.len() {
        if is_lyndon(&l[i..]) {
            return (l[..i].to_vec(), l[i..].to_vec());
        }
    }
    unreachable!("a Lyndon word of length >= 2 has a proper Lyndon suffix")
}

/// Bracket tree of a Lyndon basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Letter(u8),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn of(l: &[u8]) -> Self {
        if l.len() == 1 {
            Bracketing::Letter(l[0])
        } else {
            let (u, v) = standard_factorization(l);
            Bracketing::Bracket(Box::new(Bracketing::of(&u)), Box::new(Bracketing::of(&v)))
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Bracketing::Letter(c) => names[*c as usize].clone(),
            Bracketing::Bracket(a, b) => format!("[{},{}]", a.render(names), b.render(names)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LyndonBasisElement {
    pub word: Word,
    pub bracketing: Bracketing,
    pub weight: usize,
    /// letter counts per generator
    pub depths: Vec<usize>,
}

pub fn lie_basis(weight: usize, r: u8) -> Vec<LyndonBasisElement> {
    lyndon_words(weight, r)
        .into_iter()
        .map(|w| {
            let mut depths = vec![0; r as usize];
            for &c in &w {
                depths[c as usize] += 1;
            }
            LyndonBasisElement { bracketing: Bracketing::of(&w), weight: w.len(), depths, word: w }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Dense integer kernels

/// Index of a word among all words of its length (base `r`, first letter
/// most significant), so numeric order is lexicographic order.
pub fn word_index(w: &[u8], r: usize) -> usize {
    w.iter().fold(0, |acc, &c| acc * r + c as usize)
}

pub fn index_word(mut i: usize, n: usize, r: usize) -> Word {
    let mut w = vec![0u8; n];
    for k in (0..n).rev() {
        w[k] = (i % r) as u8;
        i /= r;
    }
    w
}

/// `[a, b]` for dense homogeneous polynomials of degrees `da`, `db`.
pub fn dense_bracket(a: &[i64], b: &[i64], da: usize, db: usize, r: usize) -> Vec<i64> {
    let sa = r.pow(da as u32);
    let sb = r.pow(db as u32);
    debug_assert_eq!(a.len(), sa);
    debug_assert_eq!(b.len(), sb);
    let mut out = vec![0i64; sa * sb];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let row = &mut out[i * sb..(i + 1) * sb];
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                row[j] += x * y;
            }
        }
    }
    for (j, &y) in b.iter().enumerate() {
        if y == 0 {
            continue;
        }
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                out[j * sa + i] -= y * x;
            }
        }
    }
    out
}

/// Lyndon words up to a weight together with dense expansions of their
/// standard bracketings.
#[derive(Debug)]
pub struct LyndonTable {
    pub r: usize,
    pub max_weight: usize,
    /// per weight: Lyndon words in lexicographic order
    pub words: Vec<Vec<Word>>,
    /// per weight: dense expansion of each basis element
    pub expansions: Vec<Vec<Arc<Vec<i64>>>>,
    /// per weight: dense word index -> position in `words[weight]`
    pub position: Vec<HashMap<usize, usize>>,
}

impl LyndonTable {
    pub fn new(r: usize, max_weight: usize) -> Self {
        let mut words = vec![Vec::new()];
        let mut expansions: Vec<Vec<Arc<Vec<i64>>>> = vec![Vec::new()];
        let mut position: Vec<HashMap<usize, usize>> = vec![HashMap::new()];
        for n in 1..=max_weight {
            let ws = lyndon_words(n, r as u8);
            let mut ex = Vec::with_capacity(ws.len());
            let mut pos = HashMap::new();
            for (k, w) in ws.iter().enumerate() {
                pos.insert(word_index(w, r), k);
                if n == 1 {
                    let mut v = vec![0i64; r];
                    v[w[0] as usize] = 1;
                    ex.push(Arc::new(v));
                } else {
                    let (u, v) = standard_factorization(w);
                    let pu = &expansions[u.len()][position[u.len()][&word_index(&u, r)]];
                    let pv = &expansions[v.len()][position[v.len()][&word_index(&v, r)]];
                    ex.push(Arc::new(dense_bracket(pu, pv, u.len(), v.len(), r)));
                }
            }
            words.push(ws);
            expansions.push(ex);
            position.push(pos);
        }
        LyndonTable { r, max_weight, words, expansions, position }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.words[n].len()
    }

    /// Lyndon coordinates of a dense integer Lie polynomial of weight `n`.
    /// The coordinates are integers because the elimination is unitriangular.
    pub fn coords_i64(&self, f: &[i64], n: usize) -> Result<Vec<i64>> {
        let mut f = f.to_vec();
        let mut out = vec![0i64; self.dim(n)];
        for i in 0..f.len() {
            let c = f[i];
            if c == 0 {
                continue;
            }
            let Some(&k) = self.position[n].get(&i) else {
                return Err(Error::NotLieElement(format!(
                    "least surviving word {:?} is not Lyndon",
                    index_word(i, n, self.r)
                )));
            };
            out[k] = c;
            for (j, &p) in self.expansions[n][k].iter().enumerate().skip(i) {
                if p != 0 {
                    f[j] -= c * p;
                }
            }
        }
        Ok(out)
    }

    /// Coefficients of a dense polynomial at the Lyndon words of weight `n`.
    /// A Lie element vanishes iff all of these vanish.
    pub fn lyndon_slots(&self, f: &[i64], n: usize) -> Vec<i64> {
        self.words[n].iter().map(|w| f[word_index(w, self.r)]).collect()
    }
}

/// Images of all Lyndon basis elements up to a weight under the letter
/// substitution `letter i -> images[i]` (dense degree-one polynomials over
/// `r_target` letters), computed through the standard bracketings.
pub fn substitute_lyndon_dense(table: &LyndonTable, images: &[Vec<i64>], r_target: usize) -> Vec<Vec<Arc<Vec<i64>>>> {
    let r = table.r;
    let mut out: Vec<Vec<Arc<Vec<i64>>>> = vec![Vec::new()];
    for n in 1..=table.max_weight {
        let mut ex = Vec::with_capacity(table.dim(n));
        for w in &table.words[n] {
            if n == 1 {
                ex.push(Arc::new(images[w[0] as usize].clone()));
            } else {
                let (u, v) = standard_factorization(w);
                let pu = &out[u.len()][table.position[u.len()][&word_index(&u, r)]];
                let pv = &out[v.len()][table.position[v.len()][&word_index(&v, r)]];
                ex.push(Arc::new(dense_bracket(pu, pv, u.len(), v.len(), r_target)));
            }
        }
        out.push(ex);
    }
    out
}

// ---------------------------------------------------------------------------
// LiePoly

/// An element of the free Lie algebra, stored as a noncommutative
/// polynomial with rational coefficients. Weight-zero terms are not allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct LiePoly {
    alphabet: Arc<Vec<String>>,
    terms: BTreeMap<Word, Q>,
}

/// A target for Lie substitutions: anything with a bilinear bracket.
pub trait LieTarget {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

impl LiePoly {
    pub fn zero(alphabet: &[&str]) -> Self {
        LiePoly { alphabet: Arc::new(alphabet.iter().map(|s| s.to_string()).collect()), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        LiePoly { alphabet: self.alphabet.clone(), terms: BTreeMap::new() }
    }

    /// The `i`-th generator.
    pub fn generator(alphabet: &[&str], i: usize) -> Self {
        let mut p = LiePoly::zero(alphabet);
        assert!(i < alphabet.len());
        p.terms.insert(vec![i as u8], Q::one());
        p
    }

    /// The generators `x`, `y` of the two-letter algebra.
    pub fn xy() -> (Self, Self) {
        (LiePoly::generator(&["x", "y"], 0), LiePoly::generator(&["x", "y"], 1))
    }

    /// Builds a polynomial from raw terms. No Lie check is made; use
    /// [`LiePoly::lyndon_coords`] to validate.
    pub fn from_terms(alphabet: &[String], terms: impl IntoIterator<Item = (Word, Q)>) -> Result<Self> {
        let mut p = LiePoly { alphabet: Arc::new(alphabet.to_vec()), terms: BTreeMap::new() };
        for (w, c) in terms {
            if w.is_empty() {
                return Err(Error::InvalidInput("weight-zero term in a Lie polynomial".into()));
            }
            if w.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::InvalidInput(format!("letter out of range in word {w:?}")));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn coeff(&self, w: &[u8]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The weight if the polynomial is nonzero and homogeneous.
    pub fn weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    pub fn homogeneous_part(&self, n: usize) -> LiePoly {
        LiePoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    fn check_alphabet(&self, other: &LiePoly) {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        self.check_alphabet(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LiePoly) -> LiePoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> LiePoly {
        if c.is_zero() {
            return self.zero_like();
        }
        LiePoly { alphabet: self.alphabet.clone(), terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Associative product; used internally for brackets and derivations.
    fn concat(&self, other: &LiePoly) -> LiePoly {
        let mut out: BTreeMap<Word, Q> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                *out.entry(w).or_insert_with(Q::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        LiePoly { alphabet: self.alphabet.clone(), terms: out }
    }

    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        self.check_alphabet(other);
        self.concat(other).sub(&other.concat(self))
    }

    /// Number of occurrences of letter `letter` in each term, if constant.
    pub fn letter_degree(&self, letter: u8) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.iter().filter(|&&c| c == letter).count());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The part whose terms contain exactly `k` copies of `letter`.
    pub fn letter_degree_part(&self, letter: u8, k: usize) -> LiePoly {
        LiePoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.iter().filter(|&&c| c == letter).count() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Minimal number of occurrences of `letter` over all terms.
    pub fn min_letter_degree(&self, letter: u8) -> Option<usize> {
        self.terms.keys().map(|w| w.iter().filter(|&&c| c == letter).count()).min()
    }

    /// Lyndon coordinates of the weight-`n` component, in the order of
    /// [`lie_basis`].
    pub fn lyndon_coords(&self, n: usize) -> Result<Vec<Q>> {
        let r = self.rank() as u8;
        let basis = lyndon_words(n, r);
        let pos: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rest = self.homogeneous_part(n);
        let mut out = vec![Q::zero(); basis.len()];
        let mut cache = ExpansionCache::default();
        while let Some((w, c)) = rest.terms.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let Some(&k) = pos.get(&w) else {
                return Err(Error::NotLieElement(format!(
                    "least surviving word {} is not Lyndon",
                    render_word(&w, &self.alphabet)
                )));
            };
            out[k] = c.clone();
            let p = cache.expand(&w, &self.alphabet);
            rest = rest.sub(&p.scale(&c));
        }
        Ok(out)
    }

    /// Lyndon coordinates of every homogeneous component; errors if any
    /// component is not a Lie element.
    pub fn check_lie(&self) -> Result<()> {
        let degrees: std::collections::BTreeSet<usize> = self.terms.keys().map(|w| w.len()).collect();
        for n in degrees {
            self.lyndon_coords(n)?;
        }
        Ok(())
    }

    /// Linear combination of the weight-`n` Lyndon basis.
    pub fn from_lyndon_coords(alphabet: &[String], n: usize, coords: &[Q]) -> LiePoly {
        let words = lyndon_words(n, alphabet.len() as u8);
        assert_eq!(words.len(), coords.len());
        let mut cache = ExpansionCache::default();
        let mut out = LiePoly { alphabet: Arc::new(alphabet.to_vec()), terms: BTreeMap::new() };
        for (w, c) in words.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&cache.expand(w, &out.alphabet).scale(c));
            }
        }
        out
    }

    /// Image under the Lie homomorphism sending generator `i` to
    /// `images[i]` in the target.
    pub fn substitute<T: LieTarget>(&self, images: &[T::Elem], target: &T) -> Result<T::Elem> {
        if images.len() != self.rank() {
            return Err(Error::InvalidInput("one image per generator is required".into()));
        }
        let degrees: std::collections::BTreeSet<usize> = self.terms.keys().map(|w| w.len()).collect();
        let mut memo: HashMap<Word, T::Elem> = HashMap::new();
        let mut acc = target.zero();
        for n in degrees {
            let coords = self.lyndon_coords(n)?;
            for (w, c) in lyndon_words(n, self.rank() as u8).iter().zip(coords) {
                if c.is_zero() {
                    continue;
                }
                let img = substitute_word(w, images, target, &mut memo)?;
                acc = target.add(&acc, &target.scale(&img, &c));
            }
        }
        Ok(acc)
    }

    /// Derivation acting on letters by `letter i -> images[i]`, applied to
    /// this polynomial (Leibniz rule on words).
    pub fn apply_derivation(&self, images: &[LiePoly]) -> LiePoly {
        let mut out: BTreeMap<Word, Q> = BTreeMap::new();
        for (w, c) in &self.terms {
            for pos in 0..w.len() {
                let img = &images[w[pos] as usize];
                for (v, d) in &img.terms {
                    let mut nw = w[..pos].to_vec();
                    nw.extend_from_slice(v);
                    nw.extend_from_slice(&w[pos + 1..]);
                    *out.entry(nw).or_insert_with(Q::zero) += c * d;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        LiePoly { alphabet: self.alphabet.clone(), terms: out }
    }

    /// Applies a permutation (or any map) of letters.
    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> LiePoly {
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(|&l| f(l)).collect(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> LiePolyJson {
        LiePolyJson {
            alphabet: self.alphabet.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: render_word(w, &self.alphabet),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LiePolyJson) -> Result<Self> {
        let mut terms = Vec::new();
        for t in &j.terms {
            let w = parse_word(&t.word, &j.alphabet)?;
            let c = q_parse(&format!("{}/{}", t.num, t.den)).ok_or_else(|| Error::InvalidInput(format!("bad coefficient {}/{}", t.num, t.den)))?;
            terms.push((w, c));
        }
        LiePoly::from_terms(&j.alphabet, terms)
    }

    /// Human-readable rendering as a sum over words.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{}*{}", q_to_string(c), render_word(w, &self.alphabet)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn substitute_word<T: LieTarget>(w: &Word, images: &[T::Elem], target: &T, memo: &mut HashMap<Word, T::Elem>) -> Result<T::Elem> {
    if w.len() == 1 {
        return Ok(images[w[0] as usize].clone());
    }
    if let Some(e) = memo.get(w) {
        return Ok(e.clone());
    }
    let (u, v) = standard_factorization(w);
    let a = substitute_word(&u, images, target, memo)?;
    let b = substitute_word(&v, images, target, memo)?;
    let e = target.bracket(&a, &b)?;
    memo.insert(w.clone(), e.clone());
    Ok(e)
}

/// The free Lie algebra itself as a substitution target.
pub struct FreeLieTarget {
    pub alphabet: Vec<String>,
}

impl LieTarget for FreeLieTarget {
    type Elem = LiePoly;
    fn zero(&self) -> LiePoly {
        LiePoly { alphabet: Arc::new(self.alphabet.clone()), terms: BTreeMap::new() }
    }
    fn add(&self, a: &LiePoly, b: &LiePoly) -> LiePoly {
        a.add(b)
    }
    fn scale(&self, a: &LiePoly, c: &Q) -> LiePoly {
        a.scale(c)
    }
    fn bracket(&self, a: &LiePoly, b: &LiePoly) -> Result<LiePoly> {
        Ok(a.bracket(b))
    }
}

#[derive(Default)]
struct ExpansionCache {
    memo: HashMap<Word, LiePoly>,
}

impl ExpansionCache {
    fn expand(&mut self, w: &Word, alphabet: &Arc<Vec<String>>) -> LiePoly {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let p = if w.len() == 1 {
            let mut t = BTreeMap::new();
            t.insert(w.clone(), Q::one());
            LiePoly { alphabet: alphabet.clone(), terms: t }
        } else {
            let (u, v) = standard_factorization(w);
            self.expand(&u, alphabet).bracket(&self.expand(&v, alphabet))
        };
        self.memo.insert(w.clone(), p.clone());
        p
    }
}

/// Expansion of the standard bracketing of a Lyndon word.
pub fn lyndon_expansion(w: &[u8], alphabet: &[String]) -> LiePoly {
    ExpansionCache::default().expand(&w.to_vec(), &Arc::new(alphabet.to_vec()))
}

/// Lyndon basis elements of weight `n` with at least `m` occurrences of the
/// last letter (the depth filtration of the two-letter algebra).
pub fn depth_filtration_basis(n: usize, m: usize, r: u8) -> Vec<Word> {
    let y = r - 1;
    lyndon_words(n, r).into_iter().filter(|w| w.iter().filter(|&&c| c == y).count() >= m).collect()
}

pub fn render_word(w: &[u8], alphabet: &[String]) -> String {
    let sep = if alphabet.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
    w.iter().map(|&c| alphabet[c as usize].as_str()).collect::<Vec<_>>().join(sep)
}

pub fn parse_word(s: &str, alphabet: &[String]) -> Result<Word> {
    let single = alphabet.iter().all(|a| a.chars().count() == 1);
    let tokens: Vec<String> = if single { s.chars().map(|c| c.to_string()).collect() } else { s.split_whitespace().map(str::to_string).collect() };
    tokens
        .iter()
        .map(|t| {
            alphabet
                .iter()
                .position(|a| a == t)
                .map(|i| i as u8)
                .ok_or_else(|| Error::InvalidInput(format!("unknown letter {t:?}")))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub word: String,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LiePolyJson {
    pub alphabet: Vec<String>,
    pub terms: Vec<TermJson>,
}
