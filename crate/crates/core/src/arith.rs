//! Exact rationals, prime fields, and modular linear algebra.
//!
//! Everything here is exact. Modular arithmetic is only ever used as a
//! screening device: results are lifted to `Q` by Chinese remaindering and
//! rational reconstruction, then checked against the original integer data.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as `n` or `n/d`.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (first nonzero entry positive is not enforced).
pub fn primitive_integer_vector(v: &[Q]) -> Vec<BigInt> {
    let den = common_denominator(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

// ---------------------------------------------------------------------------
// Fields

/// A field given by a context object, so that prime fields can carry their
/// modulus without storing it in every element.
pub trait Field {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, a: i64) -> Self::Elem;
    /// Image of a rational; `None` when the denominator vanishes.
    fn from_q(&self, a: &Q) -> Option<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Q {
        a.recip()
    }
    fn from_i64(&self, a: i64) -> Q {
        qi(a)
    }
    fn from_q(&self, a: &Q) -> Option<Q> {
        Some(a.clone())
    }
}

/// The prime field `Z/pZ` for a word-size prime `p < 2^63`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime_u64(p));
        PrimeField { p }
    }

    #[inline]
    pub fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn addmod(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn submod(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn powmod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulmod(r, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    pub fn reduce_big(&self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        a.mod_floor(&p).to_u64().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.addmod(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.submod(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.powmod(*a, self.p - 2)
    }
    fn from_i64(&self, a: i64) -> u64 {
        self.reduce_i64(a)
    }
    fn from_q(&self, a: &Q) -> Option<u64> {
        let d = self.reduce_big(a.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_big(a.numer());
        Some(self.mulmod(n, self.inv(&d)))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    // deterministic for all 64-bit integers
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, in decreasing order.
pub fn large_primes(count: usize) -> Vec<u64> {
    primes_below(1u64 << 62, count)
}

/// The `count` largest primes strictly below `bound`.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = bound - 1;
    while out.len() < count && n > 2 {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}

/// Rational reconstruction of `a mod m`: the unique `n/d` with
/// `|n|, d <= sqrt(m/2)` congruent to `a`, if it exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Q> {
    let a = a.mod_floor(m);
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Chinese remaindering of `(a mod m)` and `(b mod p)`.
pub fn crt_combine(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pf = PrimeField::new(p);
    let a_mod_p = pf.reduce_big(a);
    let m_mod_p = pf.reduce_big(m);
    let inv = pf.inv(&m_mod_p);
    let k = pf.mulmod(pf.submod(b, a_mod_p), inv);
    a + m * BigInt::from(k)
}

// ---------------------------------------------------------------------------
// Sparse echelon forms over an arbitrary field

pub type SparseRow<E> = Vec<(usize, E)>;

/// `a + c*b` for sparse rows sorted by column.
pub fn sparse_axpy<F: Field>(field: &F, a: &SparseRow<F::Elem>, c: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form. Each stored row is normalized so that its
/// largest column (the pivot) carries coefficient one; columns with small
/// indices are therefore preferred as free columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub field: F,
    pub ncols: usize,
    rows: HashMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field + Clone> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `row` against the stored rows until its leading column is
    /// not a pivot. Returns the remainder (empty when dependent).
    pub fn reduce_leading(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        row.retain(|(_, v)| !self.field.is_zero(v));
        while let Some((c, v)) = row.last().cloned() {
            match self.rows.get(&c) {
                Some(piv) => {
                    let neg = self.field.neg(&v);
                    row = sparse_axpy(&self.field, &row, &neg, piv);
                }
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns true when the rank grew.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let row = self.reduce_leading(row);
        let Some((c, v)) = row.last().cloned() else {
            return false;
        };
        let inv = self.field.inv(&v);
        let row: SparseRow<F::Elem> = row
            .into_iter()
            .map(|(j, x)| (j, self.field.mul(&x, &inv)))
            .collect();
        self.rows.insert(c, row);
        true
    }

    /// Fully reduced row echelon form: for every pivot column, the row
    /// expressing it in terms of free columns only, i.e. `pivot = -sum(rest)`.
    pub fn reduced(&self) -> HashMap<usize, SparseRow<F::Elem>> {
        let mut pivots: Vec<usize> = self.rows.keys().copied().collect();
        pivots.sort_unstable();
        let mut done: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
        for &c in &pivots {
            let mut row = self.rows[&c].clone();
            loop {
                // largest non-leading pivot column still present
                let hit = row
                    .iter()
                    .rev()
                    .skip(1)
                    .find(|(j, _)| done.contains_key(j))
                    .cloned();
                match hit {
                    Some((j, v)) => {
                        let neg = self.field.neg(&v);
                        row = sparse_axpy(&self.field, &row, &neg, &done[&j]);
                    }
                    None => break,
                }
            }
            done.insert(c, row);
        }
        done
    }

    /// Columns that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Kernel basis: one vector per free column, with a one in that column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let red = self.reduced();
        let free = self.free_columns();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.ncols];
                v[f] = self.field.one();
                for (&c, row) in &red {
                    if let Some((_, x)) = row.iter().find(|(j, _)| *j == f) {
                        v[c] = self.field.neg(x);
                    }
                }
                v
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Dense modular kernels with exact lifting

/// Echelon form of a dense matrix modulo `p`, fed row by row.
struct DenseModEchelon {
    f: PrimeField,
    ncols: usize,
    /// pivot column -> normalized row (leading one at pivot, zeros at all
    /// earlier pivot columns of rows inserted before it)
    rows: Vec<(usize, Vec<u64>)>,
    pivot_of: Vec<Option<usize>>,
}

impl DenseModEchelon {
    fn new(f: PrimeField, ncols: usize) -> Self {
        DenseModEchelon { f, ncols, rows: Vec::new(), pivot_of: vec![None; ncols] }
    }

    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let f = self.f;
        for (pc, prow) in &self.rows {
            let c = row[*pc];
            if c != 0 {
                let m = f.p - c;
                for j in 0..self.ncols {
                    if prow[j] != 0 {
                        row[j] = f.addmod(row[j], f.mulmod(m, prow[j]));
                    }
                }
            }
        }
        let Some(lead) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(&row[lead]);
        for x in row.iter_mut() {
            *x = f.mulmod(*x, inv);
        }
        self.pivot_of[lead] = Some(self.rows.len());
        self.rows.push((lead, row));
        true
    }

    fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    /// RREF kernel basis indexed by free column.
    fn kernel(&self) -> Vec<(usize, Vec<u64>)> {
        let f = self.f;
        // back substitution into full RREF
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].0));
        let mut red: Vec<Option<Vec<u64>>> = vec![None; self.ncols];
        for &i in &order {
            let (c, row) = &self.rows[i];
            let mut row = row.clone();
            for j in (c + 1)..self.ncols {
                if row[j] != 0 {
                    if let Some(r2) = &red[j] {
                        let m = f.p - row[j];
                        for k in j..self.ncols {
                            if r2[k] != 0 {
                                row[k] = f.addmod(row[k], f.mulmod(m, r2[k]));
                            }
                        }
                    }
                }
            }
            red[*c] = Some(row);
        }
        (0..self.ncols)
            .filter(|&j| red[j].is_none())
            .map(|free| {
                let mut v = vec![0u64; self.ncols];
                v[free] = 1;
                for c in 0..self.ncols {
                    if let Some(r) = &red[c] {
                        v[c] = f.neg(&r[free]);
                    }
                }
                (free, v)
            })
            .collect()
    }
}

/// Integer matrix entries accepted by [`exact_kernel`].
pub trait IntEntry {
    fn residue(&self, f: &PrimeField) -> u64;
    fn to_big(&self) -> BigInt;
    fn is_zero_entry(&self) -> bool;
}

impl IntEntry for i64 {
    fn residue(&self, f: &PrimeField) -> u64 {
        f.reduce_i64(*self)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero_entry(&self) -> bool {
        *self == 0
    }
}

impl IntEntry for i128 {
    fn residue(&self, f: &PrimeField) -> u64 {
        f.reduce_i128(*self)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero_entry(&self) -> bool {
        *self == 0
    }
}

impl IntEntry for BigInt {
    fn residue(&self, f: &PrimeField) -> u64 {
        f.reduce_big(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

/// Statistics of a modular kernel computation.
#[derive(Clone, Debug, Default)]
pub struct KernelStats {
    pub primes_used: usize,
    pub rank: usize,
}

/// Exact rational kernel of an integer matrix given by rows.
///
/// The kernel is computed modulo successive 62-bit primes, lifted by CRT and
/// rational reconstruction, and accepted only after every row has been
/// checked exactly against every lifted vector. The basis is in reduced
/// form: vector `i` has a one in the `i`-th free column and zeros in all
/// other free columns.
pub fn exact_kernel<T: IntEntry>(rows: &[Vec<T>], ncols: usize) -> Result<(Vec<Vec<Q>>, KernelStats)> {
    if ncols == 0 {
        return Ok((Vec::new(), KernelStats::default()));
    }
    let primes = large_primes(64);
    let mut best_pivots: Option<Vec<usize>> = None;
    let mut acc: Option<(BigInt, Vec<Vec<BigInt>>)> = None;
    let mut last_recon: Option<Vec<Vec<Q>>> = None;
    let mut used = 0;
    for &p in &primes {
        used += 1;
        let f = PrimeField::new(p);
        let mut ech = DenseModEchelon::new(f, ncols);
        for r in rows {
            if ech.rows.len() == ncols {
                break;
            }
            if r.iter().all(|x| x.is_zero_entry()) {
                continue;
            }
            ech.insert(r.iter().map(|x| x.residue(&f)).collect());
        }
        let pivots = ech.pivots();
        match &best_pivots {
            Some(bp) if pivots.len() < bp.len() || (pivots.len() == bp.len() && &pivots != bp) => continue,
            Some(bp) if pivots.len() > bp.len() => {
                acc = None;
                last_recon = None;
            }
            _ => {}
        }
        best_pivots = Some(pivots.clone());
        let kern = ech.kernel();
        if kern.is_empty() {
            return Ok((Vec::new(), KernelStats { primes_used: used, rank: pivots.len() }));
        }
        acc = Some(match acc.take() {
            None => (
                BigInt::from(p),
                kern.iter().map(|(_, v)| v.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            ),
            Some((m, vals)) => {
                let newvals = vals
                    .iter()
                    .zip(kern.iter())
                    .map(|(old, (_, v))| old.iter().zip(v.iter()).map(|(a, &b)| crt_combine(a, &m, b, p)).collect())
                    .collect();
                (m * BigInt::from(p), newvals)
            }
        });
        let (m, vals) = acc.as_ref().unwrap();
        let recon: Option<Vec<Vec<Q>>> = vals
            .iter()
            .map(|v| v.iter().map(|a| rational_reconstruct(a, m)).collect::<Option<Vec<Q>>>())
            .collect();
        if let Some(recon) = recon {
            if last_recon.as_ref() == Some(&recon) && verify_kernel(rows, &recon) {
                return Ok((recon, KernelStats { primes_used: used, rank: pivots.len() }));
            }
            last_recon = Some(recon);
        }
    }
    Err(Error::Resource("modular kernel did not stabilize within the prime budget".into()))
}

/// Checks `rows * v == 0` exactly for every vector.
pub fn verify_kernel<T: IntEntry>(rows: &[Vec<T>], vecs: &[Vec<Q>]) -> bool {
    let ints: Vec<Vec<BigInt>> = vecs.iter().map(|v| primitive_integer_vector(v)).collect();
    for r in rows {
        for v in &ints {
            let mut s = BigInt::zero();
            for (a, b) in r.iter().zip(v.iter()) {
                if !a.is_zero_entry() && !b.is_zero() {
                    s += a.to_big() * b;
                }
            }
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Rank of an integer matrix modulo `p`.
pub fn rank_mod_p<T: IntEntry>(rows: &[Vec<T>], ncols: usize, p: u64) -> usize {
    let f = PrimeField::new(p);
    let mut ech = DenseModEchelon::new(f, ncols);
    for r in rows {
        if ech.rows.len() == ncols {
            break;
        }
        ech.insert(r.iter().map(|x| x.residue(&f)).collect());
    }
    ech.rows.len()
}

/// Kernel of a small rational matrix by plain Gaussian elimination.
pub fn rational_kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut ech = Echelon::new(Rationals, ncols);
    for r in rows {
        let sparse: SparseRow<Q> = r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect();
        ech.insert(sparse);
    }
    ech.kernel()
}

/// Sign helper used by the fixed-point and PSLQ code.
pub fn big_sign(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0u64..2000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "n = {n}");
        }
        assert!(is_prime_u64((1u64 << 61) - 1));
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let primes = large_primes(2);
        let m = BigInt::from(primes[0]) * BigInt::from(primes[1]);
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (123456, 789)] {
            let x = q(n, d);
            let f0 = PrimeField::new(primes[0]);
            let f1 = PrimeField::new(primes[1]);
            let a = crt_combine(&BigInt::from(f0.from_q(&x).unwrap()), &BigInt::from(primes[0]), f1.from_q(&x).unwrap(), primes[1]);
            assert_eq!(rational_reconstruct(&a, &m), Some(x));
        }
    }

    #[test]
    fn exact_kernel_of_rank_deficient_matrix() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 1]];
        let (k, stats) = exact_kernel(&rows, 4).unwrap();
        assert_eq!(stats.rank, 2);
        assert_eq!(k.len(), 2);
        assert!(verify_kernel(&rows, &k));
    }

    #[test]
    fn exact_kernel_with_fractional_entries() {
        let rows: Vec<Vec<i64>> = vec![vec![3, 7, 0], vec![0, 5, 11]];
        let (k, _) = exact_kernel(&rows, 3).unwrap();
        assert_eq!(k.len(), 1);
        // x = 77/165 z... check directly
        assert!(verify_kernel(&rows, &k));
        assert!(k[0].iter().any(|x| !x.denom().is_one()));
    }

    #[test]
    fn sparse_echelon_kernel_matches_dense() {
        let rows: Vec<Vec<i64>> = vec![vec![1, -1, 0, 2], vec![0, 1, 1, 0], vec![1, 0, 1, 2]];
        let qrows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        let k = rational_kernel(&qrows, 4);
        assert_eq!(k.len(), 2);
        assert!(verify_kernel(&rows, &k));
    }
}
