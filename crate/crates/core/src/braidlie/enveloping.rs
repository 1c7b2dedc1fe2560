//! Degree-truncated universal enveloping algebras with PBW straightening.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::GradedPresentedLie;
use crate::arith::{Rationals, SparseRow, Q};
use crate::error::{Error, Result};
use crate::ncalg::{Coeff, TruncAlgebra};

/// Element of the enveloping algebra: PBW monomial (nondecreasing global
/// basis indices) to coefficient.
pub type EnvElem<C> = BTreeMap<Vec<usize>, C>;

type NormalForm = Arc<BTreeMap<Vec<usize>, Q>>;

pub struct TruncatedEnveloping {
    lie: Arc<GradedPresentedLie<Rationals>>,
    n: usize,
    /// global index -> (degree, index within degree)
    basis: Vec<(usize, usize)>,
    offset: Vec<usize>,
    memo: Mutex<HashMap<Vec<usize>, NormalForm>>,
}

impl TruncatedEnveloping {
    pub fn new(lie: Arc<GradedPresentedLie<Rationals>>, n: usize) -> Result<Self> {
        if n > lie.max_degree() {
            return Err(Error::InvalidInput(format!("truncation {n} exceeds the computed Lie degree {}", lie.max_degree())));
        }
        let mut basis = Vec::new();
        let mut offset = vec![0; n + 2];
        for k in 1..=n {
            offset[k] = basis.len();
            for m in 0..lie.graded_dim(k)? {
                basis.push((k, m));
            }
        }
        offset[n + 1] = basis.len();
        Ok(TruncatedEnveloping { lie, n, basis, offset, memo: Mutex::new(HashMap::new()) })
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn lie(&self) -> &GradedPresentedLie<Rationals> {
        &self.lie
    }

    pub fn global_index(&self, degree: usize, m: usize) -> usize {
        self.offset[degree] + m
    }

    fn seq_degree(&self, s: &[usize]) -> usize {
        s.iter().map(|&g| self.basis[g].0).sum()
    }

    /// Embeds a Lie element of the given degree.
    pub fn from_lie<C: Coeff>(&self, v: &SparseRow<Q>, degree: usize) -> EnvElem<C> {
        let mut out = EnvElem::new();
        if degree > self.n {
            return out;
        }
        for (m, c) in v {
            out.insert(vec![self.global_index(degree, *m)], C::from_q(c));
        }
        out
    }

    /// PBW normal form of an arbitrary product of basis elements.
    pub fn normal_form(&self, seq: &[usize]) -> NormalForm {
        if let Some(r) = self.memo.lock().unwrap().get(seq) {
            return r.clone();
        }
        let descent = (0..seq.len().saturating_sub(1)).find(|&i| seq[i] > seq[i + 1]);
        let result = match descent {
            None => {
                let mut m = BTreeMap::new();
                m.insert(seq.to_vec(), Q::one());
                Arc::new(m)
            }
            Some(i) => {
                let (j, k) = (seq[i], seq[i + 1]);
                let mut acc: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
                let mut swapped = seq.to_vec();
                swapped.swap(i, i + 1);
                for (w, c) in self.normal_form(&swapped).iter() {
                    *acc.entry(w.clone()).or_insert_with(Q::zero) += c;
                }
                let (dj, mj) = self.basis[j];
                let (dk, mk) = self.basis[k];
                if dj + dk <= self.n {
                    let br = self
                        .lie
                        .bracket_in(&vec![(mj, Q::one())], dj, &vec![(mk, Q::one())], dk)
                        .expect("degree within range");
                    for (t, c) in br {
                        let mut s = seq[..i].to_vec();
                        s.push(self.global_index(dj + dk, t));
                        s.extend_from_slice(&seq[i + 2..]);
                        for (w, d) in self.normal_form(&s).iter() {
                            *acc.entry(w.clone()).or_insert_with(Q::zero) += &c * d;
                        }
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                Arc::new(acc)
            }
        };
        self.memo.lock().unwrap().insert(seq.to_vec(), result.clone());
        result
    }

    pub fn env_mul<C: Coeff>(&self, a: &EnvElem<C>, b: &EnvElem<C>) -> EnvElem<C> {
        let mut out: EnvElem<C> = BTreeMap::new();
        for (u, x) in a {
            let du = self.seq_degree(u);
            for (v, y) in b {
                if du + self.seq_degree(v) > self.n {
                    continue;
                }
                let xy = x.mul(y);
                let mut s = u.clone();
                s.extend_from_slice(v);
                for (w, c) in self.normal_form(&s).iter() {
                    let t = xy.scale_q(c);
                    match out.get_mut(w) {
                        Some(e) => *e = e.add(&t),
                        None => {
                            out.insert(w.clone(), t);
                        }
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero_c());
        out
    }

    /// Number of PBW monomials of each degree `0..=n`.
    pub fn pbw_dims(&self) -> Vec<u64> {
        let mut dims = vec![0u64; self.n + 1];
        fn rec(this: &TruncatedEnveloping, start: usize, deg: usize, dims: &mut Vec<u64>) {
            dims[deg] += 1;
            for g in start..this.basis.len() {
                let d = deg + this.basis[g].0;
                if d <= this.n {
                    rec(this, g, d, dims);
                }
            }
        }
        rec(self, 0, 0, &mut dims);
        dims
    }
}

/// Coefficients of `∏_w (1 - t^w)^{-dims[w-1]}` up to `t^n`.
pub fn pbw_generating_function(dims: &[usize], n: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::one();
    for (wi, &d) in dims.iter().enumerate() {
        let w = wi + 1;
        for _ in 0..d {
            // multiply by 1/(1 - t^w)
            for k in w..=n {
                let prev = poly[k - w].clone();
                poly[k] += prev;
            }
        }
    }
    poly
}

impl<C: Coeff> TruncAlgebra<C> for TruncatedEnveloping {
    type Elem = EnvElem<C>;
    fn zero(&self) -> EnvElem<C> {
        BTreeMap::new()
    }
    fn one(&self) -> EnvElem<C> {
        let mut m = BTreeMap::new();
        m.insert(Vec::new(), C::one_c());
        m
    }
    fn add(&self, a: &EnvElem<C>, b: &EnvElem<C>) -> EnvElem<C> {
        let mut out = a.clone();
        for (w, c) in b {
            match out.get_mut(w) {
                Some(e) => *e = e.add(c),
                None => {
                    out.insert(w.clone(), c.clone());
                }
            }
        }
        out.retain(|_, c| !c.is_zero_c());
        out
    }
    fn mul(&self, a: &EnvElem<C>, b: &EnvElem<C>) -> EnvElem<C> {
        self.env_mul(a, b)
    }
    fn scale(&self, a: &EnvElem<C>, c: &C) -> EnvElem<C> {
        let mut out: EnvElem<C> = a.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect();
        out.retain(|_, c| !c.is_zero_c());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidlie::braid_lie;

    #[test]
    fn pbw_dimensions_match_generating_function() {
        let lie = Arc::new(braid_lie(5, 6).unwrap());
        let u = TruncatedEnveloping::new(lie.clone(), 6).unwrap();
        let dims = u.pbw_dims();
        assert_eq!(&dims[..3], &[1, 5, 19]);
        let gf = pbw_generating_function(&lie.dims(), 6);
        for k in 0..=6 {
            assert_eq!(BigInt::from(dims[k]), gf[k]);
        }
    }

    #[test]
    fn unit_and_associativity() {
        let lie = Arc::new(braid_lie(5, 4).unwrap());
        let u = TruncatedEnveloping::new(lie.clone(), 4).unwrap();
        let g: Vec<EnvElem<Q>> = (0..10).map(|i| u.from_lie(&lie.generator(i), 1)).collect();
        let one: EnvElem<Q> = TruncAlgebra::<Q>::one(&u);
        assert_eq!(u.env_mul(&one, &g[3]), g[3]);
        for (a, b, c) in [(0, 5, 7), (9, 2, 4), (1, 1, 8), (6, 3, 0)] {
            let l = u.env_mul(&u.env_mul(&g[a], &g[b]), &g[c]);
            let r = u.env_mul(&g[a], &u.env_mul(&g[b], &g[c]));
            assert_eq!(l, r);
        }
    }
}
