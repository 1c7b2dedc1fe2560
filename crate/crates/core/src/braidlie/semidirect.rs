//! Dense model of the five-strand braid Lie algebra as a semidirect product
//! `F3(u1,u2,u3) ⋊ F2(X,Y)`.
//!
//! `X = x12`, `Y = x23`, `u_m = x_{m5}`. The free algebra on `X, Y` acts on
//! the free algebra on `u1, u2, u3` by the derivations
//! `δ_X: u1 ↦ [u1,u2], u2 ↦ [u2,u1], u3 ↦ 0` and
//! `δ_Y: u1 ↦ 0, u2 ↦ [u2,u3], u3 ↦ [u3,u2]`.
//! An element is a pair `(a, b)` of dense homogeneous polynomials together
//! with the values `δ_a(u_m)`, which are needed to bracket it further.

use crate::freelie::dense_bracket;

/// Homogeneous element of the model.
#[derive(Clone, Debug, PartialEq)]
pub struct P5Element {
    pub degree: usize,
    /// component in the free algebra on `X, Y` (dense, `2^degree`)
    pub a: Vec<i64>,
    /// component in the free algebra on `u1, u2, u3` (dense, `3^degree`)
    pub b: Vec<i64>,
    /// `δ_a(u_m)` for `m = 1, 2, 3` (each dense of degree `degree + 1`);
    /// `None` when `a = 0` or when not tracked
    pub d: Option<[Vec<i64>; 3]>,
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn axpy(out: &mut [i64], c: i64, v: &[i64]) {
    for (o, &x) in out.iter_mut().zip(v) {
        *o += c * x;
    }
}

/// Applies the derivation with `u_m ↦ dvals[m]` (each of degree `p + 1`) to
/// a dense element `b` of degree `q` in the free algebra on three letters.
pub fn apply_derivation(dvals: &[Vec<i64>; 3], p: usize, b: &[i64], q: usize) -> Vec<i64> {
    let span = 3usize.pow(p as u32 + 1);
    let mut out = vec![0i64; 3usize.pow((p + q) as u32)];
    let nonzero: Vec<Vec<(usize, i64)>> = dvals
        .iter()
        .map(|v| v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect())
        .collect();
    if nonzero.iter().all(|v| v.is_empty()) {
        return out;
    }
    for (i, &c) in b.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for t in 0..q {
            let tail = 3usize.pow((q - t - 1) as u32);
            let prefix = i / (tail * 3);
            let m = (i / tail) % 3;
            let suffix = i % tail;
            for &(j, x) in &nonzero[m] {
                out[(prefix * span + j) * tail + suffix] += c * x;
            }
        }
    }
    out
}

/// The five-strand model: generator images and brackets.
#[derive(Clone, Debug, Default)]
pub struct P5Model;

impl P5Model {
    /// Degree-one element `cX X + cY Y + c1 u1 + c2 u2 + c3 u3`.
    pub fn linear(&self, cx: i64, cy: i64, cu: [i64; 3]) -> P5Element {
        let mut dx: [Vec<i64>; 3] = [vec![0; 9], vec![0; 9], vec![0; 9]];
        // δ_X(u1) = u1u2 - u2u1, δ_X(u2) = u2u1 - u1u2
        dx[0][1] += cx;
        dx[0][3] -= cx;
        dx[1][3] += cx;
        dx[1][1] -= cx;
        // δ_Y(u2) = u2u3 - u3u2, δ_Y(u3) = u3u2 - u2u3
        dx[1][5] += cy;
        dx[1][7] -= cy;
        dx[2][7] += cy;
        dx[2][5] -= cy;
        P5Element { degree: 1, a: vec![cx, cy], b: cu.to_vec(), d: Some(dx) }
    }

    /// Image of the generator `x_{i,j}` (`1 ≤ i ≠ j ≤ 5`).
    pub fn generator(&self, i: usize, j: usize) -> P5Element {
        let (i, j) = (i.min(j), i.max(j));
        match (i, j) {
            (1, 2) => self.linear(1, 0, [0, 0, 0]),
            (2, 3) => self.linear(0, 1, [0, 0, 0]),
            (1, 5) => self.linear(0, 0, [1, 0, 0]),
            (2, 5) => self.linear(0, 0, [0, 1, 0]),
            (3, 5) => self.linear(0, 0, [0, 0, 1]),
            (4, 5) => self.linear(0, 0, [-1, -1, -1]),
            (1, 4) => self.linear(0, 1, [0, 1, 1]),
            (1, 3) => self.linear(-1, -1, [-1, -1, -1]),
            (2, 4) => self.linear(-1, -1, [0, -1, 0]),
            (3, 4) => self.linear(1, 0, [1, 1, 0]),
            _ => panic!("no generator x{i}{j} on five strands"),
        }
    }

    pub fn zero(&self, degree: usize) -> P5Element {
        P5Element {
            degree,
            a: vec![0; 1 << degree],
            b: vec![0; 3usize.pow(degree as u32)],
            d: Some([
                vec![0; 3usize.pow(degree as u32 + 1)],
                vec![0; 3usize.pow(degree as u32 + 1)],
                vec![0; 3usize.pow(degree as u32 + 1)],
            ]),
        }
    }

    /// `δ_a(b)` for the `F2` part of `e` acting on a dense `b` of degree `q`.
    pub fn delta(&self, e: &P5Element, b: &[i64], q: usize) -> Vec<i64> {
        match &e.d {
            Some(d) => apply_derivation(d, e.degree, b, q),
            None if is_zero(&e.a) => vec![0; 3usize.pow((e.degree + q) as u32)],
            None => panic!("derivation data required"),
        }
    }

    /// Bracket; the derivation data of the result is computed only when
    /// `want_d` is set and the `F2` part is nonzero.
    pub fn bracket(&self, e1: &P5Element, e2: &P5Element, want_d: bool) -> P5Element {
        let (p, q) = (e1.degree, e2.degree);
        let a = dense_bracket(&e1.a, &e2.a, p, q, 2);
        let mut b = dense_bracket(&e1.b, &e2.b, p, q, 3);
        if !is_zero(&e2.b) && !is_zero(&e1.a) {
            axpy(&mut b, 1, &self.delta(e1, &e2.b, q));
        }
        if !is_zero(&e1.b) && !is_zero(&e2.a) {
            axpy(&mut b, -1, &self.delta(e2, &e1.b, p));
        }
        let d = if want_d && !is_zero(&a) {
            let n = 3usize.pow((p + q + 1) as u32);
            let mut d: [Vec<i64>; 3] = [vec![0; n], vec![0; n], vec![0; n]];
            let d1 = e1.d.as_ref().expect("derivation data required");
            let d2 = e2.d.as_ref().expect("derivation data required");
            for m in 0..3 {
                axpy(&mut d[m], 1, &apply_derivation(d1, p, &d2[m], q + 1));
                axpy(&mut d[m], -1, &apply_derivation(d2, q, &d1[m], p + 1));
            }
            Some(d)
        } else {
            None
        };
        P5Element { degree: p + q, a, b, d }
    }

    pub fn add_scaled(&self, e: &mut P5Element, c: i64, f: &P5Element) {
        assert_eq!(e.degree, f.degree);
        let e_trivial = is_zero(&e.a);
        let f_trivial = is_zero(&f.a);
        axpy(&mut e.a, c, &f.a);
        axpy(&mut e.b, c, &f.b);
        e.d = match (e.d.take(), &f.d) {
            (Some(mut ed), Some(fd)) => {
                for m in 0..3 {
                    axpy(&mut ed[m], c, &fd[m]);
                }
                Some(ed)
            }
            (Some(ed), None) if f_trivial => Some(ed),
            (None, Some(fd)) if e_trivial => Some(fd.clone().map(|v| v.into_iter().map(|x| c * x).collect())),
            _ => None,
        };
    }

    pub fn is_zero(&self, e: &P5Element) -> bool {
        is_zero(&e.a) && is_zero(&e.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_relations_hold() {
        let m = P5Model;
        for i in 1..=5 {
            let mut s = m.zero(1);
            for k in 1..=5 {
                if k != i {
                    m.add_scaled(&mut s, 1, &m.generator(i, k));
                }
            }
            assert!(m.is_zero(&s), "row {i}");
        }
    }

    #[test]
    fn disjoint_pairs_commute() {
        let m = P5Model;
        let pairs: Vec<(usize, usize)> = (1..=5).flat_map(|i| ((i + 1)..=5).map(move |j| (i, j))).collect();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                if i != k && i != l && j != k && j != l {
                    let e = m.bracket(&m.generator(i, j), &m.generator(k, l), true);
                    assert!(m.is_zero(&e), "x{i}{j}, x{k}{l}");
                }
            }
        }
    }

    #[test]
    fn jacobi_in_degree_four() {
        let m = P5Model;
        let x = m.generator(3, 4);
        let y = m.generator(2, 4);
        let z = m.bracket(&m.generator(1, 3), &m.generator(4, 5), true);
        let j1 = m.bracket(&x, &m.bracket(&y, &z, true), false);
        let j2 = m.bracket(&y, &m.bracket(&z, &x, true), false);
        let j3 = m.bracket(&z, &m.bracket(&x, &y, true), false);
        let mut s = j1;
        m.add_scaled(&mut s, 1, &j2);
        m.add_scaled(&mut s, 1, &j3);
        assert!(m.is_zero(&s));
    }
}
