//! Graded Lie algebras given by generators and homogeneous relators, built
//! degree by degree (nilpotent quotient), and the braid Lie algebras.
//!
//! Degree `k ≥ 2` is computed as a quotient of the formal span of symbols
//! `s(i, j) = [e_i, b_j]`, where `e_i` runs over the degree-one basis and
//! `b_j` over the degree-`(k-1)` basis. The relations imposed are
//! antisymmetry in degree two, the Jacobi identities
//! `[e_i,[e_l,c]] - [e_l,[e_i,c]] = [[e_i,e_l],c]` for every basis element
//! `c` of degree `k-2`, and the relators of degree `k`. The surviving
//! symbols form the basis of degree `k`, each carrying its defining pair.

mod enveloping;
mod semidirect;

pub use enveloping::{pbw_generating_function, EnvElem, TruncatedEnveloping};
pub use semidirect::{apply_derivation, P5Element, P5Model};

use std::collections::HashMap;
use std::sync::Mutex;

use crate::arith::{sparse_axpy, Echelon, Field, PrimeField, Rationals, SparseRow, Q};
use crate::error::{Error, Result};
use crate::freelie::{LiePoly, LieTarget};

type Row<F> = SparseRow<<F as Field>::Elem>;

pub struct GradedPresentedLie<F: Field + Clone> {
    field: F,
    gen_names: Vec<String>,
    max_degree: usize,
    dims: Vec<usize>,
    /// defs[k][m] = (i, j): basis element m of degree k is [e_i, b_j]
    defs: Vec<Vec<(usize, usize)>>,
    /// generator -> coordinates on the degree-one basis
    gen_coords: Vec<Row<F>>,
    /// ad[k][i][j] = [e_i, b_j] for b_j of degree k, in degree k+1
    ad: Vec<Vec<Vec<Row<F>>>>,
    memo: Mutex<HashMap<(usize, usize, usize, usize), Row<F>>>,
}

/// Checks that a relator is homogeneous and returns its degree.
fn relator_degree(r: &LiePoly) -> Result<Option<usize>> {
    if r.is_zero() {
        return Ok(None);
    }
    r.weight().map(Some).ok_or_else(|| Error::InvalidInput("inhomogeneous relator".into()))
}

impl<F: Field + Clone> GradedPresentedLie<F> {
    /// Builds the algebra up to `max_degree`. Relators are Lie polynomials
    /// over the generator alphabet.
    pub fn new(field: F, gen_names: &[String], relators: &[LiePoly], max_degree: usize) -> Result<Self> {
        let ngen = gen_names.len();
        let mut by_degree: HashMap<usize, Vec<&LiePoly>> = HashMap::new();
        for r in relators {
            if r.rank() != ngen {
                return Err(Error::InvalidInput("relator alphabet does not match the generators".into()));
            }
            if let Some(d) = relator_degree(r)? {
                by_degree.entry(d).or_default().push(r);
            }
        }
        // degree one: generators modulo linear relators
        let mut ech = Echelon::new(field.clone(), ngen);
        for r in by_degree.get(&1).map(|v| v.as_slice()).unwrap_or(&[]) {
            let row: Row<F> = (0..ngen)
                .filter_map(|g| {
                    let c = r.coeff(&[g as u8]);
                    field.from_q(&c).filter(|x| !field.is_zero(x)).map(|x| (g, x))
                })
                .collect();
            ech.insert(row);
        }
        let free = ech.free_columns();
        let red = ech.reduced();
        let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let gen_coords: Vec<Row<F>> = (0..ngen)
            .map(|g| match pos.get(&g) {
                Some(&k) => vec![(k, field.one())],
                None => {
                    let mut v: Row<F> = red[&g]
                        .iter()
                        .filter(|(c, _)| *c != g)
                        .map(|(c, x)| (pos[c], field.neg(x)))
                        .collect();
                    v.sort_by_key(|(c, _)| *c);
                    v
                }
            })
            .collect();
        let mut alg = GradedPresentedLie {
            field,
            gen_names: gen_names.to_vec(),
            max_degree: 1,
            dims: vec![0, free.len()],
            defs: vec![Vec::new(), free.iter().map(|&g| (g, usize::MAX)).collect()],
            gen_coords,
            ad: vec![Vec::new()],
            memo: Mutex::new(HashMap::new()),
        };
        for k in 2..=max_degree {
            let rels: Vec<&LiePoly> = by_degree.get(&k).cloned().unwrap_or_default();
            alg.extend_degree(&rels)?;
        }
        Ok(alg)
    }

    fn extend_degree(&mut self, relators: &[&LiePoly]) -> Result<()> {
        let k = self.max_degree + 1;
        let d1 = self.dims[1];
        let dprev = self.dims[k - 1];
        let ncols = d1 * dprev;
        let f = self.field.clone();
        let mut ech = Echelon::new(f.clone(), ncols);
        let one = f.one();
        let minus = f.neg(&one);
        let target = SymbolTarget { alg: &*self, top: k };
        // [[e_i,z],y] = [e_i,[z,y]] - [z,[e_i,y]] for z of degree p-1
        for p in 2..k {
            for i in 0..d1 {
                for z in 0..self.dims[p - 1] {
                    if p == 2 && z <= i {
                        continue;
                    }
                    if self.defs[p].contains(&(i, z)) {
                        continue;
                    }
                    let iz = self.ad[p - 1][i][z].clone();
                    let zv: Row<F> = vec![(z, one.clone())];
                    for y in 0..self.dims[k - p] {
                        let yv: Row<F> = vec![(y, one.clone())];
                        let mut row = target.beta(&iz, p, &yv)?;
                        let zy = self.bracket_in(&zv, p - 1, &yv, k - p)?;
                        row = self.add_symbols(&row, &minus, i, &zy, dprev);
                        let eiy = self.ad_generator(i, &yv, k - p);
                        row = sparse_axpy(&f, &row, &one, &target.beta(&zv, p - 1, &eiy)?);
                        ech.insert(row);
                    }
                }
            }
        }
        // antisymmetry
        for p in 1..=k / 2 {
            let q = k - p;
            for x in 0..self.dims[p] {
                let xv: Row<F> = vec![(x, one.clone())];
                for y in 0..self.dims[q] {
                    if p == q && y < x {
                        continue;
                    }
                    let yv: Row<F> = vec![(y, one.clone())];
                    let row = sparse_axpy(&f, &target.beta(&xv, p, &yv)?, &one, &target.beta(&yv, q, &xv)?);
                    ech.insert(row);
                }
            }
        }
        for r in relators {
            let images: Vec<(usize, Row<F>)> = self.gen_coords.iter().map(|c| (1, c.clone())).collect();
            let (deg, row) = r.substitute(&images, &target)?;
            debug_assert!(row.is_empty() || deg == k);
            ech.insert(row);
        }
        let free = ech.free_columns();
        let red = ech.reduced();
        let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(t, &c)| (c, t)).collect();
        let defs: Vec<(usize, usize)> = free.iter().map(|&c| (c / dprev, c % dprev)).collect();
        let mut ad_prev: Vec<Vec<Row<F>>> = vec![Vec::with_capacity(dprev); d1];
        for (i, row_i) in ad_prev.iter_mut().enumerate() {
            for j in 0..dprev {
                let c = i * dprev + j;
                let v: Row<F> = match pos.get(&c) {
                    Some(&t) => vec![(t, f.one())],
                    None => {
                        let mut v: Row<F> = red[&c]
                            .iter()
                            .filter(|(cc, _)| *cc != c)
                            .map(|(cc, x)| (pos[cc], f.neg(x)))
                            .collect();
                        v.sort_by_key(|(t, _)| *t);
                        v
                    }
                };
                row_i.push(v);
            }
        }
        self.ad.push(ad_prev);
        self.dims.push(free.len());
        self.defs.push(defs);
        self.max_degree = k;
        Ok(())
    }

    /// `row + coef * s(i, v)` for `v` a degree-(k-1) coordinate vector.
    fn add_symbols(&self, row: &Row<F>, coef: &F::Elem, i: usize, v: &Row<F>, dprev: usize) -> Row<F> {
        let shifted: Row<F> = v.iter().map(|(j, x)| (i * dprev + j, x.clone())).collect();
        sparse_axpy(&self.field, row, coef, &shifted)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn graded_dim(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.max_degree {
            return Err(Error::InvalidInput(format!("degree {k} not computed")));
        }
        Ok(self.dims[k])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.dims[1..].to_vec()
    }

    /// Defining pair of a basis element of degree `k ≥ 2`.
    pub fn definition(&self, k: usize, m: usize) -> (usize, usize) {
        self.defs[k][m]
    }

    /// Coordinates of a generator on the degree-one basis.
    pub fn generator(&self, g: usize) -> Row<F> {
        self.gen_coords[g].clone()
    }

    /// Reduces a homogeneous element of the free Lie algebra on the
    /// generators to quotient coordinates.
    pub fn reduce(&self, p: &LiePoly) -> Result<(usize, Row<F>)> {
        let k = p.weight().unwrap_or(1);
        if k > self.max_degree {
            return Err(Error::InvalidInput(format!("degree {k} not computed")));
        }
        let images: Vec<(usize, Row<F>)> = self.gen_coords.iter().map(|c| (1, c.clone())).collect();
        p.substitute(&images, &QuotientTarget { alg: self })
    }

    /// Image of a Lie polynomial under `letter i ↦ generator gens[i]`.
    pub fn evaluate(&self, p: &LiePoly, gens: &[usize]) -> Result<Row<F>> {
        let images: Vec<(usize, Row<F>)> = gens.iter().map(|&g| (1, self.gen_coords[g].clone())).collect();
        Ok(p.substitute(&images, &QuotientTarget { alg: self })?.1)
    }

    /// `[e_i, v]` for `v` of degree `k`.
    pub fn ad_generator(&self, i: usize, v: &Row<F>, k: usize) -> Row<F> {
        let mut out: Row<F> = Vec::new();
        for (j, x) in v {
            out = sparse_axpy(&self.field, &out, x, &self.ad[k][i][*j]);
        }
        out
    }

    /// Bracket of basis elements `b^a_m` and `b^b_n`.
    fn basis_bracket(&self, a: usize, m: usize, b: usize, n: usize) -> Row<F> {
        if a == 1 {
            return self.ad[b][m][n].clone();
        }
        if let Some(r) = self.memo.lock().unwrap().get(&(a, m, b, n)) {
            return r.clone();
        }
        let (i, j) = self.defs[a][m];
        // [[e_i,u],v] = [e_i,[u,v]] - [u,[e_i,v]]
        let uv = self.basis_bracket(a - 1, j, b, n);
        let first = self.ad_generator(i, &uv, a - 1 + b);
        let eiv = self.ad[b][i][n].clone();
        let mut second: Row<F> = Vec::new();
        for (t, x) in &eiv {
            second = sparse_axpy(&self.field, &second, x, &self.basis_bracket(a - 1, j, b + 1, *t));
        }
        let r = sparse_axpy(&self.field, &first, &self.field.neg(&self.field.one()), &second);
        self.memo.lock().unwrap().insert((a, m, b, n), r.clone());
        r
    }

    /// Bracket of homogeneous elements of degrees `a` and `b`.
    pub fn bracket_in(&self, u: &Row<F>, a: usize, v: &Row<F>, b: usize) -> Result<Row<F>> {
        if a + b > self.max_degree {
            return Err(Error::InvalidInput(format!("degree {} exceeds the computed range", a + b)));
        }
        let f = &self.field;
        let mut out: Row<F> = Vec::new();
        for (m, x) in u {
            for (n, y) in v {
                out = sparse_axpy(f, &out, &f.mul(x, y), &self.basis_bracket(a, *m, b, *n));
            }
        }
        Ok(out)
    }
}

/// Quotient elements tagged with their degree.
struct QuotientTarget<'a, F: Field + Clone> {
    alg: &'a GradedPresentedLie<F>,
}

impl<F: Field + Clone> LieTarget for QuotientTarget<'_, F> {
    type Elem = (usize, Row<F>);
    fn zero(&self) -> Self::Elem {
        (0, Vec::new())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.alg.field;
        (a.0.max(b.0), sparse_axpy(f, &a.1, &f.one(), &b.1))
    }
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem {
        let f = &self.alg.field;
        match f.from_q(c) {
            Some(x) => (a.0, sparse_axpy(f, &Vec::new(), &x, &a.1)),
            None => (a.0, Vec::new()),
        }
    }
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok((a.0 + b.0, self.alg.bracket_in(&a.1, a.0, &b.1, b.0)?))
    }
}

/// Like [`QuotientTarget`], but brackets landing in degree `top` (not yet
/// computed) are expressed through the symbols `s(i, j)`.
struct SymbolTarget<'a, F: Field + Clone> {
    alg: &'a GradedPresentedLie<F>,
    top: usize,
}

impl<F: Field + Clone> SymbolTarget<'_, F> {
    /// `[u, v]` in symbols, `u` of degree `a`, `v` of degree `top - a`.
    fn beta(&self, u: &Row<F>, a: usize, v: &Row<F>) -> Result<Row<F>> {
        let alg = self.alg;
        let f = &alg.field;
        let b = self.top - a;
        let dprev = alg.dims[self.top - 1];
        let mut out: Row<F> = Vec::new();
        for (m, x) in u {
            if a == 1 {
                out = alg.add_symbols(&out, x, *m, v, dprev);
                continue;
            }
            let (i, j) = alg.defs[a][*m];
            let uj: Row<F> = vec![(j, f.one())];
            // [[e_i,u'],v] = s(i,[u',v]) - beta(u', [e_i,v])
            let inner = alg.bracket_in(&uj, a - 1, v, b)?;
            out = alg.add_symbols(&out, x, i, &inner, dprev);
            let eiv = alg.ad_generator(i, v, b);
            let rest = self.beta(&uj, a - 1, &eiv)?;
            out = sparse_axpy(f, &out, &f.neg(x), &rest);
        }
        Ok(out)
    }
}

impl<F: Field + Clone> LieTarget for SymbolTarget<'_, F> {
    type Elem = (usize, Row<F>);
    fn zero(&self) -> Self::Elem {
        (0, Vec::new())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.alg.field;
        (a.0.max(b.0), sparse_axpy(f, &a.1, &f.one(), &b.1))
    }
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem {
        let f = &self.alg.field;
        match f.from_q(c) {
            Some(x) => (a.0, sparse_axpy(f, &Vec::new(), &x, &a.1)),
            None => (a.0, Vec::new()),
        }
    }
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let d = a.0 + b.0;
        if d < self.top {
            Ok((d, self.alg.bracket_in(&a.1, a.0, &b.1, b.0)?))
        } else {
            Ok((d, self.beta(&a.1, a.0, &b.1)?))
        }
    }
}

/// Generator names `x_{i,j}` (`i < j`) of the braid Lie algebra on `n`
/// strands, cyclic ones first: `x12, x23, …, x(n-1)n, x1n`, then the rest.
pub fn braid_generators(n: usize) -> Vec<(usize, usize)> {
    let mut g: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    g.push((1, n));
    for i in 1..=n {
        for j in (i + 1)..=n {
            if !g.contains(&(i, j)) {
                g.push((i, j));
            }
        }
    }
    g
}

pub fn braid_generator_name(i: usize, j: usize) -> String {
    format!("x{}{}", i.min(j), i.max(j))
}

/// Presentation of the braid Lie algebra on `n ≥ 4` strands:
/// `x_{i,j} = x_{j,i}`, `Σ_k x_{i,k} = 0` for each `i`, and
/// `[x_{i,j}, x_{k,l}] = 0` for disjoint pairs.
pub fn braid_presentation(n: usize) -> (Vec<String>, Vec<LiePoly>) {
    let gens = braid_generators(n);
    let names: Vec<String> = gens.iter().map(|&(i, j)| braid_generator_name(i, j)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let idx = |i: usize, j: usize| gens.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let gen = |i: usize, j: usize| LiePoly::generator(&refs, idx(i, j));
    let mut rels = Vec::new();
    for i in 1..=n {
        let mut s = LiePoly::zero(&refs);
        for k in 1..=n {
            if k != i {
                s = s.add(&gen(i, k));
            }
        }
        rels.push(s);
    }
    for (a, &(i, j)) in gens.iter().enumerate() {
        for &(k, l) in gens.iter().skip(a + 1) {
            if i != k && i != l && j != k && j != l {
                rels.push(gen(i, j).bracket(&gen(k, l)));
            }
        }
    }
    (names, rels)
}

/// The braid Lie algebra on `n` strands over `Q`.
pub fn braid_lie(n: usize, max_degree: usize) -> Result<GradedPresentedLie<Rationals>> {
    let (names, rels) = braid_presentation(n);
    GradedPresentedLie::new(Rationals, &names, &rels, max_degree)
}

/// The braid Lie algebra on `n` strands modulo a prime.
pub fn braid_lie_mod_p(n: usize, max_degree: usize, p: u64) -> Result<GradedPresentedLie<PrimeField>> {
    let (names, rels) = braid_presentation(n);
    GradedPresentedLie::new(PrimeField::new(p), &names, &rels, max_degree)
}

/// Free Lie algebra on `r` generators presented with no relators.
pub fn free_presented(r: usize, max_degree: usize) -> Result<GradedPresentedLie<Rationals>> {
    let names: Vec<String> = (0..r).map(|i| format!("g{i}")).collect();
    GradedPresentedLie::new(Rationals, &names, &[], max_degree)
}
