//! Dense linear-algebra referee for Betti numbers over artinian graded rings.
//!
//! Every module is stored degree by degree as an F_p vector space together
//! with the matrices of multiplication by each variable. Resolutions are
//! built by repeatedly choosing minimal generators and taking degreewise
//! kernels. Nothing here touches Gröbner bases.

#![allow(dead_code)]

use std::collections::BTreeMap;

use frobkit_core::Degree;

type Vector = Vec<u32>;

fn inv(a: u32, p: u32) -> u32 {
    let (mut r, mut b, mut e) = (1u64, a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Row echelon data of a spanning set, remembering how each echelon row is
/// combined from the inputs.
pub struct Echelon {
    p: u32,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    /// `rows[r] = Σ combos[r][i] · input[i]`.
    combos: Vec<Vector>,
}

impl Echelon {
    pub fn new(p: u32, len: usize, inputs: &[Vector]) -> Self {
        let mut e = Echelon {
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
        };
        for (i, v) in inputs.iter().enumerate() {
            debug_assert_eq!(v.len(), len);
            let mut combo = vec![0; inputs.len()];
            combo[i] = 1;
            e.insert(v.clone(), combo);
        }
        e
    }

    /// Reduces `v` (and its combination) against the echelon rows.
    fn reduce(&self, v: &mut Vector, combo: &mut Vector) {
        let p = self.p as u64;
        for (r, &piv) in self.rows.iter().zip(&self.pivots).zip(&self.combos).map(|((r, piv), c)| ((r, c), piv)) {
            let (row, rc) = r;
            let c = v[piv];
            if c == 0 {
                continue;
            }
            let f = p - c as u64;
            for (x, &y) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + f * y as u64) % p) as u32;
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = ((*x as u64 + f * y as u64) % p) as u32;
            }
        }
    }

    fn insert(&mut self, mut v: Vector, mut combo: Vector) -> bool {
        self.reduce(&mut v, &mut combo);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let s = inv(v[piv], self.p) as u64;
        v.iter_mut().for_each(|x| *x = (*x as u64 * s % p) as u32);
        combo.iter_mut().for_each(|x| *x = (*x as u64 * s % p) as u32);
        // keep earlier rows reduced at the new pivot
        for (row, rc) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            let c = row[piv] as u64;
            if c == 0 {
                continue;
            }
            let f = p - c;
            for (x, &y) in row.iter_mut().zip(&v) {
                *x = ((*x as u64 + f * y as u64) % p) as u32;
            }
            for (x, &y) in rc.iter_mut().zip(&combo) {
                *x = ((*x as u64 + f * y as u64) % p) as u32;
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        self.combos.push(combo);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut v = v.clone();
        let mut c = vec![0; self.combos.first().map_or(0, Vec::len)];
        self.reduce(&mut v, &mut c);
        v.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the (independent) inputs, if it is in their span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        let p = self.p as u64;
        let n = self.combos.first().map_or(0, Vec::len);
        let mut out = vec![0u32; n];
        for (r, &piv) in self.pivots.iter().enumerate() {
            let c = v[piv] as u64;
            if c == 0 {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(&self.combos[r]) {
                *x = ((*x as u64 + c * y as u64) % p) as u32;
            }
        }
        // verify
        let mut check = v.clone();
        let mut scratch = vec![0; n];
        self.reduce(&mut check, &mut scratch);
        check.iter().all(|&x| x == 0).then_some(out)
    }
}

/// Kernel of the linear map with the given columns (`cols[j] ∈ F_p^rows`).
fn kernel(p: u32, rows: usize, cols: &[Vector]) -> Vec<Vector> {
    let mut e = Echelon {
        p,
        rows: Vec::new(),
        pivots: Vec::new(),
        combos: Vec::new(),
    };
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        debug_assert_eq!(c.len(), rows);
        let mut combo = vec![0; cols.len()];
        combo[j] = 1;
        let mut v = c.clone();
        e.reduce(&mut v, &mut combo);
        if v.iter().all(|&x| x == 0) {
            out.push(combo);
        } else {
            e.insert(c.clone(), {
                let mut c0 = vec![0; cols.len()];
                c0[j] = 1;
                c0
            });
        }
    }
    out
}

fn apply(p: u32, m: &[Vector], v: &Vector) -> Vector {
    // m is stored by columns
    let rows = m.first().map_or(0, Vec::len);
    let mut out = vec![0u64; rows];
    for (c, &x) in m.iter().zip(v) {
        if x == 0 {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(c) {
            *o = (*o + x as u64 * y as u64) % p as u64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// A polynomial as `(coefficient, exponents)` pairs.
pub type DensePoly = Vec<(u32, Vec<u16>)>;

/// `F_p[x_1..x_n]/I` with positive integer weights, `I` homogeneous and
/// `m`-primary.
pub struct Ring {
    pub p: u32,
    pub weights: Vec<i64>,
    /// Degree `d` piece: all monomials of degree `d` and the echelon form of
    /// `I_d` in monomial coordinates.
    pieces: Vec<(Vec<Vec<u16>>, Echelon, Vec<usize>)>,
}

fn monomials(weights: &[i64], d: i64) -> Vec<Vec<u16>> {
    if weights.is_empty() {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let w = weights[0];
    let mut a = 0;
    while a * w <= d {
        for mut rest in monomials(&weights[1..], d - a * w) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
        a += 1;
    }
    out
}

fn degree_of(weights: &[i64], e: &[u16]) -> i64 {
    e.iter().zip(weights).map(|(&a, &w)| a as i64 * w).sum()
}

impl Ring {
    pub fn new(p: u32, weights: Vec<i64>, ideal: &[DensePoly]) -> Ring {
        let wmax = *weights.iter().max().expect("at least one variable");
        let mut pieces = Vec::new();
        let mut zeros = 0;
        let mut d = 0i64;
        while zeros < wmax {
            let monos = monomials(&weights, d);
            let index: BTreeMap<&Vec<u16>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut span = Vec::new();
            for g in ideal {
                let gd = degree_of(&weights, &g[0].1);
                if gd > d {
                    continue;
                }
                for m in monomials(&weights, d - gd) {
                    let mut v = vec![0u32; monos.len()];
                    for (c, e) in g {
                        let prod: Vec<u16> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                        let i = index[&prod];
                        v[i] = ((v[i] as u64 + *c as u64) % p as u64) as u32;
                    }
                    span.push(v);
                }
            }
            let ech = Echelon::new(p, monos.len(), &span);
            let basis: Vec<usize> = (0..monos.len()).filter(|i| !ech.pivots.contains(i)).collect();
            zeros = if basis.is_empty() { zeros + 1 } else { 0 };
            pieces.push((monos, ech, basis));
            d += 1;
            assert!(d < 200, "ring is not artinian");
        }
        while pieces.last().is_some_and(|p| p.2.is_empty()) {
            pieces.pop();
        }
        Ring { p, weights, pieces }
    }

    /// Monomial ideal shorthand.
    pub fn monomial(p: u32, weights: Vec<i64>, gens: &[Vec<u16>]) -> Ring {
        let ideal: Vec<DensePoly> = gens.iter().map(|g| vec![(1, g.clone())]).collect();
        Ring::new(p, weights, &ideal)
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn top(&self) -> i64 {
        self.pieces.len() as i64 - 1
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < 0 || d > self.top() {
            0
        } else {
            self.pieces[d as usize].2.len()
        }
    }

    pub fn dim_k(&self) -> usize {
        (0..=self.top()).map(|d| self.dim(d)).sum()
    }

    /// Basis monomials of `S_d`.
    pub fn basis(&self, d: i64) -> Vec<Vec<u16>> {
        if d < 0 || d > self.top() {
            return Vec::new();
        }
        let (monos, _, basis) = &self.pieces[d as usize];
        basis.iter().map(|&i| monos[i].clone()).collect()
    }

    /// Basis coordinates of the class of the monomial `e`.
    fn class_of(&self, e: &[u16]) -> Vector {
        let d = degree_of(&self.weights, e);
        if d > self.top() {
            return Vec::new();
        }
        let (monos, ech, basis) = &self.pieces[d as usize];
        let mut v = vec![0u32; monos.len()];
        v[monos.iter().position(|m| m == e).expect("monomial of degree d")] = 1;
        let mut scratch = vec![0; ech.combos.first().map_or(0, Vec::len)];
        ech.reduce(&mut v, &mut scratch);
        basis.iter().map(|&i| v[i]).collect()
    }

    /// Matrix (by columns) of multiplication by the monomial `e` from `S_d`.
    fn mult(&self, d: i64, e: &[u16]) -> Vec<Vector> {
        let target = d + degree_of(&self.weights, e);
        let tdim = self.dim(target);
        self.basis(d)
            .iter()
            .map(|m| {
                if tdim == 0 {
                    return Vec::new();
                }
                let prod: Vec<u16> = m.iter().zip(e).map(|(a, b)| a + b).collect();
                self.class_of(&prod)
            })
            .collect()
    }

    fn unit(&self, i: usize, k: u16) -> Vec<u16> {
        let mut e = vec![0; self.nvars()];
        e[i] = k;
        e
    }

    /// `S` as a module over itself, twisted so that its generator sits in
    /// degree `shift`.
    pub fn free(&self, shift: Degree) -> GradedModule {
        let mut m = GradedModule::empty(self);
        for d in 0..=self.top() {
            if self.dim(d) > 0 {
                m.pieces.insert(Degree::from_integer(d) + shift, self.dim(d));
            }
        }
        for i in 0..self.nvars() {
            for d in 0..=self.top() {
                let src = Degree::from_integer(d) + shift;
                if self.dim(d) > 0 && self.dim(d + self.weights[i]) > 0 {
                    m.mult.insert((i, src), self.mult(d, &self.unit(i, 1)));
                }
            }
        }
        m
    }

    /// The residue field in degree 0.
    pub fn residue(&self) -> GradedModule {
        let mut m = GradedModule::empty(self);
        m.pieces.insert(Degree::from_integer(0), 1);
        m
    }

    /// `F^e_*S`: the vector space `S` in degrees `d/p^e`, with `x_i` acting as
    /// multiplication by `x_i^{p^e}`.
    pub fn frobenius(&self, e: u32) -> GradedModule {
        let q = (self.p as i64).pow(e);
        let mut m = GradedModule::empty(self);
        for d in 0..=self.top() {
            if self.dim(d) > 0 {
                m.pieces.insert(Degree::new(d, q), self.dim(d));
            }
        }
        for i in 0..self.nvars() {
            for d in 0..=self.top() {
                if self.dim(d) > 0 && self.dim(d + q * self.weights[i]) > 0 {
                    m.mult
                        .insert((i, Degree::new(d, q)), self.mult(d, &self.unit(i, q as u16)));
                }
            }
        }
        m
    }

    /// `S/J` for a homogeneous ideal `J` given by dense polynomials.
    pub fn cyclic(&self, j: &[DensePoly]) -> GradedModule {
        let s = self.free(Degree::from_integer(0));
        let gens: Vec<(Degree, Vector)> = j
            .iter()
            .filter_map(|f| {
                let d = degree_of(&self.weights, &f[0].1);
                let mut v = vec![0u32; self.dim(d)];
                if v.is_empty() {
                    return None;
                }
                for (c, e) in f {
                    for (x, y) in v.iter_mut().zip(self.class_of(e)) {
                        *x = ((*x as u64 + *c as u64 * y as u64) % self.p as u64) as u32;
                    }
                }
                Some((Degree::from_integer(d), v))
            })
            .collect();
        s.quotient(&gens)
    }
}

/// A finite-length graded module over a [`Ring`].
#[derive(Clone, Debug)]
pub struct GradedModule {
    p: u32,
    weights: Vec<Degree>,
    /// Dimension of each nonzero graded piece.
    pub pieces: BTreeMap<Degree, usize>,
    /// `(i, d)` → matrix of `x_i: M_d → M_{d+w_i}` by columns; absent when
    /// either side is zero.
    mult: BTreeMap<(usize, Degree), Vec<Vector>>,
}

impl GradedModule {
    fn empty(r: &Ring) -> Self {
        GradedModule {
            p: r.p,
            weights: r.weights.iter().map(|&w| Degree::from_integer(w)).collect(),
            pieces: BTreeMap::new(),
            mult: BTreeMap::new(),
        }
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.pieces.get(&d).copied().unwrap_or(0)
    }

    pub fn dim_k(&self) -> usize {
        self.pieces.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim_k() == 0
    }

    fn times(&self, i: usize, d: Degree, v: &Vector) -> Vector {
        match self.mult.get(&(i, d)) {
            Some(m) => apply(self.p, m, v),
            None => vec![0; self.dim(d + self.weights[i])],
        }
    }

    /// `x^e · v` for `v ∈ M_d`, returned with its degree.
    fn times_monomial(&self, e: &[u16], mut d: Degree, v: &Vector) -> (Degree, Vector) {
        let mut v = v.clone();
        for (i, &a) in e.iter().enumerate() {
            for _ in 0..a {
                v = self.times(i, d, &v);
                d += self.weights[i];
            }
        }
        (d, v)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut out = self.clone();
        let degs: Vec<Degree> = other.pieces.keys().copied().collect();
        for d in &degs {
            *out.pieces.entry(*d).or_insert(0) += other.dim(*d);
        }
        let mut mult = BTreeMap::new();
        for i in 0..self.weights.len() {
            for d in out.pieces.keys() {
                let t = *d + self.weights[i];
                let (a0, a1) = (self.dim(*d), other.dim(*d));
                let (b0, b1) = (self.dim(t), other.dim(t));
                if a0 + a1 == 0 || b0 + b1 == 0 {
                    continue;
                }
                let mut cols = Vec::new();
                for j in 0..a0 {
                    let mut e = vec![0; a0];
                    e[j] = 1;
                    let mut c = self.times(i, *d, &e);
                    c.extend(vec![0; b1]);
                    cols.push(c);
                }
                for j in 0..a1 {
                    let mut e = vec![0; a1];
                    e[j] = 1;
                    let mut c = vec![0; b0];
                    c.extend(other.times(i, *d, &e));
                    cols.push(c);
                }
                mult.insert((i, *d), cols);
            }
        }
        out.mult = mult;
        out
    }

    /// The submodule spanned by `gens` and everything they generate,
    /// as degreewise spanning sets.
    fn generated(&self, gens: &[(Degree, Vector)]) -> BTreeMap<Degree, Echelon> {
        let mut out: BTreeMap<Degree, Echelon> = BTreeMap::new();
        let degs: Vec<Degree> = self.pieces.keys().copied().collect();
        for d in degs {
            let mut e = Echelon::new(self.p, self.dim(d), &[]);
            for (gd, v) in gens {
                if *gd == d {
                    e.insert(v.clone(), Vec::new());
                }
            }
            for (i, w) in self.weights.iter().enumerate() {
                if let Some(prev) = out.get(&(d - w)) {
                    for r in &prev.rows {
                        e.insert(self.times(i, d - w, r), Vec::new());
                    }
                }
            }
            out.insert(d, e);
        }
        out
    }

    /// `M / ⟨gens⟩`, with basis the non-pivot coordinates of each piece.
    pub fn quotient(&self, gens: &[(Degree, Vector)]) -> GradedModule {
        let sub = self.generated(gens);
        let basis_of = |d: &Degree| -> Vec<usize> {
            let piv = sub.get(d).map(|e| e.pivots.clone()).unwrap_or_default();
            (0..self.dim(*d)).filter(|i| !piv.contains(i)).collect()
        };
        let mut out = GradedModule {
            p: self.p,
            weights: self.weights.clone(),
            pieces: BTreeMap::new(),
            mult: BTreeMap::new(),
        };
        for d in self.pieces.keys() {
            let b = basis_of(d);
            if !b.is_empty() {
                out.pieces.insert(*d, b.len());
            }
        }
        for ((i, d), _) in self.mult.iter() {
            let src = basis_of(d);
            let t = *d + self.weights[*i];
            let tgt = basis_of(&t);
            if src.is_empty() || tgt.is_empty() {
                continue;
            }
            let cols = src
                .iter()
                .map(|&j| {
                    let mut e = vec![0; self.dim(*d)];
                    e[j] = 1;
                    let mut v = self.times(*i, *d, &e);
                    if let Some(ech) = sub.get(&t) {
                        let mut scratch = Vec::new();
                        ech.reduce(&mut v, &mut scratch);
                    }
                    tgt.iter().map(|&k| v[k]).collect()
                })
                .collect();
            out.mult.insert((*i, *d), cols);
        }
        out
    }

    /// Minimal homogeneous generators: a complement of `m·M` in each degree.
    pub fn minimal_generators(&self) -> Vec<(Degree, Vector)> {
        let mut out = Vec::new();
        for (&d, &n) in &self.pieces {
            let mut e = Echelon::new(self.p, n, &[]);
            for (i, w) in self.weights.iter().enumerate() {
                let src = d - w;
                for j in 0..self.dim(src) {
                    let mut u = vec![0; self.dim(src)];
                    u[j] = 1;
                    e.insert(self.times(i, src, &u), Vec::new());
                }
            }
            for j in 0..n {
                let mut u = vec![0; n];
                u[j] = 1;
                if e.insert(u.clone(), Vec::new()) {
                    out.push((d, u));
                }
            }
        }
        out
    }

    /// First syzygy module of the minimal cover `F → M`, together with the
    /// generator degrees of `F`.
    fn syzygy(&self, ring: &Ring) -> (Vec<Degree>, GradedModule) {
        let gens = self.minimal_generators();
        let degrees: Vec<Degree> = gens.iter().map(|g| g.0).collect();
        let mut free = GradedModule::empty(ring);
        let mut blocks: Vec<(Degree, GradedModule)> = Vec::new();
        for &a in &degrees {
            let f = ring.free(a);
            free = free.direct_sum(&f);
            blocks.push((a, f));
        }
        // kernel of F_d → M_d in the basis of F_d (block j then S_{d-a_j})
        let mut kernels: BTreeMap<Degree, (Vec<Vector>, Echelon)> = BTreeMap::new();
        for (&d, &n) in &free.pieces {
            let mut cols = Vec::with_capacity(n);
            for ((a, _), (_, v)) in blocks.iter().zip(&gens) {
                let sd = d - a;
                if !sd.is_integer() {
                    continue;
                }
                for m in ring.basis(sd.to_integer()) {
                    let (_, img) = self.times_monomial(&m, *a, v);
                    cols.push(if img.is_empty() { vec![0; self.dim(d)] } else { img });
                }
            }
            let ker = kernel(self.p, self.dim(d), &cols);
            let ech = Echelon::new(self.p, n, &ker);
            kernels.insert(d, (ker, ech));
        }
        let mut k = GradedModule {
            p: self.p,
            weights: self.weights.clone(),
            pieces: BTreeMap::new(),
            mult: BTreeMap::new(),
        };
        for (d, (b, _)) in &kernels {
            if !b.is_empty() {
                k.pieces.insert(*d, b.len());
            }
        }
        for (d, (b, _)) in &kernels {
            if b.is_empty() {
                continue;
            }
            for (i, w) in self.weights.iter().enumerate() {
                let t = *d + w;
                let Some((tb, tech)) = kernels.get(&t) else { continue };
                if tb.is_empty() {
                    continue;
                }
                let cols = b
                    .iter()
                    .map(|v| tech.coordinates(&free.times(i, *d, v)).expect("kernel is a submodule"))
                    .collect();
                k.mult.insert((i, *d), cols);
            }
        }
        (degrees, k)
    }

    /// `β_{n,d}` for `0 ≤ n ≤ cutoff`.
    pub fn betti(&self, ring: &Ring, cutoff: usize) -> BTreeMap<(usize, Degree), usize> {
        let mut out = BTreeMap::new();
        let mut m = self.clone();
        for n in 0..=cutoff {
            if m.is_zero() {
                break;
            }
            if n == cutoff {
                for (d, _) in m.minimal_generators() {
                    *out.entry((n, d)).or_insert(0) += 1;
                }
                break;
            }
            let (degs, next) = m.syzygy(ring);
            for d in degs {
                *out.entry((n, d)).or_insert(0) += 1;
            }
            m = next;
        }
        out
    }

    pub fn betti_totals(&self, ring: &Ring, cutoff: usize) -> Vec<usize> {
        let mut t = vec![0; cutoff + 1];
        for ((n, _), b) in self.betti(ring, cutoff) {
            t[n] += b;
        }
        t
    }

    /// `dim_k Hom(k, M)`: the socle dimension.
    pub fn socle_dim(&self) -> usize {
        self.pieces
            .iter()
            .map(|(&d, &n)| {
                let cols: Vec<Vector> = (0..n)
                    .map(|j| {
                        let mut u = vec![0; n];
                        u[j] = 1;
                        (0..self.weights.len()).flat_map(|i| self.times(i, d, &u)).collect()
                    })
                    .collect();
                let rows = cols.first().map_or(0, Vec::len);
                if rows == 0 {
                    n
                } else {
                    kernel(self.p, rows, &cols).len()
                }
            })
            .sum()
    }
}
