//! Shared fixtures for the integration tests.

#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;
use std::sync::Arc;

use frobkit_core::{
    betti_and_poincare, Degree, FiniteModule, FreeComplex, GradedQuotientRing, PolyRing, Polynomial, PrimeField, RingMap,
};

use oracle::DensePoly;

pub fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// A polynomial ring with integer weights and the given variable names.
pub fn poly_ring(p: u64, vars: &[(&str, i64)]) -> Arc<PolyRing> {
    PolyRing::new(field(p), vars.iter().map(|(n, w)| (n.to_string(), Degree::from_integer(*w)))).unwrap()
}

/// Parses `c*x^a*y^b + …` over `amb`, for fixtures only.
pub fn poly(amb: &Arc<PolyRing>, text: &str) -> Polynomial {
    let mut acc = Polynomial::zero(amb);
    for term in text.split('+') {
        let mut t = Polynomial::constant(amb, 1);
        for factor in term.trim().split('*') {
            let f = factor.trim();
            if let Ok(c) = f.parse::<i64>() {
                t = &t * &Polynomial::constant(amb, c);
                continue;
            }
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => (n, e.parse::<u64>().unwrap()),
                None => (f, 1),
            };
            let i = amb.var_index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
            t = &t * &Polynomial::var(amb, i).pow(exp);
        }
        acc = &acc + &t;
    }
    acc
}

pub fn quotient(p: u64, vars: &[(&str, i64)], ideal: &[&str]) -> Arc<GradedQuotientRing> {
    let amb = poly_ring(p, vars);
    let gens: Vec<Polynomial> = ideal.iter().map(|g| poly(&amb, g)).collect();
    GradedQuotientRing::new(&amb, &gens).unwrap()
}

pub fn dense(f: &Polynomial) -> DensePoly {
    let amb = f.ring();
    f.terms()
        .iter()
        .map(|(m, c)| (*c, m.exponents()[..amb.nvars()].to_vec()))
        .collect()
}

/// The oracle's copy of an artinian quotient ring with integer weights.
pub fn oracle_ring(s: &GradedQuotientRing) -> oracle::Ring {
    let amb = s.ambient();
    let weights = amb.weights().iter().map(|w| w.to_integer()).collect();
    let ideal: Vec<DensePoly> = s.ideal_generators().iter().map(dense).collect();
    oracle::Ring::new(amb.characteristic(), weights, &ideal)
}

pub fn map(src: &Arc<GradedQuotientRing>, tgt: &Arc<GradedQuotientRing>, images: &[&str]) -> RingMap {
    let amb = tgt.ambient();
    RingMap::new(src, tgt, images.iter().map(|t| poly(amb, t)).collect()).unwrap()
}

/// `F_2[u] → F_2[u, v]`, `u ↦ u`.
pub fn inclusion_map() -> RingMap {
    let r = quotient(2, &[("u", 1)], &[]);
    let s = quotient(2, &[("u", 1), ("v", 1)], &[]);
    map(&r, &s, &["u"])
}

/// `F_2[u] → F_2[v]`, `u ↦ v²`, with `u` in degree 2.
pub fn ci_map() -> RingMap {
    let r = quotient(2, &[("u", 2)], &[]);
    let s = quotient(2, &[("v", 1)], &[]);
    map(&r, &s, &["v^2"])
}

/// `F_2[u] → F_2[u, a, b]/(a², ab, b²)`: the fiber is the Golod ring.
pub fn golod_map() -> RingMap {
    let r = quotient(2, &[("u", 1)], &[]);
    let s = quotient(2, &[("u", 1), ("a", 1), ("b", 1)], &["a^2", "a*b", "b^2"]);
    map(&r, &s, &["u"])
}

/// `F_2[u] → F_2[u, a, b, c]/J` with `S/(u)` Gorenstein of codimension three
/// but not a complete intersection.
pub fn gorenstein_map() -> RingMap {
    let r = quotient(2, &[("u", 1)], &[]);
    let s = quotient(2, &[("u", 1), ("a", 1), ("b", 1), ("c", 1)], &GOR3);
    map(&r, &s, &["u"])
}

/// Artinian Gorenstein, not a complete intersection: `F_2[a,b,c]` modulo the
/// ideal with Hilbert function `1, 3, 1`.
pub const GOR3: [&str; 5] = ["a*b", "a*c", "b*c", "a^2 + b^2", "b^2 + c^2"];

pub struct Case {
    pub p: u64,
    pub vars: &'static [(&'static str, i64)],
    pub ideal: &'static [&'static str],
}

/// Artinian rings small enough for the oracle.
pub const CORPUS: &[Case] = &[
    Case { p: 2, vars: &[("x", 1)], ideal: &["x^2"] },
    Case { p: 3, vars: &[("x", 1)], ideal: &["x^2"] },
    Case { p: 2, vars: &[("x", 1)], ideal: &["x^3"] },
    Case { p: 2, vars: &[("x", 1), ("y", 1)], ideal: &["x^2", "x*y", "y^2"] },
    Case { p: 2, vars: &[("x", 1), ("y", 1)], ideal: &["x^2", "y^2"] },
    Case { p: 3, vars: &[("x", 1), ("y", 1)], ideal: &["x^2", "x*y", "y^3"] },
    Case { p: 2, vars: &[("x", 1), ("y", 2)], ideal: &["x^3", "y^2"] },
    Case { p: 2, vars: &[("a", 1), ("b", 1), ("c", 1)], ideal: &GOR3 },
    Case { p: 5, vars: &[("x", 1), ("y", 1)], ideal: &["x^2 + 2*y^2", "x*y"] },
];

impl Case {
    pub fn ring(&self) -> Arc<GradedQuotientRing> {
        quotient(self.p, self.vars, self.ideal)
    }
}

/// Nonzero `β_{n,d}` of the engine's minimal resolution.
pub fn engine_betti(m: &FiniteModule, cutoff: usize) -> BTreeMap<(usize, Degree), usize> {
    let (table, _) = betti_and_poincare(m, cutoff).unwrap();
    table
        .entries()
        .filter(|(_, b)| *b > 0)
        .map(|((n, d), b)| ((n as usize, d), b))
        .collect()
}

/// `d_{i-1} ∘ d_i = 0`, multiplying out the matrices entry by entry.
pub fn square_zero(c: &FreeComplex) -> bool {
    let ring = c.ring();
    ((c.lo() + 2)..=c.hi()).all(|i| {
        (0..c.rank(i)).all(|col| {
            (0..c.rank(i - 2)).all(|row| {
                let mut acc = Polynomial::zero(ring.ambient());
                for k in 0..c.rank(i - 1) {
                    acc = &acc + &ring.mul(&c.entry(i - 1, row, k), &c.entry(i, k, col));
                }
                ring.reduce(&acc).is_zero()
            })
        })
    })
}

/// No differential entry has a nonzero constant term.
pub fn minimal(c: &FreeComplex) -> bool {
    ((c.lo() + 1)..=c.hi())
        .all(|i| (0..c.rank(i)).all(|col| (0..c.rank(i - 1)).all(|row| c.entry(i, row, col).constant_term() == 0)))
}

/// An input to the comp inequality: `ψ: A → B` and two cyclic `B`-modules.
pub struct CompInstance {
    pub psi: RingMap,
    pub m: FiniteModule,
    pub n: FiniteModule,
    pub text: String,
}

const CYCLIC: [&[&str]; 6] = [&[], &["v"], &["w"], &["v", "w"], &["v*w"], &["v + w"]];

/// `B = F_p[v, w]/(v^a, w^b[, vw])` with `A` one of `B` itself,
/// `F_p[u]/(u^a)` (`u ↦ v`) or `F_p[u]/(u^⌈a/2⌉)` with `u` in degree 2
/// (`u ↦ v²`); `M = B/I_m`, `N = B/I_n`.
pub fn comp_instance(p: u64, a: u16, b: u16, mixed: bool, source: usize, im: usize, in_: usize) -> CompInstance {
    let (va, wb) = (format!("v^{a}"), format!("w^{b}"));
    let mut ideal = vec![va.as_str(), wb.as_str()];
    if mixed {
        ideal.push("v*w");
    }
    let tgt = quotient(p, &[("v", 1), ("w", 1)], &ideal);
    let psi = match source % 3 {
        0 => RingMap::identity(&tgt),
        1 => map(&quotient(p, &[("u", 1)], &[&format!("u^{a}")]), &tgt, &["v"]),
        _ => map(&quotient(p, &[("u", 2)], &[&format!("u^{}", a.div_ceil(2))]), &tgt, &["v^2"]),
    };
    let cyclic = |i: usize| {
        let gens: Vec<Polynomial> = CYCLIC[i % CYCLIC.len()].iter().map(|g| poly(tgt.ambient(), g)).collect();
        FiniteModule::cyclic(&tgt, &gens).unwrap()
    };
    let text = format!(
        "{} -> {tgt}, M = B/({}), N = B/({})",
        psi.source(),
        CYCLIC[im % CYCLIC.len()].join(", "),
        CYCLIC[in_ % CYCLIC.len()].join(", ")
    );
    CompInstance {
        m: cyclic(im),
        n: cyclic(in_),
        psi,
        text,
    }
}
