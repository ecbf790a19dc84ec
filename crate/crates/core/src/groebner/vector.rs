use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::monomial::{elim_degree, Monomial, MonomialOrder};
use crate::poly::{degrevlex_desc, Degree, DegreeInfo, PolyRing, Polynomial};

/// One term `c · x^a · e_pos` of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u32,
    pub mono: Monomial,
    pub coef: u32,
}

/// Sparse element of a free module `P^r`.
///
/// Canonical storage: terms sorted by position ascending, then monomial
/// descending in weighted degrevlex; no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeModuleElement {
    terms: Vec<Term>,
}

#[inline]
fn canonical_cmp(a: &Term, b: &Term) -> Ordering {
    a.pos.cmp(&b.pos).then_with(|| degrevlex_desc(&a.mono, &b.mono))
}

impl FreeModuleElement {
    pub fn zero() -> Self {
        FreeModuleElement { terms: Vec::new() }
    }

    /// Builds an element from arbitrary terms; duplicates are summed mod p.
    pub fn from_terms(p: u32, mut terms: Vec<Term>) -> Self {
        terms.sort_by(canonical_cmp);
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => {
                    l.coef = ((l.coef as u64 + t.coef as u64) % p as u64) as u32
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        FreeModuleElement { terms: out }
    }

    /// Element with the given polynomial components at positions `0..`.
    pub fn from_components(components: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in components.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(Term {
                    pos: i as u32,
                    mono: m.clone(),
                    coef: *c,
                });
            }
        }
        FreeModuleElement { terms }
    }

    /// `f · e_pos`.
    pub fn from_poly_at(f: &Polynomial, pos: usize) -> Self {
        FreeModuleElement {
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| Term {
                    pos: pos as u32,
                    mono: m.clone(),
                    coef: *c,
                })
                .collect(),
        }
    }

    /// The basis vector `e_pos`.
    pub fn basis(ring: &PolyRing, pos: usize) -> Self {
        FreeModuleElement {
            terms: vec![Term {
                pos: pos as u32,
                mono: ring.one_monomial(),
                coef: 1,
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest position index used, plus one.
    pub fn support_len(&self) -> usize {
        self.terms.last().map(|t| t.pos as usize + 1).unwrap_or(0)
    }

    pub fn component(&self, ring: &Arc<PolyRing>, pos: usize) -> Polynomial {
        let terms: Vec<(Monomial, u32)> = self
            .terms
            .iter()
            .filter(|t| t.pos as usize == pos)
            .map(|t| (t.mono.clone(), t.coef))
            .collect();
        Polynomial::from_sorted(ring, terms)
    }

    pub fn components(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Polynomial> {
        let mut out: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            out[t.pos as usize].push((t.mono.clone(), t.coef));
        }
        out.into_iter()
            .map(|ts| Polynomial::from_sorted(ring, ts))
            .collect()
    }

    /// Nonzero entries as `(position, polynomial)`.
    pub fn entries(&self, ring: &Arc<PolyRing>) -> Vec<(usize, Polynomial)> {
        let mut out: Vec<(usize, Vec<(Monomial, u32)>)> = Vec::new();
        for t in &self.terms {
            match out.last_mut() {
                Some((p, ts)) if *p == t.pos as usize => ts.push((t.mono.clone(), t.coef)),
                _ => out.push((t.pos as usize, vec![(t.mono.clone(), t.coef)])),
            }
        }
        out.into_iter()
            .map(|(p, ts)| (p, Polynomial::from_sorted(ring, ts)))
            .collect()
    }

    /// Weighted degree with respect to the given basis degrees.
    pub fn degree(&self, ring: &PolyRing, basis_degrees: &[Degree]) -> DegreeInfo {
        let mut found: Option<Degree> = None;
        for t in &self.terms {
            let d = ring.monomial_degree(&t.mono) + basis_degrees[t.pos as usize];
            match found {
                None => found = Some(d),
                Some(e) if e != d => return DegreeInfo::NonHomogeneous,
                _ => {}
            }
        }
        found.map_or(DegreeInfo::Bottom, DegreeInfo::Homogeneous)
    }

    pub fn scale(&self, p: u32, c: u32) -> Self {
        if c % p == 0 {
            return Self::zero();
        }
        FreeModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: ((t.coef as u64 * c as u64) % p as u64) as u32,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn add(&self, p: u32, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(p, terms)
    }

    pub fn sub(&self, p: u32, other: &Self) -> Self {
        self.add(p, &other.scale(p, p - 1))
    }

    /// Multiplies every component by `f`.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let p = f.ring().characteristic();
        let mut terms = Vec::with_capacity(self.terms.len() * f.len());
        for t in &self.terms {
            for (m, c) in f.terms() {
                terms.push(Term {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coef: ((t.coef as u64 * *c as u64) % p as u64) as u32,
                });
            }
        }
        Self::from_terms(p, terms)
    }

    /// Renumbers positions: `pos -> map(pos)`. Entries mapping to `None` are dropped.
    pub fn map_positions(&self, p: u32, map: impl Fn(u32) -> Option<u32>) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                map(t.pos).map(|q| Term {
                    pos: q,
                    ..t.clone()
                })
            })
            .collect();
        Self::from_terms(p, terms)
    }

    /// Moves every entry into `target`, sending variable `i` to `var_map[i]`.
    pub fn map_variables(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Self {
        let p = target.characteristic();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = vec![0u16; target.nvars()];
                for (i, &x) in t.mono.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                Term {
                    pos: t.pos,
                    mono: target.monomial(&e),
                    coef: t.coef,
                }
            })
            .collect();
        Self::from_terms(p, terms)
    }

    /// Same exponents in a ring with the same number of variables.
    pub fn reinterpret(&self, target: &Arc<PolyRing>) -> Self {
        let id: Vec<usize> = (0..target.nvars()).collect();
        self.map_variables(target, &id)
    }

    /// Entry at `pos` as a vector of `(monomial, coefficient)`.
    pub fn entry_terms(&self, pos: usize) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(move |t| t.pos as usize == pos)
    }

    /// Constant coefficient of the entry at `pos`.
    pub fn constant_at(&self, pos: usize) -> u32 {
        self.terms
            .iter()
            .find(|t| t.pos as usize == pos && t.mono.is_one())
            .map_or(0, |t| t.coef)
    }

    /// Returns true if some entry has a nonzero constant term.
    pub fn has_unit_entry(&self) -> bool {
        self.terms.iter().any(|t| t.mono.is_one())
    }

    pub fn display<'a>(&'a self, ring: &'a Arc<PolyRing>) -> impl fmt::Display + 'a {
        DisplayVec { v: self, ring }
    }
}

struct DisplayVec<'a> {
    v: &'a FreeModuleElement,
    ring: &'a Arc<PolyRing>,
}

impl fmt::Display for DisplayVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .v
            .entries(self.ring)
            .into_iter()
            .map(|(p, poly)| format!("({})*e{}", poly, p))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Term order on a free module.
///
/// Terms are compared by, in turn: the position's block, the elimination
/// degree of the monomial (for `MonomialOrder::Eliminate`), the position's
/// rank, and weighted degrevlex. With a single block and no elimination this
/// is position-over-term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub(crate) mono: MonomialOrder,
    pub(crate) weights: Vec<i64>,
    pub(crate) pos_key: Vec<(u32, u32)>,
}

impl TermOrder {
    /// Position-over-term; positions ranked by basis degree, then index.
    pub fn position_over_term(ring: &PolyRing, basis_degrees: &[Degree]) -> Self {
        Self::with_blocks(ring, MonomialOrder::DegRevLex, basis_degrees, &vec![0; basis_degrees.len()])
    }

    /// Rank-one order for ideals.
    pub fn for_ideal(ring: &PolyRing, mono: MonomialOrder) -> Self {
        TermOrder {
            mono,
            weights: ring.int_weights().to_vec(),
            pos_key: vec![(0, 0)],
        }
    }

    /// Positions in a higher block dominate; inside a block the rank is by
    /// basis degree then index.
    pub fn with_blocks(
        ring: &PolyRing,
        mono: MonomialOrder,
        basis_degrees: &[Degree],
        blocks: &[u32],
    ) -> Self {
        let mut idx: Vec<usize> = (0..basis_degrees.len()).collect();
        idx.sort_by(|&a, &b| basis_degrees[a].cmp(&basis_degrees[b]).then(a.cmp(&b)));
        let mut pos_key = vec![(0, 0); basis_degrees.len()];
        for (rank, &i) in idx.iter().enumerate() {
            pos_key[i] = (blocks[i], rank as u32);
        }
        TermOrder {
            mono,
            weights: ring.int_weights().to_vec(),
            pos_key,
        }
    }

    pub fn rank(&self) -> usize {
        self.pos_key.len()
    }

    pub fn monomial_order(&self) -> &MonomialOrder {
        &self.mono
    }

    #[inline]
    pub(crate) fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let (ka, kb) = (self.pos_key[a.pos as usize], self.pos_key[b.pos as usize]);
        if ka.0 != kb.0 {
            return ka.0.cmp(&kb.0);
        }
        if let MonomialOrder::Eliminate(mask) = &self.mono {
            let ea = elim_degree(&a.mono, mask, &self.weights);
            let eb = elim_degree(&b.mono, mask, &self.weights);
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        if ka.1 != kb.1 {
            return ka.1.cmp(&kb.1);
        }
        MonomialOrder::DegRevLex.compare(&a.mono, &b.mono, &self.weights)
    }

    /// Sorts terms descending in this order.
    pub(crate) fn sort_desc(&self, terms: &mut [Term]) {
        terms.sort_by(|a, b| self.cmp(b, a));
    }
}

/// Integer grading on a free module: `deg(x^a e_i) = deg(x^a)·factor + pos_deg[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub(crate) factor: i64,
    pub(crate) pos_deg: Vec<i64>,
    /// Units: a grading value `v` means degree `v / unit`.
    pub(crate) unit: i64,
}

impl Grading {
    pub fn new(ring: &PolyRing, basis_degrees: &[Degree]) -> Self {
        let unit = basis_degrees
            .iter()
            .fold(ring.scale(), |acc, d| acc.lcm(d.denom()));
        let factor = unit / ring.scale();
        let pos_deg = basis_degrees
            .iter()
            .map(|d| (d * Degree::from_integer(unit)).to_integer())
            .collect();
        Grading {
            factor,
            pos_deg,
            unit,
        }
    }

    #[inline]
    pub(crate) fn term_degree(&self, t: &Term) -> i64 {
        t.mono.scaled_degree() * self.factor + self.pos_deg[t.pos as usize]
    }

    pub fn to_degree(&self, v: i64) -> Degree {
        Degree::new(v, self.unit)
    }

    pub fn from_degree(&self, d: Degree) -> Option<i64> {
        let s = d * Degree::from_integer(self.unit);
        s.is_integer().then(|| s.to_integer())
    }
}
