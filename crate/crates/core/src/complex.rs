//! Bounded chain complexes of graded free and finitely presented modules.
//!
//! A differential `d_i: C_i → C_{i−1}` is stored as one column per generator
//! of `C_i`, each column an element of the free cover of `C_{i−1}`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{FreeModuleElement, KernelRequest};
use crate::module::FiniteModule;
use crate::monomial::Monomial;
use crate::poly::{Degree, DegreeInfo, Polynomial};
use crate::pushforward::{frobenius_generators, pushforward_of_module};
use crate::ring::GradedQuotientRing;
use crate::ringmap::RingMap;

/// `Σ_j v_j · cols[j]`, reduced modulo the ring's ideal.
pub fn apply_columns(
    ring: &GradedQuotientRing,
    cols: &[FreeModuleElement],
    v: &FreeModuleElement,
) -> FreeModuleElement {
    let p = ring.characteristic();
    let mut terms = Vec::new();
    for (pos, f) in v.entries(ring.ambient()) {
        terms.extend(cols[pos].mul_poly(&f).into_terms());
    }
    ring.reduce_vector(&FreeModuleElement::from_terms(p, terms))
}

/// Degree above which a minimal generator of a submodule of `S^r` with the
/// given basis degrees cannot live, when `S` is artinian.
pub(crate) fn artinian_bound(ring: &GradedQuotientRing, degrees: &[Degree]) -> Option<Degree> {
    let top = ring.top_degree()?;
    let max = degrees.iter().copied().max()?;
    Some(max + top)
}

fn check_column(
    ring: &GradedQuotientRing,
    col: &FreeModuleElement,
    target: &[Degree],
    expected: Degree,
    what: impl Fn() -> String,
) -> Result<()> {
    if col.support_len() > target.len() {
        return Err(Error::InvalidComplex(format!("{} leaves the target", what())));
    }
    match col.degree(ring.ambient(), target) {
        DegreeInfo::Bottom => Ok(()),
        DegreeInfo::Homogeneous(d) if d == expected => Ok(()),
        DegreeInfo::Homogeneous(d) => Err(Error::InvalidComplex(format!(
            "{} has degree {}, expected {}",
            what(),
            crate::poly::fmt_degree(&d),
            crate::poly::fmt_degree(&expected)
        ))),
        DegreeInfo::NonHomogeneous => Err(Error::Inhomogeneous(what())),
    }
}

/// A bounded complex `F_hi → … → F_lo` of graded free modules.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<GradedQuotientRing>,
    lo: i64,
    degrees: Vec<Vec<Degree>>,
    diffs: Vec<Vec<FreeModuleElement>>,
}

impl FreeComplex {
    /// `degrees[k]` are the basis degrees of `F_{lo+k}`; `diffs[k]` holds
    /// the columns of `d_{lo+k}` (ignored for `k = 0`, which maps to zero).
    /// Checks homogeneity and `d∘d = 0`.
    pub fn new(
        ring: &Arc<GradedQuotientRing>,
        lo: i64,
        degrees: Vec<Vec<Degree>>,
        mut diffs: Vec<Vec<FreeModuleElement>>,
    ) -> Result<Self> {
        if degrees.len() != diffs.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms but {} differentials",
                degrees.len(),
                diffs.len()
            )));
        }
        for (k, cols) in diffs.iter_mut().enumerate() {
            if cols.len() != degrees[k].len() {
                return Err(Error::InvalidComplex(format!(
                    "d_{} has {} columns for rank {}",
                    lo + k as i64,
                    cols.len(),
                    degrees[k].len()
                )));
            }
            for (j, c) in cols.iter_mut().enumerate() {
                *c = if k == 0 { FreeModuleElement::zero() } else { ring.reduce_vector(c) };
                if k > 0 {
                    check_column(ring, c, &degrees[k - 1], degrees[k][j], || {
                        format!("column {j} of d_{}", lo + k as i64)
                    })?;
                }
            }
        }
        let c = FreeComplex {
            ring: ring.clone(),
            lo,
            degrees,
            diffs,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(
        ring: &Arc<GradedQuotientRing>,
        lo: i64,
        degrees: Vec<Vec<Degree>>,
        diffs: Vec<Vec<FreeModuleElement>>,
    ) -> Self {
        FreeComplex {
            ring: ring.clone(),
            lo,
            degrees,
            diffs,
        }
    }

    /// The zero complex concentrated at `lo`.
    pub fn zero(ring: &Arc<GradedQuotientRing>, lo: i64) -> Self {
        Self::from_parts_unchecked(ring, lo, vec![Vec::new()], vec![Vec::new()])
    }

    /// A free module of the given basis degrees, placed in homological degree 0.
    pub fn free_module(ring: &Arc<GradedQuotientRing>, degrees: Vec<Degree>) -> Self {
        let n = degrees.len();
        Self::from_parts_unchecked(ring, 0, vec![degrees], vec![vec![FreeModuleElement::zero(); n]])
    }

    fn check_square_zero(&self) -> Result<()> {
        for k in 2..self.diffs.len() {
            for (j, col) in self.diffs[k].iter().enumerate() {
                let dd = apply_columns(&self.ring, &self.diffs[k - 1], col);
                if !dd.is_zero() {
                    return Err(Error::InvalidComplex(format!(
                        "d∘d is nonzero on generator {j} of degree {}",
                        self.lo + k as i64
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d_{i−1} ∘ d_i ≡ 0` for every `i`.
    pub fn is_square_zero(&self) -> bool {
        self.check_square_zero().is_ok()
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().flatten().all(|c| !c.has_unit_entry())
    }

    pub fn ring(&self) -> &Arc<GradedQuotientRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.degrees.len() as i64 - 1
    }

    fn index(&self, i: i64) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    pub fn rank(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.degrees[k].len())
    }

    /// Basis degrees of `F_i` (empty outside the range).
    pub fn degrees(&self, i: i64) -> &[Degree] {
        self.index(i).map_or(&[], |k| &self.degrees[k])
    }

    /// Columns of `d_i: F_i → F_{i−1}`.
    pub fn differential(&self, i: i64) -> &[FreeModuleElement] {
        self.index(i).map_or(&[], |k| &self.diffs[k])
    }

    /// Ranks `rank F_lo, …, rank F_hi`.
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// The entry of `d_i` in row `r`, column `c`.
    pub fn entry(&self, i: i64, r: usize, c: usize) -> Polynomial {
        self.differential(i)[c].component(self.ring.ambient(), r)
    }

    /// Keeps homological degrees `lo..=hi` only.
    pub fn truncated(&self, hi: i64) -> Self {
        let keep = ((hi - self.lo + 1).max(1) as usize).min(self.degrees.len());
        let mut out = Self::from_parts_unchecked(
            &self.ring,
            self.lo,
            self.degrees[..keep].to_vec(),
            self.diffs[..keep].to_vec(),
        );
        if hi < self.lo {
            out.degrees[0].clear();
            out.diffs[0].clear();
        }
        out
    }

    /// Shift by `s` in homological degree: `C[s]_i = C_{i−s}`, with the
    /// differential negated when `s` is odd.
    pub fn shifted(&self, s: i64) -> Self {
        let p = self.ring.characteristic();
        let diffs = if s % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs
                .iter()
                .map(|cols| cols.iter().map(|c| c.scale(p, p - 1)).collect())
                .collect()
        };
        Self::from_parts_unchecked(&self.ring, self.lo + s, self.degrees.clone(), diffs)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        self.as_module_complex()
            .direct_sum(&other.as_module_complex())
            .as_free()
            .expect("sum of free complexes")
    }

    /// The same complex with every term viewed as a presented module.
    pub fn as_module_complex(&self) -> ModuleComplex {
        let terms = self
            .degrees
            .iter()
            .map(|d| FiniteModule::free(&self.ring, d.clone()))
            .collect();
        ModuleComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            terms,
            diffs: self.diffs.clone(),
        }
    }

    /// Base change along `φ: R → S` of a complex over `R`.
    pub fn base_change(&self, phi: &RingMap) -> Result<Self> {
        let s = phi.target();
        let amb = s.ambient();
        let degrees: Vec<Vec<Degree>> = self
            .degrees
            .iter()
            .map(|ds| ds.iter().map(|&d| phi.map_degree(d)).collect())
            .collect();
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for cols in &self.diffs {
            let mut out = Vec::with_capacity(cols.len());
            for c in cols {
                let mut terms = Vec::new();
                for (pos, f) in c.entries(self.ring.ambient()) {
                    let img = phi.apply(&f);
                    terms.extend(FreeModuleElement::from_poly_at(&img, pos).into_terms());
                }
                out.push(FreeModuleElement::from_terms(amb.characteristic(), terms));
            }
            diffs.push(out);
        }
        FreeComplex::new(s, self.lo, degrees, diffs)
    }

    /// `H_i` for every `i` in range, as presented modules.
    pub fn homology(&self) -> Result<Vec<FiniteModule>> {
        self.as_module_complex().homology()
    }
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let amb = self.ring.ambient();
        for (k, ds) in self.degrees.iter().enumerate() {
            let degs: Vec<String> = ds.iter().map(crate::poly::fmt_degree).collect();
            writeln!(f, "F_{} = S^{} [{}]", self.lo + k as i64, ds.len(), degs.join(", "))?;
            if k > 0 {
                for (j, c) in self.diffs[k].iter().enumerate() {
                    writeln!(f, "  d e{j} = {}", c.display(amb))?;
                }
            }
        }
        Ok(())
    }
}

/// A bounded complex of finitely presented modules. The differential is
/// given on generators and must respect the relations.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    ring: Arc<GradedQuotientRing>,
    lo: i64,
    terms: Vec<FiniteModule>,
    diffs: Vec<Vec<FreeModuleElement>>,
}

impl ModuleComplex {
    /// Checks homogeneity, that relations map into relations, and `d∘d = 0`.
    pub fn new(
        ring: &Arc<GradedQuotientRing>,
        lo: i64,
        terms: Vec<FiniteModule>,
        mut diffs: Vec<Vec<FreeModuleElement>>,
    ) -> Result<Self> {
        if terms.len() != diffs.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms but {} differentials",
                terms.len(),
                diffs.len()
            )));
        }
        for (k, cols) in diffs.iter_mut().enumerate() {
            if terms[k].ring() != ring {
                return Err(Error::InvalidComplex(format!("term {} lives over another ring", lo + k as i64)));
            }
            if cols.len() != terms[k].num_generators() {
                return Err(Error::InvalidComplex(format!(
                    "d_{} has {} columns for {} generators",
                    lo + k as i64,
                    cols.len(),
                    terms[k].num_generators()
                )));
            }
            for (j, c) in cols.iter_mut().enumerate() {
                *c = if k == 0 { FreeModuleElement::zero() } else { terms[k - 1].reduce(c) };
                if k > 0 {
                    check_column(ring, c, terms[k - 1].degrees(), terms[k].degrees()[j], || {
                        format!("column {j} of d_{}", lo + k as i64)
                    })?;
                }
            }
        }
        let c = ModuleComplex {
            ring: ring.clone(),
            lo,
            terms,
            diffs,
        };
        for k in 1..c.terms.len() {
            for r in c.terms[k].relations() {
                let img = apply_columns(&c.ring, &c.diffs[k], r);
                if !c.terms[k - 1].is_zero_element(&img) {
                    return Err(Error::InvalidComplex(format!(
                        "d_{} does not respect the relation {}",
                        lo + k as i64,
                        r.display(ring.ambient())
                    )));
                }
            }
            if k >= 2 {
                for col in &c.diffs[k] {
                    let dd = apply_columns(&c.ring, &c.diffs[k - 1], col);
                    if !c.terms[k - 2].is_zero_element(&dd) {
                        return Err(Error::InvalidComplex(format!(
                            "d∘d is nonzero in degree {}",
                            lo + k as i64
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    /// A single module in homological degree 0.
    pub fn module(m: &FiniteModule) -> Self {
        ModuleComplex {
            ring: m.ring().clone(),
            lo: 0,
            terms: vec![m.clone()],
            diffs: vec![vec![FreeModuleElement::zero(); m.num_generators()]],
        }
    }

    pub fn ring(&self) -> &Arc<GradedQuotientRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    fn index(&self, i: i64) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    /// The module in homological degree `i`.
    pub fn term(&self, i: i64) -> Option<&FiniteModule> {
        self.index(i).map(|k| &self.terms[k])
    }

    pub fn terms(&self) -> &[FiniteModule] {
        &self.terms
    }

    pub fn differential(&self, i: i64) -> &[FreeModuleElement] {
        self.index(i).map_or(&[], |k| &self.diffs[k])
    }

    pub(crate) fn num_generators(&self, i: i64) -> usize {
        self.term(i).map_or(0, FiniteModule::num_generators)
    }

    pub(crate) fn generator_degrees(&self, i: i64) -> &[Degree] {
        self.term(i).map_or(&[], FiniteModule::degrees)
    }

    pub(crate) fn relations(&self, i: i64) -> &[FreeModuleElement] {
        self.term(i).map_or(&[], FiniteModule::relations)
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(FiniteModule::is_free)
    }

    pub fn as_free(&self) -> Option<FreeComplex> {
        self.is_free().then(|| {
            FreeComplex::from_parts_unchecked(
                &self.ring,
                self.lo,
                self.terms.iter().map(|t| t.degrees().to_vec()).collect(),
                self.diffs.clone(),
            )
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let p = self.ring.characteristic();
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for i in lo..=hi {
            let empty = || FiniteModule::free(&self.ring, Vec::new());
            let a = self.term(i).cloned().unwrap_or_else(empty);
            let b = other.term(i).cloned().unwrap_or_else(empty);
            let shift_row = self.num_generators(i - 1) as u32;
            let mut cols: Vec<FreeModuleElement> = (0..a.num_generators())
                .map(|j| self.diffs_at(i, j))
                .collect();
            cols.extend((0..b.num_generators()).map(|j| {
                other.diffs_at(i, j).map_positions(p, |q| Some(q + shift_row))
            }));
            if i == lo {
                cols.iter_mut().for_each(|c| *c = FreeModuleElement::zero());
            }
            terms.push(a.direct_sum(&b));
            diffs.push(cols);
        }
        ModuleComplex {
            ring: self.ring.clone(),
            lo,
            terms,
            diffs,
        }
    }

    fn diffs_at(&self, i: i64, j: usize) -> FreeModuleElement {
        self.differential(i).get(j).cloned().unwrap_or_default()
    }

    /// Minimal generators of `H_i` as elements of the free cover of `C_i`,
    /// and the presentation of `H_i` on them.
    pub fn homology_at(&self, i: i64) -> Result<(FiniteModule, Vec<FreeModuleElement>)> {
        let amb = self.ring.ambient();
        let src = self.generator_degrees(i);
        let tgt = self.generator_degrees(i - 1);
        let mut target_relations = self.relations(i - 1).to_vec();
        target_relations.extend(self.ring.ideal_times_basis(tgt.len()));
        let mut boundaries = self.relations(i).to_vec();
        boundaries.extend(self.ring.ideal_times_basis(src.len()));
        boundaries.extend(self.differential(i + 1).iter().filter(|c| !c.is_zero()).cloned());
        let cols: Vec<FreeModuleElement> = if i == self.lo {
            vec![FreeModuleElement::zero(); src.len()]
        } else {
            self.differential(i).to_vec()
        };
        let cycles = KernelRequest {
            ring: amb,
            columns: &cols,
            source_degrees: src,
            target_degrees: tgt,
            target_relations: &target_relations,
            source_relations: &boundaries,
            degree_bound: artinian_bound(&self.ring, src),
        }
        .solve()?;
        let degrees: Vec<Degree> = cycles
            .iter()
            .map(|z| match z.degree(amb, src) {
                DegreeInfo::Homogeneous(d) => d,
                _ => unreachable!("kernel generators are homogeneous and nonzero"),
            })
            .collect();
        let ideal = self.ring.ideal_times_basis(degrees.len());
        let relations = KernelRequest {
            ring: amb,
            columns: &cycles,
            source_degrees: &degrees,
            target_degrees: src,
            target_relations: &boundaries,
            source_relations: &ideal,
            degree_bound: artinian_bound(&self.ring, &degrees),
        }
        .solve()?;
        Ok((FiniteModule::new(&self.ring, degrees, relations)?, cycles))
    }

    /// `H_lo, …, H_hi`.
    pub fn homology(&self) -> Result<Vec<FiniteModule>> {
        (self.lo..=self.hi()).map(|i| Ok(self.homology_at(i)?.0)).collect()
    }

    /// `ψ_*C` for a complex over the target of a module-finite `ψ`, each term
    /// generated by `gens[a]·e_k`.
    pub fn pushforward(&self, psi: &RingMap, gens: &[Monomial]) -> Result<ModuleComplex> {
        if psi.target() != &self.ring {
            return Err(Error::Algebra(crate::error::AlgebraError::AmbientMismatch));
        }
        let amb = self.ring.ambient();
        let pfs = self
            .terms
            .iter()
            .map(|t| pushforward_of_module(psi, t, gens))
            .collect::<Result<Vec<_>>>()?;
        let mut diffs = Vec::with_capacity(self.terms.len());
        for (k, t) in self.terms.iter().enumerate() {
            let mut cols = Vec::with_capacity(t.num_generators() * gens.len());
            for j in 0..t.num_generators() {
                for mono in gens {
                    if k == 0 {
                        cols.push(FreeModuleElement::zero());
                        continue;
                    }
                    let img = self.diffs[k][j].mul_poly(&Polynomial::term(amb, mono.clone(), 1));
                    cols.push(pfs[k - 1].express(&self.ring.reduce_vector(&img))?);
                }
            }
            diffs.push(cols);
        }
        let terms = pfs.into_iter().map(|pf| pf.module().clone()).collect();
        ModuleComplex::new(psi.source(), self.lo, terms, diffs)
    }

    /// `F^e_*C` as a complex over the same ring.
    pub fn frobenius_pushforward(&self, e: u32) -> Result<ModuleComplex> {
        let frob = RingMap::frobenius(&self.ring, e)?;
        let target = frob.target();
        let q = (self.ring.characteristic() as u64).pow(e);
        let scale = Degree::from_integer(q as i64);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                FiniteModule::new(
                    target,
                    t.degrees().iter().map(|d| d / scale).collect(),
                    t.relations().iter().map(|r| r.reinterpret(target.ambient())).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let diffs = self
            .diffs
            .iter()
            .map(|cols| cols.iter().map(|c| c.reinterpret(target.ambient())).collect())
            .collect();
        let lifted = ModuleComplex {
            ring: target.clone(),
            lo: self.lo,
            terms,
            diffs,
        };
        lifted.pushforward(&frob, &frobenius_generators(target.ambient(), q))
    }
}

/// `K[M; f_1, …, f_k] = M ⊗ K[S; f]`: the term in degree `i` is `M^{C(k,i)}`,
/// one block of generators of `M` per `i`-subset of the elements.
pub fn koszul_complex(m: &FiniteModule, elems: &[Polynomial]) -> Result<ModuleComplex> {
    let ring = m.ring();
    let amb = ring.ambient();
    let p = ring.characteristic();
    let mut elem_degrees = Vec::with_capacity(elems.len());
    for f in elems {
        if !crate::poly::same_ring(f.ring(), amb) {
            return Err(Error::Algebra(crate::error::AlgebraError::AmbientMismatch));
        }
        if f.constant_term() != 0 {
            return Err(Error::NotInMaximalIdeal(f.to_string()));
        }
        elem_degrees.push(match f.weighted_degree() {
            DegreeInfo::Homogeneous(d) => d,
            DegreeInfo::Bottom => Degree::zero(),
            DegreeInfo::NonHomogeneous => return Err(Error::Inhomogeneous(f.to_string())),
        });
    }
    let k = elems.len();
    let g = m.num_generators();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=k).map(|i| combinations(k, i)).collect();
    let mut terms = Vec::with_capacity(k + 1);
    let mut diffs = Vec::with_capacity(k + 1);
    for (i, subs) in subsets.iter().enumerate() {
        let mut degrees = Vec::with_capacity(subs.len() * g);
        let mut rels = Vec::new();
        for (si, s) in subs.iter().enumerate() {
            let shift: Degree = s.iter().map(|&t| elem_degrees[t]).sum();
            degrees.extend(m.degrees().iter().map(|d| d + shift));
            let base = (si * g) as u32;
            rels.extend(m.relations().iter().map(|r| r.map_positions(p, |q| Some(q + base))));
        }
        terms.push(FiniteModule::new(ring, degrees, rels)?);
        let mut cols = Vec::with_capacity(subs.len() * g);
        for s in subs {
            for j in 0..g {
                if i == 0 {
                    cols.push(FreeModuleElement::zero());
                    continue;
                }
                let mut terms_out = Vec::new();
                for (t, &drop) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != drop).collect();
                    let idx = subsets[i - 1].binary_search(&rest).expect("subsets are sorted");
                    let coef = if t % 2 == 0 { 1 } else { p - 1 };
                    let f = elems[drop].scale(coef);
                    terms_out.extend(FreeModuleElement::from_poly_at(&f, idx * g + j).into_terms());
                }
                cols.push(FreeModuleElement::from_terms(p, terms_out));
            }
        }
        diffs.push(cols);
    }
    ModuleComplex::new(ring, 0, terms, diffs)
}

/// `K^S`: the Koszul complex on the variables, a minimal generating set of
/// the maximal ideal when the presentation is trimmed.
pub fn koszul_on_variables(ring: &Arc<GradedQuotientRing>) -> Result<ModuleComplex> {
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    koszul_complex(&FiniteModule::free(ring, vec![Degree::zero()]), &vars)
}

/// All `i`-subsets of `0..k` in lexicographic order.
fn combinations(k: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..k {
            if k - x < left {
                break;
            }
            cur.push(x);
            go(x + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, i, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;

    fn qring(vars: &[(&str, i64)], gens: impl Fn(&Arc<PolyRing>) -> Vec<Polynomial>) -> Arc<GradedQuotientRing> {
        let a = PolyRing::with_int_weights(PrimeField::new(2).unwrap(), vars).unwrap();
        GradedQuotientRing::new(&a, &gens(&a)).unwrap()
    }

    fn dims(c: &ModuleComplex) -> Vec<Option<usize>> {
        c.homology().unwrap().iter().map(FiniteModule::dim_k).collect()
    }

    #[test]
    fn koszul_on_truncated_line() {
        let s = qring(&[("x", 1)], |a| vec![Polynomial::var(a, 0).pow(3)]);
        let k = koszul_on_variables(&s).unwrap();
        assert_eq!(dims(&k), vec![Some(1), Some(1)]);
        let (h1, z) = k.homology_at(1).unwrap();
        assert_eq!(h1.degrees(), &[Degree::from_integer(3)]);
        assert_eq!(z[0].display(s.ambient()).to_string(), "(x^2)*e0");
    }

    #[test]
    fn koszul_on_plane_is_exact_above_zero() {
        let s = qring(&[("x", 1), ("y", 1)], |_| vec![]);
        let k = koszul_on_variables(&s).unwrap();
        let f = k.as_free().unwrap();
        assert_eq!(f.ranks(), vec![1, 2, 1]);
        let h = f.homology().unwrap();
        assert_eq!(h[0].dim_k(), Some(1));
        assert!(h[1].is_zero() && h[2].is_zero());
    }

    #[test]
    fn koszul_on_zero_element() {
        let s = qring(&[("x", 1)], |_| vec![]);
        let k = koszul_complex(&FiniteModule::free(&s, vec![Degree::zero()]), &[Polynomial::zero(s.ambient())]).unwrap();
        for h in k.homology().unwrap() {
            assert_eq!(h.num_generators(), 1);
            assert!(h.is_free());
        }
    }

    #[test]
    fn koszul_rejects_units() {
        let s = qring(&[("x", 1)], |_| vec![]);
        let one = Polynomial::constant(s.ambient(), 1);
        assert!(matches!(
            koszul_complex(&FiniteModule::free(&s, vec![Degree::zero()]), &[one]),
            Err(Error::NotInMaximalIdeal(_))
        ));
    }

    #[test]
    fn homology_of_simple_complexes() {
        let s = qring(&[("x", 1)], |a| vec![Polynomial::var(a, 0).pow(2)]);
        let k = koszul_on_variables(&s).unwrap();
        assert_eq!(dims(&k), vec![Some(1), Some(1)]);

        let one = FreeModuleElement::basis(s.ambient(), 0);
        let exact = FreeComplex::new(&s, 0, vec![vec![Degree::zero()]; 2], vec![vec![FreeModuleElement::zero()], vec![one]]).unwrap();
        assert!(exact.homology().unwrap().iter().all(FiniteModule::is_zero));

        let zero = FreeComplex::new(
            &s,
            0,
            vec![vec![Degree::zero()], vec![Degree::from_integer(1)]],
            vec![vec![FreeModuleElement::zero()], vec![FreeModuleElement::zero()]],
        )
        .unwrap();
        let h = zero.homology().unwrap();
        assert_eq!(h[1].degrees(), &[Degree::from_integer(1)]);
        assert!(h.iter().all(FiniteModule::is_free));
    }

    #[test]
    fn invalid_complexes_are_rejected() {
        let s = qring(&[("x", 1)], |_| vec![]);
        let x = FreeModuleElement::from_poly_at(&s.var(0), 0);
        let d = |i: i64| Degree::from_integer(i);
        let bad = FreeComplex::new(
            &s,
            0,
            vec![vec![d(0)], vec![d(1)], vec![d(2)]],
            vec![vec![FreeModuleElement::zero()], vec![x.clone()], vec![x.clone()]],
        );
        assert!(matches!(bad, Err(Error::InvalidComplex(_))));
        let wrong_degree = FreeComplex::new(&s, 0, vec![vec![d(0)], vec![d(2)]], vec![vec![FreeModuleElement::zero()], vec![x]]);
        assert!(matches!(wrong_degree, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn frobenius_pushforward_of_koszul() {
        let s = qring(&[("x", 1)], |a| vec![Polynomial::var(a, 0).pow(3)]);
        let k = koszul_on_variables(&s).unwrap();
        let fk = k.frobenius_pushforward(2).unwrap();
        assert_eq!(fk.terms()[0].num_generators(), 4);
        assert_eq!(dims(&fk), vec![Some(1), Some(1)]);
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(1, 2).is_empty());
    }
}
