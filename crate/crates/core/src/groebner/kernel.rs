//! Kernels of module maps via the graph module, minimal generators, and
//! elimination ideals.

use std::sync::Arc;

use super::{FreeModuleElement, GroebnerBasis, TermOrder};
use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::{Degree, DegreeInfo, PolyRing};

/// A kernel computation `ker(P^s → P^t / U) / V` where the map sends `e_j`
/// to `columns[j]`, `U` is spanned by `target_relations` and `V` by
/// `source_relations`.
#[derive(Clone, Copy, Debug)]
pub struct KernelRequest<'a> {
    pub ring: &'a Arc<PolyRing>,
    pub columns: &'a [FreeModuleElement],
    pub source_degrees: &'a [Degree],
    pub target_degrees: &'a [Degree],
    pub target_relations: &'a [FreeModuleElement],
    pub source_relations: &'a [FreeModuleElement],
    /// Generators above this degree are not searched for.
    pub degree_bound: Option<Degree>,
}

impl KernelRequest<'_> {
    /// Minimal homogeneous generators of the kernel modulo the source
    /// relations, sorted by degree.
    pub fn solve(&self) -> Result<Vec<FreeModuleElement>> {
        let s = self.source_degrees.len();
        let t = self.target_degrees.len();
        if self.columns.len() != s {
            return Err(Error::DegreeMismatch(format!(
                "{} columns for {} source degrees",
                self.columns.len(),
                s
            )));
        }
        let p = self.ring.characteristic();
        for (j, col) in self.columns.iter().enumerate() {
            if col.support_len() > t {
                return Err(Error::DegreeMismatch(format!("column {j} exceeds the target rank")));
            }
            match col.degree(self.ring, self.target_degrees) {
                DegreeInfo::Bottom => {}
                DegreeInfo::Homogeneous(d) if d == self.source_degrees[j] => {}
                DegreeInfo::Homogeneous(d) => {
                    return Err(Error::DegreeMismatch(format!(
                        "column {j} has degree {d}, declared {}",
                        self.source_degrees[j]
                    )))
                }
                DegreeInfo::NonHomogeneous => {
                    return Err(Error::Inhomogeneous(col.display(self.ring).to_string()))
                }
            }
        }
        if s == 0 {
            return Ok(Vec::new());
        }

        let mut degrees = self.source_degrees.to_vec();
        degrees.extend_from_slice(self.target_degrees);
        let mut blocks = vec![0u32; s];
        blocks.extend(std::iter::repeat(1).take(t));
        let order = TermOrder::with_blocks(self.ring, MonomialOrder::DegRevLex, &degrees, &blocks);
        let shift = |v: &FreeModuleElement| v.map_positions(p, |q| Some(q + s as u32));

        let mut gens = Vec::with_capacity(s + self.target_relations.len());
        for (j, col) in self.columns.iter().enumerate() {
            gens.push(shift(col).add(p, &FreeModuleElement::basis(self.ring, j)));
        }
        gens.extend(self.target_relations.iter().map(shift));
        let base: Vec<FreeModuleElement> = self
            .source_relations
            .iter()
            .cloned()
            .chain(gens)
            .collect();
        let run = GroebnerBasis::run(self.ring, &degrees, order, &base, &[], self.degree_bound, false)?;
        let kernel: Vec<FreeModuleElement> = run
            .basis
            .vectors()
            .iter()
            .filter(|v| (v[0].pos as usize) < s)
            .map(|v| FreeModuleElement::from_terms(p, v.clone()))
            .collect();
        let keep = minimal_generators(
            self.ring,
            self.source_degrees,
            self.source_relations,
            &kernel,
        )?;
        Ok(keep.into_iter().map(|i| kernel[i].clone()).collect())
    }
}

/// Indices of a minimal generating subset of `cands` modulo the submodule
/// spanned by `base`, in order of increasing degree.
pub fn minimal_generators(
    ring: &Arc<PolyRing>,
    degrees: &[Degree],
    base: &[FreeModuleElement],
    cands: &[FreeModuleElement],
) -> Result<Vec<usize>> {
    let order = TermOrder::position_over_term(ring, degrees);
    Ok(GroebnerBasis::run(ring, degrees, order, base, cands, None, false)?.minimal)
}

/// Generators of the kernel of the map `P^s → P^t / modulo` sending `e_j` to
/// `columns[j]`. Over a quotient ring `P/I`, include `I·P^t` in `modulo`.
pub fn kernel_of_module_map(
    ring: &Arc<PolyRing>,
    columns: &[FreeModuleElement],
    source_degrees: &[Degree],
    target_degrees: &[Degree],
    modulo: &GroebnerBasis,
) -> Result<Vec<FreeModuleElement>> {
    if modulo.rank() != target_degrees.len() {
        return Err(Error::DegreeMismatch(format!(
            "modulo has rank {}, target has rank {}",
            modulo.rank(),
            target_degrees.len()
        )));
    }
    KernelRequest {
        ring,
        columns,
        source_degrees,
        target_degrees,
        target_relations: &modulo.generators(),
        source_relations: &[],
        degree_bound: None,
    }
    .solve()
}

/// The elimination ideal `I ∩ F_p[keep]` of the ideal with basis `g`, as a
/// reduced degrevlex basis.
pub fn eliminate(g: &GroebnerBasis, keep: &[bool]) -> Result<GroebnerBasis> {
    let ring = g.ring();
    if keep.len() != ring.nvars() {
        return Err(Error::Precondition(format!(
            "keep mask has {} entries for {} variables",
            keep.len(),
            ring.nvars()
        )));
    }
    let polys = g.polynomials();
    let drop: Vec<bool> = keep.iter().map(|k| !k).collect();
    let kept = if drop.iter().any(|&d| d) {
        let elim = GroebnerBasis::ideal(ring, &polys, MonomialOrder::Eliminate(drop.clone()))?;
        elim.polynomials()
            .into_iter()
            .filter(|f| {
                f.terms().iter().all(|(m, _)| {
                    m.exponents().iter().zip(&drop).all(|(&e, &d)| e == 0 || !d)
                })
            })
            .collect()
    } else {
        polys
    };
    GroebnerBasis::ideal(ring, &kept, MonomialOrder::DegRevLex)
}
