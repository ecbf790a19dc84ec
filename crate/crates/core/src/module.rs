//! Finitely presented graded modules over a quotient ring.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{minimal_generators, FreeModuleElement, GroebnerBasis, TermOrder};
use crate::monomial::Monomial;
use crate::poly::{Degree, DegreeInfo, Polynomial};
use crate::ring::GradedQuotientRing;

/// `M = S^g / im(relations)` with generator degrees. The Gröbner basis covers
/// the relations together with `I·S^g`, so normal forms are taken in `M`.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: Arc<GradedQuotientRing>,
    degrees: Vec<Degree>,
    relations: Vec<FreeModuleElement>,
    gb: GroebnerBasis,
}

impl FiniteModule {
    pub fn new(
        ring: &Arc<GradedQuotientRing>,
        degrees: Vec<Degree>,
        relations: Vec<FreeModuleElement>,
    ) -> Result<Self> {
        let amb = ring.ambient();
        let relations: Vec<FreeModuleElement> = relations
            .into_iter()
            .map(|r| ring.reduce_vector(&r))
            .filter(|r| !r.is_zero())
            .collect();
        let mut gens = relations.clone();
        gens.extend(ring.ideal_times_basis(degrees.len()));
        let order = TermOrder::position_over_term(amb, &degrees);
        let gb = GroebnerBasis::compute_with_order(amb, &degrees, &gens, order, None)?;
        Ok(FiniteModule {
            ring: ring.clone(),
            degrees,
            relations,
            gb,
        })
    }

    pub fn free(ring: &Arc<GradedQuotientRing>, degrees: Vec<Degree>) -> Self {
        Self::new(ring, degrees, Vec::new()).expect("free module")
    }

    /// `S/J` generated in degree zero.
    pub fn cyclic(ring: &Arc<GradedQuotientRing>, ideal: &[Polynomial]) -> Result<Self> {
        let rels = ideal
            .iter()
            .map(|f| {
                if !f.is_homogeneous() {
                    return Err(Error::Inhomogeneous(f.to_string()));
                }
                Ok(FreeModuleElement::from_poly_at(f, 0))
            })
            .collect::<Result<_>>()?;
        Self::new(ring, vec![Degree::zero()], rels)
    }

    /// The residue field `k = S/m`.
    pub fn residue_field(ring: &Arc<GradedQuotientRing>) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Self::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<GradedQuotientRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn relations(&self) -> &[FreeModuleElement] {
        &self.relations
    }

    /// Degree of each relation.
    pub fn relation_degrees(&self) -> Vec<Degree> {
        self.relations
            .iter()
            .map(|r| match r.degree(self.ring.ambient(), &self.degrees) {
                DegreeInfo::Homogeneous(d) => d,
                _ => unreachable!("relations are homogeneous and nonzero"),
            })
            .collect()
    }

    /// Basis of `relations + I·S^g`.
    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn reduce(&self, v: &FreeModuleElement) -> FreeModuleElement {
        self.gb.normal_form(v)
    }

    pub fn is_zero_element(&self, v: &FreeModuleElement) -> bool {
        self.gb.contains(v)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.degrees.len())
            .all(|i| self.gb.contains(&FreeModuleElement::basis(self.ring.ambient(), i)))
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// `M(s)`: generator degrees lowered by `s`, so `M(s)_d = M_{d+s}`.
    pub fn shifted(&self, s: Degree) -> Self {
        let degrees: Vec<Degree> = self.degrees.iter().map(|d| d - s).collect();
        Self::new(&self.ring, degrees, self.relations.clone()).expect("shift keeps homogeneity")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let g = self.degrees.len() as u32;
        let p = self.ring.characteristic();
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.map_positions(p, |q| Some(q + g))));
        Self::new(&self.ring, degrees, rels).expect("direct sum of homogeneous modules")
    }

    /// Leading-term data per position: for each generator, the lead
    /// monomials of the basis in that position.
    pub(crate) fn leads_by_position(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.degrees.len()];
        for t in self.gb.lead_terms() {
            out[t.pos as usize].push(t.mono);
        }
        out
    }

    /// Standard terms `x^a e_i` (an `F_p`-basis of `M`), when finite.
    pub fn k_basis(&self) -> Option<Vec<FreeModuleElement>> {
        let amb = self.ring.ambient();
        let n = amb.nvars();
        let mut out = Vec::new();
        for (pos, leads) in self.leads_by_position().into_iter().enumerate() {
            let mut bounds = vec![None; n];
            for l in &leads {
                let e = l.exponents();
                let supp: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
                if supp.is_empty() {
                    bounds.iter_mut().for_each(|b| *b = Some(0u16));
                    break;
                }
                if let [i] = supp[..] {
                    bounds[i] = Some(bounds[i].map_or(e[i], |b: u16| b.min(e[i])));
                }
            }
            if leads.iter().any(|l| l.is_one()) {
                continue;
            }
            let bounds: Vec<u16> = bounds.into_iter().collect::<Option<_>>()?;
            let mut monos = Vec::new();
            box_monomials(amb, &bounds, &leads, 0, &mut vec![0; n], &mut monos);
            monos.sort_by_key(|m| m.scaled_degree());
            for m in monos {
                out.push(FreeModuleElement::from_poly_at(&Polynomial::term(amb, m, 1), pos));
            }
        }
        Some(out)
    }

    pub fn dim_k(&self) -> Option<usize> {
        self.k_basis().map(|b| b.len())
    }

    /// Relations pruned to a minimal generating set modulo `I·S^g`.
    fn pruned_relations(&self) -> Result<Vec<FreeModuleElement>> {
        let base = self.ring.ideal_times_basis(self.degrees.len());
        let keep = minimal_generators(self.ring.ambient(), &self.degrees, &base, &self.relations)?;
        Ok(keep.into_iter().map(|i| self.relations[i].clone()).collect())
    }

    /// A minimal presentation: minimal relations, none with a unit entry.
    /// Also returns the image of every old generator in the new generators.
    pub fn minimal_presentation(&self) -> Result<(FiniteModule, Vec<FreeModuleElement>)> {
        let amb = self.ring.ambient();
        let f = amb.field();
        let p = f.characteristic();
        let mut degrees = self.degrees.clone();
        let mut rels = self.pruned_relations()?;
        let mut images: Vec<FreeModuleElement> =
            (0..degrees.len()).map(|i| FreeModuleElement::basis(amb, i)).collect();
        let mut changed = false;
        loop {
            // pivot: lowest generator degree, then position, then relation index
            let mut pivot: Option<(Degree, usize, usize)> = None;
            for (ri, r) in rels.iter().enumerate() {
                for t in r.terms() {
                    if t.mono.is_one() {
                        let key = (degrees[t.pos as usize], t.pos as usize, ri);
                        if pivot.map_or(true, |pv| key < pv) {
                            pivot = Some(key);
                        }
                    }
                }
            }
            let Some((_, j, ri)) = pivot else { break };
            changed = true;
            let r = rels.remove(ri);
            let c = r.constant_at(j);
            // e_j = -c^{-1} (r - c e_j)
            let rest = r.sub(p, &FreeModuleElement::basis(amb, j).scale(p, c));
            let expr = rest.scale(p, f.neg(f.inv(c)));
            let subst = |v: &FreeModuleElement| -> FreeModuleElement {
                let a = v.component(amb, j);
                if a.is_zero() {
                    return v.clone();
                }
                let without = v.map_positions(p, |q| (q as usize != j).then_some(q));
                let w = without.add(p, &expr.mul_poly(&a));
                self.ring.reduce_vector(&w)
            };
            let drop = |v: FreeModuleElement| -> FreeModuleElement {
                v.map_positions(p, |q| match (q as usize).cmp(&j) {
                    std::cmp::Ordering::Less => Some(q),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(q - 1),
                })
            };
            rels = rels
                .iter()
                .map(|v| drop(subst(v)))
                .filter(|v| !v.is_zero())
                .collect();
            images = images.iter().map(|v| drop(subst(v))).collect();
            degrees.remove(j);
        }
        let module = FiniteModule::new(&self.ring, degrees, rels)?;
        let module = if changed {
            let pruned = module.pruned_relations()?;
            FiniteModule::new(&self.ring, module.degrees.clone(), pruned)?
        } else {
            module
        };
        Ok((module, images))
    }

    /// Presentation matrix as text.
    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(crate::poly::fmt_degree).collect();
        write!(f, "coker over {} of degrees [{}]", self.ring, degs.join(", "))?;
        for r in &self.relations {
            write!(f, "; {}", r.display(self.ring.ambient()))?;
        }
        Ok(())
    }
}

fn box_monomials(
    ring: &crate::poly::PolyRing,
    bounds: &[u16],
    leads: &[Monomial],
    i: usize,
    exps: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if i == bounds.len() {
        let m = ring.monomial(exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[i] {
        exps[i] = e;
        let partial = ring.monomial(exps);
        if leads.iter().any(|l| l.divides(&partial)) {
            break;
        }
        box_monomials(ring, bounds, leads, i + 1, exps, out);
    }
    exps[i] = 0;
}
