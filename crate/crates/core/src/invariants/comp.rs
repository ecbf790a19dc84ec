//! Poincaré-series inequality for pushforwards of derived tensor products.

use super::verdict::{Evidence, TestVerdict, Witness};
use crate::betti::{betti_and_poincare, betti_of_complex};
use crate::complex::{FreeComplex, ModuleComplex};
use crate::error::{Error, Result};
use crate::groebner::{FreeModuleElement, Term};
use crate::module::FiniteModule;
use crate::pushforward::pushforward_of_module;
use crate::resolution::minimal_free_resolution;
use crate::ringmap::RingMap;

/// `M ⊗_B F` for a free complex `F` over `B`: term `i` is `M^{rank F_i}`
/// with generator `(b, j)` at index `b·g + j`.
pub fn tensor_with_free_complex(m: &FiniteModule, f: &FreeComplex) -> Result<ModuleComplex> {
    let ring = m.ring();
    if ring != f.ring() {
        return Err(Error::Algebra(crate::error::AlgebraError::AmbientMismatch));
    }
    let p = ring.characteristic();
    let g = m.num_generators();
    let block = |b: usize, v: &FreeModuleElement| v.map_positions(p, |q| Some((b * g) as u32 + q));
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for i in f.lo()..=f.hi() {
        let mut degrees = Vec::new();
        let mut relations = Vec::new();
        for (b, &a) in f.degrees(i).iter().enumerate() {
            degrees.extend(m.degrees().iter().map(|d| d + a));
            relations.extend(m.relations().iter().map(|r| block(b, r)));
        }
        terms.push(FiniteModule::new(ring, degrees, relations)?);
        let mut cols = Vec::with_capacity(f.rank(i) * g);
        for col in f.differential(i) {
            for j in 0..g {
                let ts: Vec<Term> = col
                    .terms()
                    .iter()
                    .map(|t| Term {
                        pos: t.pos * g as u32 + j as u32,
                        mono: t.mono.clone(),
                        coef: t.coef,
                    })
                    .collect();
                cols.push(FreeModuleElement::from_terms(p, ts));
            }
        }
        if i == f.lo() {
            cols = vec![FreeModuleElement::zero(); f.rank(i) * g];
        }
        diffs.push(cols);
    }
    ModuleComplex::new(ring, f.lo(), terms, diffs)
}

/// `P^A_{ψ_*(M ⊗^L_B N)} ≼ P^A_{ψ_*M} · P^B_N` to the cutoff.
pub fn comp_inequality_check(psi: &RingMap, m: &FiniteModule, n: &FiniteModule, cutoff: usize) -> Result<TestVerdict> {
    let claim = "comp-inequality";
    let gens = psi.module_generators()?;
    let res = minimal_free_resolution(n, cutoff + 2)?;
    let derived = tensor_with_free_complex(m, &res)?;
    let (_, lhs) = betti_of_complex(&derived.pushforward(psi, &gens)?, cutoff as i64)?;
    let (_, pm) = betti_and_poincare(pushforward_of_module(psi, m, &gens)?.module(), cutoff)?;
    let pn = res.ranks().into_iter().take(cutoff + 1).map(|r| r as u64).collect();
    let rhs = pm.mul(&crate::betti::PoincareTruncation::new(pn));
    let equal = lhs == rhs;
    let v = match lhs.first_excess_over(&rhs) {
        None => TestVerdict::pass(claim, if equal { "EQUALITY" } else { "HOLDS" }),
        Some(k) => TestVerdict::fail(
            claim,
            "VIOLATED",
            Witness {
                index: k,
                detail: format!("lhs {} > rhs {}", lhs.coefficient(k), rhs.coefficient(k)),
            },
        ),
    };
    Ok(v.with(Evidence::values("lhs", lhs.coefficients()))
        .with(Evidence::values("rhs", rhs.coefficients()))
        .with_cutoff("cutoff", cutoff as i64))
}
