//! Minimal free resolutions of modules and free resolutions of complexes.

use crate::complex::{artinian_bound, FreeComplex, ModuleComplex};
use crate::error::Result;
use crate::groebner::{FreeModuleElement, KernelRequest};
use crate::module::FiniteModule;
use crate::poly::{Degree, DegreeInfo};
use crate::ring::GradedQuotientRing;

fn degrees_of(ring: &GradedQuotientRing, vs: &[FreeModuleElement], basis: &[Degree]) -> Vec<Degree> {
    vs.iter()
        .map(|v| match v.degree(ring.ambient(), basis) {
            DegreeInfo::Homogeneous(d) => d,
            _ => unreachable!("generators are homogeneous and nonzero"),
        })
        .collect()
}

fn drop_position(v: &FreeModuleElement, p: u32, r: usize) -> FreeModuleElement {
    let r = r as u32;
    v.map_positions(p, |q| match q.cmp(&r) {
        std::cmp::Ordering::Less => Some(q),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(q - 1),
    })
}

/// The minimal free resolution `F_N → … → F_0` of `M`.
pub fn minimal_free_resolution(m: &FiniteModule, cutoff: usize) -> Result<FreeComplex> {
    let ring = m.ring();
    let amb = ring.ambient();
    let (mm, _) = m.minimal_presentation()?;
    let mut degrees = vec![mm.degrees().to_vec()];
    let mut diffs = vec![vec![FreeModuleElement::zero(); mm.num_generators()]];
    if cutoff >= 1 {
        degrees.push(mm.relation_degrees());
        diffs.push(mm.relations().to_vec());
    }
    for n in 2..=cutoff {
        if degrees[n - 1].is_empty() {
            degrees.push(Vec::new());
            diffs.push(Vec::new());
            continue;
        }
        let target_relations = ring.ideal_times_basis(degrees[n - 2].len());
        let source_relations = ring.ideal_times_basis(degrees[n - 1].len());
        let syz = KernelRequest {
            ring: amb,
            columns: &diffs[n - 1],
            source_degrees: &degrees[n - 1],
            target_degrees: &degrees[n - 2],
            target_relations: &target_relations,
            source_relations: &source_relations,
            degree_bound: artinian_bound(ring, &degrees[n - 1]),
        }
        .solve()?;
        degrees.push(degrees_of(ring, &syz, &degrees[n - 1]));
        diffs.push(syz);
    }
    let res = FreeComplex::from_parts_unchecked(ring, 0, degrees, diffs);
    Ok(minimalize(&res))
}

/// Cancels unit entries of the differentials by Gaussian elimination. The
/// result is homotopy equivalent to the input and has every differential
/// entry in the maximal ideal. Pivots are taken by lowest internal degree,
/// then column, then row.
pub fn minimalize(c: &FreeComplex) -> FreeComplex {
    let ring = c.ring().clone();
    let amb = ring.ambient();
    let p = ring.characteristic();
    let field = amb.field();
    let lo = c.lo();
    let n = c.ranks().len();
    let mut degrees: Vec<Vec<Degree>> = (0..n).map(|k| c.degrees(lo + k as i64).to_vec()).collect();
    let mut diffs: Vec<Vec<FreeModuleElement>> =
        (0..n).map(|k| c.differential(lo + k as i64).to_vec()).collect();
    for k in 1..n {
        loop {
            let mut best: Option<(Degree, usize, usize, u32)> = None;
            for (ci, col) in diffs[k].iter().enumerate() {
                for t in col.terms() {
                    if t.mono.is_one() {
                        let key = (degrees[k][ci], ci, t.pos as usize, t.coef);
                        if best.as_ref().map_or(true, |b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((_, pc, pr, u)) = best else { break };
            let uinv = field.inv(u);
            let pivot = diffs[k][pc].clone();
            let cols = std::mem::take(&mut diffs[k]);
            diffs[k] = cols
                .into_iter()
                .enumerate()
                .filter(|&(j, _)| j != pc)
                .map(|(_, col)| {
                    let b = col.component(amb, pr);
                    let col = if b.is_zero() {
                        col
                    } else {
                        ring.reduce_vector(&col.sub(p, &pivot.mul_poly(&b.scale(uinv))))
                    };
                    drop_position(&col, p, pr)
                })
                .collect();
            degrees[k].remove(pc);
            degrees[k - 1].remove(pr);
            diffs[k - 1].remove(pr);
            if k + 1 < n {
                for col in diffs[k + 1].iter_mut() {
                    *col = drop_position(col, p, pc);
                }
            }
        }
    }
    FreeComplex::from_parts_unchecked(&ring, lo, degrees, diffs)
}

/// A minimal free complex `F` with a quasi-isomorphism `F → C` in
/// homological degrees up to `cutoff`, built by killing the homology of the
/// mapping cone one degree at a time.
pub fn resolve_complex(c: &ModuleComplex, cutoff: i64) -> Result<FreeComplex> {
    let ring = c.ring();
    let lo = c.lo();
    if cutoff < lo {
        return Ok(FreeComplex::zero(ring, lo));
    }
    let built = resolve_complex_raw(c, cutoff + 1)?;
    Ok(minimalize(&built).truncated(cutoff))
}

fn resolve_complex_raw(c: &ModuleComplex, top: i64) -> Result<FreeComplex> {
    let ring = c.ring();
    let amb = ring.ambient();
    let p = ring.characteristic();
    let lo = c.lo();
    let mut degrees: Vec<Vec<Degree>> = Vec::new();
    let mut diffs: Vec<Vec<FreeModuleElement>> = Vec::new();
    let mut pis: Vec<Vec<FreeModuleElement>> = Vec::new();
    let empty: Vec<Degree> = Vec::new();
    for n in lo..=top {
        let k = (n - lo) as usize;
        let f1 = if k >= 1 { &degrees[k - 1] } else { &empty };
        let f2 = if k >= 2 { &degrees[k - 2] } else { &empty };
        let g_n = c.generator_degrees(n);
        let g_prev = c.generator_degrees(n - 1);
        let (a, b) = (f2.len() as u32, f1.len() as u32);

        let mut source_degrees = f1.clone();
        source_degrees.extend_from_slice(g_n);
        let mut target_degrees = f2.clone();
        target_degrees.extend_from_slice(g_prev);

        let mut cols = Vec::with_capacity(source_degrees.len());
        if k >= 1 {
            for j in 0..f1.len() {
                let df = diffs[k - 1][j].scale(p, p - 1);
                let pi = pis[k - 1][j].map_positions(p, |q| Some(q + a));
                cols.push(df.add(p, &pi));
            }
        }
        for j in 0..g_n.len() {
            let d = if n == lo {
                FreeModuleElement::zero()
            } else {
                c.differential(n)[j].map_positions(p, |q| Some(q + a))
            };
            cols.push(d);
        }
        let mut target_relations = ring.ideal_times_basis(target_degrees.len());
        target_relations.extend(c.relations(n - 1).iter().map(|r| r.map_positions(p, |q| Some(q + a))));
        let mut source_relations = ring.ideal_times_basis(source_degrees.len());
        source_relations.extend(c.relations(n).iter().map(|r| r.map_positions(p, |q| Some(q + b))));
        source_relations.extend(
            c.differential(n + 1)
                .iter()
                .filter(|v| !v.is_zero())
                .map(|v| v.map_positions(p, |q| Some(q + b))),
        );
        let cycles = if source_degrees.is_empty() {
            Vec::new()
        } else {
            KernelRequest {
                ring: amb,
                columns: &cols,
                source_degrees: &source_degrees,
                target_degrees: &target_degrees,
                target_relations: &target_relations,
                source_relations: &source_relations,
                degree_bound: artinian_bound(ring, &source_degrees),
            }
            .solve()?
        };
        degrees.push(degrees_of(ring, &cycles, &source_degrees));
        let mut d_n = Vec::with_capacity(cycles.len());
        let mut pi_n = Vec::with_capacity(cycles.len());
        for z in &cycles {
            let f = z.map_positions(p, |q| (q < b).then_some(q));
            d_n.push(if n == lo { FreeModuleElement::zero() } else { f.scale(p, p - 1) });
            pi_n.push(z.map_positions(p, |q| (q >= b).then(|| q - b)));
        }
        diffs.push(d_n);
        pis.push(pi_n);
    }
    Ok(FreeComplex::from_parts_unchecked(ring, lo, degrees, diffs))
}

/// [`resolve_complex`] applied to `M` placed in degree 0.
pub fn resolve_module_as_complex(m: &FiniteModule, cutoff: i64) -> Result<FreeComplex> {
    resolve_complex(&ModuleComplex::module(m), cutoff)
}
