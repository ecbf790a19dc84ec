//! Schreyer syzygies from lifted S-pair reductions.

use super::engine::Vector;
use super::{FreeModuleElement, GroebnerBasis, Term};
use crate::poly::Degree;

/// Every S-pair `(i, j)` with its remainder after full reduction.
pub(crate) fn spair_reductions(gb: &GroebnerBasis) -> Vec<((usize, usize), Vector)> {
    let e = gb.engine();
    let n = e.basis.len();
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if e.basis[i][0].pos != e.basis[j][0].pos {
                continue;
            }
            let (_, _, s) = e.spoly_indices(i, j);
            out.push(((i, j), e.full_reduce(s)));
        }
    }
    out
}

/// Generators of the syzygy module of the basis elements of `gb` (in the
/// order of [`GroebnerBasis::generators`]). The syzygy module is graded by the
/// degrees of those elements; see [`syzygy_degrees`].
///
/// Every same-position S-pair is lifted, so the result also applies to bases
/// that are not reduced.
pub fn syzygy_basis(gb: &GroebnerBasis) -> Vec<FreeModuleElement> {
    let e = gb.engine();
    let f = e.field();
    let p = f.characteristic();
    let n = e.basis.len();
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if e.basis[i][0].pos != e.basis[j][0].pos {
                continue;
            }
            let (qi, qj, s) = e.spoly_indices(i, j);
            let (rem, quots) = e.reduce_with_quotients(s);
            debug_assert!(rem.is_empty(), "input is not a Gröbner basis");
            let mut terms = vec![
                Term {
                    pos: i as u32,
                    mono: qi,
                    coef: 1,
                },
                Term {
                    pos: j as u32,
                    mono: qj,
                    coef: f.neg(1),
                },
            ];
            for (k, c, m) in quots {
                terms.push(Term {
                    pos: k as u32,
                    mono: m,
                    coef: f.neg(c),
                });
            }
            let v = FreeModuleElement::from_terms(p, terms);
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    out
}

/// Basis degrees of the syzygy module: the degrees of the basis elements.
pub fn syzygy_degrees(gb: &GroebnerBasis) -> Vec<Degree> {
    gb.element_degrees()
}
