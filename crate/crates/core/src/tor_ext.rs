//! Windows of `Tor^R_i(S, k)` along a ring map and of `Ext^i_A(M, A)`.

use std::fmt;

use crate::complex::FreeComplex;
use crate::error::Result;
use crate::groebner::{FreeModuleElement, Term};
use crate::hilbert::HilbertSeries;
use crate::module::FiniteModule;
use crate::resolution::minimal_free_resolution;
use crate::ringmap::RingMap;

/// `dim_k` of a graded module, or its Hilbert series when infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorDim {
    Finite(usize),
    Infinite(HilbertSeries),
}

impl TorDim {
    pub fn of_module(m: &FiniteModule) -> Self {
        match m.dim_k() {
            Some(d) => TorDim::Finite(d),
            None => TorDim::Infinite(HilbertSeries::of_module(m).simplified()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TorDim::Finite(0))
    }
}

impl fmt::Display for TorDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorDim::Finite(d) => write!(f, "{d}"),
            TorDim::Infinite(h) => write!(f, "inf[{h}]"),
        }
    }
}

/// What the Tor window says about the flat dimension of `φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatnessVerdict {
    Flat,
    /// `Tor_i` vanishes for `g < i ≤ N`.
    FiniteFlatDimension(usize),
    WindowInconclusive,
}

impl fmt::Display for FlatnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatnessVerdict::Flat => write!(f, "FLAT"),
            FlatnessVerdict::FiniteFlatDimension(g) => write!(f, "FINITE_FD({g})"),
            FlatnessVerdict::WindowInconclusive => write!(f, "WINDOW_INCONCLUSIVE"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TorWindow {
    pub dims: Vec<TorDim>,
    pub verdict: FlatnessVerdict,
    pub cutoff: usize,
}

/// `Tor^R_i(S, k_R)` for `0 ≤ i ≤ N`, as the homology of the minimal
/// resolution of `k_R` base-changed along `φ`.
pub fn tor_of_map(phi: &RingMap, cutoff: usize) -> Result<TorWindow> {
    let k = FiniteModule::residue_field(phi.source());
    let res = minimal_free_resolution(&k, cutoff + 1)?;
    let base = res.base_change(phi)?;
    let mut dims = Vec::with_capacity(cutoff + 1);
    let mut zero = Vec::with_capacity(cutoff + 1);
    for i in 0..=cutoff as i64 {
        let (h, _) = base.as_module_complex().homology_at(i)?;
        zero.push(h.is_zero());
        dims.push(if h.is_zero() { TorDim::Finite(0) } else { TorDim::of_module(&h) });
    }
    let last_nonzero = (1..=cutoff).rev().find(|&i| !zero[i]);
    let verdict = match last_nonzero {
        None => FlatnessVerdict::Flat,
        Some(g) if g < cutoff => FlatnessVerdict::FiniteFlatDimension(g),
        Some(_) => FlatnessVerdict::WindowInconclusive,
    };
    Ok(TorWindow { dims, verdict, cutoff })
}

/// `Hom_A(F_•, A)` for a free complex `F_0 ← … ← F_m` concentrated in
/// nonnegative degrees, placed in homological degrees `−m, …, 0` so that
/// `H_{−i}` is the `i`-th cohomology.
pub fn dual_complex(res: &FreeComplex) -> Result<FreeComplex> {
    let ring = res.ring();
    let p = ring.characteristic();
    let m = res.hi();
    let mut degrees = Vec::new();
    let mut diffs = Vec::new();
    for i in (res.lo()..=m).rev() {
        degrees.push(res.degrees(i).iter().map(|d| -d).collect::<Vec<_>>());
        let rank = res.rank(i);
        if i == m {
            diffs.push(vec![FreeModuleElement::zero(); rank]);
            continue;
        }
        // d_{i+1}^T: F_i^* → F_{i+1}^*
        let mut cols: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for (j, col) in res.differential(i + 1).iter().enumerate() {
            for t in col.terms() {
                cols[t.pos as usize].push(Term {
                    pos: j as u32,
                    mono: t.mono.clone(),
                    coef: t.coef,
                });
            }
        }
        diffs.push(cols.into_iter().map(|ts| FreeModuleElement::from_terms(p, ts)).collect());
    }
    FreeComplex::new(ring, -m, degrees, diffs)
}

/// `Ext^i_A(M, A)` for `0 ≤ i ≤ N` as presented modules.
pub fn ext_against_ring(m: &FiniteModule, cutoff: usize) -> Result<Vec<FiniteModule>> {
    ext_of_resolution(&minimal_free_resolution(m, cutoff + 1)?, cutoff)
}

/// `Ext^i` for `0 ≤ i ≤ N` from a resolution computed to at least `N + 1`.
pub fn ext_of_resolution(res: &FreeComplex, cutoff: usize) -> Result<Vec<FiniteModule>> {
    let dual = dual_complex(res)?.as_module_complex();
    (0..=cutoff as i64).map(|i| Ok(dual.homology_at(-i)?.0)).collect()
}
