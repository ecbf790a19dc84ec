//! Detectors built on Frobenius pushforwards: Kunz, Radu–André, the
//! curvature sandwich, curvature of `F^e_*M`, splitting of `F^e_*K^M`, and
//! the discrete regularity criterion.

use std::sync::Arc;

use super::growth::{classify_growth, GrowthClass, GrowthClassification, GrowthPolicy};
use super::verdict::{Evidence, Outcome, TestVerdict, Witness};
use crate::betti::{betti_and_poincare, betti_of_complex, BettiTable, PoincareTruncation};
use crate::complex::{koszul_complex, koszul_on_variables};
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::poly::Polynomial;
use crate::pushforward::{frobenius_pushforward, frobenius_pushforward_of_module, relative_frobenius};
use crate::ring::GradedQuotientRing;
use crate::ringmap::RingMap;
use crate::tor_ext::{tor_of_map, FlatnessVerdict};

/// Betti table of `M` to `N` and its growth class.
pub fn growth_of(
    m: &FiniteModule,
    cutoff: usize,
    policy: GrowthPolicy,
) -> Result<(BettiTable, GrowthClassification)> {
    let (table, p) = betti_and_poincare(m, cutoff)?;
    Ok((table, classify_growth(&p, policy)?))
}

fn growth_evidence(object: &str, table: BettiTable, growth: &GrowthClassification) -> [Evidence; 2] {
    [
        Evidence::Betti {
            object: object.into(),
            table,
        },
        Evidence::Growth {
            object: object.into(),
            growth: growth.clone(),
        },
    ]
}

fn q_of(ring: &GradedQuotientRing, e: u32) -> u64 {
    (ring.characteristic() as u64).pow(e)
}

/// `R` is regular iff `F^e_*R` is free; reports `β_0` and `β_1` of `F^e_*R`.
pub fn kunz_test(r: &Arc<GradedQuotientRing>, e: u32) -> Result<TestVerdict> {
    let pf = frobenius_pushforward(r, e)?;
    let (mm, _) = pf.module().minimal_presentation()?;
    let (b0, b1) = (mm.num_generators(), mm.relations().len());
    let label = if b1 == 0 { "REGULAR" } else { "NOT_REGULAR" };
    Ok(TestVerdict::pass("kunz", label)
        .with(Evidence::values("beta", [b0, b1]))
        .with_cutoff("e", e as i64))
}

fn map_label(class: &GrowthClass) -> &'static str {
    match class {
        GrowthClass::Finite { .. } => "REGULAR_MAP",
        GrowthClass::Polynomial { .. } => "CI_MAP",
        GrowthClass::Exponential { .. } => "NEITHER",
    }
}

/// Classifies `φ` by the growth of the Betti numbers of `F^e_*S` over
/// `A = S ⊗_R F^e_*R`: finite, polynomial and exponential growth mean
/// regular, complete intersection, and neither.
pub fn radu_andre_test(phi: &RingMap, e: u32, cutoff: usize, policy: GrowthPolicy) -> Result<TestVerdict> {
    let claim = "radu-andre";
    let tor = tor_of_map(phi, cutoff)?;
    let tor_ev = Evidence::values("tor", tor.dims.iter());
    if tor.verdict == FlatnessVerdict::WindowInconclusive {
        return Ok(TestVerdict::inconclusive(claim, "flat dimension is not finite within the window")
            .with(tor_ev)
            .with_cutoff("cutoff", cutoff as i64));
    }
    let rf = relative_frobenius(phi, e)?;
    let (table, growth) = growth_of(rf.module(), cutoff, policy)?;
    let fiber = phi.fiber_ring()?;
    let (_, fiber_growth) = growth_of(frobenius_pushforward(&fiber, e)?.module(), cutoff, policy)?;
    let mut v = TestVerdict::pass(claim, map_label(&growth.class))
        .with(Evidence::text("flatness", tor.verdict))
        .with(tor_ev);
    for ev in growth_evidence("relative", table, &growth) {
        v = v.with(ev);
    }
    Ok(v.with(Evidence::Growth {
        object: "fiber".into(),
        growth: fiber_growth,
    })
    .with_cutoff("cutoff", cutoff as i64)
    .with_cutoff("e", e as i64))
}

/// Whether the relative class is allowed by the fiber class.
fn sandwich_holds(fiber: &GrowthClass, relative: &GrowthClass, tolerance: f64) -> bool {
    match fiber {
        GrowthClass::Finite { .. } => relative.rank() <= 1,
        GrowthClass::Polynomial { .. } => relative.rank() == 1,
        GrowthClass::Exponential { .. } => fiber.agrees_with(relative, tolerance),
    }
}

/// Compares the growth of `F^e_*S̄` over the fiber with that of `F^e_*S`
/// over `A` for a flat `φ`.
pub fn theorem_main_check(phi: &RingMap, e: u32, cutoff: usize, policy: GrowthPolicy) -> Result<TestVerdict> {
    let claim = "curvature-sandwich";
    let tor = tor_of_map(phi, cutoff)?;
    if tor.verdict != FlatnessVerdict::Flat {
        return Ok(TestVerdict::inconclusive(claim, format!("map is {}; the derived fiber is not a ring", tor.verdict))
            .with_cutoff("cutoff", cutoff as i64));
    }
    let fiber = phi.fiber_ring()?;
    let (ftable, fgrowth) = growth_of(frobenius_pushforward(&fiber, e)?.module(), cutoff, policy)?;
    let rf = relative_frobenius(phi, e)?;
    let (rtable, rgrowth) = growth_of(rf.module(), cutoff, policy)?;
    let holds = sandwich_holds(&fgrowth.class, &rgrowth.class, policy.tolerance);
    let mut v = if holds {
        TestVerdict::pass(claim, "HOLDS")
    } else {
        TestVerdict::fail(
            claim,
            "VIOLATED",
            Witness {
                index: cutoff as i64,
                detail: format!("fiber {} but relative {}", fgrowth.class, rgrowth.class),
            },
        )
    };
    for ev in growth_evidence("fiber", ftable, &fgrowth) {
        v = v.with(ev);
    }
    for ev in growth_evidence("relative", rtable, &rgrowth) {
        v = v.with(ev);
    }
    Ok(v.with_cutoff("cutoff", cutoff as i64).with_cutoff("e", e as i64))
}

/// `F^e_*M` and `k` have the same growth class (and rate).
pub fn eth_check(
    s: &Arc<GradedQuotientRing>,
    m: &FiniteModule,
    e: u32,
    cutoff: usize,
    policy: GrowthPolicy,
) -> Result<TestVerdict> {
    let claim = "eth";
    if m.is_zero() {
        return Err(Error::Precondition("the module must be nonzero".into()));
    }
    let (mtable, mgrowth) = growth_of(frobenius_pushforward_of_module(m, e)?.module(), cutoff, policy)?;
    let (ktable, kgrowth) = growth_of(&FiniteModule::residue_field(s), cutoff, policy)?;
    let mut v = if mgrowth.class.agrees_with(&kgrowth.class, policy.tolerance) {
        TestVerdict::pass(claim, "HOLDS")
    } else {
        TestVerdict::fail(
            claim,
            "VIOLATED",
            Witness {
                index: cutoff as i64,
                detail: format!("F_*M grows as {} but k as {}", mgrowth.class, kgrowth.class),
            },
        )
    };
    for ev in growth_evidence("F_*M", mtable, &mgrowth) {
        v = v.with(ev);
    }
    for ev in growth_evidence("k", ktable, &kgrowth) {
        v = v.with(ev);
    }
    Ok(v.with_cutoff("cutoff", cutoff as i64).with_cutoff("e", e as i64))
}

/// `c = 1 + sup{i : H_i(K^S) ≠ 0}`.
pub fn koszul_homology_bound(s: &Arc<GradedQuotientRing>) -> Result<usize> {
    let k = koszul_on_variables(s)?;
    let top = k
        .homology()?
        .iter()
        .rposition(|h| !h.is_zero())
        .unwrap_or(0);
    Ok(top + 1)
}

/// Splitting of `F^e_*K^M` into its homology when `p^e > c`: the Betti
/// numbers of the complex equal `Σ_i β_{n−i}(F^e_*H_i)`, and dominate those
/// of `k` when the homology is nonzero.
pub fn blimp_split_check(s: &Arc<GradedQuotientRing>, m: &FiniteModule, e: u32, cutoff: usize) -> Result<TestVerdict> {
    let claim = "koszul-splitting";
    let c = koszul_homology_bound(s)?;
    let in_range = q_of(s, e) > c as u64;
    let vars: Vec<Polynomial> = (0..s.nvars()).map(|i| s.var(i)).collect();
    let km = koszul_complex(m, &vars)?;
    let (table, lhs) = betti_of_complex(&km.frobenius_pushforward(e)?, cutoff as i64)?;
    let homology = km.homology()?;
    let mut rhs = vec![0u64; cutoff + 1];
    for (i, h) in homology.iter().enumerate() {
        if h.is_zero() || i > cutoff {
            continue;
        }
        let (_, p) = betti_and_poincare(frobenius_pushforward_of_module(h, e)?.module(), cutoff - i)?;
        for (n, b) in p.coefficients().iter().enumerate() {
            rhs[n + i] += b;
        }
    }
    let rhs = PoincareTruncation::new(rhs);
    let (_, pk) = betti_and_poincare(&FiniteModule::residue_field(s), cutoff)?;
    let mismatch = (0..=cutoff as i64).find(|&n| lhs.coefficient(n) != rhs.coefficient(n));
    let nonzero = homology.iter().any(|h| !h.is_zero());
    let below_k = if nonzero { pk.first_excess_over(&lhs) } else { None };
    let label = if in_range { "SPLITS" } else { "OUT_OF_RANGE" };
    let mut v = match (mismatch, below_k) {
        (None, None) => TestVerdict::pass(claim, label),
        (Some(n), _) => {
            let detail = format!(
                "beta_{n} of the complex is {} but the homology sum gives {}",
                lhs.coefficient(n),
                rhs.coefficient(n)
            );
            if in_range {
                TestVerdict::fail(claim, label, Witness { index: n, detail })
            } else {
                TestVerdict::new(claim, Outcome::Inconclusive, label).with(Evidence::text("mismatch", detail))
            }
        }
        (None, Some(n)) => {
            let detail = format!("beta_{n}(k) = {} exceeds {}", pk.coefficient(n), lhs.coefficient(n));
            if in_range {
                TestVerdict::fail(claim, label, Witness { index: n, detail })
            } else {
                TestVerdict::new(claim, Outcome::Inconclusive, label).with(Evidence::text("mismatch", detail))
            }
        }
    };
    v = v
        .with(Evidence::text("c", c))
        .with(Evidence::Betti {
            object: "F_*K^M".into(),
            table,
        })
        .with(Evidence::values("complex", lhs.coefficients()))
        .with(Evidence::values("homology_sum", rhs.coefficients()))
        .with(Evidence::values("k", pk.coefficients()));
    Ok(v.with_cutoff("cutoff", cutoff as i64).with_cutoff("e", e as i64))
}

/// If `F^e_*M` has finite projective dimension then `S` is regular.
pub fn discrete_regularity_check(
    s: &Arc<GradedQuotientRing>,
    m: &FiniteModule,
    e: u32,
    cutoff: usize,
    policy: GrowthPolicy,
) -> Result<TestVerdict> {
    let claim = "finite-pd-forces-regular";
    if m.is_zero() {
        return Err(Error::Precondition("the module must be nonzero".into()));
    }
    let (table, growth) = growth_of(frobenius_pushforward_of_module(m, e)?.module(), cutoff, policy)?;
    let mut v = match growth.class {
        GrowthClass::Finite { pd } => {
            let kunz = kunz_test(s, e)?;
            if kunz.label == "REGULAR" {
                TestVerdict::pass(claim, "HOLDS")
            } else {
                TestVerdict::fail(
                    claim,
                    "VIOLATED",
                    Witness {
                        index: pd as i64,
                        detail: "F_*M has finite projective dimension over a non-regular ring".into(),
                    },
                )
            }
        }
        _ => TestVerdict::pass(claim, "VACUOUS"),
    };
    for ev in growth_evidence("F_*M", table, &growth) {
        v = v.with(ev);
    }
    Ok(v.with_cutoff("cutoff", cutoff as i64).with_cutoff("e", e as i64))
}
