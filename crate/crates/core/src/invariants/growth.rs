//! Window classification of Betti growth.

use std::fmt;

use num_rational::Ratio;

use crate::betti::PoincareTruncation;
use crate::error::{Error, Result};

/// Thresholds for [`classify_growth`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthPolicy {
    /// Ratios at most `1 + delta` count as polynomial growth.
    pub delta: f64,
    /// Allowed deviation when comparing exponential rates.
    pub tolerance: f64,
}

impl Default for GrowthPolicy {
    fn default() -> Self {
        GrowthPolicy {
            delta: 0.1,
            tolerance: 0.15,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthClass {
    Finite { pd: usize },
    Polynomial { degree_estimate: u32 },
    Exponential { rate: f64 },
}

impl GrowthClass {
    /// 0, 1 or 2 for finite, polynomial and exponential growth.
    pub fn rank(&self) -> u8 {
        match self {
            GrowthClass::Finite { .. } => 0,
            GrowthClass::Polynomial { .. } => 1,
            GrowthClass::Exponential { .. } => 2,
        }
    }

    /// The exponential rate rounded to three decimals, as an exact rational.
    pub fn rate_rational(&self) -> Option<Ratio<i64>> {
        match self {
            GrowthClass::Exponential { rate } => Some(Ratio::new((rate * 1000.0).round() as i64, 1000)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GrowthClass::Finite { pd } => format!("FINITE({pd})"),
            GrowthClass::Polynomial { degree_estimate } => format!("POLYNOMIAL({degree_estimate})"),
            GrowthClass::Exponential { .. } => {
                let r = self.rate_rational().expect("exponential");
                format!("EXPONENTIAL({})", crate::poly::fmt_degree(&r))
            }
        }
    }

    /// Same class, and rates within `tolerance` when exponential.
    pub fn agrees_with(&self, other: &GrowthClass, tolerance: f64) -> bool {
        match (self, other) {
            (GrowthClass::Exponential { rate: a }, GrowthClass::Exponential { rate: b }) => (a - b).abs() <= tolerance,
            _ => self.rank() == other.rank(),
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthClassification {
    pub class: GrowthClass,
    pub window: Vec<u64>,
    pub policy: GrowthPolicy,
}

/// Classifies `β_0, …, β_N` (`N ≥ 4`): finite on a zero tail, otherwise by
/// the ratios `β_{n+1}/β_n` over the upper half of the window.
pub fn classify_growth(p: &PoincareTruncation, policy: GrowthPolicy) -> Result<GrowthClassification> {
    let b = p.coefficients();
    if b.len() < 5 {
        return Err(Error::WindowTooShort(b.len()));
    }
    let n = b.len() - 1;
    let class = if b[n] == 0 {
        let pd = b.iter().rposition(|&x| x != 0).unwrap_or(0);
        GrowthClass::Finite { pd }
    } else {
        let start = n.div_ceil(2);
        let ratios: Vec<f64> = (start..n)
            .map(|i| if b[i] == 0 { f64::INFINITY } else { b[i + 1] as f64 / b[i] as f64 })
            .collect();
        let max = ratios.iter().copied().fold(f64::MIN, f64::max);
        if max <= 1.0 + policy.delta {
            let (lo, hi) = (start.max(1), n);
            let est = if b[lo] == 0 || hi == lo {
                0.0
            } else {
                (b[hi] as f64 / b[lo] as f64).ln() / (hi as f64 / lo as f64).ln()
            };
            GrowthClass::Polynomial {
                degree_estimate: est.round().max(0.0) as u32,
            }
        } else {
            let rate = ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64;
            GrowthClass::Exponential { rate: rate.exp() }
        }
    };
    Ok(GrowthClassification {
        class,
        window: b.to_vec(),
        policy,
    })
}
