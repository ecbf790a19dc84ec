//! Graded Betti tables and truncated Poincaré series.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{FreeComplex, ModuleComplex};
use crate::error::Result;
use crate::module::FiniteModule;
use crate::poly::{fmt_degree, Degree};
use crate::resolution::{minimal_free_resolution, resolve_complex};

/// `β_{n,d}` for homological degrees `lo..=cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    lo: i64,
    cutoff: i64,
    entries: BTreeMap<(i64, Degree), usize>,
}

impl BettiTable {
    /// Reads the table off a minimal free complex.
    pub fn from_complex(c: &FreeComplex) -> Self {
        let mut entries = BTreeMap::new();
        for n in c.lo()..=c.hi() {
            for &d in c.degrees(n) {
                *entries.entry((n, d)).or_insert(0) += 1;
            }
        }
        BettiTable {
            lo: c.lo(),
            cutoff: c.hi(),
            entries,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn get(&self, n: i64, d: Degree) -> usize {
        self.entries.get(&(n, d)).copied().unwrap_or(0)
    }

    /// `β_n = Σ_d β_{n,d}`.
    pub fn total(&self, n: i64) -> usize {
        self.entries.iter().filter(|((m, _), _)| *m == n).map(|(_, b)| b).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (self.lo..=self.cutoff).map(|n| self.total(n)).collect()
    }

    /// Nonzero entries `((n, d), β_{n,d})` in increasing order.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, Degree), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn poincare(&self) -> PoincareTruncation {
        PoincareTruncation {
            lo: self.lo,
            coefficients: self.totals().into_iter().map(|b| b as u64).collect(),
        }
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees: Vec<Degree> = {
            let mut ds: Vec<Degree> = self.entries.keys().map(|&(_, d)| d).collect();
            ds.sort();
            ds.dedup();
            ds
        };
        let width = degrees.iter().map(|d| fmt_degree(d).len()).max().unwrap_or(1).max(3);
        write!(f, "{:>width$} |", "n")?;
        for n in self.lo..=self.cutoff {
            write!(f, " {n:>5}")?;
        }
        writeln!(f)?;
        for d in &degrees {
            write!(f, "{:>width$} |", fmt_degree(d))?;
            for n in self.lo..=self.cutoff {
                match self.get(n, *d) {
                    0 => write!(f, " {:>5}", ".")?,
                    b => write!(f, " {b:>5}")?,
                }
            }
            writeln!(f)?;
        }
        write!(f, "{:>width$} |", "tot")?;
        for n in self.lo..=self.cutoff {
            write!(f, " {:>5}", self.total(n))?;
        }
        writeln!(f)
    }
}

/// Coefficients `β_lo, …, β_N` of a Poincaré series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareTruncation {
    lo: i64,
    coefficients: Vec<u64>,
}

impl PoincareTruncation {
    /// A series starting at `t^0`.
    pub fn new(coefficients: Vec<u64>) -> Self {
        PoincareTruncation { lo: 0, coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn cutoff(&self) -> i64 {
        self.lo + self.coefficients.len() as i64 - 1
    }

    /// Coefficient of `t^n`, zero outside the window.
    pub fn coefficient(&self, n: i64) -> u64 {
        if n < self.lo {
            return 0;
        }
        self.coefficients.get((n - self.lo) as usize).copied().unwrap_or(0)
    }

    /// The first `n` (within both windows) where `self ≼ other` fails.
    pub fn first_excess_over(&self, other: &Self) -> Option<i64> {
        let hi = self.cutoff().min(other.cutoff());
        (self.lo.min(other.lo)..=hi).find(|&n| self.coefficient(n) > other.coefficient(n))
    }

    /// Coefficientwise `self ≼ other` on the common window.
    pub fn le(&self, other: &Self) -> bool {
        self.first_excess_over(other).is_none()
    }

    /// Product of two series truncated to the shorter window.
    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lo + other.lo;
        let len = (self.cutoff().min(other.cutoff()) - lo + 1).max(0) as usize;
        let mut out = vec![0u64; len];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                if i + j < len {
                    out[i + j] += a * b;
                }
            }
        }
        PoincareTruncation { lo, coefficients: out }
    }

    /// `t^s · P`.
    pub fn shifted(&self, s: i64) -> Self {
        PoincareTruncation {
            lo: self.lo + s,
            coefficients: self.coefficients.clone(),
        }
    }
}

impl fmt::Display for PoincareTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(u64::to_string).collect();
        write!(f, "[{}] from t^{}", parts.join(", "), self.lo)
    }
}

/// Betti table and Poincaré truncation of a module to `cutoff`.
pub fn betti_and_poincare(m: &FiniteModule, cutoff: usize) -> Result<(BettiTable, PoincareTruncation)> {
    let t = BettiTable::from_complex(&minimal_free_resolution(m, cutoff)?);
    let p = t.poincare();
    Ok((t, p))
}

/// Betti table of a complex: ranks of its minimal free resolvent.
pub fn betti_of_complex(c: &ModuleComplex, cutoff: i64) -> Result<(BettiTable, PoincareTruncation)> {
    let t = BettiTable::from_complex(&resolve_complex(c, cutoff)?);
    let p = t.poincare();
    Ok((t, p))
}
