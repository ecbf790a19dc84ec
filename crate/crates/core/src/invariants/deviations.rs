//! Deviations of a local ring from the Poincaré series of its residue field.

use crate::betti::PoincareTruncation;
use crate::error::{Error, Result};

/// `ε_1, …, ε_N` with
/// `P(t) ≡ Π_{i odd} (1 + t^i)^{ε_i} / Π_{i even} (1 − t^i)^{ε_i}  (mod t^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationSequence {
    eps: Vec<u64>,
}

impl DeviationSequence {
    /// `ε_1, …, ε_N`.
    pub fn values(&self) -> &[u64] {
        &self.eps
    }

    /// `ε_n` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> u64 {
        self.eps[n - 1]
    }

    /// Expands the product back to `t^N`.
    pub fn reconstruct(&self) -> Vec<u64> {
        let n = self.eps.len();
        let mut q = vec![0i128; n + 1];
        q[0] = 1;
        for (i, &e) in self.eps.iter().enumerate() {
            apply_factor(&mut q, i + 1, e);
        }
        q.into_iter().map(|c| c as u64).collect()
    }

    /// Complete intersection within the window: `ε_n = 0` for `n ≥ 3`.
    pub fn looks_complete_intersection(&self) -> bool {
        self.eps.iter().skip(2).all(|&e| e == 0)
    }
}

/// Multiplies by `(1 + t^i)^e` for odd `i`, divides by `(1 − t^i)^e` for even
/// `i`, truncating at the length of `q`.
fn apply_factor(q: &mut [i128], i: usize, e: u64) {
    for _ in 0..e {
        if i % 2 == 1 {
            for k in (i..q.len()).rev() {
                q[k] += q[k - i];
            }
        } else {
            for k in i..q.len() {
                q[k] += q[k - i];
            }
        }
    }
}

/// Solves for the deviations coefficient by coefficient.
pub fn deviations_from_poincare(p: &PoincareTruncation) -> Result<DeviationSequence> {
    let b = p.coefficients();
    if b.first() != Some(&1) || p.lo() != 0 {
        return Err(Error::NotUnitConstant(b.first().copied().unwrap_or(0)));
    }
    let n = b.len() - 1;
    let mut q = vec![0i128; n + 1];
    q[0] = 1;
    let mut eps = Vec::with_capacity(n);
    for i in 1..=n {
        let e = b[i] as i128 - q[i];
        if e < 0 {
            return Err(Error::NotAResidueFieldSeries { index: i, value: e });
        }
        apply_factor(&mut q, i, e as u64);
        eps.push(e as u64);
    }
    Ok(DeviationSequence { eps })
}
