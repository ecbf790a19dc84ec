//! Monomials with cached weighted degree, and the monomial orders used by
//! the Gröbner engine.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::AlgebraError;

pub(crate) type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x^a`. The weighted degree is cached in the integer units of
/// the owning ring (see [`crate::PolyRing::scale`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: i64,
    exps: Exponents,
}

impl Monomial {
    pub(crate) fn from_parts(exps: Exponents, deg: i64) -> Self {
        Monomial { deg, exps }
    }

    pub(crate) fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Weighted degree in ring units.
    #[inline]
    pub fn scaled_degree(&self) -> i64 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub(crate) fn checked_mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(Monomial {
            deg: self.deg + other.deg,
            exps,
        })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: other.deg - self.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[i64]) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum();
        Monomial { deg, exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            deg: self.deg * k as i64,
            exps: self
                .exps
                .iter()
                .map(|&e| {
                    u16::try_from(e as u32 * k).expect("exponent overflow")
                })
                .collect(),
        }
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is the larger one.
#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A monomial order on a fixed ambient ring.
///
/// `DegRevLex` is the weighted degree reverse lexicographic order. `Eliminate`
/// first compares the weighted degree restricted to the masked variables, then
/// falls back to weighted degrevlex; it is a block order suitable for
/// elimination of the masked variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Eliminate(Vec<bool>),
}

impl MonomialOrder {
    #[inline]
    pub(crate) fn compare(&self, a: &Monomial, b: &Monomial, weights: &[i64]) -> Ordering {
        if let MonomialOrder::Eliminate(mask) = self {
            let ea = elim_degree(a, mask, weights);
            let eb = elim_degree(b, mask, weights);
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        match a.deg.cmp(&b.deg) {
            Ordering::Equal => revlex(&a.exps, &b.exps),
            o => o,
        }
    }
}

#[inline]
pub(crate) fn elim_degree(m: &Monomial, mask: &[bool], weights: &[i64]) -> i64 {
    m.exps
        .iter()
        .zip(mask)
        .zip(weights)
        .filter(|((_, &on), _)| on)
        .map(|((&e, _), &w)| e as i64 * w)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[u16], w: &[i64]) -> Monomial {
        let deg = exps.iter().zip(w).map(|(&e, &w)| e as i64 * w).sum();
        Monomial::from_parts(exps.iter().copied().collect(), deg)
    }

    #[test]
    fn degrevlex_equal_degree() {
        let w = [1, 1];
        // x^2 > xy
        let a = mono(&[2, 0], &w);
        let b = mono(&[1, 1], &w);
        assert_eq!(MonomialOrder::DegRevLex.compare(&a, &b, &w), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.compare(&a, &a, &w), Ordering::Equal);
    }

    #[test]
    fn weighted_degree_dominates() {
        let w = [2, 1];
        // y^3 (deg 3) > x (deg 2)
        let y3 = mono(&[0, 3], &w);
        let x = mono(&[1, 0], &w);
        assert_eq!(MonomialOrder::DegRevLex.compare(&y3, &x, &w), Ordering::Greater);
    }

    #[test]
    fn elimination_block() {
        let w = [1, 1];
        let ord = MonomialOrder::Eliminate(vec![false, true]);
        // anything with v beats anything without
        let u5 = mono(&[5, 0], &w);
        let v = mono(&[0, 1], &w);
        assert_eq!(ord.compare(&v, &u5, &w), Ordering::Greater);
    }

    #[test]
    fn lcm_and_division() {
        let w = [1, 2];
        let a = mono(&[2, 1], &w);
        let b = mono(&[1, 3], &w);
        let l = a.lcm(&b, &w);
        assert_eq!(l.exponents(), &[2, 3]);
        assert_eq!(l.scaled_degree(), 8);
        assert!(a.divides(&l) && b.divides(&l));
        let q = a.quotient_of(&l);
        assert_eq!(q.exponents(), &[0, 2]);
        assert_eq!(a.mul(&q), l);
    }
}
