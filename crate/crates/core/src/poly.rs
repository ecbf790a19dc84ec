//! Sparse multivariate polynomials over F_p with positive rational weights.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::AlgebraError;
use crate::field::PrimeField;
use crate::monomial::{Exponents, Monomial, MonomialOrder};

/// Exact rational degree. Frobenius pushforwards live in `(1/p^e)·Z`.
pub type Degree = num_rational::Ratio<i64>;

/// Formats a degree as `n` or `num/den`.
pub fn fmt_degree(d: &Degree) -> String {
    if d.is_integer() {
        d.numer().to_string()
    } else {
        format!("{}/{}", d.numer(), d.denom())
    }
}

/// Ambient polynomial ring `F_p[x_1..x_n]` with positive rational weights.
///
/// Weights are stored as integers over a common denominator `scale`, so
/// monomial degrees are exact integers internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    weights: Vec<Degree>,
    scale: i64,
    int_weights: Vec<i64>,
}

impl PolyRing {
    pub fn new(
        field: PrimeField,
        vars: impl IntoIterator<Item = (String, Degree)>,
    ) -> Result<Arc<PolyRing>, AlgebraError> {
        let (names, weights): (Vec<String>, Vec<Degree>) = vars.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        for w in &weights {
            if !w.is_positive() {
                return Err(AlgebraError::NonPositiveWeight(fmt_degree(w)));
            }
        }
        let scale = weights.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
        let int_weights = weights
            .iter()
            .map(|w| (w * Degree::from_integer(scale)).to_integer())
            .collect();
        Ok(Arc::new(PolyRing {
            field,
            names,
            weights,
            scale,
            int_weights,
        }))
    }

    /// Convenience constructor with integer weights.
    pub fn with_int_weights(
        field: PrimeField,
        vars: &[(&str, i64)],
    ) -> Result<Arc<PolyRing>, AlgebraError> {
        PolyRing::new(
            field,
            vars.iter()
                .map(|(n, w)| (n.to_string(), Degree::from_integer(*w))),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weights(&self) -> &[Degree] {
        &self.weights
    }

    /// Common denominator of the weights.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Weights multiplied by `scale`.
    pub fn int_weights(&self) -> &[i64] {
        &self.int_weights
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length");
        let deg = exps
            .iter()
            .zip(&self.int_weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum();
        Monomial::from_parts(exps.iter().copied().collect(), deg)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0u16; self.nvars()];
        e[i] = 1;
        self.monomial(&e)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        Degree::new(m.scaled_degree(), self.scale)
    }

    /// Scaled integer form of a degree, if it is representable in this ring's units.
    pub fn to_scaled(&self, d: Degree) -> Option<i64> {
        let s = d * Degree::from_integer(self.scale);
        s.is_integer().then(|| s.to_integer())
    }

    pub fn monomial_compare(
        &self,
        a: &Monomial,
        b: &Monomial,
        ord: &MonomialOrder,
    ) -> Result<Ordering, AlgebraError> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(AlgebraError::AmbientMismatch);
        }
        if let MonomialOrder::Eliminate(mask) = ord {
            if mask.len() != self.nvars() {
                return Err(AlgebraError::AmbientMismatch);
            }
        }
        Ok(ord.compare(a, b, &self.int_weights))
    }

    /// The same variables with all weights multiplied by `factor`.
    pub fn rescaled(&self, factor: Degree) -> Result<Arc<PolyRing>, AlgebraError> {
        PolyRing::new(
            self.field,
            self.names
                .iter()
                .cloned()
                .zip(self.weights.iter().map(|w| w * factor)),
        )
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Result of asking for the weighted degree of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeInfo {
    /// The zero polynomial, homogeneous of every degree.
    Bottom,
    Homogeneous(Degree),
    NonHomogeneous,
}

/// A polynomial in canonical form: nonzero coefficients, terms sorted
/// descending in weighted degrevlex.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[inline]
pub(crate) fn degrevlex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::DegRevLex.compare(b, a, &[])
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Polynomial::term(ring, ring.one_monomial(), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Polynomial::term(ring, ring.var_monomial(i), 1)
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        let c = c % ring.characteristic();
        Polynomial {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field;
        terms.sort_by(|a, b| degrevlex_desc(&a.0, &b.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusted constructor: terms already canonical.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| degrevlex_desc(&w[0].0, &w[1].0) == Ordering::Less));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Nonzero constant part, if any.
    pub fn constant_term(&self) -> u32 {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    pub fn weighted_degree(&self) -> DegreeInfo {
        let Some((first, _)) = self.terms.first() else {
            return DegreeInfo::Bottom;
        };
        if self
            .terms
            .iter()
            .all(|(m, _)| m.scaled_degree() == first.scaled_degree())
        {
            DegreeInfo::Homogeneous(self.ring.monomial_degree(first))
        } else {
            DegreeInfo::NonHomogeneous
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree() != DegreeInfo::NonHomogeneous
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match degrevlex_desc(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { f.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        f.sub(a[i].1, b[j].1)
                    } else {
                        f.add(a[i].1, b[j].1)
                    };
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { f.neg(t.1) } else { t.1 };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let f = self.ring.field;
        let mut acc: HashMap<Exponents, (i64, u32)> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = f.mul(*ca, *cb);
                let deg = m.scaled_degree();
                let e = acc.entry(m.exponents().into()).or_insert((deg, 0));
                e.1 = f.add(e.1, c);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, (_, c))| *c != 0)
            .map(|(e, (d, c))| (Monomial::from_parts(e, d), c))
            .collect::<Vec<_>>();
        let mut terms = terms;
        terms.sort_by(|a, b| degrevlex_desc(&a.0, &b.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), f.mul(*b, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(&self.ring, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies the `e`-fold Frobenius coefficientwise: every monomial is raised
    /// to `p^e`; coefficients are fixed because the base field is prime.
    pub fn frobenius(&self, e: u32) -> Polynomial {
        let q = (self.ring.characteristic() as u32).pow(e);
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(q), *c)).collect(),
        }
    }

    /// Evaluates `self(images)` in the ring of the images. The optional
    /// `reduce` hook is applied after every multiplication step.
    pub fn substitute(
        &self,
        target: &Arc<PolyRing>,
        images: &[Polynomial],
        reduce: &dyn Fn(Polynomial) -> Polynomial,
    ) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::constant(target, 1), g.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = reduce(&powers[i][powers[i].len() - 1] * &images[i]);
                    powers[i].push(next);
                }
                t = reduce(&t * &powers[i][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-embeds into `target`, sending variable `i` to variable `var_map[i]`.
    pub fn map_variables(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; target.nvars()];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (target.monomial(&e), *c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Same exponents, reinterpreted in a ring with the same number of variables.
    pub fn reinterpret(&self, target: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (target.monomial(m.exponents()), *c))
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ambient mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ambient mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ambient mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag == 1 {
                write!(f, "{}", self.ring.fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", mag, self.ring.fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}
