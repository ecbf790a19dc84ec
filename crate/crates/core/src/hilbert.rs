//! Hilbert series of graded modules from the lead terms of a Gröbner basis.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::module::FiniteModule;
use crate::poly::Degree;
use crate::ring::GradedQuotientRing;

/// `Σ_d dim_k M_d t^d = N(t) / Π_i (1 − t^{w_i})`, with exponents counted in
/// units of `1/unit` so that fractional gradings stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    unit: i64,
    numerator: BTreeMap<i64, i64>,
    denominator: Vec<i64>,
}

/// Numerator of `k[x]/J` for a monomial ideal `J`, over `Π (1 − t^{w_i})`.
fn monomial_numerator(gens: &[Vec<u16>], weights: &[i64]) -> BTreeMap<i64, i64> {
    let mut gens = minimize(gens.to_vec());
    let mut out = BTreeMap::new();
    let Some(last) = gens.pop() else {
        out.insert(0, 1);
        return out;
    };
    // N(J' + m) = N(J') − t^{deg m} N(J' : m)
    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| g.iter().zip(&last).map(|(&a, &b)| a.saturating_sub(b)).collect())
        .collect();
    let deg: i64 = last.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
    let rest = monomial_numerator(&gens, weights);
    let quot = monomial_numerator(&colon, weights);
    out = rest;
    for (e, c) in quot {
        *out.entry(e + deg).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn minimize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

impl HilbertSeries {
    /// The series of `M`, read off the leading terms of its Gröbner basis.
    pub fn of_module(m: &FiniteModule) -> Self {
        let amb = m.ring().ambient();
        let ring_scale = amb.scale();
        let unit = m
            .degrees()
            .iter()
            .fold(ring_scale, |acc, d| acc.lcm(d.denom()));
        let factor = unit / ring_scale;
        let weights: Vec<i64> = amb.int_weights().iter().map(|w| w * factor).collect();
        let mut numerator = BTreeMap::new();
        for (pos, leads) in m.leads_by_position().into_iter().enumerate() {
            let shift = (m.degrees()[pos] * Degree::from_integer(unit)).to_integer();
            let gens: Vec<Vec<u16>> = leads.iter().map(|l| l.exponents().to_vec()).collect();
            for (e, c) in monomial_numerator(&gens, &weights) {
                *numerator.entry(e + shift).or_insert(0) += c;
            }
        }
        numerator.retain(|_, c| *c != 0);
        HilbertSeries {
            unit,
            numerator,
            denominator: weights,
        }
    }

    pub fn of_ring(s: &std::sync::Arc<GradedQuotientRing>) -> Self {
        Self::of_module(&FiniteModule::free(s, vec![Degree::from_integer(0)]))
    }

    /// Exponents are multiples of `1/unit`.
    pub fn unit(&self) -> i64 {
        self.unit
    }

    /// Nonzero numerator coefficients by exponent.
    pub fn numerator(&self) -> Vec<(Degree, i64)> {
        self.numerator
            .iter()
            .map(|(&e, &c)| (Degree::new(e, self.unit), c))
            .collect()
    }

    /// Exponents `w_i` of the factors `1 − t^{w_i}` of the denominator.
    pub fn denominator(&self) -> Vec<Degree> {
        self.denominator.iter().map(|&w| Degree::new(w, self.unit)).collect()
    }

    /// Order of the pole at `t = 1` after cancelling common factors.
    pub fn pole_order(&self) -> usize {
        self.simplified().denominator.len()
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn simplified(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for &w in &self.denominator {
            match divide_one_minus(&num, w) {
                Some(q) => num = q,
                None => den.push(w),
            }
        }
        HilbertSeries {
            unit: self.unit,
            numerator: num,
            denominator: den,
        }
    }

    /// `dim_k M` when it is finite.
    pub fn dimension(&self) -> Option<i64> {
        let s = self.simplified();
        s.denominator.is_empty().then(|| s.numerator.values().sum())
    }

    /// Series coefficients for all exponents up to `max` (inclusive), from the
    /// lowest numerator exponent on.
    pub fn expand(&self, max: Degree) -> Vec<(Degree, i64)> {
        let Some(&lo) = self.numerator.keys().next() else {
            return Vec::new();
        };
        let hi = (max * Degree::from_integer(self.unit)).floor().to_integer();
        if hi < lo {
            return Vec::new();
        }
        let len = (hi - lo + 1) as usize;
        let mut a = vec![0i64; len];
        for (&e, &c) in &self.numerator {
            if e <= hi {
                a[(e - lo) as usize] += c;
            }
        }
        for &w in &self.denominator {
            for i in w as usize..len {
                a[i] += a[i - w as usize];
            }
        }
        a.into_iter()
            .enumerate()
            .map(|(i, c)| (Degree::new(lo + i as i64, self.unit), c))
            .collect()
    }

    /// `dim_k M_d`.
    pub fn coefficient(&self, d: Degree) -> i64 {
        self.expand(d)
            .into_iter()
            .find(|(e, _)| *e == d)
            .map_or(0, |(_, c)| c)
    }
}

/// `num / (1 − t^w)` when the division is exact.
fn divide_one_minus(num: &BTreeMap<i64, i64>, w: i64) -> Option<BTreeMap<i64, i64>> {
    let (&lo, _) = num.iter().next()?;
    let (&hi, _) = num.iter().next_back()?;
    let len = (hi - lo + 1) as usize;
    let mut q = vec![0i64; len];
    for i in 0..len {
        let n = num.get(&(lo + i as i64)).copied().unwrap_or(0);
        q[i] = n + if i >= w as usize { q[i - w as usize] } else { 0 };
    }
    if q[len.saturating_sub(w as usize)..].iter().any(|&c| c != 0) {
        return None;
    }
    Some(
        q.into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (lo + i as i64, c))
            .collect(),
    )
}

fn fmt_power(e: i64, unit: i64) -> String {
    let d = Degree::new(e, unit);
    match (d.numer(), d.denom()) {
        (0, _) => String::new(),
        (1, 1) => "t".into(),
        (n, 1) => format!("t^{n}"),
        (n, m) => format!("t^({n}/{m})"),
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        for (i, (&e, &c)) in self.numerator.iter().enumerate() {
            let t = fmt_power(e, self.unit);
            let mag = c.abs();
            let body = match (mag, t.is_empty()) {
                (m, true) => m.to_string(),
                (1, false) => t,
                (m, false) => format!("{m}*{t}"),
            };
            match (i, c < 0) {
                (0, false) => num.push_str(&body),
                (0, true) => num.push_str(&format!("-{body}")),
                (_, false) => num.push_str(&format!(" + {body}")),
                (_, true) => num.push_str(&format!(" - {body}")),
            }
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let mut factors: BTreeMap<i64, usize> = BTreeMap::new();
        for &w in &self.denominator {
            *factors.entry(w).or_insert(0) += 1;
        }
        let den: Vec<String> = factors
            .into_iter()
            .map(|(w, k)| {
                let base = format!("(1 - {})", fmt_power(w, self.unit));
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        write!(f, "({num})/{}", den.join(""))
    }
}

/// Hilbert series of a module.
pub fn hilbert_series(m: &FiniteModule) -> HilbertSeries {
    HilbertSeries::of_module(m)
}
