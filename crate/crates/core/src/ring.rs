//! Graded quotient rings `F_p[x]/I` with a cached reduced Gröbner basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{FreeModuleElement, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Degree, PolyRing, Polynomial};

/// `F_p[x_1..x_n]/I` for a homogeneous proper ideal `I`. The irrelevant ideal
/// is the unique graded maximal ideal and the residue field is `F_p`.
#[derive(Clone, Debug)]
pub struct GradedQuotientRing {
    ambient: Arc<PolyRing>,
    ideal: GroebnerBasis,
    generators: Vec<Polynomial>,
}

impl PartialEq for GradedQuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.ideal.polynomials() == other.ideal.polynomials()
    }
}

impl GradedQuotientRing {
    /// The quotient of `ambient` by the ideal generated by `gens`.
    pub fn new(ambient: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Arc<Self>> {
        let gens: Vec<Polynomial> = gens.iter().filter(|f| !f.is_zero()).cloned().collect();
        let ideal = GroebnerBasis::ideal(ambient, &gens, MonomialOrder::DegRevLex)?;
        if ideal.lead_terms().iter().any(|t| t.mono.is_one()) {
            return Err(Error::UnitIdeal);
        }
        Ok(Arc::new(GradedQuotientRing {
            ambient: ambient.clone(),
            ideal,
            generators: gens,
        }))
    }

    pub fn polynomial_ring(ambient: &Arc<PolyRing>) -> Arc<Self> {
        Self::new(ambient, &[]).expect("zero ideal")
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    /// The generators as given at construction (zeros dropped).
    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn characteristic(&self) -> u32 {
        self.ambient.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ambient, i)
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.ideal.is_empty()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.ideal.reduce_poly(f)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&(f * g))
    }

    /// `I·e_i` for every position of a free module of the given rank, using
    /// the reduced basis of `I`.
    pub fn ideal_times_basis(&self, rank: usize) -> Vec<FreeModuleElement> {
        let polys = self.ideal.polynomials();
        let mut out = Vec::with_capacity(rank * polys.len());
        for i in 0..rank {
            for f in &polys {
                out.push(FreeModuleElement::from_poly_at(f, i));
            }
        }
        out
    }

    /// Componentwise normal form modulo `I`.
    pub fn reduce_vector(&self, v: &FreeModuleElement) -> FreeModuleElement {
        if self.ideal.is_empty() {
            return v.clone();
        }
        let entries = v.entries(&self.ambient);
        let mut terms = Vec::new();
        for (pos, f) in entries {
            terms.extend(FreeModuleElement::from_poly_at(&self.reduce(&f), pos).into_terms());
        }
        FreeModuleElement::from_terms(self.characteristic(), terms)
    }

    /// For each variable, the smallest pure power that is a lead monomial.
    fn pure_power_bounds(&self) -> Vec<Option<u16>> {
        let mut bounds = vec![None; self.nvars()];
        for t in self.ideal.lead_terms() {
            let e = t.mono.exponents();
            let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
            if let [i] = support[..] {
                bounds[i] = Some(bounds[i].map_or(e[i], |b: u16| b.min(e[i])));
            }
        }
        bounds
    }

    /// Finite-dimensional over `F_p`.
    pub fn is_artinian(&self) -> bool {
        self.pure_power_bounds().iter().all(Option::is_some)
    }

    /// Monomials not in the lead ideal, by degree then degrevlex descending.
    /// `None` unless the ring is artinian.
    pub fn k_basis(&self) -> Option<Vec<Monomial>> {
        let bounds: Vec<u16> = self.pure_power_bounds().into_iter().collect::<Option<_>>()?;
        let leads: Vec<Monomial> = self.ideal.lead_terms().into_iter().map(|t| t.mono).collect();
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars()];
        enumerate_box(&self.ambient, &bounds, &leads, 0, &mut exps, &mut out);
        out.sort_by(|a, b| {
            a.scaled_degree()
                .cmp(&b.scaled_degree())
                .then_with(|| MonomialOrder::DegRevLex.compare(b, a, self.ambient.int_weights()))
        });
        Some(out)
    }

    pub fn dim_k(&self) -> Option<usize> {
        self.k_basis().map(|b| b.len())
    }

    /// Highest degree with a nonzero graded piece (artinian rings only).
    pub fn top_degree(&self) -> Option<Degree> {
        self.k_basis()?
            .iter()
            .map(|m| self.ambient.monomial_degree(m))
            .max()
    }

    /// Standard monomials of the given degree.
    pub fn basis_in_degree(&self, d: Degree) -> Vec<Monomial> {
        let Some(s) = self.ambient.to_scaled(d) else {
            return Vec::new();
        };
        monomials_of_degree(&self.ambient, s)
            .into_iter()
            .filter(|m| !self.ideal.lead_divides(0, m))
            .collect()
    }

    /// Eliminates every variable that is the lead term of a basis element;
    /// returns the smaller presentation and the image of each old variable.
    pub fn trim(&self) -> Result<(Arc<GradedQuotientRing>, Vec<Polynomial>)> {
        let polys = self.ideal.polynomials();
        let mut solved: Vec<Option<Polynomial>> = vec![None; self.nvars()];
        let mut rest = Vec::new();
        for f in &polys {
            let (lead, c) = f.lead().expect("nonzero basis element");
            let e = lead.exponents();
            match (0..e.len()).find(|&i| e[i] == 1 && lead.total_degree() == 1) {
                Some(i) => {
                    // lead is x_i: x_i = -(tail)/c
                    let inv = self.ambient.field().inv(*c);
                    let tail = Polynomial::from_terms(&self.ambient, f.terms()[1..].to_vec());
                    solved[i] = Some(tail.scale(self.ambient.field().neg(inv)));
                }
                None => rest.push(f.clone()),
            }
        }
        let kept: Vec<usize> = (0..self.nvars()).filter(|&i| solved[i].is_none()).collect();
        let small = PolyRing::new(
            self.ambient.field(),
            kept.iter()
                .map(|&i| (self.ambient.names()[i].clone(), self.ambient.weights()[i])),
        )?;
        let mut var_map = vec![0usize; self.nvars()];
        for (k, &i) in kept.iter().enumerate() {
            var_map[i] = k;
        }
        let to_small = |f: &Polynomial| -> Polynomial {
            let terms = f
                .terms()
                .iter()
                .map(|(m, c)| {
                    let e: Vec<u16> = kept.iter().map(|&i| m.exponents()[i]).collect();
                    (small.monomial(&e), *c)
                })
                .collect();
            Polynomial::from_terms(&small, terms)
        };
        let ring = GradedQuotientRing::new(&small, &rest.iter().map(to_small).collect::<Vec<_>>())?;
        let images = (0..self.nvars())
            .map(|i| match &solved[i] {
                Some(h) => to_small(h),
                None => Polynomial::var(&small, var_map[i]),
            })
            .collect();
        Ok((ring, images))
    }

    /// Same presentation with every weight multiplied by `factor` and each
    /// variable name passed through `rename`.
    pub fn rescaled(&self, factor: Degree, rename: impl Fn(&str) -> String) -> Result<Arc<Self>> {
        let amb = PolyRing::new(
            self.ambient.field(),
            self.ambient
                .names()
                .iter()
                .zip(self.ambient.weights())
                .map(|(n, w)| (rename(n), w * factor)),
        )?;
        let gens: Vec<Polynomial> = self.generators.iter().map(|f| f.reinterpret(&amb)).collect();
        GradedQuotientRing::new(&amb, &gens)
    }
}

impl fmt::Display for GradedQuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .ambient
            .names()
            .iter()
            .zip(self.ambient.weights())
            .map(|(n, w)| format!("{}:{}", n, crate::poly::fmt_degree(w)))
            .collect();
        write!(f, "F_{}[{}]", self.characteristic(), vars.join(", "))?;
        if !self.generators.is_empty() {
            let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", g.join(", "))?;
        }
        Ok(())
    }
}

fn enumerate_box(
    ring: &PolyRing,
    bounds: &[u16],
    leads: &[Monomial],
    i: usize,
    exps: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if i == bounds.len() {
        let m = ring.monomial(exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[i] {
        exps[i] = e;
        // prune: once divisible, every larger exponent is divisible too
        let partial = ring.monomial(exps);
        if leads.iter().any(|l| l.divides(&partial)) {
            break;
        }
        enumerate_box(ring, bounds, leads, i + 1, exps, out);
    }
    exps[i] = 0;
}

/// All monomials of scaled degree `d`, in degrevlex descending order.
pub fn monomials_of_degree(ring: &PolyRing, d: i64) -> Vec<Monomial> {
    fn rec(w: &[i64], i: usize, left: i64, exps: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == w.len() {
            if left == 0 {
                out.push(exps.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * w[i] <= left {
            exps[i] = e;
            rec(w, i + 1, left - e as i64 * w[i], exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    if d < 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    rec(ring.int_weights(), 0, d, &mut vec![0; ring.nvars()], &mut raw);
    let mut monos: Vec<Monomial> = raw.iter().map(|e| ring.monomial(e)).collect();
    monos.sort_by(|a, b| MonomialOrder::DegRevLex.compare(b, a, ring.int_weights()));
    monos
}
