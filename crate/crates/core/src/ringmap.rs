//! Graded ring maps between quotient rings.

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Degree, DegreeInfo, Polynomial};
use crate::ring::GradedQuotientRing;

/// A graded homomorphism given by the images of the source variables. Every
/// image is homogeneous of degree `degree_scale · deg(x)` and has no constant
/// term, so the map is local for the irrelevant ideals.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<GradedQuotientRing>,
    target: Arc<GradedQuotientRing>,
    images: Vec<Polynomial>,
    degree_scale: Degree,
}

impl RingMap {
    pub fn new(
        source: &Arc<GradedQuotientRing>,
        target: &Arc<GradedQuotientRing>,
        images: Vec<Polynomial>,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::ImageCount {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        let src = source.ambient();
        let mut scale: Option<Degree> = None;
        let mut reduced = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            if !crate::poly::same_ring(img.ring(), target.ambient()) {
                return Err(Error::Algebra(crate::error::AlgebraError::AmbientMismatch));
            }
            if img.constant_term() != 0 {
                return Err(Error::ConstantTerm(src.names()[i].clone()));
            }
            let img = target.reduce(img);
            match img.weighted_degree() {
                DegreeInfo::Bottom => {}
                DegreeInfo::NonHomogeneous => return Err(Error::Inhomogeneous(img.to_string())),
                DegreeInfo::Homogeneous(d) => {
                    let c = d / src.weights()[i];
                    match scale {
                        None => scale = Some(c),
                        Some(s) if s == c => {}
                        Some(s) => {
                            return Err(Error::InconsistentScaling(format!(
                                "{} scales by {}, earlier images by {}",
                                src.names()[i],
                                crate::poly::fmt_degree(&c),
                                crate::poly::fmt_degree(&s)
                            )))
                        }
                    }
                }
            }
            reduced.push(img);
        }
        let map = RingMap {
            source: source.clone(),
            target: target.clone(),
            images: reduced,
            degree_scale: scale.unwrap_or_else(Degree::one),
        };
        for g in source.ideal().polynomials() {
            let img = map.apply(&g);
            if !img.is_zero() {
                return Err(Error::IdealNotRespected(g.to_string(), img.to_string()));
            }
        }
        Ok(map)
    }

    /// The identity of a ring.
    pub fn identity(ring: &Arc<GradedQuotientRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Self::new(ring, ring, images).expect("identity is well defined")
    }

    pub fn source(&self) -> &Arc<GradedQuotientRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedQuotientRing> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn degree_scale(&self) -> Degree {
        self.degree_scale
    }

    /// Image of a source polynomial, reduced in the target.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let t = self.target.clone();
        f.substitute(self.target.ambient(), &self.images, &move |g| t.reduce(&g))
    }

    /// Degree in the target of a source degree.
    pub fn map_degree(&self, d: Degree) -> Degree {
        d * self.degree_scale
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &RingMap) -> Result<RingMap> {
        let images = first.images.iter().map(|f| self.apply(f)).collect();
        RingMap::new(&first.source, &self.target, images)
    }

    /// Equal as maps: same rings and equal images after reduction.
    pub fn agrees_with(&self, other: &RingMap) -> bool {
        self.source.ambient() == other.source.ambient()
            && self.target.ambient() == other.target.ambient()
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| self.target.reduce(&(a - b)).is_zero())
    }

    /// `S ⊗_R k_R = S / (images)`, with variables solved by linear relations
    /// removed.
    pub fn fiber_ring(&self) -> Result<Arc<GradedQuotientRing>> {
        let mut gens = self.target.ideal().polynomials();
        gens.extend(self.images.iter().filter(|f| !f.is_zero()).cloned());
        let full = GradedQuotientRing::new(self.target.ambient(), &gens)?;
        Ok(full.trim()?.0)
    }

    /// Standard monomials of `S / φ(m_R)S`; by graded Nakayama they generate
    /// `S` as an `R`-module when there are finitely many.
    pub fn module_generators(&self) -> Result<Vec<Monomial>> {
        let mut gens = self.target.ideal().polynomials();
        gens.extend(self.images.iter().filter(|f| !f.is_zero()).cloned());
        GradedQuotientRing::new(self.target.ambient(), &gens)?
            .k_basis()
            .ok_or_else(|| Error::NotModuleFinite("the fiber ring has infinite length".into()))
    }

    /// The `e`-fold Frobenius `S → F^e_*S`, written as `S → S''` with
    /// `x ↦ x''^{p^e}`, where `S''` carries the weights divided by `p^e`.
    pub fn frobenius(ring: &Arc<GradedQuotientRing>, e: u32) -> Result<Self> {
        let q = (ring.characteristic() as u64).pow(e);
        let target = ring.rescaled(Degree::new(1, q as i64), |n| format!("{n}''"))?;
        let images = (0..ring.nvars())
            .map(|i| Polynomial::var(target.ambient(), i).pow(q))
            .collect();
        RingMap::new(ring, &target, images)
    }
}
