//! Gröbner bases of homogeneous submodules of free modules over a weighted
//! polynomial ring, with normal forms, syzygies, elimination and kernels.

mod engine;
mod kernel;
mod syzygy;
mod vector;

use std::sync::Arc;

pub use kernel::{eliminate, kernel_of_module_map, minimal_generators, KernelRequest};
pub use syzygy::{syzygy_basis, syzygy_degrees};
pub use vector::{FreeModuleElement, Grading, Term, TermOrder};

pub(crate) use engine::Engine;

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::{Degree, DegreeInfo, PolyRing, Polynomial};

/// A Gröbner basis of a submodule of `P^r`, where `P` is the ambient
/// polynomial ring and the free basis carries the given degrees.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    degrees: Vec<Degree>,
    engine: Engine,
    reduced: bool,
}

/// Result of a Buchberger run that tracked candidate generators.
pub(crate) struct TrackedRun {
    pub(crate) basis: GroebnerBasis,
    pub(crate) minimal: Vec<usize>,
}

pub(crate) fn to_vector(order: &TermOrder, v: &FreeModuleElement) -> Vec<Term> {
    let mut t = v.terms().to_vec();
    order.sort_desc(&mut t);
    t
}

pub(crate) fn check_homogeneous(
    ring: &Arc<PolyRing>,
    degrees: &[Degree],
    v: &FreeModuleElement,
) -> Result<()> {
    if v.support_len() > degrees.len() {
        return Err(Error::DegreeMismatch(format!(
            "element uses position {} but the free module has rank {}",
            v.support_len() - 1,
            degrees.len()
        )));
    }
    match v.degree(ring, degrees) {
        DegreeInfo::NonHomogeneous => Err(Error::Inhomogeneous(v.display(ring).to_string())),
        _ => Ok(()),
    }
}

impl GroebnerBasis {
    /// Runs the engine. `base` elements are always kept; `cands` are tracked
    /// for minimality (see [`engine`]). `bound` truncates after that degree.
    pub(crate) fn run(
        ring: &Arc<PolyRing>,
        degrees: &[Degree],
        order: TermOrder,
        base: &[FreeModuleElement],
        cands: &[FreeModuleElement],
        bound: Option<Degree>,
        reduce: bool,
    ) -> Result<TrackedRun> {
        for v in base.iter().chain(cands) {
            check_homogeneous(ring, degrees, v)?;
        }
        let grading = Arc::new(Grading::new(ring, degrees));
        let order = Arc::new(order);
        let bound = bound.map(|b| {
            let s = b * Degree::from_integer(grading.unit);
            s.floor().to_integer()
        });
        let mut engine = Engine::new(ring.field(), order.clone(), grading.clone());
        let minimal = engine.run(
            base.iter().map(|v| to_vector(&order, v)).collect(),
            cands.iter().map(|v| to_vector(&order, v)).collect(),
            bound,
        );
        let engine = if reduce {
            Engine::from_basis(ring.field(), order, grading, engine.reduced_basis())
        } else {
            Engine::from_basis(ring.field(), order, grading, engine.basis)
        };
        Ok(TrackedRun {
            basis: GroebnerBasis {
                ring: ring.clone(),
                degrees: degrees.to_vec(),
                engine,
                reduced: reduce,
            },
            minimal,
        })
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`, under the
    /// given monomial order extended position-over-term.
    pub fn compute(
        ring: &Arc<PolyRing>,
        degrees: &[Degree],
        gens: &[FreeModuleElement],
        order: MonomialOrder,
    ) -> Result<Self> {
        let ord = TermOrder::with_blocks(ring, order, degrees, &vec![0; degrees.len()]);
        Ok(Self::run(ring, degrees, ord, gens, &[], None, true)?.basis)
    }

    /// Same as [`GroebnerBasis::compute`] with an explicit module term order.
    pub fn compute_with_order(
        ring: &Arc<PolyRing>,
        degrees: &[Degree],
        gens: &[FreeModuleElement],
        order: TermOrder,
        bound: Option<Degree>,
    ) -> Result<Self> {
        Ok(Self::run(ring, degrees, order, gens, &[], bound, true)?.basis)
    }

    /// Reduced Gröbner basis of a homogeneous ideal.
    pub fn ideal(ring: &Arc<PolyRing>, gens: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        let gens: Vec<FreeModuleElement> = gens
            .iter()
            .map(|f| {
                if !crate::poly::same_ring(f.ring(), ring) {
                    return Err(Error::Algebra(crate::error::AlgebraError::AmbientMismatch));
                }
                if !f.is_homogeneous() {
                    return Err(Error::Inhomogeneous(f.to_string()));
                }
                Ok(FreeModuleElement::from_poly_at(f, 0))
            })
            .collect::<Result<_>>()?;
        let ord = TermOrder::for_ideal(ring, order);
        Ok(Self::run(ring, &[Degree::from_integer(0)], ord, &gens, &[], None, true)?.basis)
    }

    /// Wraps elements that already form a Gröbner basis under `order`
    /// (checked with the Buchberger criterion). Useful for non-reduced bases.
    pub fn from_elements(
        ring: &Arc<PolyRing>,
        degrees: &[Degree],
        elems: &[FreeModuleElement],
        order: TermOrder,
    ) -> Result<Self> {
        for v in elems {
            check_homogeneous(ring, degrees, v)?;
        }
        let grading = Arc::new(Grading::new(ring, degrees));
        let order = Arc::new(order);
        let vecs = elems
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| to_vector(&order, v))
            .collect();
        let gb = GroebnerBasis {
            ring: ring.clone(),
            degrees: degrees.to_vec(),
            engine: Engine::from_basis(ring.field(), order, grading, vecs),
            reduced: false,
        };
        if !gb.satisfies_buchberger_criterion() {
            return Err(Error::Precondition(
                "elements do not form a Gröbner basis".into(),
            ));
        }
        Ok(gb)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn order(&self) -> &TermOrder {
        &self.engine.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.engine.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.basis.is_empty()
    }

    pub(crate) fn engine(&self) -> &Engine {
        &self.engine
    }

    pub(crate) fn vectors(&self) -> &[Vec<Term>] {
        &self.engine.basis
    }

    /// The basis elements, in canonical storage order.
    pub fn generators(&self) -> Vec<FreeModuleElement> {
        let p = self.ring.characteristic();
        self.engine
            .basis
            .iter()
            .map(|v| FreeModuleElement::from_terms(p, v.clone()))
            .collect()
    }

    /// For rank one: the basis as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators()
            .iter()
            .map(|v| v.component(&self.ring, 0))
            .collect()
    }

    /// Lead terms, in basis order.
    pub fn lead_terms(&self) -> Vec<Term> {
        self.engine.basis.iter().map(|v| v[0].clone()).collect()
    }

    /// Degree of each basis element.
    pub fn element_degrees(&self) -> Vec<Degree> {
        self.engine
            .basis
            .iter()
            .map(|v| self.engine.grading.to_degree(self.engine.degree_of(v)))
            .collect()
    }

    pub fn normal_form(&self, v: &FreeModuleElement) -> FreeModuleElement {
        let r = self.engine.full_reduce(to_vector(&self.engine.order, v));
        FreeModuleElement::from_terms(self.ring.characteristic(), r)
    }

    pub fn contains(&self, v: &FreeModuleElement) -> bool {
        self.engine
            .top_reduce(to_vector(&self.engine.order, v))
            .is_empty()
    }

    /// Rank-one normal form.
    pub fn reduce_poly(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() || self.is_empty() {
            return f.clone();
        }
        let v = FreeModuleElement::from_poly_at(f, 0);
        self.normal_form(&v).component(&self.ring, 0)
    }

    /// True if a lead term divides the term `x^m e_pos`.
    pub fn lead_divides(&self, pos: u32, m: &crate::monomial::Monomial) -> bool {
        self.engine
            .basis
            .iter()
            .any(|v| v[0].pos == pos && v[0].mono.divides(m))
    }

    /// Checks that every S-pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        syzygy::spair_reductions(self).iter().all(|(_, r)| r.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring2(vars: &[(&str, i64)]) -> Arc<PolyRing> {
        PolyRing::with_int_weights(PrimeField::new(2).unwrap(), vars).unwrap()
    }

    fn x(r: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    #[test]
    fn hand_computed_basis() {
        let r = ring2(&[("x", 1), ("y", 1)]);
        let (a, b) = (x(&r, 0), x(&r, 1));
        let f = &(&a * &a) + &(&b * &b);
        let g = &a * &b;
        let gb = GroebnerBasis::ideal(&r, &[f.clone(), g.clone()], MonomialOrder::DegRevLex).unwrap();
        let polys: Vec<String> = gb.polynomials().iter().map(|p| p.to_string()).collect();
        assert_eq!(polys, vec!["x^2 + y^2", "x*y", "y^3"]);
        assert!(gb.is_reduced());
        assert!(gb.satisfies_buchberger_criterion());
        let x3 = a.pow(3);
        assert!(gb.reduce_poly(&x3).is_zero());
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring2(&[("x", 1), ("y", 1)]);
        let gens = [x(&r, 0).pow(2), x(&r, 1).pow(3)];
        let gb = GroebnerBasis::ideal(&r, &gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.polynomials(), gens.to_vec());
    }

    #[test]
    fn empty_and_trivial_reductions() {
        let r = ring2(&[("x", 1), ("y", 1)]);
        let gb = GroebnerBasis::ideal(&r, &[], MonomialOrder::DegRevLex).unwrap();
        assert!(gb.is_empty());
        let gx = GroebnerBasis::ideal(&r, &[x(&r, 0)], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gx.reduce_poly(&x(&r, 1)), x(&r, 1));
        assert!(gx.reduce_poly(&Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let r = ring2(&[("x", 1)]);
        let f = &x(&r, 0) + &x(&r, 0).pow(2);
        assert!(matches!(
            GroebnerBasis::ideal(&r, &[f], MonomialOrder::DegRevLex),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring2(&[("x", 1), ("y", 1)]);
        let gb = GroebnerBasis::ideal(&r, &[x(&r, 0), x(&r, 1)], MonomialOrder::DegRevLex).unwrap();
        let syz = syzygy_basis(&gb);
        assert_eq!(syz.len(), 1);
        let comps = syz[0].components(&r, 2);
        // basis is {x, y}: the syzygy is y e_x + x e_y
        assert_eq!(comps[0], x(&r, 1));
        assert_eq!(comps[1], x(&r, 0));
        assert!(syzygy_basis(&GroebnerBasis::ideal(&r, &[x(&r, 0).pow(2)], MonomialOrder::DegRevLex).unwrap()).is_empty());
    }

    #[test]
    fn syzygy_of_non_reduced_basis() {
        let r = ring2(&[("x", 1)]);
        let d = [Degree::from_integer(0)];
        let elems = [
            FreeModuleElement::from_poly_at(&x(&r, 0), 0),
            FreeModuleElement::from_poly_at(&x(&r, 0).pow(2), 0),
        ];
        let gb = GroebnerBasis::from_elements(&r, &d, &elems, TermOrder::position_over_term(&r, &d)).unwrap();
        let syz = syzygy_basis(&gb);
        assert_eq!(syz.len(), 1);
        let c = syz[0].components(&r, 2);
        assert_eq!(c[0], x(&r, 0));
        assert_eq!(c[1], Polynomial::constant(&r, 1));
    }

    #[test]
    fn annihilator_over_dual_numbers() {
        let r = ring2(&[("x", 1)]);
        let d0 = [Degree::from_integer(0)];
        let d1 = [Degree::from_integer(1)];
        let modulo = GroebnerBasis::compute(
            &r,
            &d0,
            &[FreeModuleElement::from_poly_at(&x(&r, 0).pow(2), 0)],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let col = FreeModuleElement::from_poly_at(&x(&r, 0), 0);
        let k = kernel_of_module_map(&r, &[col], &d1, &d0, &modulo).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].component(&r, 0), x(&r, 0));

        // identity and zero maps
        let empty = GroebnerBasis::compute(&r, &d0, &[], MonomialOrder::DegRevLex).unwrap();
        let id = FreeModuleElement::basis(&r, 0);
        assert!(kernel_of_module_map(&r, &[id], &d0, &d0, &empty).unwrap().is_empty());
        let k0 = kernel_of_module_map(&r, &[FreeModuleElement::zero()], &d0, &d0, &empty).unwrap();
        assert_eq!(k0, vec![FreeModuleElement::basis(&r, 0)]);
    }

    #[test]
    fn elimination_examples() {
        let r = ring2(&[("u", 2), ("v", 1)]);
        let (u, v) = (x(&r, 0), x(&r, 1));
        let keep = [true, false];
        let g1 = GroebnerBasis::ideal(&r, &[&u - &v.pow(2)], MonomialOrder::DegRevLex).unwrap();
        assert!(eliminate(&g1, &keep).unwrap().is_empty());
        let g2 = GroebnerBasis::ideal(&r, &[&u - &v.pow(2), v.pow(3)], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(eliminate(&g2, &keep).unwrap().polynomials(), vec![u.pow(2)]);
        let all = eliminate(&g2, &[true, true]).unwrap();
        assert_eq!(all.polynomials(), g2.polynomials());
    }
}
