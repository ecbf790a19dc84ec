//! Commutative algebra over prime fields: weighted polynomial rings, Gröbner
//! bases of modules, graded quotient rings and ring maps, Frobenius
//! pushforwards, minimal free resolutions, and homological detectors built on
//! top of them.
//!
//! ```
//! use frobkit_core::invariants::{radu_andre_test, GrowthPolicy};
//! use frobkit_core::{Degree, GradedQuotientRing, PolyRing, Polynomial, PrimeField, RingMap};
//!
//! # fn main() -> frobkit_core::Result<()> {
//! let f2 = PrimeField::new(2)?;
//! let r_amb = PolyRing::new(f2, [("u".to_string(), Degree::from_integer(2))])?;
//! let s_amb = PolyRing::new(f2, [("v".to_string(), Degree::from_integer(1))])?;
//! let r = GradedQuotientRing::polynomial_ring(&r_amb);
//! let s = GradedQuotientRing::polynomial_ring(&s_amb);
//! let phi = RingMap::new(&r, &s, vec![Polynomial::var(&s_amb, 0).pow(2)])?;
//! let v = radu_andre_test(&phi, 1, 8, GrowthPolicy::default())?;
//! assert_eq!(v.label, "CI_MAP");
//! # Ok(())
//! # }
//! ```

pub mod betti;
pub mod complex;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod pushforward;
pub mod resolution;
pub mod ring;
pub mod ringmap;
pub mod tor_ext;

pub use betti::{betti_and_poincare, betti_of_complex, BettiTable, PoincareTruncation};
pub use complex::{koszul_complex, koszul_on_variables, FreeComplex, ModuleComplex};
pub use error::{AlgebraError, Error, Result};
pub use field::PrimeField;
pub use groebner::{FreeModuleElement, GroebnerBasis, Term, TermOrder};
pub use hilbert::{hilbert_series, HilbertSeries};
pub use module::FiniteModule;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Degree, DegreeInfo, PolyRing, Polynomial};
pub use pushforward::{
    frobenius_pushforward, frobenius_pushforward_of_module, pushforward_module, pushforward_of_module,
    relative_frobenius, Pushforward, RelativeFrobenius,
};
pub use resolution::{minimal_free_resolution, minimalize, resolve_complex};
pub use ring::GradedQuotientRing;
pub use ringmap::RingMap;
pub use tor_ext::{ext_against_ring, ext_of_resolution, tor_of_map, FlatnessVerdict, TorDim, TorWindow};
