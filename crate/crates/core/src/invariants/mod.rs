//! Homological detectors: growth classes, deviations, Frobenius tests of
//! regularity, complete intersection and Gorenstein maps, and inequality
//! checks on Poincaré series.

mod comp;
mod deviations;
mod frobenius;
mod gorenstein;
mod growth;
mod verdict;

pub use comp::{comp_inequality_check, tensor_with_free_complex};
pub use deviations::{deviations_from_poincare, DeviationSequence};
pub use frobenius::{
    blimp_split_check, discrete_regularity_check, eth_check, growth_of, koszul_homology_bound, kunz_test,
    radu_andre_test, theorem_main_check,
};
pub use gorenstein::{dual_module, gdim_window_check, gorenstein_fiber_test, gorenstein_theorem_check, socle};
pub use growth::{classify_growth, GrowthClass, GrowthClassification, GrowthPolicy};
pub use verdict::{Evidence, Outcome, TestVerdict, Witness};
