//! The documented examples of every detector, on the canonical maps and small
//! rings.

mod common;

use common::{ci_map, golod_map, gorenstein_map, inclusion_map, poly, quotient, GOR3};
use frobkit_core::invariants::{
    blimp_split_check, comp_inequality_check, deviations_from_poincare, discrete_regularity_check, eth_check,
    gdim_window_check, gorenstein_fiber_test, gorenstein_theorem_check, koszul_homology_bound, kunz_test,
    radu_andre_test, socle, theorem_main_check, Evidence, GrowthClass, GrowthPolicy, Outcome, TestVerdict,
};
use frobkit_core::{
    betti_and_poincare, ext_against_ring, relative_frobenius, Degree, Error, FiniteModule, PoincareTruncation, RingMap,
};

const POLICY: GrowthPolicy = GrowthPolicy {
    delta: 0.1,
    tolerance: 0.15,
};

fn values(v: &TestVerdict, name: &str) -> Vec<String> {
    v.evidence
        .iter()
        .find_map(|e| match e {
            Evidence::Values { name: n, values } if n == name => Some(values.clone()),
            _ => None,
        })
        .unwrap_or_else(|| panic!("no {name} evidence in {v}"))
}

fn numbers(v: &TestVerdict, name: &str) -> Vec<u64> {
    values(v, name).iter().map(|s| s.parse().unwrap()).collect()
}

fn growth(v: &TestVerdict, object: &str) -> (GrowthClass, Vec<u64>) {
    v.evidence
        .iter()
        .find_map(|e| match e {
            Evidence::Growth { object: o, growth } if o == object => Some((growth.class, growth.window.clone())),
            _ => None,
        })
        .unwrap_or_else(|| panic!("no growth of {object} in {v}"))
}

fn rate(c: GrowthClass) -> f64 {
    match c {
        GrowthClass::Exponential { rate } => rate,
        other => panic!("expected exponential growth, got {other}"),
    }
}

#[test]
fn kunz_examples() {
    let v = kunz_test(&quotient(2, &[("x", 1), ("y", 1)], &[]), 1).unwrap();
    assert_eq!(v.label, "REGULAR");
    assert_eq!(numbers(&v, "beta"), [4, 0]);
    for p in [2, 3] {
        let v = kunz_test(&quotient(p, &[("x", 1)], &["x^2"]), 1).unwrap();
        assert_eq!(v.label, "NOT_REGULAR");
        assert_eq!(numbers(&v, "beta")[1], 2, "p = {p}");
    }
}

#[test]
fn radu_andre_on_canonical_maps() {
    let v = radu_andre_test(&inclusion_map(), 1, 8, POLICY).unwrap();
    assert_eq!(v.label, "REGULAR_MAP");
    assert_eq!(growth(&v, "relative").1, [2, 0, 0, 0, 0, 0, 0, 0, 0]);

    let v = radu_andre_test(&ci_map(), 1, 8, POLICY).unwrap();
    assert_eq!(v.label, "CI_MAP");
    assert_eq!(growth(&v, "relative").1, [2; 9]);

    let v = radu_andre_test(&golod_map(), 1, 8, POLICY).unwrap();
    assert_eq!(v.label, "NEITHER");
    let (class, window) = growth(&v, "relative");
    assert!((rate(class) - 2.0).abs() <= 0.15);
    assert_eq!(window[..4], [3, 6, 12, 24]);
}

#[test]
fn radu_andre_is_inconclusive_without_finite_flat_dimension() {
    let r = quotient(2, &[("u", 1)], &["u^2"]);
    let s = quotient(2, &[("u", 1)], &["u"]);
    let phi = common::map(&r, &s, &["u"]);
    let v = radu_andre_test(&phi, 1, 6, POLICY).unwrap();
    assert_eq!(v.outcome, Outcome::Inconclusive);
}

#[test]
fn theorem_main_on_canonical_maps() {
    let expect = [(inclusion_map(), 0u8), (ci_map(), 1), (golod_map(), 2)];
    for (phi, rank) in expect {
        let v = theorem_main_check(&phi, 1, 8, POLICY).unwrap();
        assert_eq!(v.outcome, Outcome::Pass, "{v}");
        let (f, fw) = growth(&v, "fiber");
        let (r, _) = growth(&v, "relative");
        assert_eq!((f.rank(), r.rank()), (rank, rank));
        assert!(f.agrees_with(&r, POLICY.tolerance));
        if rank == 2 {
            // F_*S̄ ≅ k³ over the Golod fiber
            let expect: Vec<u64> = (0..9).map(|n| 3 << n).collect();
            assert_eq!(fw, expect);
        }
    }
}

#[test]
fn eth_examples() {
    let s = quotient(2, &[("x", 1)], &["x^2"]);
    let v = eth_check(&s, &FiniteModule::free(&s, vec![Degree::from_integer(0)]), 1, 8, POLICY).unwrap();
    assert!(v.is_pass());
    assert_eq!(growth(&v, "F_*M").0.rank(), 1);

    let s = quotient(2, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]);
    let v = eth_check(&s, &FiniteModule::free(&s, vec![Degree::from_integer(0)]), 1, 8, POLICY).unwrap();
    assert!(v.is_pass());
    assert!((rate(growth(&v, "F_*M").0) - 2.0).abs() <= 0.15);
    assert!((rate(growth(&v, "k").0) - 2.0).abs() <= 0.15);

    let s = quotient(2, &[("x", 1), ("y", 1)], &[]);
    let v = eth_check(&s, &FiniteModule::free(&s, vec![Degree::from_integer(0)]), 1, 6, POLICY).unwrap();
    assert!(v.is_pass());
    assert_eq!(growth(&v, "k").0, GrowthClass::Finite { pd: 2 });
}

#[test]
fn eth_rejects_the_zero_module() {
    let s = quotient(2, &[("x", 1)], &["x^2"]);
    let zero = FiniteModule::cyclic(&s, &[s.var(0), common::poly(s.ambient(), "1")]).unwrap();
    assert!(matches!(eth_check(&s, &zero, 1, 6, POLICY), Err(Error::Precondition(_))));
}

#[test]
fn blimp_examples() {
    let s = quotient(2, &[("x", 1)], &["x^3"]);
    assert_eq!(koszul_homology_bound(&s).unwrap(), 2);
    let one = FiniteModule::free(&s, vec![Degree::from_integer(0)]);
    let v = blimp_split_check(&s, &one, 2, 5).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "SPLITS"));
    assert_eq!(numbers(&v, "complex"), [1, 2, 2, 2, 2, 2]);
    assert_eq!(numbers(&v, "homology_sum"), [1, 2, 2, 2, 2, 2]);

    let s = quotient(2, &[("x", 1), ("y", 1)], &[]);
    let one = FiniteModule::free(&s, vec![Degree::from_integer(0)]);
    let v = blimp_split_check(&s, &one, 1, 5).unwrap();
    assert!(v.is_pass());
    // K^S resolves k
    assert_eq!(numbers(&v, "complex"), [1, 2, 1, 0, 0, 0]);

    let s = quotient(2, &[("x", 1)], &["x^2"]);
    let v = blimp_split_check(&s, &FiniteModule::residue_field(&s), 1, 5).unwrap();
    assert_eq!(v.label, "OUT_OF_RANGE");
    assert_eq!(numbers(&v, "complex").len(), 6);
    assert_eq!(numbers(&v, "homology_sum").len(), 6);
}

#[test]
fn discrete_examples() {
    let s = quotient(2, &[("x", 1), ("y", 1)], &[]);
    let v = discrete_regularity_check(&s, &FiniteModule::free(&s, vec![Degree::from_integer(0)]), 1, 6, POLICY).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "HOLDS"));

    let s = quotient(2, &[("x", 1)], &["x^2"]);
    for m in [FiniteModule::free(&s, vec![Degree::from_integer(0)]), FiniteModule::residue_field(&s)] {
        let v = discrete_regularity_check(&s, &m, 1, 6, POLICY).unwrap();
        assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "VACUOUS"));
    }
}

#[test]
fn socles() {
    let dims = [
        (quotient(2, &[("a", 1), ("b", 1)], &["a^2", "b^2"]), 1, "GORENSTEIN"),
        (quotient(2, &[("a", 1), ("b", 1)], &["a^2", "a*b", "b^2"]), 2, "NOT_GORENSTEIN"),
        (quotient(2, &[("a", 1), ("b", 1), ("c", 1)], &GOR3), 1, "GORENSTEIN"),
    ];
    for (s, dim, label) in dims {
        assert_eq!(socle(&s).unwrap().len(), dim, "{s}");
        assert_eq!(gorenstein_fiber_test(&s, 4).unwrap().label, label);
    }
    let s = quotient(2, &[("a", 1), ("b", 1), ("c", 1)], &GOR3);
    let soc = socle(&s).unwrap();
    assert_eq!(s.reduce(&soc[0]), s.reduce(&poly(s.ambient(), "a^2")));
}

#[test]
fn gdim_examples() {
    let a = quotient(2, &[("w", 1), ("z", 1)], &["z^2"]);
    let m = FiniteModule::cyclic(&a, &[a.var(1)]).unwrap();
    let v = gdim_window_check(&m.direct_sum(&m), 6).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "G_DIM_AT_MOST(0)"));

    let a = quotient(2, &[("a", 1), ("b", 1)], &["a^2", "a*b", "b^2"]);
    let v = gdim_window_check(&FiniteModule::residue_field(&a), 6).unwrap();
    assert_eq!(v.label, "OBSTRUCTION_AT_WINDOW");
    assert_eq!(numbers(&v, "ext_nonzero"), [1; 7]);

    let v = gdim_window_check(&FiniteModule::free(&a, vec![Degree::from_integer(0), Degree::from_integer(1)]), 6).unwrap();
    assert_eq!(v.label, "G_DIM_AT_MOST(0)");
}

#[test]
fn gorenstein_theorem_on_canonical_maps() {
    let v = gorenstein_theorem_check(&ci_map(), 1, 8).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "GORENSTEIN"));
    let v = gorenstein_theorem_check(&golod_map(), 1, 8).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "NOT_GORENSTEIN"));
    let v = gorenstein_theorem_check(&gorenstein_map(), 1, 6).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "GORENSTEIN"));
}

#[test]
fn ci_relative_module_is_totally_reflexive() {
    let rf = relative_frobenius(&ci_map(), 1).unwrap();
    let ext = ext_against_ring(rf.module(), 8).unwrap();
    assert!(!ext[0].is_zero());
    assert!(ext[1..].iter().all(FiniteModule::is_zero));
}

#[test]
fn deviation_examples() {
    let k_over = |s| {
        let (_, p) = betti_and_poincare(&FiniteModule::residue_field(&s), 8).unwrap();
        deviations_from_poincare(&p).unwrap()
    };
    let eps = k_over(quotient(2, &[("x", 1)], &["x^2"]));
    assert_eq!(eps.values()[..4], [1, 1, 0, 0]);
    assert!(eps.looks_complete_intersection());
    let eps = k_over(quotient(2, &[("x", 1)], &[]));
    assert!(eps.values()[1..].iter().all(|&e| e == 0) && eps.values()[0] == 1);
    let eps = k_over(quotient(2, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]));
    assert_eq!(eps.values()[..3], [2, 3, 2]);
    assert!(!eps.looks_complete_intersection());
    assert_eq!(eps.reconstruct(), (0..9).map(|n| 1u64 << n).collect::<Vec<_>>());
}

#[test]
fn deviations_reject_non_residue_series() {
    assert!(deviations_from_poincare(&PoincareTruncation::new(vec![2, 1, 1])).is_err());
    assert!(deviations_from_poincare(&PoincareTruncation::new(vec![1, 2, 0])).is_err());
}

#[test]
fn comp_examples() {
    let a = quotient(2, &[("x", 1)], &["x^2"]);
    let id = RingMap::identity(&a);
    let k = FiniteModule::residue_field(&a);
    let v = comp_inequality_check(&id, &k, &k, 5).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "EQUALITY"));
    assert_eq!(numbers(&v, "lhs"), [1, 2, 3, 4, 5, 6]);

    let one = FiniteModule::free(&a, vec![Degree::from_integer(0)]);
    let v = comp_inequality_check(&id, &k, &one, 5).unwrap();
    assert_eq!(v.label, "EQUALITY");
    assert_eq!(numbers(&v, "lhs"), [1; 6]);

    let big = quotient(2, &[("x", 1)], &["x^4"]);
    let psi = common::map(&big, &a, &["x"]);
    // k ⊗_B F has zero differential, so M = k is always an equality case
    let v = comp_inequality_check(&psi, &k, &k, 5).unwrap();
    assert_eq!(v.label, "EQUALITY");
    let v = comp_inequality_check(&psi, &one, &k, 5).unwrap();
    assert_eq!((v.outcome, v.label.as_str()), (Outcome::Pass, "HOLDS"));
    assert_eq!(numbers(&v, "lhs"), [1; 6]);
    assert_eq!(numbers(&v, "rhs"), [1, 2, 3, 4, 5, 6]);
}
