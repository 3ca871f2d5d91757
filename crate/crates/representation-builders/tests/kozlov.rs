use std::sync::Arc;

use cocycle_engine::{Cocycle, Interaction, ZeroCocycle};
use lattice_core::{Asserted, Pattern, SftSpace, Shape, Site};
use representation_builders::*;

const BUDGET: u64 = 10_000_000;

fn golden_mean() -> SftSpace {
    SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![Pattern::word(0, &[1, 1])])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

fn full_shift() -> SftSpace {
    SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

fn nearest_neighbour(h: f64, j: f64) -> Interaction {
    let mut phi = Interaction::shift_invariant();
    phi.set(&Pattern::word(0, &[1]), h);
    phi.set(&Pattern::word(0, &[0, 0]), j);
    phi
}

/// Pair couplings `c 2^{-j}` between ones at distance `j ≤ range`, plus a field.
fn long_range(c: f64, range: i64) -> Interaction {
    let mut phi = Interaction::shift_invariant();
    phi.set(&Pattern::word(0, &[1]), 0.3);
    for j in 1..=range {
        let p = Pattern::from_pairs([(Site::d1(0), 1), (Site::d1(j), 1)]);
        phi.set(&p, c * 0.5f64.powi(j as i32));
    }
    phi.with_tail_bound(c * 0.5f64.powi(range as i32))
}

#[test]
fn zero_cocycle_gives_zero_interaction() {
    let ws = WindowedSpace::interval(&golden_mean(), -4, 4, 0, BUDGET).unwrap();
    let out = kozlov_partial(&ws, &ZeroCocycle, &Shape::empty(), &Shape::interval(-1, 1)).unwrap();
    assert!(out.interaction.is_zero());
    assert_eq!(out.certificate.max_error, 0.0);
}

#[test]
fn field_on_full_shift_is_reproduced() {
    let sft = full_shift();
    let ws = WindowedSpace::interval(&sft, -4, 4, 0, BUDGET).unwrap();
    let mut field = Interaction::shift_invariant();
    field.set(&Pattern::word(0, &[1]), 1.5);
    let b = Shape::interval(-2, 2);
    let out = kozlov_partial(&ws, &field, &Shape::empty(), &b).unwrap();
    assert!(out.certificate.max_error <= 1e-10);
    assert_eq!(out.certificate.pairs, 16 * 31 * 16);
    assert_eq!(out.shape, b);
    // Every group links the same 32 patterns on b, so they form a single class.
    assert_eq!(out.classes, 1);
}

#[test]
fn partial_extension_rejects_nonvanishing_cocycle() {
    let ws = WindowedSpace::interval(&golden_mean(), -4, 4, 0, BUDGET).unwrap();
    let psi = nearest_neighbour(0.7, -0.4);
    let err = kozlov_partial(&ws, &psi, &Shape::singleton(Site::ORIGIN), &Shape::interval(-1, 1)).unwrap_err();
    assert!(matches!(err, BuildError::Precondition(_)));
}

#[test]
fn memory_set_must_fit_in_window() {
    let ws = WindowedSpace::interval(&golden_mean(), -2, 2, 0, BUDGET).unwrap();
    let psi = nearest_neighbour(0.7, -0.4);
    assert!(kozlov_partial(&ws, &psi, &Shape::empty(), &Shape::interval(-2, 2)).is_err());
}

#[test]
fn golden_mean_chain_is_exact() {
    let ws = WindowedSpace::interval(&golden_mean(), -8, 8, 0, BUDGET).unwrap();
    let psi: Arc<dyn Cocycle> = Arc::new(nearest_neighbour(0.7, -0.4));
    let chain = [Shape::interval(-1, 1), Shape::interval(-2, 2), Shape::interval(-3, 3)];
    let out = kozlov_chain(&ws, psi, &chain).unwrap();
    assert!(out.certificate.max_error <= 1e-10, "{:?}", out.certificate);
    assert!(out.certificate.pairs > 0 && out.certificate.pairs <= 100_000);
    assert!(out.steps.iter().all(|s| s.support_ok && s.max_error <= 1e-10));
    assert_eq!(out.certificate.exact_on, "T_{-3,-2,-1,0,1,2,3}");
    // Later steps put nothing on sets meeting earlier links of the chain.
    for (k, step) in out.steps.iter().enumerate().skip(1) {
        let earlier = &chain[k - 1];
        assert!(step.shape.iter().all(|c| !earlier.contains(Site::from_coords(c).unwrap())));
    }
}

#[test]
fn longer_chain_stays_exact() {
    let ws = WindowedSpace::interval(&golden_mean(), -7, 7, 0, BUDGET).unwrap();
    let psi: Arc<dyn Cocycle> = Arc::new(nearest_neighbour(-1.2, 0.25));
    let chain: Vec<Shape> = (0..=3).map(|r| Shape::interval(-r, r)).collect();
    let out = kozlov_chain(&ws, psi, &chain).unwrap();
    assert!(out.certificate.max_error <= 1e-10);
    assert_eq!(out.steps.len(), 4);
}

#[test]
fn approximate_extension_certifies_bounds() {
    let ws = WindowedSpace::interval(&full_shift(), -6, 6, 0, BUDGET).unwrap();
    let psi: Arc<dyn Cocycle> = Arc::new(long_range(0.05, 10));
    let out = kozlov_approx(&ws, psi, &Shape::empty(), &Shape::interval(-1, 1), 0.5, 0.1).unwrap();
    let r = &out.report;
    assert!(r.holds(), "{r:?}");
    assert!(r.certificate.max_error < 0.1);
    assert!(r.radius_two >= r.radius_one);
}

#[test]
fn approximate_extension_needs_room() {
    let ws = WindowedSpace::interval(&full_shift(), -3, 3, 0, BUDGET).unwrap();
    let psi: Arc<dyn Cocycle> = Arc::new(long_range(0.05, 10));
    let err = kozlov_approx(&ws, psi, &Shape::empty(), &Shape::interval(-1, 1), 0.5, 1e-4).unwrap_err();
    assert!(matches!(err, BuildError::Radius(_)));
}

#[test]
fn norm_summable_loop() {
    let ws = WindowedSpace::interval(&full_shift(), -6, 6, 0, BUDGET).unwrap();
    let psi: Arc<dyn Cocycle> = Arc::new(long_range(0.05, 10));
    let chain = [Shape::interval(0, 0), Shape::interval(-1, 1)];
    let eps = epsilon_schedule(0.8, 2);
    let out = kozlov_norm_summable(&ws, psi, &chain, &eps).unwrap();
    assert_eq!(out.steps.len(), 2);
    assert!(out.steps.iter().all(|s| s.holds()), "{:?}", out.steps);
    assert!(out.certificate.max_error < eps[2]);
    assert!((out.tail_bound - 3.0 * eps[1]).abs() < 1e-12);
}

#[test]
fn epsilon_schedule_halves() {
    assert_eq!(epsilon_schedule(1.0, 3), vec![1.0, 0.5, 0.25, 0.125]);
}
