use std::sync::Arc;

use cocycle_engine::{norm_sullivan, Cocycle, Interaction, SullivanMethod, ZeroCocycle};
use lattice_core::{Asserted, Configuration, Pattern, SftSpace, Shape, Site, View};
use representation_builders::*;

fn golden_mean() -> SftSpace {
    SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![Pattern::word(0, &[1, 1])])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

fn nearest_neighbour(h: f64, j: f64) -> Interaction {
    let mut phi = Interaction::shift_invariant();
    phi.set(&Pattern::word(0, &[1]), h);
    phi.set(&Pattern::word(0, &[0, 0]), j);
    phi
}

/// No two horizontally or vertically adjacent ones; safe symbol 0.
fn hard_core_2d() -> SftSpace {
    let h = Pattern::from_pairs([(Site::new(0, 0), 1), (Site::new(1, 0), 1)]);
    let v = Pattern::from_pairs([(Site::new(0, 0), 1), (Site::new(0, 1), 1)]);
    SftSpace::new(2, SftSpace::numeric_alphabet(2), vec![h, v])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

/// `a` may not be followed by `a` (proper 3-colorings of Z); no safe symbol.
fn three_colorings() -> SftSpace {
    let forbidden = (0..3).map(|a| Pattern::word(0, &[a, a])).collect();
    SftSpace::new(1, SftSpace::numeric_alphabet(3), forbidden)
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: None, pivot: false })
}

#[test]
fn partition_is_separated_and_covers() {
    let k = Shape::interval(-1, 1);
    let f = Shape::interval(-10, 10).difference(&Shape::interval(-4, 4));
    let classes = separated_partition(&f, &k).unwrap();
    assert!(classes.len() <= 9);
    let mut all = Shape::empty();
    for c in &classes {
        assert!(is_separated(c, &k));
        assert!(!c.meets(&all));
        all = all.union(c);
    }
    assert_eq!(all, f);
}

#[test]
fn trivial_k_gives_one_class() {
    let f = Shape::interval(0, 6);
    let classes = separated_partition(&f, &Shape::singleton(Site::ORIGIN)).unwrap();
    assert_eq!(classes, vec![f]);
}

#[test]
fn partition_rejects_asymmetric_k() {
    assert!(separated_partition(&Shape::interval(0, 3), &Shape::interval(0, 1)).is_err());
}

#[test]
fn partition_in_two_dimensions() {
    let k = Shape::ball(1, 2);
    let f = Shape::ball(6, 2).difference(&Shape::ball(3, 2));
    let classes = separated_partition(&f, &k).unwrap();
    assert!(classes.len() <= 25);
    let total: usize = classes.iter().map(Shape::len).sum();
    assert_eq!(total, f.len());
    assert!(classes.iter().all(|c| is_separated(c, &k)));
}

#[test]
fn fill_on_full_shift_uses_least_symbol() {
    let sft = SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true });
    let ctx = FillContext::new(&sft, Configuration::constant(1, 1)).unwrap();
    assert_eq!(ctx.margin(), 0);
    let x = Configuration::constant(1, 1).with_pattern(&Pattern::word(-2, &[0, 1, 0, 1, 0]));
    let z = build_fill(&ctx, &x, 2).unwrap();
    assert_eq!(z, x);
}

#[test]
fn fill_on_golden_mean_is_admissible() {
    let sft = golden_mean();
    let anchor = Configuration::periodic(1, [2, 1], vec![1, 0]).unwrap();
    let ctx = FillContext::new(&sft, anchor.clone()).unwrap();
    assert_eq!((ctx.fill_radius(), ctx.margin()), (1, 2));
    let x = anchor.with_pattern(&Pattern::word(-4, &[1, 0, 0, 1, 0, 1, 0, 0, 1]));
    let z = build_fill(&ctx, &x, 4).unwrap();
    for s in -12..=12 {
        assert!(sft.config_admissible_at(&z, Site::d1(s)));
    }
    for s in -4..=4 {
        assert_eq!(z.at(Site::d1(s)), x.at(Site::d1(s)));
    }
    for s in [-7, 7, 9, -10] {
        assert_eq!(z.at(Site::d1(s)), anchor.at(Site::d1(s)));
    }
}

#[test]
fn fill_needs_large_enough_box() {
    let ctx = FillContext::new(&golden_mean(), Configuration::constant(1, 0)).unwrap();
    assert!(matches!(build_fill(&ctx, &Configuration::constant(1, 0), 2), Err(BuildError::Parameter(_))));
}

#[test]
fn fill_context_checks_anchor_and_assertion() {
    let bad = Configuration::constant(1, 1);
    assert!(FillContext::new(&golden_mean(), bad).is_err());
    let mut unasserted = golden_mean();
    unasserted.asserted.ssf = false;
    assert!(FillContext::new(&unasserted, Configuration::constant(1, 0)).is_err());
}

#[test]
fn fill_is_local_in_one_dimension() {
    let anchor = Configuration::periodic(1, [3, 1], vec![0, 1, 2]).unwrap();
    let ctx = FillContext::new(&three_colorings(), anchor).unwrap();
    let report = check_fill_locality(&ctx, 6, 300, 3).unwrap();
    assert_eq!(report.violations, 0, "{report:?}");
    assert!(report.interior_changes > 0 && report.margin_changes > 0, "{report:?}");
}

#[test]
fn fill_is_local_in_two_dimensions() {
    let anchor = Configuration::periodic(2, [2, 2], vec![1, 0, 0, 1]).unwrap();
    let ctx = FillContext::new(&hard_core_2d(), anchor).unwrap();
    let report = check_fill_locality(&ctx, 3, 60, 5).unwrap();
    assert_eq!(report.violations, 0, "{report:?}");
}

#[test]
fn zero_cocycle_averages_to_zero() {
    let ctx = FillContext::new(&golden_mean(), Configuration::constant(1, 0)).unwrap();
    let phi = sullivan_interaction(&ctx, &ZeroCocycle, 5, 2, 1 << 24).unwrap();
    assert!(phi.is_zero());
}

#[test]
fn box_average_without_safe_symbol() {
    let anchor = Configuration::periodic(1, [3, 1], vec![0, 1, 2]).unwrap();
    let sft = three_colorings();
    let ctx = FillContext::new(&sft, anchor).unwrap();
    let mut psi = Interaction::shift_invariant();
    psi.set(&Pattern::word(0, &[0]), 1.0);
    let phi = sullivan_interaction(&ctx, &psi, 3, 2, 1 << 24).unwrap();
    // 3 * 2^6 proper colorings of a 7-site box.
    assert!(phi.entries().iter().map(|e| e.table.len()).sum::<usize>() <= 192);
    assert!(sullivan_interaction(&ctx, &psi, 2, 2, 1 << 24).is_err());
}

#[test]
fn nearest_neighbour_averages_are_exact_on_golden_mean() {
    let sft = golden_mean();
    let ctx = FillContext::new(&sft, Configuration::constant(1, 0)).unwrap();
    let psi: Arc<dyn Cocycle> = Arc::new(nearest_neighbour(0.7, -0.4));
    let rows = sullivan_sweep(&ctx, psi.clone(), &[4, 6, 8], &SweepBudget::default()).unwrap();
    let target = norm_sullivan(psi.as_ref(), &sft, SullivanMethod::Exact { halo: 2 }, 1 << 24).unwrap().value;
    assert!(rows.iter().all(|r| r.within_three && r.norm_sullivan_psi == target));
    // Next to a one every site holds the safe symbol, so cutting at the box edge changes nothing.
    assert!(rows.iter().all(|r| r.error < 1e-12), "{rows:?}");
}

#[test]
fn ising_on_full_shift_converges() {
    let sft = SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true });
    let ctx = FillContext::new(&sft, Configuration::constant(1, 0)).unwrap();
    let mut ising = Interaction::shift_invariant();
    ising.set(&Pattern::word(0, &[0, 0]), 1.0);
    ising.set(&Pattern::word(0, &[1, 1]), 1.0);
    let rows = sullivan_sweep(&ctx, Arc::new(ising), &[2, 4, 6], &SweepBudget::default()).unwrap();
    assert!(rows.windows(2).all(|w| w[1].error < w[0].error), "{rows:?}");
}
