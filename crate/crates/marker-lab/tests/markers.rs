use cocycle_engine::{eval_pair, Cocycle};
use lattice_core::{AsymptoticPair, Configuration, Pattern, Site};
use marker_lab::*;

fn certified(n: usize) -> MarkerData {
    search_markers(&MarkerParams::new(2, n, 0.2, 7), 10_000, DEFAULT_SHAPE_BUDGET).unwrap()
}

fn padded(w: &Word) -> Configuration {
    Configuration::constant(1, 0).with_pattern(&Pattern::word(0, &w.symbols()))
}

#[test]
fn equal_words_fail_separation() {
    let params = MarkerParams::new(2, 16, 0.2, 0);
    let u = Word::parse("0110100110010110").unwrap();
    let scan = condition_a(&params, &u, &u);
    assert!(!scan.ok);
    assert_eq!(scan.min_hamming, 0);
    assert!(!verify_markers(&params, &u, &u, DEFAULT_SHAPE_BUDGET).condition_a);
}

#[test]
fn constant_words_fail_counts() {
    let params = MarkerParams::new(2, 20, 0.2, 0);
    let (u, v) = (Word::zeros(20), Word::parse(&"1".repeat(20)).unwrap());
    let scan = condition_b(&params, &u, &v, false);
    assert!(!scan.ok);
    let (shape, w, count) = scan.failure.unwrap();
    assert_eq!(shape, vec![0]);
    assert_eq!(w, vec![1]);
    assert_eq!(count, 20);
}

#[test]
fn generous_parameters_succeed_at_once() {
    for n in [4usize, 9, 30] {
        let params = MarkerParams { delta: 0.9, ..MarkerParams::new(2, n, 2.0, 3) };
        let data = search_markers(&params, 1_000, DEFAULT_SHAPE_BUDGET).unwrap();
        assert!(data.certified.full());
        assert!(data.certified.attempts <= 50, "{} attempts", data.certified.attempts);
    }
}

#[test]
fn tiny_epsilon_exhausts() {
    let params = MarkerParams::new(2, 4, 0.001, 1);
    assert_eq!(
        search_markers(&params, 500, DEFAULT_SHAPE_BUDGET),
        Err(MarkerError::SearchExhausted { n: 4, attempts: 500 })
    );
}

#[test]
fn small_n_is_rejected() {
    let params = MarkerParams::new(2, 3, 0.2, 1);
    assert!(matches!(search_markers(&params, 10, DEFAULT_SHAPE_BUDGET), Err(MarkerError::InvalidParams(_))));
}

#[test]
fn search_is_reproducible() {
    let a = certified(40);
    let b = certified(40);
    assert_eq!(a, b);
    assert!(verify_markers(&a.params, &a.u, &a.v, DEFAULT_SHAPE_BUDGET).full());
}

#[test]
fn marker_potential_values() {
    let data = certified(64);
    let n = 64;
    assert_eq!(phi_word(&data, &data.u), n);
    assert_eq!(phi_word(&data, &data.v), -n);
    // 64 - 16·Ham clamps to zero once Ham ≥ 4 from both words.
    let mut far = data.u.clone();
    let mut flipped = 0;
    for i in 0..64 {
        if flipped == 8 {
            break;
        }
        if data.u.get(i) == data.v.get(i) {
            far.flip(i);
            flipped += 1;
        }
    }
    assert_eq!(phi_word(&data, &far), 0);
    let mut near = data.u.clone();
    near.flip(0);
    assert_eq!(phi_word(&data, &near), 64 - 16);
}

#[test]
fn psi_of_marker_pair_is_minus_two_n() {
    for n in [12usize, 40, 100] {
        let data = search_markers(&MarkerParams::new(2, n, 0.2, 7), 10_000, DEFAULT_SHAPE_BUDGET).unwrap();
        assert_eq!(psi_k(&data, &marker_pair(&data)).unwrap(), -2 * n as i64);
        assert_eq!(psi_k(&data, &marker_pair(&data).swap()).unwrap(), 2 * n as i64);
    }
}

#[test]
fn psi_of_trivial_pair_is_zero() {
    let data = certified(32);
    let x = padded(&data.u);
    assert_eq!(psi_k(&data, &AsymptoticPair::new(x.clone(), x).unwrap()).unwrap(), 0);
}

#[test]
fn psi_rejects_two_dimensional_pairs() {
    let data = certified(32);
    let x = Configuration::constant(2, 0);
    let pair = AsymptoticPair::new(x.clone(), x.with(Site::new(0, 0), 1)).unwrap();
    assert_eq!(psi_k(&data, &pair), Err(MarkerError::NotFinitelySupported));
}

#[test]
fn cocycle_trait_agrees_with_psi() {
    let data = certified(24);
    let c = MarkerCocycle::new(data.clone());
    let pair = marker_pair(&data);
    assert_eq!(eval_pair(&c, &pair).unwrap(), -48.0);
    assert!(c.integer_valued());
    assert_eq!(c.memory_set(&lattice_core::Shape::singleton(Site::d1(0))).unwrap().len(), 47);
}

#[test]
fn delta_count_of_single_symbol() {
    let data = certified(32);
    let pair = AsymptoticPair::new(padded(&data.u), padded(&data.v)).unwrap();
    let one = Pattern::word(0, &[1]);
    let expected = data.v.count_ones() as i64 - data.u.count_ones() as i64;
    assert_eq!(delta_count(&one, None, &pair), expected);
    let same = AsymptoticPair::new(padded(&data.u), padded(&data.u)).unwrap();
    assert_eq!(delta_count(&one, None, &same), 0);
    // A restricted interval counts only the positions it contains.
    let head: i64 = (0..8).map(|i| i64::from(data.v.get(i)) - i64::from(data.u.get(i))).sum();
    assert_eq!(delta_count(&one, Some((0, 7)), &pair), head);
}

#[test]
fn marker_json_round_trip() {
    let data = certified(48);
    let text = data.to_json();
    let back = MarkerData::from_json(&text).unwrap();
    assert_eq!(back, data);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["params", "u", "v", "certified"] {
        assert!(value.get(key).is_some());
    }
    assert!(MarkerData::from_json(&text.replace(&data.u.to_string(), "01")).is_err());
}

#[test]
fn ci1_holds_on_samples() {
    let data = certified(128);
    let report = check_ci1(&data, 20_000, 5);
    assert!(report.passed(), "{report:?}");
    assert!(!marker_lab::checks::both_positive(&data, &data.u));
}

#[test]
fn safe_interval_holds_on_samples() {
    let data = certified(128);
    let report = check_safe_interval(&data, 2_000, 5);
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.nonzero, report.sampled);
    // A tape where Φ vanishes passes vacuously.
    let zero = Tape::new(0, Word::zeros(128));
    assert_eq!(check_safe_tapes(&data, &[zero]).nonzero, 0);
}

#[test]
fn sullivan_sample_within_bound() {
    let data = certified(128);
    let report = sullivan_sample(&data, 4_000, 9);
    assert!(report.passed(), "{report:?}");
    assert!(report.max_abs > 0);
    assert!(report.max_abs <= SULLIVAN_BOUND);
}

#[test]
fn single_site_psi_matches_configuration_evaluation() {
    let data = certified(20);
    let n = 20i64;
    let x = padded(&data.u).shift(Site::d1(-3)).with(Site::d1(0), 1);
    let tape = marker_lab::marker::tape_of(&x, -n + 1, n - 1).unwrap();
    let y = x.with(Site::d1(0), 0);
    let direct = psi_k(&data, &AsymptoticPair::new(x, y).unwrap()).unwrap();
    assert_eq!(single_site_psi(&data, &tape), direct);
}

#[test]
fn report_row_for_certified_pair() {
    let data = certified(32);
    let row = report_row(&data, 3, 2_000, 1).unwrap();
    assert_eq!(row.psi, -64);
    assert!(row.psi_is_minus_two_n);
    assert!(row.dual.within_bound);
    assert_eq!(row.dual.structural_bound, 96.0);
    assert_eq!(row.sullivan_violations, 0);
}

#[test]
fn threshold_scan_records_failures() {
    let template = MarkerParams::new(2, 8, 0.2, 7);
    let (data, log) = find_threshold(&template, 8, 4, 64, 2_000, 1_000_000, DEFAULT_SHAPE_BUDGET).unwrap();
    assert!(data.certified.full());
    assert_eq!(log.last().unwrap().n, data.n());
    assert!(log.iter().rev().skip(1).all(|s| !s.found));
}
