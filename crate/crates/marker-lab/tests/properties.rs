use cocycle_engine::eval_pair;
use lattice_core::{AsymptoticPair, Configuration, Pattern, Site};
use marker_lab::*;
use proptest::prelude::*;

fn data(n: usize) -> MarkerData {
    search_markers(&MarkerParams::new(2, n, 0.2, 11), 10_000, DEFAULT_SHAPE_BUDGET).unwrap()
}

fn config(start: i64, w: &[u8]) -> Configuration {
    Configuration::constant(1, 0).with_pattern(&Pattern::word(start, w))
}

fn bits(len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, len)
}

/// `u` planted at `at` inside a word of `len` random bits, so that `Φ^(k)` is nonzero somewhere.
fn with_planted(mut w: Vec<u8>, u: &Word, at: usize) -> Vec<u8> {
    for (t, b) in u.symbols().into_iter().enumerate() {
        if at + t < w.len() {
            w[at + t] = b;
        }
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_count_is_a_cocycle(a in bits(12), b in bits(12), c in bits(12), w in bits(3)) {
        let (x, y, z) = (config(0, &a), config(0, &b), config(0, &c));
        let w = Pattern::word(0, &w);
        let d = |p: &Configuration, q: &Configuration| {
            delta_count(&w, None, &AsymptoticPair::new(p.clone(), q.clone()).unwrap())
        };
        prop_assert_eq!(d(&x, &y) + d(&y, &z), d(&x, &z));
    }

    #[test]
    fn prefix_sums_match_brute_force(seq in prop::collection::vec(-1i64..=1, 0..40)) {
        let mut brute = 0i64;
        for i in 0..seq.len() {
            for j in i..=seq.len() {
                brute = brute.max(seq[i..j].iter().sum::<i64>().abs());
            }
        }
        prop_assert_eq!(interval_extreme(&seq), brute);
    }

    #[test]
    fn psi_is_shift_invariant(a in bits(40), b in bits(40), at in 0usize..20, shift in -50i64..50) {
        let d = data(16);
        let (x, y) = (config(0, &with_planted(a, &d.u, at)), config(0, &with_planted(b, &d.v, at)));
        let pair = AsymptoticPair::new(x, y).unwrap();
        prop_assert_eq!(psi_k(&d, &pair).unwrap(), psi_k(&d, &pair.shift(Site::d1(shift))).unwrap());
    }

    #[test]
    fn psi_matches_site_indexed_interaction(a in bits(24), b in bits(24), at in 0usize..8) {
        let d = data(16);
        let (x, y) = (config(0, &with_planted(a, &d.u, at)), config(0, &with_planted(b.clone(), &d.v, at)));
        let pair = AsymptoticPair::new(x, y).unwrap();
        // Windows [j, j+15] meeting [0, 23].
        let phi = marker_interaction_site_indexed(&d, -15, 23, 1 << 16).unwrap();
        prop_assert_eq!(eval_pair(&phi, &pair).unwrap(), psi_k(&d, &pair).unwrap() as f64);
        let shift_invariant = marker_interaction(&d, 1 << 16).unwrap();
        prop_assert_eq!(eval_pair(&shift_invariant, &pair).unwrap(), psi_k(&d, &pair).unwrap() as f64);
    }

    #[test]
    fn verification_is_monotone(n in 8usize..40, seed in 0u64..1000, eps in 0.05f64..0.5, de in 0.0f64..0.5, dd in 0.0f64..0.4) {
        let params = MarkerParams { delta: 0.5, ..MarkerParams::new(2, n, eps, seed) };
        let (u, v) = marker_lab::search::candidate(&params, 0);
        let base = verify_markers(&params, &u, &v, DEFAULT_SHAPE_BUDGET);
        let looser = MarkerParams { epsilon: eps + de, delta: 0.5 + dd, ..params.clone() };
        let after = verify_markers(&looser, &u, &v, DEFAULT_SHAPE_BUDGET);
        prop_assert!(!base.condition_a || after.condition_a);
        prop_assert!(!base.condition_b || after.condition_b);
    }
}
