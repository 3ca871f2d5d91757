use cocycle_engine::*;
use lattice_core::{Asserted, Configuration, Pattern, SftSpace, Shape, Site, DEFAULT_BUDGET};
use proptest::prelude::*;

fn hardcore() -> SftSpace {
    SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![Pattern::word(0, &[1, 1])])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

fn full_shift() -> SftSpace {
    SftSpace::new(1, SftSpace::numeric_alphabet(2), Vec::new())
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

/// Clear every second 1 of a run so the word is hard-core admissible.
fn repair(mut w: Vec<u8>) -> Vec<u8> {
    for i in 1..w.len() {
        if w[i] == 1 && w[i - 1] == 1 {
            w[i] = 0;
        }
    }
    w
}

/// Places `w` on `[1, len]`, leaving zeros around it.
fn config(w: &[u8]) -> Configuration {
    Configuration::constant(1, 0).with_pattern(&Pattern::word(1, w))
}

fn interaction_from(values: &[f64]) -> Interaction {
    let mut phi = Interaction::shift_invariant();
    let mut it = values.iter();
    for len in 1..=3usize {
        for code in 0..(1u32 << len) {
            let w: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
            if let Some(&v) = it.next() {
                phi.set(&Pattern::word(0, &w), v);
            }
        }
    }
    phi
}

fn interactions() -> impl Strategy<Value = Interaction> {
    prop::collection::vec(-2.0f64..2.0, 14).prop_map(|v| interaction_from(&v))
}

fn words(len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocycle_equation(phi in interactions(), a in words(8), b in words(8), c in words(8)) {
        let (x, y, z) = (config(&repair(a)), config(&repair(b)), config(&repair(c)));
        let pc = PatternCount::new(&Pattern::word(0, &[1, 0, 1]));
        let cocycles: Vec<&dyn Cocycle> = vec![&phi, &pc];
        for psi in cocycles {
            let xy = eval_configs(psi, &x, &y).unwrap();
            let yz = eval_configs(psi, &y, &z).unwrap();
            let xz = eval_configs(psi, &x, &z).unwrap();
            prop_assert!((xy + yz - xz).abs() <= 1e-10);
        }
    }

    #[test]
    fn generator_evaluation_is_path_independent(phi in interactions(), a in words(6), b in words(6)) {
        let sft = hardcore();
        let (x, y) = (config(&repair(a)), config(&repair(b)));
        let g = GeneratorCocycle::from_interaction(&sft, &phi).with_margin(1);
        let r = g.clone().with_order(lattice_core::MoveOrder::Reverse);
        let direct = eval_configs(&phi, &x, &y).unwrap();
        prop_assert!((eval_configs(&g, &x, &y).unwrap() - direct).abs() <= 1e-10);
        prop_assert!((eval_configs(&r, &x, &y).unwrap() - direct).abs() <= 1e-10);
    }

    #[test]
    fn shift_invariance(phi in interactions(), a in words(7), b in words(7), k in -20i64..20) {
        let (x, y) = (config(&repair(a)), config(&repair(b)));
        let v = eval_configs(&phi, &x, &y).unwrap();
        let w = eval_configs(&phi, &x.shift(Site::d1(k)), &y.shift(Site::d1(k))).unwrap();
        prop_assert!((v - w).abs() <= 1e-12);
        let pc = PatternCount::new(&Pattern::word(0, &[0, 1]));
        prop_assert_eq!(
            eval_configs(&pc, &x, &y).unwrap(),
            eval_configs(&pc, &x.shift(Site::d1(k)), &y.shift(Site::d1(k))).unwrap()
        );
    }

    #[test]
    fn kernels_are_probability_vectors(phi in interactions(), a in words(9)) {
        let sft = hardcore();
        let spec = GibbsSpec::new(&sft, &phi, DEFAULT_BUDGET);
        let x = config(&repair(a));
        let k = spec.kernel(&Shape::interval(3, 6), &x).unwrap();
        let total: f64 = k.support().map(|w| k.prob(w).unwrap()).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(k.support().all(|w| k.prob(w).unwrap() > 0.0));
    }

    #[test]
    fn specification_round_trip(phi in interactions(), a in words(6), b in words(6)) {
        let sft = hardcore();
        let spec = GibbsSpec::new(&sft, &phi, DEFAULT_BUDGET);
        let (x, y) = (config(&repair(a)), config(&repair(b)));
        let pair = lattice_core::AsymptoticPair::new(x, y).unwrap();
        let back = cocycle_from_spec(&spec, &pair).unwrap();
        prop_assert!((back - eval_pair(&phi, &pair).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn linear_growth(phi in interactions(), a in words(8), b in words(8)) {
        let sft = hardcore();
        let (x, y) = (config(&repair(a)), config(&repair(b)));
        let pair = lattice_core::AsymptoticPair::new(x, y).unwrap();
        let sull = norm_sullivan(&phi, &sft, SullivanMethod::Exact { halo: 1 }, DEFAULT_BUDGET).unwrap().value;
        let v = eval_pair(&phi, &pair).unwrap();
        prop_assert!(v.abs() <= 2.0 * pair.disagreement().len() as f64 * sull + 1e-9);
    }

    #[test]
    fn norm_axioms(p in interactions(), q in interactions(), c in -3.0f64..3.0) {
        let sft = full_shift();
        let ns = |phi: &Interaction| norm_ns(phi, &sft, 1, DEFAULT_BUDGET).unwrap().value;
        let vs = |phi: &Interaction| norm_vs(phi, &sft, 1, DEFAULT_BUDGET).unwrap().value;
        let sum = p.combine(1.0, &q).unwrap();
        prop_assert!(ns(&sum) <= ns(&p) + ns(&q) + 1e-9);
        prop_assert!(vs(&sum) <= vs(&p) + vs(&q) + 1e-9);
        prop_assert!((ns(&p.scaled(c)) - c.abs() * ns(&p)).abs() <= 1e-9);
        prop_assert!((vs(&p.scaled(c)) - c.abs() * vs(&p)).abs() <= 1e-9);
        prop_assert!(vs(&p) <= 2.0 * ns(&p) + 1e-9);
    }

    #[test]
    fn sullivan_operator_bounds(phi in interactions()) {
        for sft in [full_shift(), hardcore()] {
            let sull = norm_sullivan(&phi, &sft, SullivanMethod::Exact { halo: 1 }, DEFAULT_BUDGET).unwrap().value;
            let ns = norm_ns(&phi, &sft, 1, DEFAULT_BUDGET).unwrap().value;
            let vs = norm_vs(&phi, &sft, 1, DEFAULT_BUDGET).unwrap().value;
            prop_assert!(sull <= 2.0 * ns + 1e-9);
            prop_assert!(sull <= vs + 1e-9);
        }
    }
}
