use lattice_core::*;
use proptest::prelude::*;

fn hardcore() -> SftSpace {
    SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![Pattern::word(0, &[1, 1])])
        .unwrap()
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true })
}

fn hardcore_config(bits: &[bool]) -> Configuration {
    let mut c = Configuration::constant(1, 0);
    let mut prev = false;
    for (i, &b) in bits.iter().enumerate() {
        let b = b && !prev;
        if b {
            c.set(Site::d1(i as i64 - 6), 1);
        }
        prev = b;
    }
    c
}

proptest! {
    #[test]
    fn join_restricts_back(a in proptest::collection::vec(0u8..3, 1..6), b in proptest::collection::vec(0u8..3, 1..6), off in 0i64..8) {
        let u = Pattern::word(0, &a);
        let v = Pattern::word(off, &b);
        if let Some(j) = u.join(&v) {
            prop_assert_eq!(j.restrict(u.shape()).unwrap(), u.clone());
            prop_assert_eq!(j.restrict(v.shape()).unwrap(), v.clone());
            prop_assert_eq!(v.join(&u).unwrap(), j);
        }
    }

    #[test]
    fn zeta_is_idempotent_and_writes_the_safe_symbol(bits in proptest::collection::vec(any::<bool>(), 12), k in -6i64..6) {
        let sft = hardcore();
        let x = hardcore_config(&bits);
        let k = Site::d1(k);
        let z = zeta(&sft, &x, k);
        prop_assert_eq!(zeta(&sft, &z, k), z.clone());
        prop_assert_eq!(z.at(k), 0);
        let diff = AsymptoticPair::new(x, z).unwrap();
        prop_assert!(diff.disagreement().is_subset(&Shape::singleton(k)));
    }

    #[test]
    fn pivot_paths_replay(a in proptest::collection::vec(any::<bool>(), 12), b in proptest::collection::vec(any::<bool>(), 12)) {
        let sft = hardcore();
        let x = hardcore_config(&a);
        let y = hardcore_config(&b);
        let window = Shape::interval(-7, 7);
        let path = pivot_path(&sft, &x, &y, &window, MoveOrder::Forward, 1 << 20).unwrap();
        let blocks: Vec<Vec<(Site, u8)>> = path.iter().map(|&m| vec![m]).collect();
        prop_assert_eq!(replay(&sft, &x, &blocks).unwrap(), y);
    }
}
