use cocycle_engine::{eval_configs, Cocycle};
use lattice_core::{AsymptoticPair, Configuration, Pattern, Shape, Site, View};
use model_zoo::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn builtin_spaces_parse() {
    let hc = builtin_space("hardcore(1)").unwrap();
    assert_eq!(hc.forbidden(), &[Pattern::word(0, &[1, 1])]);
    assert_eq!(hc.asserted.safe_symbol, Some(0));
    let c42 = builtin_space("coloring(4, 2)").unwrap();
    assert!(!c42.asserted.ssf && !c42.asserted.pivot);
    assert_eq!(c42.forbidden().len(), 8);
    let c52 = builtin_space("coloring(5,2)").unwrap();
    assert!(c52.asserted.ssf && !c52.asserted.pivot);
    let c62 = builtin_space("coloring(6,2)").unwrap();
    assert!(c62.asserted.ssf && c62.asserted.pivot);
    assert!(builtin_space("coloring(3,2)").unwrap().asserted.pivot);
    assert!(builtin_space("full(2,1)").unwrap().forbidden().is_empty());
    let s = builtin_space("sunny(1)").unwrap();
    assert_eq!(s.at_most_one(), Some(1));
    assert!(!s.asserted.ssf && !s.asserted.pivot);
    for bad in ["hardcore", "hardcore(3)", "coloring(3)", "ising(1)", "full(2,1,1)"] {
        assert!(builtin_space(bad).is_err(), "{bad}");
    }
    assert!(matches!(builtin_space("potts(3,2)"), Err(ZooError::UnknownSpace(_))));
}

fn diagonal_stripes() -> Configuration {
    Configuration::periodic_fn(2, [3, 3], |s| (s.x + s.y).rem_euclid(3) as u8)
}

#[test]
fn stripes_lift_to_a_ramp() {
    let x = diagonal_stripes();
    let region = Shape::ball(3, 2);
    let anchor = Site::new(-3, -3);
    let lift = lift_heights(&x, &region, anchor).unwrap();
    for s in region.iter() {
        assert_eq!(lift.get(s).unwrap() - lift.anchor_value, (s.x + 3) + (s.y + 3));
    }
    let shifted = lift_view(&x, &region, anchor, lift.anchor_value + 3).unwrap();
    assert!(region.iter().all(|s| shifted[&s] == lift.heights[&s] + 3));
}

#[test]
fn lift_rejects_bad_input() {
    let bad = diagonal_stripes().with(Site::new(0, 0), 1).with(Site::new(1, 0), 1);
    assert!(lift_heights(&bad, &Shape::ball(2, 2), Site::new(-2, -2)).is_err());
    let x = diagonal_stripes();
    assert!(matches!(lift_heights(&x, &Shape::ball(1, 2), Site::new(5, 5)), Err(ZooError::Disconnected)));
    let split = Shape::new([Site::new(0, 0), Site::new(3, 0)]);
    assert!(matches!(lift_heights(&x, &split, Site::ORIGIN), Err(ZooError::Disconnected)));
}

#[test]
fn lift_is_independent_of_the_path() {
    // Anchoring at the opposite corner with the height found there gives the same function.
    let x = random_coloring(&mut ChaCha8Rng::seed_from_u64(1), 60);
    let region = Shape::ball(4, 2);
    let a = lift_heights(&x, &region, Site::new(-4, -4)).unwrap();
    let far = Site::new(4, 4);
    let b = lift_view(&x, &region, far, a.heights[&far]).unwrap();
    assert_eq!(a.heights, b);
}

/// Random admissible single-site changes on the parity background inside `[-4, 4]²`.
fn random_coloring(rng: &mut ChaCha8Rng, moves: usize) -> Configuration {
    let parity = Configuration::periodic_fn(2, [2, 2], |s| (s.x + s.y).rem_euclid(2) as u8);
    scramble(parity, rng, moves)
}

fn scramble(mut x: Configuration, rng: &mut ChaCha8Rng, moves: usize) -> Configuration {
    let sft = coloring(3, 2).unwrap();
    for _ in 0..moves {
        let s = Site::new(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let b = rng.gen_range(0..3u8);
        let y = x.with(s, b);
        if sft.config_admissible_at(&y, s) {
            x = y;
        }
    }
    x
}

#[test]
fn height_cocycle_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let psi = HeightCocycle;
    for _ in 0..200 {
        let x = random_coloring(&mut rng, 80);
        let y = scramble(x.clone(), &mut rng, 40);
        let z = scramble(y.clone(), &mut rng, 40);
        let xy = eval_configs(&psi, &x, &y).unwrap();
        let yz = eval_configs(&psi, &y, &z).unwrap();
        let xz = eval_configs(&psi, &x, &z).unwrap();
        assert_eq!(xy + yz, xz);
        assert_eq!(eval_configs(&psi, &y, &x).unwrap(), -xy);
        assert_eq!(eval_configs(&psi, &x, &x).unwrap(), 0.0);
        let t = Site::new(rng.gen_range(-9..9), rng.gen_range(-9..9));
        assert_eq!(eval_configs(&psi, &x.shift(t), &y.shift(t)).unwrap(), xy);
        // Only the colors near the disagreement matter.
        let pair = AsymptoticPair::new(x.clone(), y.clone()).unwrap();
        if let Some(m) = psi.memory_set(pair.disagreement()) {
            assert!(pair.disagreement().is_subset(&m));
        }
    }
}

#[test]
fn single_flip_changes_height_by_two() {
    let parity = Configuration::periodic_fn(2, [2, 2], |s| (s.x + s.y).rem_euclid(2) as u8);
    // The neighbours of the origin all sit at height 1, so the origin moves from 0 up to 2.
    let y = parity.with(Site::ORIGIN, 2);
    let v = height_cocycle(&AsymptoticPair::new(parity, y).unwrap()).unwrap();
    assert_eq!(v, -2);
}

#[test]
fn diamond_pairs_match_lattice_counts() {
    for i in 1..=15 {
        let d = diamond_pair(i).unwrap();
        let psi = height_cocycle(&d.pair).unwrap();
        assert_eq!(psi, pyramid_sum(i), "i = {i}");
        assert_eq!(psi as u64 + l1_ball_count(i, 2), l1_ball_count(i, 3));
        assert!(d.pair.disagreement().is_subset(&Shape::l1_ball(i, 2)));
    }
    assert_eq!(l1_ball_count(1, 3), 7);
    assert_eq!(l1_ball_count(5, 2), 61);
    assert_eq!(l1_ball_count(15, 3), 4991);
}

#[test]
fn diamond_disagreement_skips_multiples_of_three() {
    let d = diamond_pair(1).unwrap();
    assert_eq!(d.pair.disagreement(), &Shape::singleton(Site::ORIGIN));
    let d = diamond_pair(4).unwrap();
    let expected = Shape::l1_ball(4, 2).filter(|s| (4 - s.x.abs() - s.y.abs()) % 3 != 0);
    assert_eq!(d.pair.disagreement(), &expected);
}

#[test]
fn diamond_ratio_grows() {
    let rows = height_table(15).unwrap();
    assert!(rows.windows(2).skip(1).all(|w| w[1].ratio > w[0].ratio));
    assert!(rows[14].ratio / rows[4].ratio >= 2.5);
    assert!(diamond_pair(0).is_err());
}

#[test]
fn rigid_colorings() {
    for q in [4, 5] {
        let r = rigid_coloring_witness(q, 3).unwrap();
        assert_eq!(r.single_site_pivots, 0);
        assert!(r.swap_admissible && r.holds());
        let (x, _) = rigid_coloring(q).unwrap();
        assert_eq!(r.swap_symbols, [x.at(Site::new(1, 0)), x.at(Site::ORIGIN)]);
    }
    assert!(rigid_coloring_witness(3, 3).is_err());
}
