//! Height functions of 3-colorings of Z² and the height-difference cocycle.

use std::collections::{BTreeMap, VecDeque};

use cocycle_engine::Cocycle;
use lattice_core::{AsymptoticPair, Configuration, Shape, Site, View};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, ZooError};
use crate::spaces::coloring;

const STEPS: [Site; 4] = [Site { x: 1, y: 0 }, Site { x: -1, y: 0 }, Site { x: 0, y: 1 }, Site { x: 0, y: -1 }];

/// Integer heights over a region, congruent to the colors mod 3 and changing by one between
/// neighbours.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightLift {
    pub base_config: Configuration,
    pub heights: BTreeMap<Site, i64>,
    pub anchor: Site,
    pub anchor_value: i64,
}

impl HeightLift {
    pub fn get(&self, s: Site) -> Option<i64> {
        self.heights.get(&s).copied()
    }
}

/// The height of a neighbour of a site at height `h` with color `c`.
fn step(h: i64, c: u8, site: Site) -> Result<i64> {
    match (c as i64 - h).rem_euclid(3) {
        1 => Ok(h + 1),
        2 => Ok(h - 1),
        _ => Err(ZooError::Inconsistent { site }),
    }
}

/// Breadth-first lift over `region` starting from `anchor` at `anchor_value`, which must be
/// congruent to the color there. Every edge of the region is checked afterwards.
pub fn lift_view(x: &dyn View, region: &Shape, anchor: Site, anchor_value: i64) -> Result<BTreeMap<Site, i64>> {
    if !region.contains(anchor) {
        return Err(ZooError::Disconnected);
    }
    if (anchor_value - x.at(anchor) as i64).rem_euclid(3) != 0 {
        return Err(ZooError::Inconsistent { site: anchor });
    }
    let mut heights = BTreeMap::from([(anchor, anchor_value)]);
    let mut queue = VecDeque::from([anchor]);
    while let Some(s) = queue.pop_front() {
        let h = heights[&s];
        for e in STEPS {
            let t = s + e;
            if region.contains(t) && !heights.contains_key(&t) {
                heights.insert(t, step(h, x.at(t), t)?);
                queue.push_back(t);
            }
        }
    }
    if heights.len() != region.len() {
        return Err(ZooError::Disconnected);
    }
    for (&s, &h) in &heights {
        for e in [STEPS[0], STEPS[2]] {
            if let Some(&g) = heights.get(&(s + e)) {
                if (g - h).abs() != 1 {
                    return Err(ZooError::Inconsistent { site: s + e });
                }
            }
        }
    }
    Ok(heights)
}

/// Lift of a 3-coloring over a connected region, with the anchor at its own color value.
pub fn lift_heights(x: &Configuration, region: &Shape, anchor: Site) -> Result<HeightLift> {
    if x.dim() != 2 {
        return Err(ZooError::Parameter("height functions are defined for colorings of Z²".into()));
    }
    let anchor_value = x.at(anchor) as i64;
    let heights = lift_view(x, region, anchor, anchor_value)?;
    Ok(HeightLift { base_config: x.clone(), heights, anchor, anchor_value })
}

/// The rectangle spanned by `b`, grown by `margin`.
fn hull(b: &Shape, margin: i64) -> Shape {
    match b.bounding_box() {
        None => Shape::empty(),
        Some((lo, hi)) => Shape::new(
            (lo.x - margin..=hi.x + margin).flat_map(|i| (lo.y - margin..=hi.y + margin).map(move |j| Site::new(i, j))),
        ),
    }
}

/// `Σ_n x̂_n - ŷ_n` for lifts agreeing at infinity.
///
/// Both sides are lifted over the rectangle around the disagreement grown by one site,
/// anchored at its least site with the same value; the lifts then agree outside the
/// disagreement, so the sum over the rectangle is the whole sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct HeightCocycle;

impl HeightCocycle {
    pub fn eval_views(x: &dyn View, y: &dyn View, diff: &Shape) -> Result<i64> {
        if diff.is_empty() {
            return Ok(0);
        }
        let region = hull(diff, 1);
        let anchor = region.min_site().expect("nonempty");
        let value = x.at(anchor) as i64;
        let hx = lift_view(x, &region, anchor, value)?;
        let hy = lift_view(y, &region, anchor, value)?;
        Ok(region.iter().map(|s| hx[&s] - hy[&s]).sum())
    }
}

impl Cocycle for HeightCocycle {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> cocycle_engine::Result<f64> {
        HeightCocycle::eval_views(x, y, diff)
            .map(|v| v as f64)
            .map_err(|e| cocycle_engine::CocycleError::Domain(e.to_string()))
    }

    fn generator_shape(&self) -> Option<Shape> {
        Some(Shape::l1_ball(1, 2))
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        Some(hull(b, 1))
    }

    fn integer_valued(&self) -> bool {
        true
    }
}

pub fn height_cocycle(pair: &AsymptoticPair) -> Result<i64> {
    HeightCocycle::eval_views(&pair.left, &pair.right, pair.disagreement())
}

#[derive(Debug, Clone)]
pub struct DiamondPair {
    pub radius: i64,
    pub pair: AsymptoticPair,
}

fn l1(s: Site) -> i64 {
    s.x.abs() + s.y.abs()
}

/// The two pyramids `x̂_n = i - ‖n‖₁`, `ŷ_n = ‖n‖₁ - i` on `B_i`, over the parity background
/// `(i - ‖n‖₁) mod 2`, reduced mod 3.
pub fn diamond_pair(i: i64) -> Result<DiamondPair> {
    if i < 1 {
        return Err(ZooError::Parameter("the radius must be at least 1".into()));
    }
    let background = Configuration::periodic_fn(2, [2, 2], |s| (i - s.x - s.y).rem_euclid(2) as u8);
    let ball = Shape::l1_ball(i, 2);
    let (mut x, mut y) = (background.clone(), background);
    for s in ball.iter() {
        x.set(s, (i - l1(s)).rem_euclid(3) as u8);
        y.set(s, (l1(s) - i).rem_euclid(3) as u8);
    }
    let sft = coloring(3, 2)?;
    let check = Shape::l1_ball(i + 2, 2);
    for side in [&x, &y] {
        if let Some(s) = check.iter().find(|&s| !sft.config_admissible_at(side, s)) {
            return Err(ZooError::Inconsistent { site: s });
        }
    }
    Ok(DiamondPair { radius: i, pair: AsymptoticPair::new(x, y)? })
}

/// `|{n ∈ Z^d : ‖n‖₁ ≤ i}|` by enumeration.
pub fn l1_ball_count(i: i64, d: usize) -> u64 {
    fn rec(budget: i64, d: usize) -> u64 {
        if d == 0 {
            return 1;
        }
        (-budget..=budget).map(|c| rec(budget - c.abs(), d - 1)).sum()
    }
    rec(i, d)
}

/// `Σ_{‖n‖₁ ≤ i} 2(i - ‖n‖₁)`, the sum of the two pyramids' differences, by enumeration.
pub fn pyramid_sum(i: i64) -> i64 {
    let mut total = 0;
    for a in -i..=i {
        for b in -i..=i {
            let m = a.abs() + b.abs();
            if m <= i {
                total += 2 * (i - m);
            }
        }
    }
    total
}

#[derive(Debug, Clone, Serialize)]
pub struct HeightRow {
    pub i: i64,
    pub psi: i64,
    pub ball_2d: u64,
    pub ball_3d: u64,
    pub ratio: f64,
    pub pyramid_sum: i64,
}

pub fn height_table(i_max: i64) -> Result<Vec<HeightRow>> {
    (1..=i_max)
        .into_par_iter()
        .map(|i| {
            let psi = height_cocycle(&diamond_pair(i)?.pair)?;
            let ball_2d = l1_ball_count(i, 2);
            Ok(HeightRow {
                i,
                psi,
                ball_2d,
                ball_3d: l1_ball_count(i, 3),
                ratio: psi as f64 / ball_2d as f64,
                pyramid_sum: pyramid_sum(i),
            })
        })
        .collect()
}
