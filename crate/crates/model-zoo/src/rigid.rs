//! The frozen colorings `(n + c m) mod q` of Z².

use lattice_core::{Configuration, Shape, Site, View};
use serde::Serialize;

use crate::error::{Result, ZooError};
use crate::spaces::coloring;

#[derive(Debug, Clone, Serialize)]
pub struct RigidReport {
    pub q: usize,
    /// `x_{n,m} = (n + slope·m) mod q`.
    pub slope: i64,
    pub window_radius: i64,
    /// Admissible single-site changes found at sites of the window.
    pub single_site_pivots: usize,
    pub swap: [Site; 2],
    pub swap_symbols: [u8; 2],
    pub swap_admissible: bool,
}

impl RigidReport {
    pub fn holds(&self) -> bool {
        self.single_site_pivots == 0 && self.swap_admissible
    }
}

pub fn rigid_coloring(q: usize) -> Result<(Configuration, i64)> {
    let slope = match q {
        4 => 2,
        5 => 3,
        _ => return Err(ZooError::Parameter(format!("no rigid coloring is built in for q = {q}"))),
    };
    let x = Configuration::periodic_fn(2, [q, q], |s| (s.x + slope * s.y).rem_euclid(q as i64) as u8);
    Ok((x, slope))
}

/// Counts single-site changes on `[-r, r]²` and tries exchanging the colors at the origin and
/// its right neighbour.
pub fn rigid_coloring_witness(q: usize, r: i64) -> Result<RigidReport> {
    let sft = coloring(q, 2)?;
    let (x, slope) = rigid_coloring(q)?;
    let window = Shape::ball(r, 2);
    let mut pivots = 0;
    for s in window.iter() {
        for b in 0..q as u8 {
            if b != x.at(s) && sft.config_admissible_at(&x.with(s, b), s) {
                pivots += 1;
            }
        }
    }
    let swap = [Site::ORIGIN, Site::new(1, 0)];
    let (a, b) = (x.at(swap[0]), x.at(swap[1]));
    let y = x.with(swap[0], b).with(swap[1], a);
    let swap_admissible = swap.iter().all(|&s| sft.config_admissible_at(&y, s));
    Ok(RigidReport { q, slope, window_radius: r, single_site_pivots: pivots, swap, swap_symbols: [b, a], swap_admissible })
}
