//! The Hamming marker interaction `Φ^(k)` and its cocycle `ψ_k`.

use cocycle_engine::{Cocycle, CocycleError, Interaction};
use lattice_core::{AsymptoticPair, Configuration, Pattern, Shape, Site, View};

use crate::error::{MarkerError, Result};
use crate::params::MarkerData;
use crate::word::{Tape, Word};

/// `max{0, n - K·Ham(w, u)} - max{0, n - K·Ham(w, v)}` from the two Hamming distances.
fn clamp_difference(data: &MarkerData, hu: usize, hv: usize) -> i64 {
    let n = data.n() as i64;
    let k = data.params.k_const;
    (n - k * hu as i64).max(0) - (n - k * hv as i64).max(0)
}

/// `Φ^(k)` of a configuration whose window `[0, n-1]` is `w`.
pub fn phi_word(data: &MarkerData, w: &Word) -> i64 {
    clamp_difference(data, w.hamming(&data.u), w.hamming(&data.v))
}

/// `Φ^(k)(σ^j x)`, reading `x_{[j, j+n-1]}` from the tape.
pub fn phi_at(data: &MarkerData, x: &Tape, j: i64) -> i64 {
    clamp_difference(data, x.window_hamming(j, &data.u), x.window_hamming(j, &data.v))
}

/// `Σ_j Φ^(k)(σ^j y) - Φ^(k)(σ^j x)` for tapes that agree outside `[lo, hi]`.
pub fn psi_tapes(data: &MarkerData, x: &Tape, y: &Tape, lo: i64, hi: i64) -> i64 {
    let n = data.n() as i64;
    (lo - n + 1..=hi).map(|j| phi_at(data, y, j) - phi_at(data, x, j)).sum()
}

/// Reads `[lo, hi]` of a binary view into a tape.
pub fn tape_of(x: &dyn View, lo: i64, hi: i64) -> Result<Tape> {
    let symbols: Vec<u8> = (lo..=hi).map(|i| x.at(Site::d1(i))).collect();
    if symbols.iter().any(|&a| a > 1) {
        return Err(MarkerError::NotFinitelySupported);
    }
    Ok(Tape::new(lo, Word::from_symbols(&symbols)))
}

fn span(diff: &Shape) -> Option<(i64, i64)> {
    diff.bounding_box().map(|(a, b)| (a.x, b.x))
}

fn psi_views(data: &MarkerData, x: &dyn View, y: &dyn View, diff: &Shape) -> Result<i64> {
    let Some((lo, hi)) = span(diff) else { return Ok(0) };
    let n = data.n() as i64;
    let tx = tape_of(x, lo - n + 1, hi + n - 1)?;
    let ty = tape_of(y, lo - n + 1, hi + n - 1)?;
    Ok(psi_tapes(data, &tx, &ty, lo, hi))
}

/// `ψ_k(x, y)`, exact.
pub fn psi_k(data: &MarkerData, pair: &AsymptoticPair) -> Result<i64> {
    if pair.left.dim() != 1 {
        return Err(MarkerError::NotFinitelySupported);
    }
    psi_views(data, &pair.left, &pair.right, pair.disagreement())
}

/// `(x^(k), y^(k))`: the two words on `[0, n-1]` over the zero background.
pub fn marker_pair(data: &MarkerData) -> AsymptoticPair {
    let zero = Configuration::constant(1, 0);
    let x = zero.with_pattern(&Pattern::word(0, &data.u.symbols()));
    let y = zero.with_pattern(&Pattern::word(0, &data.v.symbols()));
    AsymptoticPair::new(x, y).expect("same background")
}

/// `ψ_k` as a [`Cocycle`] on the binary full shift.
#[derive(Debug, Clone)]
pub struct MarkerCocycle {
    data: MarkerData,
}

impl MarkerCocycle {
    pub fn new(data: MarkerData) -> Self {
        MarkerCocycle { data }
    }

    pub fn data(&self) -> &MarkerData {
        &self.data
    }
}

impl Cocycle for MarkerCocycle {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> std::result::Result<f64, CocycleError> {
        psi_views(&self.data, x, y, diff)
            .map(|v| v as f64)
            .map_err(|e| CocycleError::Domain(e.to_string()))
    }

    fn generator_shape(&self) -> Option<Shape> {
        let n = self.data.n() as i64;
        Some(Shape::interval(-n + 1, n - 1))
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        let n = self.data.n() as i64;
        Some(b.plus(&Shape::interval(-n + 1, n - 1)))
    }

    fn integer_valued(&self) -> bool {
        true
    }
}

/// All words of length `n` within Hamming distance `< radius` of `center`.
fn hamming_ball(center: &Word, radius: usize, limit: usize) -> Result<Vec<Word>> {
    let mut out = vec![center.clone()];
    let mut frontier = vec![(center.clone(), 0usize)];
    for _ in 1..radius {
        let mut next = Vec::new();
        for (w, from) in &frontier {
            for i in *from..center.len() {
                let mut f = w.clone();
                f.flip(i);
                next.push((f, i + 1));
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        if out.len() > limit {
            return Err(MarkerError::InvalidParams(format!(
                "more than {limit} words carry a nonzero marker potential; use a smaller n"
            )));
        }
        frontier = next;
    }
    Ok(out)
}

/// Words on `[0, n-1]` where `Φ^(k)` is nonzero, with their values.
pub fn marker_table(data: &MarkerData, limit: usize) -> Result<Vec<(Word, i64)>> {
    let n = data.n() as i64;
    let radius = n.div_euclid(data.params.k_const) + i64::from(n % data.params.k_const != 0);
    let mut words = hamming_ball(&data.u, radius as usize, limit)?;
    words.extend(hamming_ball(&data.v, radius as usize, limit)?);
    words.sort_by_key(|w| w.to_string());
    words.dedup();
    Ok(words
        .into_iter()
        .map(|w| {
            let phi = phi_word(data, &w);
            (w, phi)
        })
        .filter(|(_, p)| *p != 0)
        .collect())
}

/// The shift-invariant interaction with the single shape `[0, n-1]` carrying `Φ^(k)`.
/// Only feasible for small `n`: every word within Hamming distance `n/K` of `u` or `v` is
/// stored.
pub fn marker_interaction(data: &MarkerData, limit: usize) -> Result<Interaction> {
    let mut phi = Interaction::shift_invariant();
    for (w, v) in marker_table(data, limit)? {
        phi.set(&Pattern::word(0, &w.symbols()), v as f64);
    }
    Ok(phi)
}

/// The site-indexed interaction carrying the translates `Φ^(k) ∘ σ^j` on the windows
/// `[j, j+n-1]` for `j ∈ [lo, hi]`.
pub fn marker_interaction_site_indexed(data: &MarkerData, lo: i64, hi: i64, limit: usize) -> Result<Interaction> {
    let table = marker_table(data, limit)?;
    let mut phi = Interaction::site_indexed();
    for j in lo..=hi {
        for (w, v) in &table {
            phi.set(&Pattern::word(j, &w.symbols()), *v as f64);
        }
    }
    Ok(phi)
}
