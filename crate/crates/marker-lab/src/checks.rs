//! Sampled checks of the marker interaction: the two clamped terms are never both positive,
//! nonzero windows are isolated, and single-site changes move `ψ_k` by a bounded amount.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::marker::{phi_at, psi_tapes};
use crate::params::MarkerData;
use crate::word::{Tape, Word};

/// Bound on `|ψ_k(x, y)|` for pairs differing at one site.
pub const SULLIVAN_BOUND: i64 = 544;

fn stream(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// `w` with `r` distinct random positions flipped.
fn corrupt<R: Rng>(rng: &mut R, w: &Word, r: usize) -> Word {
    let mut out = w.clone();
    for i in sample(rng, w.len(), r.min(w.len())) {
        out.flip(i);
    }
    out
}

/// Largest `r` with `n - K r > 0`, so that corrupting by at most this many keeps the term positive.
fn positive_radius(data: &MarkerData) -> usize {
    let n = data.n() as i64;
    ((n - 1) / data.params.k_const).max(0) as usize
}

/// A word drawn from one of four families, by `i mod 4`: uniform, near `u`, near `v`, or `u`
/// with a random part of its disagreement with `v` copied from `v`.
fn probe_word(data: &MarkerData, rng: &mut ChaCha8Rng, i: u64) -> Word {
    let n = data.n();
    let r = positive_radius(data);
    match i % 4 {
        0 => Word::random(rng, n),
        1 => {
            let k = rng.gen_range(0..=r);
            corrupt(rng, &data.u, k)
        }
        2 => {
            let k = rng.gen_range(0..=r);
            corrupt(rng, &data.v, k)
        }
        _ => {
            let mut w = data.u.clone();
            for j in 0..n {
                if data.u.get(j) != data.v.get(j) && rng.gen_bool(0.5) {
                    w.flip(j);
                }
            }
            w
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Ci1Report {
    pub tested: u64,
    pub both_positive: u64,
    pub example: Option<String>,
}

impl Ci1Report {
    pub fn passed(&self) -> bool {
        self.both_positive == 0
    }
}

/// Whether both `n - K·Ham(w, u)` and `n - K·Ham(w, v)` are positive.
pub fn both_positive(data: &MarkerData, w: &Word) -> bool {
    let n = data.n() as i64;
    let k = data.params.k_const;
    n - k * w.hamming(&data.u) as i64 > 0 && n - k * w.hamming(&data.v) as i64 > 0
}

/// Tests `u`, `v` and `samples` seeded probe words.
pub fn check_ci1(data: &MarkerData, samples: u64, seed: u64) -> Ci1Report {
    let fixed = [data.u.clone(), data.v.clone()];
    let bad_fixed: Vec<&Word> = fixed.iter().filter(|w| both_positive(data, w)).collect();
    let bad: Vec<Word> = (0..samples)
        .into_par_iter()
        .filter_map(|i| {
            let w = probe_word(data, &mut stream(seed, i), i);
            both_positive(data, &w).then_some(w)
        })
        .collect();
    let example = bad_fixed.first().map(|w| w.to_string()).or_else(|| bad.first().map(|w| w.to_string()));
    Ci1Report { tested: samples + 2, both_positive: (bad_fixed.len() + bad.len()) as u64, example }
}

#[derive(Debug, Clone, Serialize)]
pub struct SafeIntervalReport {
    pub sampled: u64,
    /// Samples with `Φ^(k)(z) ≠ 0`; the others pass vacuously.
    pub nonzero: u64,
    pub violations: u64,
    /// A violating tape (as written on `[start, ...]`) and shift.
    pub example: Option<(i64, String, i64)>,
}

impl SafeIntervalReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// The safe-interval half-width `floor(n / 8)`.
pub fn safe_radius(data: &MarkerData) -> i64 {
    data.n() as i64 / 8
}

/// For a configuration with `Φ^(k)(z) ≠ 0`, the first `j` with `0 < |j| ≤ n/8` and
/// `Φ^(k)(σ^j z) ≠ 0`. `None` if there is none or if `Φ^(k)(z) = 0`.
pub fn safe_interval_violation(data: &MarkerData, z: &Tape) -> Option<i64> {
    if phi_at(data, z, 0) == 0 {
        return None;
    }
    let m = safe_radius(data);
    (-m..=m).filter(|&j| j != 0).find(|&j| phi_at(data, z, j) != 0)
}

/// A tape on `[-m, n-1+m]` (`m = n/8`): `u` or `v` corrupted in fewer than `n/K` places,
/// surrounded by zeros or by uniform bits.
pub fn sample_safe_tape(data: &MarkerData, rng: &mut ChaCha8Rng) -> Tape {
    let n = data.n();
    let m = safe_radius(data) as usize;
    let base = if rng.gen_bool(0.5) { &data.u } else { &data.v };
    let r = rng.gen_range(0..=positive_radius(data));
    let core = corrupt(rng, base, r);
    let noisy = rng.gen_bool(0.5);
    let mut w = Word::zeros(n + 2 * m);
    for i in 0..n + 2 * m {
        let bit = if i >= m && i < m + n { core.get(i - m) } else { noisy && rng.gen_bool(0.5) };
        w.set(i, bit);
    }
    Tape::new(-(m as i64), w)
}

/// Checks `pad(u)`, `pad(v)` and `samples` seeded tapes from [`sample_safe_tape`].
pub fn check_safe_interval(data: &MarkerData, samples: u64, seed: u64) -> SafeIntervalReport {
    let mut tapes = vec![Tape::new(0, data.u.clone()), Tape::new(0, data.v.clone())];
    tapes.extend((0..samples).map(|i| sample_safe_tape(data, &mut stream(seed, i))));
    check_safe_tapes(data, &tapes)
}

/// Runs the safe-interval check on the given tapes (zero outside their stored span).
pub fn check_safe_tapes(data: &MarkerData, tapes: &[Tape]) -> SafeIntervalReport {
    let results: Vec<(bool, Option<i64>)> = tapes
        .par_iter()
        .map(|z| (phi_at(data, z, 0) != 0, safe_interval_violation(data, z)))
        .collect();
    let nonzero = results.iter().filter(|(nz, _)| *nz).count() as u64;
    let violations = results.iter().filter(|(_, v)| v.is_some()).count() as u64;
    let example = tapes
        .iter()
        .zip(&results)
        .find_map(|(z, (_, v))| v.map(|j| (z.start, z.word.to_string(), j)));
    SafeIntervalReport { sampled: tapes.len() as u64, nonzero, violations, example }
}

#[derive(Debug, Clone, Serialize)]
pub struct SullivanSample {
    pub pairs: u64,
    pub max_abs: i64,
    pub bound: i64,
    pub violations: u64,
    /// Context `x` on `[-(n-1), n-1]` attaining the maximum; the pair is `(x, x with 0 at the origin)`.
    pub worst: Option<String>,
}

impl SullivanSample {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A context on `[-(n-1), n-1]` with a 1 at the origin. By `i mod 4`: uniform bits; a corrupted
/// `u` planted so that it covers the origin, over uniform bits; the same with `v`; or an exact
/// copy of `u` or `v` over zeros.
fn sullivan_context(data: &MarkerData, rng: &mut ChaCha8Rng, i: u64) -> Tape {
    let n = data.n();
    let len = 2 * n - 1;
    let mut w = match i % 4 {
        3 => Word::zeros(len),
        _ => Word::random(rng, len),
    };
    if !i.is_multiple_of(4) {
        let base = match (i % 4, rng.gen_bool(0.5)) {
            (1, _) | (3, true) => &data.u,
            _ => &data.v,
        };
        let planted = if i % 4 == 3 {
            base.clone()
        } else {
            let r = rng.gen_range(0..=positive_radius(data));
            corrupt(rng, base, r)
        };
        // A start in [0, n-1] of the stored word covers its position n-1, the origin.
        let at = rng.gen_range(0..n);
        for t in 0..n {
            w.set(at + t, planted.get(t));
        }
    }
    w.set(n - 1, true);
    Tape::new(-(n as i64 - 1), w)
}

/// `ψ_k(x, ζ x)` where `ζ` writes 0 at the origin.
pub fn single_site_psi(data: &MarkerData, x: &Tape) -> i64 {
    let y = Tape::new(x.start, {
        let mut w = x.word.clone();
        w.set((-x.start) as usize, false);
        w
    });
    psi_tapes(data, x, &y, 0, 0)
}

/// Evaluates `samples` seeded single-site pairs and compares with [`SULLIVAN_BOUND`].
pub fn sullivan_sample(data: &MarkerData, samples: u64, seed: u64) -> SullivanSample {
    let values: Vec<(i64, u64)> = (0..samples)
        .into_par_iter()
        .map(|i| (single_site_psi(data, &sullivan_context(data, &mut stream(seed, i), i)).abs(), i))
        .collect();
    let (max_abs, at) = values.iter().copied().max_by_key(|&(v, i)| (v, std::cmp::Reverse(i))).unwrap_or((0, 0));
    let violations = values.iter().filter(|(v, _)| *v > SULLIVAN_BOUND).count() as u64;
    let worst = (samples > 0).then(|| sullivan_context(data, &mut stream(seed, at), at).word.to_string());
    SullivanSample { pairs: samples, max_abs, bound: SULLIVAN_BOUND, violations, worst }
}

