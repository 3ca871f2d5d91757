//! Randomized search for marker pairs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MarkerError, Result};
use crate::params::{MarkerData, MarkerParams};
use crate::verify::{condition_a, condition_b, verify_markers};
use crate::word::Word;

/// Shapes checked exhaustively when certifying a found pair; above this the check is sampled.
pub const DEFAULT_SHAPE_BUDGET: u64 = 5_000_000;

const BATCH: u64 = 256;

/// The `index`-th candidate pair for these parameters. Candidates are independent streams of
/// one seed, so a search is reproducible whatever the thread count.
pub fn candidate(params: &MarkerParams, index: u64) -> (Word, Word) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let u = Word::random(&mut rng, params.n);
    let v = Word::random(&mut rng, params.n);
    (u, v)
}

fn passes(params: &MarkerParams, index: u64) -> bool {
    let (u, v) = candidate(params, index);
    condition_a(params, &u, &v).ok && condition_b(params, &u, &v, true).ok
}

/// Draws up to `attempts` candidate pairs and returns the first that satisfies both conditions,
/// with a certificate from a full re-check.
pub fn search_markers(params: &MarkerParams, attempts: u64, shape_budget: u64) -> Result<MarkerData> {
    params.validate()?;
    let mut start = 0;
    while start < attempts {
        let end = (start + BATCH).min(attempts);
        if let Some(index) = (start..end).into_par_iter().find_first(|&i| passes(params, i)) {
            let (u, v) = candidate(params, index);
            let mut certified = verify_markers(params, &u, &v, shape_budget);
            certified.attempts = index + 1;
            return Ok(MarkerData { params: params.clone(), u, v, certified });
        }
        start = end;
    }
    Err(MarkerError::SearchExhausted { n: params.n, attempts })
}

/// One `n` tried by [`find_threshold`].
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdStep {
    pub n: usize,
    pub attempts: u64,
    pub found: bool,
}

/// Tries `n = n_start, n_start + n_step, ...` up to `n_max` and returns the first marker pair
/// found. `total_attempts` caps the number of candidates over the whole scan.
pub fn find_threshold(
    template: &MarkerParams,
    n_start: usize,
    n_step: usize,
    n_max: usize,
    attempts_per_n: u64,
    total_attempts: u64,
    shape_budget: u64,
) -> Result<(MarkerData, Vec<ThresholdStep>)> {
    if n_step == 0 {
        return Err(MarkerError::InvalidParams("n_step must be positive".into()));
    }
    let mut log = Vec::new();
    let mut spent = 0u64;
    let mut n = n_start;
    while n <= n_max && spent < total_attempts {
        let budget = attempts_per_n.min(total_attempts - spent);
        let params = MarkerParams { n, ..template.clone() };
        match search_markers(&params, budget, shape_budget) {
            Ok(data) => {
                log.push(ThresholdStep { n, attempts: data.certified.attempts, found: true });
                return Ok((data, log));
            }
            Err(MarkerError::SearchExhausted { .. }) => {
                spent += budget;
                log.push(ThresholdStep { n, attempts: budget, found: false });
            }
            Err(e) => return Err(e),
        }
        n += n_step;
    }
    Err(MarkerError::SearchExhausted { n: n.min(n_max), attempts: spent })
}
