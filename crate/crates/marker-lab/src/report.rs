//! Per-`k` table of the three quantities behind non-surjectivity: a dual-norm proxy for the
//! marker pair, a sampled Sullivan bound for `ψ_k`, and `|ψ_k(x^(k), y^(k))|`.

use cocycle_engine::{dual_ns_norm, Bound, ShapeBudget};
use serde::Serialize;

use crate::checks::{sullivan_sample, SULLIVAN_BOUND};
use crate::error::Result;
use crate::marker::{marker_pair, psi_k};
use crate::params::{MarkerData, MarkerParams};
use crate::search::{find_threshold, ThresholdStep};

#[derive(Debug, Clone, Serialize)]
pub struct ReportBudget {
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub n_start: usize,
    pub n_step: usize,
    pub n_max: usize,
    pub attempts_per_n: u64,
    pub total_attempts: u64,
    pub shape_budget: u64,
    /// Sparse shapes for the dual-norm proxy have at most this many sites.
    pub dual_max_size: usize,
    pub sullivan_samples: u64,
}

impl Default for ReportBudget {
    fn default() -> Self {
        ReportBudget {
            epsilon: 0.2,
            delta: 0.5,
            seed: 7,
            n_start: 8,
            n_step: 4,
            n_max: 1000,
            attempts_per_n: 2_000,
            total_attempts: 1_000_000,
            shape_budget: crate::search::DEFAULT_SHAPE_BUDGET,
            dual_max_size: 3,
            sullivan_samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualProxy {
    /// `max Σ_w |Δ_w| / |A|` over intervals `|A| ≤ 3n` and sparse shapes of diameter `≤ 2n`.
    pub lower_bound: f64,
    pub mode: Bound,
    pub witness: Option<serde_json::Value>,
    /// `6n / k`.
    pub structural_bound: f64,
    pub within_bound: bool,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub k: usize,
    pub n: usize,
    pub epsilon: f64,
    pub certified_full: bool,
    pub threshold_log: Vec<ThresholdStep>,
    pub psi: i64,
    pub two_n: i64,
    pub psi_is_minus_two_n: bool,
    pub dual: DualProxy,
    pub sullivan_samples: u64,
    pub sullivan_max: i64,
    pub sullivan_bound: i64,
    pub sullivan_violations: u64,
}

/// The row for one certified marker pair.
pub fn report_row(data: &MarkerData, dual_max_size: usize, sullivan_samples: u64, seed: u64) -> Result<ReportRow> {
    let n = data.n();
    let pair = marker_pair(data);
    let psi = psi_k(data, &pair)?;
    let budget = ShapeBudget {
        max_size: dual_max_size,
        max_diameter: 2 * n as i64,
        intervals_up_to: 3 * n,
    };
    let proxy = dual_ns_norm(&pair, 2, budget)?;
    let structural = 6.0 * n as f64 / data.params.k as f64;
    let dual = DualProxy {
        lower_bound: proxy.value,
        mode: proxy.mode,
        witness: proxy.witness,
        structural_bound: structural,
        within_bound: proxy.value <= structural,
        note: "maximum over intervals and small sparse shapes only; shapes outside this family are not searched"
            .into(),
    };
    let sull = sullivan_sample(data, sullivan_samples, seed);
    Ok(ReportRow {
        k: data.params.k,
        n,
        epsilon: data.params.epsilon,
        certified_full: data.certified.full(),
        threshold_log: Vec::new(),
        psi,
        two_n: 2 * n as i64,
        psi_is_minus_two_n: psi == -2 * n as i64,
        dual,
        sullivan_samples: sull.pairs,
        sullivan_max: sull.max_abs,
        sullivan_bound: SULLIVAN_BOUND,
        sullivan_violations: sull.violations,
    })
}

/// Searches a marker pair for each `k` (smallest `n` on the budget's grid) and reports on it.
pub fn nonsurjectivity_report(k_list: &[usize], budget: &ReportBudget) -> Result<Vec<ReportRow>> {
    k_list
        .iter()
        .map(|&k| {
            let template = MarkerParams {
                delta: budget.delta,
                ..MarkerParams::new(k, budget.n_start, budget.epsilon, budget.seed)
            };
            let (data, log) = find_threshold(
                &template,
                budget.n_start,
                budget.n_step,
                budget.n_max,
                budget.attempts_per_n,
                budget.total_attempts,
                budget.shape_budget,
            )?;
            let mut row = report_row(&data, budget.dual_max_size, budget.sullivan_samples, budget.seed)?;
            row.threshold_log = log;
            Ok(row)
        })
        .collect()
}
