use std::path::PathBuf;

use clap::{Args, Subcommand};
use marker_lab::{
    find_threshold, marker_pair, nonsurjectivity_report, psi_k, search_markers, verify_markers, MarkerData,
    MarkerParams, ReportBudget, DEFAULT_SHAPE_BUDGET,
};
use serde_json::{json, Value};

use super::Ctx;
use crate::error::{CliError, Result};
use crate::output::{Outcome, Table};

#[derive(Debug, Subcommand)]
pub enum MarkersCommand {
    /// Search for a certified marker pair, at a fixed length or the first length that works.
    Search(SearchArgs),
    /// Re-check a marker file from scratch.
    Verify(VerifyArgs),
    /// Per-k table: ψ_k on the marker pair, the dual-norm proxy and the sampled Sullivan bound.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Word length; when absent the lengths `n_start, n_start + n_step, ...` are scanned.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, default_value_t = 16)]
    k_const: i64,
    /// Candidate pairs tried (over the whole scan when `--n` is absent).
    #[arg(long, default_value_t = 1_000_000)]
    attempts: u64,
    #[arg(long, default_value_t = 8)]
    n_start: usize,
    #[arg(long, default_value_t = 4)]
    n_step: usize,
    #[arg(long, default_value_t = 1000)]
    n_max: usize,
    #[arg(long, default_value_t = 2000)]
    attempts_per_n: u64,
    /// Shapes checked exhaustively for condition (b) before switching to sampling.
    #[arg(long, default_value_t = DEFAULT_SHAPE_BUDGET)]
    shape_budget: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SHAPE_BUDGET)]
    shape_budget: u64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Comma-separated list of k.
    #[arg(long, default_value = "2,3", value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, default_value_t = 8)]
    n_start: usize,
    #[arg(long, default_value_t = 4)]
    n_step: usize,
    #[arg(long, default_value_t = 1000)]
    n_max: usize,
    #[arg(long, default_value_t = 2000)]
    attempts_per_n: u64,
    #[arg(long, default_value_t = 1_000_000)]
    attempts: u64,
    #[arg(long, default_value_t = DEFAULT_SHAPE_BUDGET)]
    shape_budget: u64,
    /// Largest sparse shape for the dual-norm proxy.
    #[arg(long, default_value_t = 3)]
    dual_max_size: usize,
    #[arg(long, default_value_t = 100_000)]
    sullivan_samples: u64,
}

pub fn run(cmd: &MarkersCommand, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        MarkersCommand::Search(a) => search(a, ctx),
        MarkersCommand::Verify(a) => verify(a, ctx),
        MarkersCommand::Report(a) => report(a, ctx),
    }
}

fn marker_value(data: &MarkerData) -> Value {
    serde_json::from_str(&data.to_json()).expect("valid JSON")
}

fn search(args: &SearchArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let template = MarkerParams {
        delta: args.delta,
        k_const: args.k_const,
        ..MarkerParams::new(args.k, args.n.unwrap_or(args.n_start), args.epsilon, ctx.seed)
    };
    template.validate()?;
    ctx.manifest.budget("attempts", args.attempts);
    ctx.manifest.budget("shape_budget", args.shape_budget);
    let (data, log) = match args.n {
        Some(_) => (search_markers(&template, args.attempts, args.shape_budget)?, Vec::new()),
        None => {
            ctx.manifest.budget("n_grid", json!({"start": args.n_start, "step": args.n_step, "max": args.n_max}));
            ctx.manifest.budget("attempts_per_n", args.attempts_per_n);
            find_threshold(&template, args.n_start, args.n_step, args.n_max, args.attempts_per_n, args.attempts, args.shape_budget)?
        }
    };
    let mut value = marker_value(&data);
    if !log.is_empty() {
        value["threshold_log"] = serde_json::to_value(&log).expect("serializable");
    }
    Ok(Outcome::new(value, data.certified.full()).flat())
}

fn verify(args: &VerifyArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let data = MarkerData::from_json(&ctx.manifest.read_input(&args.file)?)?;
    ctx.manifest.budget("shape_budget", args.shape_budget);
    let cert = verify_markers(&data.params, &data.u, &data.v, args.shape_budget);
    let n = data.n() as i64;
    let psi = psi_k(&data, &marker_pair(&data))?;
    let passed = cert.full() && psi == -2 * n;
    let witness = cert.failure.clone().or_else(|| (psi != -2 * n).then(|| format!("ψ_k(x, y) = {psi}, expected {}", -2 * n)));
    Ok(Outcome::new(
        json!({
            "params": data.params,
            "certificate": cert,
            "mode": if cert.exhaustive { "exact" } else { "sampled" },
            "psi": psi,
            "psi_expected": -2 * n,
            "witness": witness,
        }),
        passed,
    ))
}

fn report(args: &ReportArgs, ctx: &mut Ctx) -> Result<Outcome> {
    if args.k.is_empty() {
        return Err(CliError::Usage("--k needs at least one value".into()));
    }
    let budget = ReportBudget {
        epsilon: args.epsilon,
        delta: args.delta,
        seed: ctx.seed,
        n_start: args.n_start,
        n_step: args.n_step,
        n_max: args.n_max,
        attempts_per_n: args.attempts_per_n,
        total_attempts: args.attempts,
        shape_budget: args.shape_budget,
        dual_max_size: args.dual_max_size,
        sullivan_samples: args.sullivan_samples,
    };
    ctx.manifest.budget("report", &budget);
    let rows = nonsurjectivity_report(&args.k, &budget)?;
    let passed = rows.iter().all(|r| r.certified_full && r.psi_is_minus_two_n && r.sullivan_violations == 0 && r.dual.within_bound);
    let mut table = Table::new(&[
        "k", "n", "psi", "two_n", "dual_lower_bound", "dual_structural_bound", "sullivan_max", "sullivan_bound",
        "sullivan_samples", "sullivan_violations",
    ]);
    for r in &rows {
        table.push(vec![
            r.k.to_string(),
            r.n.to_string(),
            r.psi.to_string(),
            r.two_n.to_string(),
            r.dual.lower_bound.to_string(),
            r.dual.structural_bound.to_string(),
            r.sullivan_max.to_string(),
            r.sullivan_bound.to_string(),
            r.sullivan_samples.to_string(),
            r.sullivan_violations.to_string(),
        ]);
    }
    Ok(Outcome::new(json!({ "rows": rows }), passed).with_table(table))
}
