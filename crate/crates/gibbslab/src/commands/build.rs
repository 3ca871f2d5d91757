use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use cocycle_engine::{Cocycle, Interaction};
use lattice_core::{Configuration, SftSpace};
use representation_builders::{
    epsilon_schedule, kozlov_chain, kozlov_norm_summable, sullivan_interaction, sullivan_sweep, FillContext,
    SweepBudget, WindowedSpace,
};
use serde_json::{json, Value};

use super::{boundary_symbol, load_config, Ctx, SpaceArgs};
use crate::error::{CliError, Result};
use crate::output::{Outcome, Table};
use crate::shapes::{parse_chain, parse_shape};

/// Largest pointwise error accepted for an exact extension.
const EXACT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Args)]
pub struct KozlovArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Interaction file whose cocycle is extended.
    #[arg(long)]
    cocycle: PathBuf,
    /// Finite window standing in for the lattice, e.g. `-8..8`.
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    /// Increasing sets separated by `;`, e.g. `-1..1;-2..2`.
    #[arg(long, allow_hyphen_values = true)]
    chain: String,
    /// Symbol outside the window (default: the safe symbol, else the least symbol).
    #[arg(long)]
    boundary: Option<String>,
    /// Approximate extensions with tolerances `eps0 · 2^{-n}` instead of exact ones.
    #[arg(long)]
    approx: bool,
    #[arg(long, default_value_t = 1.0)]
    eps0: f64,
}

#[derive(Debug, Args)]
pub struct SullivanArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Interaction file defining the cocycle.
    #[arg(long)]
    cocycle: PathBuf,
    /// Box radius of a single interaction `Φ^n`.
    #[arg(long, conflicts_with = "sweep")]
    n: Option<i64>,
    /// Range of box radii, e.g. `4..12`; reports norms and errors per radius.
    #[arg(long)]
    sweep: Option<String>,
    /// Anchor configuration file (default: the constant safe symbol).
    #[arg(long)]
    anchor: Option<PathBuf>,
    /// Margin used to decide which patterns extend.
    #[arg(long, default_value_t = 2)]
    halo: i64,
    /// Random windows for the error when enumeration runs out of budget.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// With `--n`: also write the norm and error report for that radius here.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn load_interaction(path: &Path, sft: &SftSpace, ctx: &mut Ctx) -> Result<Interaction> {
    Ok(Interaction::from_json(&ctx.manifest.read_input(path)?, sft)?)
}

fn interaction_value(phi: &Interaction, sft: &SftSpace) -> Value {
    serde_json::from_str(&phi.to_json(sft)).expect("valid JSON")
}

pub fn kozlov(args: &KozlovArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sft = args.space.load(ctx)?;
    let dim = sft.dimension();
    let psi: Arc<dyn Cocycle> = Arc::new(load_interaction(&args.cocycle, &sft, ctx)?);
    let window = parse_shape(&args.window, dim)?;
    let chain = parse_chain(&args.chain, dim)?;
    let boundary = boundary_symbol(&sft, args.boundary.as_deref())?;
    ctx.manifest.budget("window_sites", window.len());
    let ws = WindowedSpace::new(&sft, window, Configuration::constant(dim, boundary), ctx.budget_patterns)?;
    ctx.manifest.budget("window_fills", ws.len());

    if args.approx {
        if args.eps0.is_nan() || args.eps0 <= 0.0 {
            return Err(CliError::Usage("--eps0 must be positive".into()));
        }
        let eps = epsilon_schedule(args.eps0, chain.len());
        let out = kozlov_norm_summable(&ws, psi, &chain, &eps)?;
        let passed = out.steps.iter().all(|s| s.holds());
        let mut value = interaction_value(&out.interaction, &sft);
        value["certificate"] = json!(out.certificate);
        value["steps"] = json!(out.steps);
        value["tolerances"] = json!(eps);
        value["tail_bound_norm"] = json!(out.tail_bound);
        return Ok(Outcome::new(value, passed).flat());
    }

    let out = kozlov_chain(&ws, psi, &chain)?;
    let passed = out.certificate.max_error <= EXACT_TOLERANCE && out.steps.iter().all(|s| s.support_ok);
    let mut value = interaction_value(&out.interaction, &sft);
    value["certificate"] = json!(out.certificate);
    value["steps"] = json!(out.steps);
    Ok(Outcome::new(value, passed).flat())
}

fn parse_range(text: &str) -> Result<Vec<i64>> {
    let bad = || CliError::Usage(format!("expected a range a..b, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn sweep_table(rows: &[representation_builders::SweepRow]) -> Table {
    let mut t = Table::new(&["n", "patterns", "norm_vs", "norm_sullivan_psi", "within_three", "error", "error_mode"]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            r.patterns.to_string(),
            r.norm_vs.to_string(),
            r.norm_sullivan_psi.to_string(),
            r.within_three.to_string(),
            r.error.to_string(),
            json!(r.error_mode).as_str().unwrap_or_default().to_string(),
        ]);
    }
    t
}

pub fn sullivan(args: &SullivanArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sft = args.space.load(ctx)?;
    let psi: Arc<dyn Cocycle> = Arc::new(load_interaction(&args.cocycle, &sft, ctx)?);
    let anchor = match (&args.anchor, sft.asserted.safe_symbol) {
        (Some(path), _) => load_config(path, &sft, ctx)?,
        (None, Some(s)) => Configuration::constant(sft.dimension(), s),
        (None, None) => return Err(CliError::Usage("this space has no safe symbol; give --anchor".into())),
    };
    let fill = FillContext::new(&sft, anchor)?;
    let budget = SweepBudget { halo: args.halo, budget: ctx.budget_patterns, fallback_samples: args.samples, seed: ctx.seed };
    ctx.manifest.budget("halo", args.halo);
    ctx.manifest.budget("fallback_samples", args.samples);

    match (args.n, &args.sweep) {
        (Some(n), _) => {
            let phi = sullivan_interaction(&fill, psi.as_ref(), n, args.halo, ctx.budget_patterns)?;
            let mut passed = true;
            if let Some(path) = &args.report {
                let rows = sullivan_sweep(&fill, psi, &[n], &budget)?;
                passed = rows.iter().all(|r| r.within_three);
                let table = sweep_table(&rows);
                ctx.extra_outputs.push((path.clone(), Outcome::new(json!({ "rows": rows }), passed).with_table(table)));
            }
            let mut value = interaction_value(&phi, &sft);
            value["n"] = json!(n);
            Ok(Outcome::new(value, passed).flat())
        }
        (None, Some(range)) => {
            let ns = parse_range(range)?;
            let rows = sullivan_sweep(&fill, psi, &ns, &budget)?;
            let passed = rows.iter().all(|r| r.within_three);
            let table = sweep_table(&rows);
            Ok(Outcome::new(json!({ "rows": rows }), passed).with_table(table))
        }
        (None, None) => Err(CliError::Usage("give --n or --sweep".into())),
    }
}
