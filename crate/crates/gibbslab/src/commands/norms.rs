use std::path::PathBuf;

use clap::Args;
use cocycle_engine::{
    dual_ns_norm, norm_ns, norm_sullivan, norm_vs, Bound, CocycleError, Interaction, NormReport, ShapeBudget,
    SullivanMethod,
};
use lattice_core::{AsymptoticPair, LatticeError};
use marker_lab::{marker_pair, MarkerData};
use serde_json::json;

use super::{load_config, Ctx, SpaceArgs};
use crate::error::{CliError, Result};
use crate::output::{Outcome, Table};

#[derive(Debug, Args)]
pub struct DualArgs {
    /// Marker file; the pair is the marker pair it defines.
    #[arg(long, conflicts_with_all = ["x", "y"])]
    marker: Option<PathBuf>,
    #[command(flatten)]
    space: SpaceArgs,
    /// Configuration files of an asymptotic pair (with `--sft` or `--space`).
    #[arg(long, requires = "y")]
    x: Option<PathBuf>,
    #[arg(long, requires = "x")]
    y: Option<PathBuf>,
    /// Largest sparse shape tried.
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Largest diameter of a sparse shape.
    #[arg(long, default_value_t = 6)]
    max_diameter: i64,
    /// Longest interval tried.
    #[arg(long, default_value_t = 64)]
    intervals_up_to: usize,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Interaction file.
    #[arg(long)]
    interaction: PathBuf,
    /// Margin used to decide which patterns extend.
    #[arg(long, default_value_t = 2)]
    halo: i64,
    /// Random windows for the Sullivan norm when enumeration runs out of budget.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
}

pub fn dualnorm(args: &DualArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let (pair, q) = match (&args.marker, &args.x, &args.y) {
        (Some(path), _, _) => {
            let data = MarkerData::from_json(&ctx.manifest.read_input(path)?)?;
            (marker_pair(&data), 2)
        }
        (None, Some(x), Some(y)) => {
            let sft = args.space.load(ctx)?;
            let (x, y) = (load_config(x, &sft, ctx)?, load_config(y, &sft, ctx)?);
            (AsymptoticPair::new(x, y)?, sft.q())
        }
        _ => return Err(CliError::Usage("give --marker FILE, or --x and --y with a space".into())),
    };
    let budget = ShapeBudget {
        max_size: args.max_size,
        max_diameter: args.max_diameter,
        intervals_up_to: args.intervals_up_to,
    };
    ctx.manifest.budget("max_size", args.max_size);
    ctx.manifest.budget("max_diameter", args.max_diameter);
    ctx.manifest.budget("intervals_up_to", args.intervals_up_to);
    let report = dual_ns_norm(&pair, q, budget)?;
    Ok(Outcome::new(json!(report), true))
}

fn out_of_budget(e: &CocycleError) -> bool {
    matches!(e, CocycleError::Budget(_) | CocycleError::Lattice(LatticeError::Budget { .. }))
}

pub fn norms(args: &NormsArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sft = args.space.load(ctx)?;
    let phi = Interaction::from_json(&ctx.manifest.read_input(&args.interaction)?, &sft)?;
    let budget = ctx.budget_patterns;
    ctx.manifest.budget("halo", args.halo);

    let ns = norm_ns(&phi, &sft, args.halo, budget)?;
    let vs = if sft.asserted.pivot { Some(norm_vs(&phi, &sft, args.halo, budget)?) } else { None };
    let sullivan = match norm_sullivan(&phi, &sft, SullivanMethod::Exact { halo: args.halo }, budget) {
        Err(e) if out_of_budget(&e) => {
            ctx.manifest.budget("sullivan_samples", args.samples);
            let method = SullivanMethod::Sample { count: args.samples, seed: ctx.seed, halo: args.halo };
            norm_sullivan(&phi, &sft, method, budget)?
        }
        other => other?,
    };

    let mut table = Table::new(&["norm", "value", "mode"]);
    let mut row = |name: &str, r: &NormReport| {
        let mode = match r.mode {
            Bound::Exact => "exact",
            Bound::LowerBound => "lower_bound",
            Bound::UpperBound => "upper_bound",
        };
        table.push(vec![name.to_string(), r.value.to_string(), mode.to_string()]);
    };
    row("ns", &ns);
    if let Some(vs) = &vs {
        row("vs", vs);
    }
    row("sullivan", &sullivan);
    let vs_note = vs.is_none().then_some("the VS norm needs a space asserted to have the pivot property");
    Ok(Outcome::new(json!({ "ns": ns, "vs": vs, "sullivan": sullivan, "vs_note": vs_note }), true).with_table(table))
}
