use std::path::PathBuf;

use clap::{Args, Subcommand};
use lattice_core::{block_path, check_tmp_window, derive_sft_from_tmp_safe, DeriveError, LatticeError, MoveOrder, Shape, Site, TmpCheck};
use serde_json::{json, Value};

use super::{load_config, pattern_json, shape_json, Ctx, SpaceArgs};
use crate::error::Result;
use crate::output::Outcome;
use crate::shapes::parse_shape;

#[derive(Debug, Subcommand)]
pub enum SpaceCommand {
    /// Test whether `b` is a memory set for `a` on every admissible pattern of a window.
    CheckTmp(TmpArgs),
    /// Search for a path of admissible changes from one configuration to another.
    CheckPivot(PivotArgs),
    /// Turn a space with the Markov property and a safe symbol into forbidden patterns.
    DeriveSft(DeriveArgs),
}

#[derive(Debug, Args)]
pub struct TmpArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, default_value = "{0}", allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    window: String,
}

#[derive(Debug, Args)]
pub struct PivotArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    /// Sites allowed to change.
    #[arg(long = "box", allow_hyphen_values = true)]
    search_box: String,
    /// Sites rewritten per move.
    #[arg(long, default_value_t = 1)]
    block: usize,
    /// Cap on visited states.
    #[arg(long, default_value_t = 1_000_000)]
    path_budget: usize,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Radius `w` of the memory window `[-w, w]^d` for the origin.
    #[arg(long, default_value_t = 1)]
    window: i64,
}

pub fn run(cmd: &SpaceCommand, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        SpaceCommand::CheckTmp(a) => check_tmp(a, ctx),
        SpaceCommand::CheckPivot(a) => check_pivot(a, ctx),
        SpaceCommand::DeriveSft(a) => derive(a, ctx),
    }
}

fn check_tmp(args: &TmpArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sft = args.space.load(ctx)?;
    let d = sft.dimension();
    let (a, b, w) = (parse_shape(&args.a, d)?, parse_shape(&args.b, d)?, parse_shape(&args.window, d)?);
    let check = check_tmp_window(&sft, &a, &b, &w, ctx.budget_patterns)?;
    Ok(Outcome::new(tmp_json(&check, &sft, &a, &b), check.holds()))
}

fn tmp_json(check: &TmpCheck, sft: &lattice_core::SftSpace, a: &Shape, b: &Shape) -> Value {
    let d = sft.dimension();
    match check {
        TmpCheck::Holds { window, patterns } => json!({
            "holds": true, "mode": "exact", "a": shape_json(a, d), "b": shape_json(b, d),
            "window": shape_json(window, d), "patterns": patterns,
        }),
        TmpCheck::Counterexample { x, y, glued } => json!({
            "holds": false, "mode": "exact", "a": shape_json(a, d), "b": shape_json(b, d),
            "witness": { "x": pattern_json(x, sft), "y": pattern_json(y, sft), "glued": pattern_json(glued, sft) },
        }),
    }
}

fn check_pivot(args: &PivotArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sft = args.space.load(ctx)?;
    let x = load_config(&args.x, &sft, ctx)?;
    let y = load_config(&args.y, &sft, ctx)?;
    let search_box = parse_shape(&args.search_box, sft.dimension())?;
    ctx.manifest.budget("path_states", args.path_budget);
    let moves = |path: &[Vec<(Site, u8)>]| -> Value {
        json!(path
            .iter()
            .map(|m| m.iter().map(|&(s, a)| json!({"site": s.coords(sft.dimension()), "symbol": sft.symbol_name(a)})).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    };
    match block_path(&sft, &x, &y, &search_box, args.block, MoveOrder::Forward, args.path_budget) {
        Ok(path) => Ok(Outcome::new(json!({"connected": true, "block": args.block, "moves": path.len(), "path": moves(&path)}), true)),
        Err(LatticeError::NoPath { window, explored }) => Ok(Outcome::new(
            json!({"connected": false, "block": args.block, "witness": {"window_sites": window, "states_explored": explored}}),
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn derive(args: &DeriveArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sft = args.space.load(ctx)?;
    match derive_sft_from_tmp_safe(&sft, args.window, ctx.budget_patterns) {
        Ok(derived) => {
            let value: Value = serde_json::from_str(&derived.to_json()).expect("valid JSON");
            Ok(Outcome::new(json!({"derived": value, "forbidden": derived.forbidden().len()}), true))
        }
        Err(DeriveError::TmpFailure(check)) => {
            let a = Shape::singleton(Site::ORIGIN);
            let b = Shape::ball(args.window, sft.dimension());
            Ok(Outcome::new(json!({"derived": null, "tmp": tmp_json(&check, &sft, &a, &b)}), false))
        }
        Err(DeriveError::Lattice(e)) => Err(e.into()),
    }
}
