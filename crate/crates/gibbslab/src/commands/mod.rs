pub mod build;
pub mod markers;
pub mod norms;
pub mod space;
pub mod zoo;

use std::path::{Path, PathBuf};

use clap::Args;
use lattice_core::{config_from_json, Configuration, Pattern, SftSpace, Shape};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::manifest::RunManifest;
use crate::output::Outcome;

pub struct Ctx {
    pub manifest: RunManifest,
    pub seed: u64,
    pub budget_patterns: u64,
    /// Secondary reports (such as `sullivan --report`), written after the main one.
    pub extra_outputs: Vec<(PathBuf, Outcome)>,
}

/// Where the configuration space comes from.
#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Space definition file (JSON).
    #[arg(long, conflicts_with = "space")]
    pub sft: Option<PathBuf>,
    /// A built-in space: full(q,d), hardcore(d), coloring(q,d) or sunny(d).
    #[arg(long)]
    pub space: Option<String>,
}

impl SpaceArgs {
    pub fn load(&self, ctx: &mut Ctx) -> Result<SftSpace> {
        match (&self.sft, &self.space) {
            (Some(path), _) => Ok(SftSpace::from_json(&ctx.manifest.read_input(path)?)?),
            (None, Some(name)) => Ok(model_zoo::builtin_space(name)?),
            (None, None) => Err(CliError::Usage("give the space with --sft FILE or --space NAME".into())),
        }
    }
}

pub fn load_config(path: &Path, sft: &SftSpace, ctx: &mut Ctx) -> Result<Configuration> {
    Ok(config_from_json(&ctx.manifest.read_input(path)?, sft)?)
}

pub fn shape_json(shape: &Shape, dim: usize) -> Value {
    json!(shape.iter().map(|s| s.coords(dim)).collect::<Vec<_>>())
}

pub fn pattern_json(p: &Pattern, sft: &SftSpace) -> Value {
    json!({
        "shape": shape_json(p.shape(), sft.dimension()),
        "symbols": p.symbols().iter().map(|&a| sft.symbol_name(a)).collect::<Vec<_>>(),
    })
}

/// The boundary used for windowed computations: a named symbol, else the safe symbol, else
/// the least symbol.
pub fn boundary_symbol(sft: &SftSpace, name: Option<&str>) -> Result<u8> {
    match name {
        Some(n) => Ok(sft.symbol_index(n)?),
        None => Ok(sft.asserted.safe_symbol.unwrap_or(sft.order()[0])),
    }
}
