//! `gibbslab`: one binary over the workspace libraries.
//!
//! Exit status is 0 when every certificate in the report passes, 1 when a property was
//! falsified (the report carries the witness) and 2 on usage, input or budget errors.

mod commands;
mod error;
mod manifest;
mod output;
mod shapes;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::{build, markers, norms, space, zoo, Ctx};
use crate::manifest::RunManifest;
use crate::output::{pick_format, render, write, Format};

#[derive(Debug, Parser)]
#[command(name = "gibbslab", version, about = "Cocycles, interactions and specifications on lattice configuration spaces")]
struct Cli {
    /// Seed for every random choice made by the command.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, env = "GIBBSLAB_WORKERS")]
    workers: Option<usize>,
    /// Cap on search nodes for pattern enumerations.
    #[arg(long, global = true, default_value_t = lattice_core::DEFAULT_BUDGET)]
    budget_patterns: u64,
    /// Report file (standard output when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format; defaults to csv for `.csv` outputs and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Record wall-clock time in the manifest (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural checks on a configuration space.
    #[command(subcommand)]
    Space(space::SpaceCommand),
    /// Marker words for the non-representable cocycles.
    #[command(subcommand)]
    Markers(markers::MarkersCommand),
    /// Site-indexed interactions for a cocycle along a chain of sets.
    Kozlov(build::KozlovArgs),
    /// Shift-invariant box averages of a cocycle.
    Sullivan(build::SullivanArgs),
    /// The dual-norm proxy of an asymptotic pair.
    Dualnorm(norms::DualArgs),
    /// Example spaces and cocycles.
    #[command(subcommand)]
    Zoo(zoo::ZooCommand),
    /// NS, VS and Sullivan norms of an interaction.
    Norms(norms::NormsArgs),
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        eprintln!("error: --workers must be positive");
        return ExitCode::from(2);
    }
    // Fails only if a pool already exists, which cannot happen this early.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();

    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut ctx = Ctx {
        manifest: RunManifest::new(argv, cli.seed, workers),
        seed: cli.seed,
        budget_patterns: cli.budget_patterns,
        extra_outputs: Vec::new(),
    };
    ctx.manifest.budget("patterns", cli.budget_patterns);

    let result = match &cli.command {
        Command::Space(c) => space::run(c, &mut ctx),
        Command::Markers(c) => markers::run(c, &mut ctx),
        Command::Kozlov(a) => build::kozlov(a, &mut ctx),
        Command::Sullivan(a) => build::sullivan(a, &mut ctx),
        Command::Dualnorm(a) => norms::dualnorm(a, &mut ctx),
        Command::Zoo(c) => zoo::run(c, &mut ctx),
        Command::Norms(a) => norms::norms(a, &mut ctx),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        ctx.manifest.wall_clock_ms = Some(started.elapsed().as_millis());
    }
    let format = pick_format(cli.format, cli.out.as_deref());
    let written = render(&outcome, &ctx.manifest, format).and_then(|text| write(&text, cli.out.as_ref())).and_then(|_| {
        ctx.extra_outputs.iter().try_for_each(|(path, extra)| {
            render(extra, &ctx.manifest, Format::Json).and_then(|text| write(&text, Some(path)))
        })
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("falsified: see the report for the witness");
        ExitCode::from(1)
    }
}
