use clap::{Args, Subcommand};
use model_zoo::{height_table, rigid_coloring_witness};
use serde_json::json;

use super::Ctx;
use crate::error::{CliError, Result};
use crate::output::{Outcome, Table};

#[derive(Debug, Subcommand)]
pub enum ZooCommand {
    /// The height cocycle of 3-colorings on the diamond pairs, against `|B_i|`.
    Heights(HeightArgs),
    /// A frozen q-coloring of the plane and its two-site swap.
    Rigid(RigidArgs),
}

#[derive(Debug, Args)]
pub struct HeightArgs {
    #[arg(long, default_value_t = 10)]
    i_max: i64,
}

#[derive(Debug, Args)]
pub struct RigidArgs {
    #[arg(long, default_value_t = 4)]
    q: usize,
    /// Radius of the window searched for single-site changes.
    #[arg(long, default_value_t = 3)]
    radius: i64,
}

pub fn run(cmd: &ZooCommand, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        ZooCommand::Heights(a) => {
            if a.i_max < 1 {
                return Err(CliError::Usage("--i-max must be at least 1".into()));
            }
            ctx.manifest.budget("i_max", a.i_max);
            let rows = height_table(a.i_max)?;
            let mut table = Table::new(&["i", "psi", "ball_2d", "ratio", "ball_3d"]);
            for r in &rows {
                table.push(vec![
                    r.i.to_string(),
                    r.psi.to_string(),
                    r.ball_2d.to_string(),
                    format!("{:.6}", r.ratio),
                    r.ball_3d.to_string(),
                ]);
            }
            Ok(Outcome::new(json!({ "rows": rows }), true).with_table(table))
        }
        ZooCommand::Rigid(a) => {
            ctx.manifest.budget("radius", a.radius);
            let report = rigid_coloring_witness(a.q, a.radius)?;
            let passed = report.holds();
            Ok(Outcome::new(json!(report), passed))
        }
    }
}
