//! Shift-invariant interactions averaging a cocycle over boxes, and how fast they converge.

use std::sync::Arc;

use cocycle_engine::{
    eval_configs, norm_sullivan, norm_vs, Bound, Cocycle, CocycleError, Combination, Interaction,
    NormReport, SullivanMethod,
};
use lattice_core::{language, Configuration, Overlay, Pattern};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BuildError, Result};
use crate::fill::{box_shape, build_fill, FillContext};

/// `Φ^n`: one potential on `F_n = [-n, n]^d`, with
/// `Φ^n(p) = ψ(w, z(p, n)) / |F_n|`. When the space has a safe symbol `◇` the anchor is the
/// constant `◇` and `z(p, n)` is `p` surrounded by `◇`, so no fill is needed.
pub fn sullivan_interaction(ctx: &FillContext, psi: &dyn Cocycle, n: i64, halo: i64, budget: u64) -> Result<Interaction> {
    let sft = ctx.sft();
    let shape = box_shape(n, sft.dimension());
    let weight = 1.0 / shape.len() as f64;
    let patterns = language(sft, &shape, halo, budget)?;
    let safe = sft.asserted.safe_symbol.map(|s| Configuration::constant(sft.dimension(), s));
    if safe.is_none() && n <= ctx.margin() {
        return Err(BuildError::Parameter(format!("without a safe symbol the box size needs n > {}", ctx.margin())));
    }
    let values: Vec<Result<(Pattern, f64)>> = patterns
        .into_par_iter()
        .map(|p| {
            let v = match &safe {
                Some(base) => eval_configs(psi, base, &base.with_pattern(&p))?,
                None => {
                    let x = Overlay::new(ctx.anchor(), &shape, p.symbols());
                    let z = build_fill(ctx, &x, n)?;
                    eval_configs(psi, ctx.anchor(), &z)?
                }
            };
            Ok((p, v * weight))
        })
        .collect();
    let mut phi = Interaction::shift_invariant();
    for r in values {
        let (p, v) = r?;
        phi.set(&p, v);
    }
    Ok(phi)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: i64,
    pub patterns: usize,
    pub norm_vs: f64,
    pub norm_sullivan_psi: f64,
    /// `‖Φ^n‖_VS ≤ 3 ‖ψ‖_Sullivan`.
    pub within_three: bool,
    /// `‖ψ - ψ_{Φ^n}‖_Sullivan`.
    pub error: f64,
    pub error_mode: Bound,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepBudget {
    pub halo: i64,
    pub budget: u64,
    /// Random windows used for the error when exact enumeration runs out of budget.
    pub fallback_samples: usize,
    pub seed: u64,
}

impl Default for SweepBudget {
    fn default() -> Self {
        SweepBudget { halo: 2, budget: lattice_core::DEFAULT_BUDGET, fallback_samples: 100_000, seed: 7 }
    }
}

fn error_norm(psi: &Arc<dyn Cocycle>, phi: &Interaction, ctx: &FillContext, b: &SweepBudget) -> Result<NormReport> {
    let exact = SullivanMethod::Exact { halo: b.halo };
    let diff: Box<dyn Cocycle> = match psi.as_interaction() {
        Some(int) if int.mode() == phi.mode() => Box::new(phi.combine(-1.0, int)?),
        _ => Box::new(Combination::difference(psi.clone(), phi.clone())),
    };
    match norm_sullivan(diff.as_ref(), ctx.sft(), exact, b.budget) {
        Err(CocycleError::Lattice(lattice_core::LatticeError::Budget { .. })) | Err(CocycleError::Budget(_)) => {
            let sample = SullivanMethod::Sample { count: b.fallback_samples, seed: b.seed, halo: b.halo };
            Ok(norm_sullivan(diff.as_ref(), ctx.sft(), sample, b.budget)?)
        }
        other => Ok(other?),
    }
}

/// Builds `Φ^n` for every `n` and reports its VS norm against `‖ψ‖_Sullivan` and the
/// approximation error.
pub fn sullivan_sweep(ctx: &FillContext, psi: Arc<dyn Cocycle>, ns: &[i64], b: &SweepBudget) -> Result<Vec<SweepRow>> {
    let sft = ctx.sft();
    let psi_norm = norm_sullivan(psi.as_ref(), sft, SullivanMethod::Exact { halo: b.halo }, b.budget)?.value;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let phi = sullivan_interaction(ctx, psi.as_ref(), n, b.halo, b.budget)?;
        let patterns = phi.entries().iter().map(|e| e.table.len()).sum();
        let vs = norm_vs(&phi, sft, b.halo, b.budget)?.value;
        let err = error_norm(&psi, &phi, ctx, b)?;
        rows.push(SweepRow {
            n,
            patterns,
            norm_vs: vs,
            norm_sullivan_psi: psi_norm,
            within_three: vs <= 3.0 * psi_norm + 1e-9,
            error: err.value,
            error_mode: err.mode,
        });
    }
    Ok(rows)
}
