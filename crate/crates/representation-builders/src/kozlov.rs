//! Site-indexed interactions for Markov and continuous cocycles, built one finite set at a time.

use std::sync::Arc;

use cocycle_engine::{Cocycle, Combination, Interaction};
use lattice_core::{memory_set, Pattern, Shape};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BuildError, Result};
use crate::potential::{Potential, TOLERANCE};
use crate::windowed::WindowedSpace;

/// What a builder established, checked over every pair of the window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// The relation on which the bound holds, written `T_{...}` with the sites of the set.
    pub exact_on: String,
    pub max_error: f64,
    pub window: Vec<Vec<i64>>,
    pub mode: String,
    pub pairs: u64,
}

fn label(shape: &Shape, dim: usize) -> String {
    let sites: Vec<String> = shape
        .iter()
        .map(|s| {
            let c = s.coords(dim);
            if dim == 1 {
                c[0].to_string()
            } else {
                format!("({})", c.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    format!("T_{{{}}}", sites.join(","))
}

/// Largest `|f(x, y)|` over unordered pairs `x ≠ y` of `𝒯_b` in the window, with the number of
/// pairs visited.
pub fn max_over_pairs<F>(ws: &WindowedSpace, b: &Shape, f: F) -> Result<(f64, u64)>
where
    F: Fn(&[u8], &[u8], &Shape) -> Result<f64> + Sync,
{
    let groups = ws.groups(b);
    let parts: Vec<Result<(f64, u64)>> = groups
        .par_iter()
        .map(|g| {
            let mut best = 0.0f64;
            let mut count = 0u64;
            for (k, &i) in g.iter().enumerate() {
                for &j in &g[k + 1..] {
                    let (x, y) = (&ws.fills()[i], &ws.fills()[j]);
                    let v = f(x, y, &ws.diff(x, y))?;
                    best = best.max(v.abs());
                    count += 1;
                }
            }
            Ok((best, count))
        })
        .collect();
    let mut best = 0.0f64;
    let mut count = 0;
    for p in parts {
        let (b, c) = p?;
        best = best.max(b);
        count += c;
    }
    Ok((best, count))
}

/// `max |ψ_Φ - ψ|` over `𝒯_b` pairs of the window.
pub fn certify(ws: &WindowedSpace, phi: &Interaction, psi: &dyn Cocycle, b: &Shape) -> Result<Certificate> {
    let (max_error, pairs) = max_over_pairs(ws, b, |x, y, d| {
        Ok(phi.eval(&ws.view(x), &ws.view(y), d)? - psi.eval(&ws.view(x), &ws.view(y), d)?)
    })?;
    Ok(Certificate {
        exact_on: label(b, ws.sft().dimension()),
        max_error,
        window: WindowedSpace::describe(ws.window(), ws.sft().dimension()),
        mode: "exact".into(),
        pairs,
    })
}

fn inside(ws: &WindowedSpace, d: &Shape, what: &str) -> Result<()> {
    if d.is_subset(ws.window()) {
        Ok(())
    } else {
        Err(BuildError::Precondition(format!(
            "the {what} {:?} does not fit in the window",
            WindowedSpace::describe(d, ws.sft().dimension())
        )))
    }
}

fn site_indexed(shape: &Shape, potential: std::collections::HashMap<Vec<u8>, f64>) -> Interaction {
    let mut phi = Interaction::site_indexed();
    for (key, v) in potential {
        phi.set(&Pattern::new(shape.clone(), key).expect("key fits shape"), v);
    }
    phi
}

#[derive(Debug, Clone)]
pub struct PartialExtension {
    pub interaction: Interaction,
    /// The single set `D \ A` carrying the interaction.
    pub shape: Shape,
    /// The memory set `D`.
    pub memory: Shape,
    pub classes: usize,
    pub certificate: Certificate,
}

/// An interaction on the single set `D \ a` (`D` a memory set for `a ∪ b`) that reproduces `psi`
/// on every `𝒯_b` pair of the window. `psi` must vanish on `𝒯_a`.
pub fn kozlov_partial(ws: &WindowedSpace, psi: &dyn Cocycle, a: &Shape, b: &Shape) -> Result<PartialExtension> {
    inside(ws, &a.union(b), "sets a and b")?;
    let psi_memory = psi
        .memory_set(b)
        .ok_or_else(|| BuildError::Precondition("the cocycle declares no memory set; it must be Markov".into()))?;
    let d = a.union(b).union(&memory_set(ws.sft(), a)).union(&psi_memory);
    inside(ws, &d, "memory set")?;

    let (on_a, _) = max_over_pairs(ws, a, |x, y, diff| psi.eval(&ws.view(x), &ws.view(y), diff).map_err(Into::into))?;
    if on_a > TOLERANCE {
        return Err(BuildError::Precondition(format!("the cocycle does not vanish on pairs differing in a (found {on_a})")));
    }

    let shape = d.difference(a);
    let slots = ws.slots(&shape)?;
    let mut potential = Potential::new();
    for g in ws.groups(b) {
        let hub = &ws.fills()[g[0]];
        let p = WindowedSpace::restrict(hub, &slots);
        potential.id(&p);
        for &j in &g[1..] {
            let y = &ws.fills()[j];
            let value = psi.eval(&ws.view(hub), &ws.view(y), &ws.diff(hub, y))?;
            potential.link(&p, &WindowedSpace::restrict(y, &slots), value)?;
        }
    }
    let classes = potential.classes();
    let interaction = site_indexed(&shape, potential.solve());
    let certificate = certify(ws, &interaction, psi, b)?;
    Ok(PartialExtension { interaction, shape, memory: d, classes, certificate })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub shape: Vec<Vec<i64>>,
    pub entries: usize,
    pub classes: usize,
    pub max_error: f64,
    /// Entries on sets meeting earlier `a` are unchanged by this step.
    pub support_ok: bool,
}

#[derive(Debug, Clone)]
pub struct KozlovChain {
    pub interaction: Interaction,
    pub steps: Vec<ChainStep>,
    pub certificate: Certificate,
}

/// Entries of `phi` on sets meeting `a`, for comparisons.
fn entries_meeting(phi: &Interaction, a: &Shape) -> Vec<(Shape, Vec<(Vec<u8>, f64)>)> {
    phi.entries()
        .iter()
        .filter(|e| e.shape.meets(a) && !e.table.is_empty())
        .map(|e| (e.shape.clone(), e.table.iter().map(|(k, v)| (k.clone(), *v)).collect()))
        .collect()
}

/// Iterates [`kozlov_partial`] along an increasing chain `A_1 ⊆ A_2 ⊆ ...`, each step applied
/// to `psi - ψ_{Φ^(n-1)}` with `a = A_{n-1}`.
pub fn kozlov_chain(ws: &WindowedSpace, psi: Arc<dyn Cocycle>, chain: &[Shape]) -> Result<KozlovChain> {
    let last = chain.last().ok_or_else(|| BuildError::Parameter("the chain is empty".into()))?;
    let dim = ws.sft().dimension();
    let mut phi = Interaction::site_indexed();
    let mut prev = Shape::empty();
    let mut steps = Vec::new();
    for b in chain {
        if !prev.is_subset(b) {
            return Err(BuildError::Parameter("the chain must be increasing".into()));
        }
        let star = Combination::difference(psi.clone(), phi.clone());
        let step = kozlov_partial(ws, &star, &prev, b)?;
        let before = entries_meeting(&phi, &prev);
        let next = phi.combine(1.0, &step.interaction)?;
        let support_ok = !step.shape.meets(&prev) && entries_meeting(&next, &prev) == before;
        steps.push(ChainStep {
            a: WindowedSpace::describe(&prev, dim),
            b: WindowedSpace::describe(b, dim),
            shape: WindowedSpace::describe(&step.shape, dim),
            entries: step.interaction.entries().iter().map(|e| e.table.len()).sum(),
            classes: step.classes,
            max_error: step.certificate.max_error,
            support_ok,
        });
        phi = next;
        prev = b.clone();
    }
    let certificate = certify(ws, &phi, psi.as_ref(), last)?;
    Ok(KozlovChain { interaction: phi, steps, certificate })
}

/// Smallest `r` whose declared modulus is below `target`, with the set `b + [-r, r]^d`
/// enlarged by the memory set of `b`. The set must fit in the window.
pub fn continuity_set(ws: &WindowedSpace, psi: &dyn Cocycle, b: &Shape, target: f64) -> Result<(i64, Shape)> {
    let dim = ws.sft().dimension();
    let base = memory_set(ws.sft(), b);
    let mut r = 0;
    loop {
        let m = psi
            .modulus(b, r)
            .ok_or_else(|| BuildError::Precondition("the cocycle declares no continuity modulus".into()))?;
        let d = b.plus(&Shape::ball(r, dim)).union(&base);
        if !d.is_subset(ws.window()) {
            return Err(BuildError::Radius(format!(
                "variation stays at {m} > {target} up to radius {r}, which leaves the window"
            )));
        }
        if m < target {
            return Ok((r, d));
        }
        r += 1;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxReport {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub eps_in: f64,
    pub delta_out: f64,
    /// `max |ψ*|` on `𝒯_a`, which must be below `eps_in`.
    pub hypothesis: f64,
    pub radius_one: i64,
    pub radius_two: i64,
    pub stage_one_error: f64,
    /// `Σ_{C ∩ a ≠ ∅} ‖Φ_C‖`.
    pub norm_on_a: f64,
    pub certificate: Certificate,
}

impl ApproxReport {
    /// Both conclusions: error below `delta_out` and mass on `a` below `3 eps_in`.
    pub fn holds(&self) -> bool {
        self.certificate.max_error < self.delta_out && self.norm_on_a < 3.0 * self.eps_in
    }
}

#[derive(Debug, Clone)]
pub struct ApproxExtension {
    pub interaction: Interaction,
    pub report: ApproxReport,
}

/// Two-stage approximate extension: `Φ¹` on `D₁ \ a` built from canonical elements, then `Φ²`
/// on `D₂` correcting the remainder.
pub fn kozlov_approx(
    ws: &WindowedSpace,
    psi: Arc<dyn Cocycle>,
    a: &Shape,
    b: &Shape,
    eps_in: f64,
    delta_out: f64,
) -> Result<ApproxExtension> {
    if !(eps_in > 0.0 && delta_out > 0.0) {
        return Err(BuildError::Parameter("eps_in and delta_out must be positive".into()));
    }
    let b = &a.union(b);
    inside(ws, b, "set b")?;
    let dim = ws.sft().dimension();
    let fills = ws.fills();

    let (hypothesis, _) = max_over_pairs(ws, a, |x, y, d| psi.eval(&ws.view(x), &ws.view(y), d).map_err(Into::into))?;
    if hypothesis >= eps_in {
        return Err(BuildError::Precondition(format!(
            "|ψ| reaches {hypothesis} on pairs differing in a, not below {eps_in}"
        )));
    }

    // Stage one.
    let (radius_one, d1) = continuity_set(ws, psi.as_ref(), b, eps_in)?;
    let s1 = d1.difference(a);
    let s1_slots = ws.slots(&s1)?;
    let d1_slots = ws.slots(&d1)?;
    let outer1 = ws.slots(&d1.difference(b))?;
    let canon_outer = ws.canonical(&d1.difference(b))?;
    let canon_s1 = ws.canonical(&s1)?;
    let glue = |z: &[u8], u: &[u8], slots: &[usize]| -> Result<Vec<u8>> {
        let mut out = z.to_vec();
        for &j in slots {
            out[j] = u[j];
        }
        if ws.contains(&out) {
            Ok(out)
        } else {
            Err(BuildError::Precondition("a glued configuration is not admissible; the memory set is too small".into()))
        }
    };
    let mut pot1 = Potential::new();
    for g in ws.groups(b) {
        let hub = &fills[g[0]];
        let z = &fills[canon_outer[&WindowedSpace::restrict(hub, &outer1)]];
        let p = WindowedSpace::restrict(hub, &s1_slots);
        pot1.id(&p);
        let xs = glue(z, &fills[canon_s1[&p]], &d1_slots)?;
        for &j in &g[1..] {
            let q = WindowedSpace::restrict(&fills[j], &s1_slots);
            let ys = glue(z, &fills[canon_s1[&q]], &d1_slots)?;
            let value = psi.eval(&ws.view(&xs), &ws.view(&ys), &ws.diff(&xs, &ys))?;
            pot1.link(&p, &q, value)?;
        }
    }
    let phi1 = site_indexed(&s1, pot1.solve());
    let stage_one_error = certify(ws, &phi1, psi.as_ref(), b)?.max_error;

    // Stage two.
    let rest: Arc<dyn Cocycle> = Arc::new(Combination::difference(psi.clone(), phi1.clone()));
    let (radius_two, d2) = continuity_set(ws, rest.as_ref(), b, delta_out)?;
    let d2 = d2.union(&d1);
    let d2_slots = ws.slots(&d2)?;
    let outer2 = ws.slots(&d2.difference(b))?;
    let canon_outer2 = ws.canonical(&d2.difference(b))?;
    let mut pot2 = Potential::new();
    for g in ws.groups(b) {
        let hub = &fills[g[0]];
        let z = &fills[canon_outer2[&WindowedSpace::restrict(hub, &outer2)]];
        let p = WindowedSpace::restrict(hub, &d2_slots);
        pot2.id(&p);
        let xs = glue(z, hub, &d2_slots)?;
        for &j in &g[1..] {
            let ys = glue(z, &fills[j], &d2_slots)?;
            let value = rest.eval(&ws.view(&xs), &ws.view(&ys), &ws.diff(&xs, &ys))?;
            pot2.link(&p, &WindowedSpace::restrict(&fills[j], &d2_slots), value)?;
        }
    }
    let phi2 = site_indexed(&d2, pot2.solve());
    let interaction = phi1.combine(1.0, &phi2)?;

    let norm_on_a = interaction.entries().iter().filter(|e| e.shape.meets(a)).map(|e| e.sup()).sum();
    let certificate = certify(ws, &interaction, psi.as_ref(), b)?;
    let report = ApproxReport {
        a: WindowedSpace::describe(a, dim),
        b: WindowedSpace::describe(b, dim),
        eps_in,
        delta_out,
        hypothesis,
        radius_one,
        radius_two,
        stage_one_error,
        norm_on_a,
        certificate,
    };
    Ok(ApproxExtension { interaction, report })
}

/// `ε_n = ε₀ 2^{-n}` for `n = 0..=steps`.
pub fn epsilon_schedule(eps0: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|n| eps0 * 0.5f64.powi(n as i32)).collect()
}

#[derive(Debug, Clone)]
pub struct NormSummable {
    pub interaction: Interaction,
    pub steps: Vec<ApproxReport>,
    /// `Σ_{n ≥ 1} 3 ε_n` over the later steps: bounds the mass added on sets meeting `A_1`.
    pub tail_bound: f64,
    pub certificate: Certificate,
}

/// Iterates [`kozlov_approx`] along a chain with tolerances `eps = [ε_0, ε_1, ..., ε_m]`: step `n`
/// uses `a = A_{n-1}`, `b = A_n`, `eps_in = ε_{n-1}`, `delta_out = ε_n`.
pub fn kozlov_norm_summable(
    ws: &WindowedSpace,
    psi: Arc<dyn Cocycle>,
    chain: &[Shape],
    eps: &[f64],
) -> Result<NormSummable> {
    if chain.is_empty() || eps.len() != chain.len() + 1 {
        return Err(BuildError::Parameter("need a nonempty chain and one more tolerance than chain sets".into()));
    }
    let mut phi = Interaction::site_indexed();
    let mut prev = Shape::empty();
    let mut steps = Vec::new();
    for (n, b) in chain.iter().enumerate() {
        let star: Arc<dyn Cocycle> = Arc::new(Combination::difference(psi.clone(), phi.clone()));
        let step = kozlov_approx(ws, star, &prev, b, eps[n], eps[n + 1])?;
        phi = phi.combine(1.0, &step.interaction)?;
        steps.push(step.report);
        prev = prev.union(b);
    }
    let tail_bound = eps[1..chain.len()].iter().map(|e| 3.0 * e).sum();
    let certificate = certify(ws, &phi, psi.as_ref(), &prev)?;
    Ok(NormSummable { interaction: phi, steps, tail_bound, certificate })
}
