//! The NS and VS norms of an interaction and the Sullivan norm of a cocycle.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::ControlFlow;

use lattice_core::{
    enumerate::occurrences, language, zeta_symbol, Configuration, Enumerator, Overlay, Pattern,
    SftSpace, Shape, Site, View,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cocycle::Cocycle;
use crate::error::{CocycleError, Result};
use crate::interaction::{encode_word, Interaction, Mode};
use crate::random::WindowSampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    pub mode: Bound,
    pub witness: Option<serde_json::Value>,
    pub budget: BTreeMap<String, u64>,
}

impl NormReport {
    fn new(value: f64, mode: Bound) -> Self {
        NormReport { value, mode, witness: None, budget: BTreeMap::new() }
    }

    fn spent(mut self, key: &str, n: u64) -> Self {
        self.budget.insert(key.to_string(), n);
        self
    }
}

fn exactness(sft: &SftSpace) -> Bound {
    if sft.asserted.ssf || sft.forbidden().is_empty() {
        Bound::Exact
    } else {
        Bound::UpperBound
    }
}

/// `Σ_{S ∋ 0} ‖Φ_S‖_∞`, with the sup taken over the language of `S` (extension checked
/// through `halo`). For a shift-invariant interaction each stored shape contributes
/// `|S| · ‖Φ_S‖_∞`.
pub fn norm_ns(phi: &Interaction, sft: &SftSpace, halo: i64, budget: u64) -> Result<NormReport> {
    if phi.mode() != Mode::ShiftInvariant {
        return Err(CocycleError::Unsupported("the NS norm needs a shift-invariant interaction".into()));
    }
    let mut total = 0.0;
    let mut witness = None;
    let mut best = f64::NEG_INFINITY;
    let mut patterns = 0u64;
    for e in phi.entries() {
        if e.table.is_empty() {
            continue;
        }
        let lang: HashSet<Vec<u8>> = language(sft, &e.shape, halo, budget)?
            .into_iter()
            .map(|p| p.symbols().to_vec())
            .collect();
        patterns += lang.len() as u64;
        let mut sup = 0.0f64;
        for (w, v) in &e.table {
            if lang.contains(w) && v.abs() > sup {
                sup = v.abs();
                let term = e.shape.len() as f64 * sup;
                if term > best {
                    best = term;
                    witness = Some(json!({
                        "shape": e.shape.iter().map(|s| s.coords(sft.dimension())).collect::<Vec<_>>(),
                        "pattern": encode_word(sft, w),
                        "value": v,
                    }));
                }
            }
        }
        total += e.shape.len() as f64 * sup;
    }
    let mut r = NormReport::new(total, exactness(sft)).spent("patterns", patterns);
    r.witness = witness;
    Ok(r)
}

/// `Σ_S Σ_{s ∈ S} Var_s(Φ_S)`, where `Var_s` is the largest change of `Φ_S` under a single
/// admissible change at `s`. Admissibility is checked inside `S + [-halo, halo]^d`.
pub fn norm_vs(phi: &Interaction, sft: &SftSpace, halo: i64, budget: u64) -> Result<NormReport> {
    if !sft.asserted.pivot {
        return Err(CocycleError::Precondition(
            "the VS norm is only meaningful for spaces asserted to have the pivot property".into(),
        ));
    }
    let mut total = 0.0;
    let mut patterns = 0u64;
    let mut witness = None;
    let mut best = f64::NEG_INFINITY;
    for e in phi.entries() {
        if e.table.is_empty() {
            continue;
        }
        let ext = e.shape.plus(&Shape::ball(halo, sft.dimension()));
        let sites = ext.sites().to_vec();
        let slot_of = |s: Site| ext.index_of(s);
        let none = |_: Site| -> Option<u8> { None };
        let mut touching = vec![Vec::new(); sites.len()];
        for c in occurrences(sft, &sites, &slot_of, &none) {
            for &(i, _) in &c {
                touching[i].push(c.clone());
            }
        }
        let s_idx: Vec<usize> = e.shape.iter().map(|s| ext.index_of(s).expect("inside")).collect();
        let mut var = vec![0.0f64; s_idx.len()];
        let mut var_w = vec![None; s_idx.len()];
        let mut key = vec![0u8; s_idx.len()];
        let marked = sft.at_most_one();
        Enumerator::new(sft, sites.clone(), None, budget).for_each(|w| {
            patterns += 1;
            for (k, &i) in s_idx.iter().enumerate() {
                key[k] = w[i];
            }
            let here = e.table.get(&key).copied().unwrap_or(0.0);
            let mut flipped = w.to_vec();
            for (k, &i) in s_idx.iter().enumerate() {
                let old = w[i];
                for b in 0..sft.q() as u8 {
                    if b == old {
                        continue;
                    }
                    flipped[i] = b;
                    let ok = !touching[i].iter().any(|c| c.iter().all(|&(j, a)| flipped[j] == a))
                        && marked.is_none_or(|m| flipped.iter().filter(|&&a| a == m).count() <= 1);
                    if ok {
                        key[k] = b;
                        let there = e.table.get(&key).copied().unwrap_or(0.0);
                        let d = (here - there).abs();
                        if d > var[k] {
                            var[k] = d;
                            var_w[k] = Some((w[i], b, key.clone()));
                        }
                        key[k] = old;
                    }
                }
                flipped[i] = old;
            }
            ControlFlow::Continue(())
        })?;
        for (k, v) in var.iter().enumerate() {
            total += v;
            if *v > best {
                best = *v;
                witness = var_w[k].as_ref().map(|(a, b, key)| {
                    json!({
                        "shape": e.shape.iter().map(|s| s.coords(sft.dimension())).collect::<Vec<_>>(),
                        "site": e.shape.sites()[k].coords(sft.dimension()),
                        "pattern": encode_word(sft, key),
                        "from": sft.symbol_name(*a),
                        "to": sft.symbol_name(*b),
                        "variation": v,
                    })
                });
            }
        }
    }
    let mut r = NormReport::new(total, exactness(sft)).spent("patterns", patterns);
    r.witness = witness;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SullivanMethod {
    /// Enumerate every admissible neighbourhood (extension checked through `halo`).
    Exact { halo: i64 },
    /// Evaluate on `count` random admissible windows; gives a lower bound.
    Sample { count: usize, seed: u64, halo: i64 },
}

/// `sup_x |ψ(x, ζ_0 x)|`.
///
/// Shift-invariant interaction cocycles on one-dimensional spaces are handled by a
/// sliding-window maximization over positions, which stays exact for large ranges. Other
/// cocycles need a finite generator shape.
pub fn norm_sullivan(c: &dyn Cocycle, sft: &SftSpace, method: SullivanMethod, budget: u64) -> Result<NormReport> {
    if let (SullivanMethod::Exact { halo }, Some(phi)) = (method, c.as_interaction()) {
        if sft.dimension() == 1 && phi.mode() == Mode::ShiftInvariant && sft.at_most_one().is_none() {
            let (v, states) = sullivan_1d(phi, sft, halo, budget)?;
            return Ok(NormReport::new(v, exactness(sft)).spent("states", states));
        }
    }
    let g = c
        .generator_shape()
        .or_else(|| c.memory_set(&Shape::singleton(Site::ORIGIN)))
        .ok_or_else(|| CocycleError::Unsupported("the cocycle exposes no finite generator shape".into()))?;
    let f = sft.forbidden_union();
    let core = g.union(&Shape::singleton(Site::ORIGIN).plus(&f).minus(&f));
    let bg = Configuration::constant(sft.dimension(), sft.order()[0]);
    let origin = Shape::singleton(Site::ORIGIN);

    let mut best = 0.0f64;
    let mut best_w: Option<Vec<u8>> = None;
    let mut failure = None;
    let mut visit = |w: &[u8]| -> ControlFlow<()> {
        let x = Overlay::new(&bg, &core, w);
        let a = [zeta_symbol(sft, &x, Site::ORIGIN)];
        if a[0] == x.at(Site::ORIGIN) {
            return ControlFlow::Continue(());
        }
        let y = Overlay::new(&x, &origin, &a);
        match c.eval(&x, &y, &origin) {
            Ok(v) => {
                if v.abs() > best {
                    best = v.abs();
                    best_w = Some(w.to_vec());
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    };

    let (mode, spent) = match method {
        SullivanMethod::Exact { halo } => {
            let ext = core.plus(&Shape::ball(halo, sft.dimension()));
            let mut order = core.sites().to_vec();
            order.extend(ext.difference(&core).iter());
            let nodes = Enumerator::new(sft, order, None, budget).for_each_prefix(core.len(), &mut visit)?;
            (exactness(sft), ("nodes", nodes))
        }
        SullivanMethod::Sample { count, seed, halo } => {
            let ext = core.plus(&Shape::ball(halo, sft.dimension()));
            let sampler = WindowSampler::new(sft, ext.clone(), budget);
            let idx: Vec<usize> = core.iter().map(|s| ext.index_of(s).expect("inside")).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let full = sampler.sample(&mut rng)?;
                let w: Vec<u8> = idx.iter().map(|&i| full[i]).collect();
                if visit(&w).is_break() {
                    break;
                }
            }
            (Bound::LowerBound, ("samples", count as u64))
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let mut r = NormReport::new(best, mode).spent(spent.0, spent.1);
    r.witness = best_w.map(|w| {
        json!({
            "shape": core.iter().map(|s| s.coords(sft.dimension())).collect::<Vec<_>>(),
            "pattern": encode_word(sft, &w),
        })
    });
    Ok(r)
}

/// Exact `sup_x |Σ_{C ∋ 0} Φ_C(ζ_0 x) - Φ_C(x)|` for a shift-invariant 1d interaction.
///
/// Scans positions `-L..=L` left to right keeping, for every admissible suffix of length
/// `K`, the largest and smallest partial sum; the placements through the origin all fit in
/// windows of width `R + 1` ending at `0..=R`. When no safe symbol is declared the symbol
/// written by `ζ_0` depends on the neighbourhood of the origin, so the scan is repeated for
/// every admissible core word around it.
fn sullivan_1d(phi: &Interaction, sft: &SftSpace, halo: i64, budget: u64) -> Result<(f64, u64)> {
    let entries: Vec<(Vec<usize>, &BTreeMap<Vec<u8>, f64>)> = phi
        .entries()
        .iter()
        .filter(|e| !e.table.is_empty())
        .map(|e| (e.shape.iter().map(|s| s.x as usize).collect(), &e.table))
        .collect();
    let reach = entries.iter().map(|(o, _)| *o.last().expect("nonempty")).max().unwrap_or(0);
    let forbidden: Vec<(usize, Vec<(usize, u8)>)> = sft
        .forbidden()
        .iter()
        .map(|f| (f.shape().diameter() as usize, f.iter().map(|(s, a)| (s.x as usize, a)).collect()))
        .collect();
    let fw = forbidden.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let r = sft.interaction_radius();
    let l = reach as i64 + r + halo;
    let keep = reach.max(fw).max(1);

    let cores: Vec<Option<(Vec<u8>, u8)>> = match sft.asserted.safe_symbol {
        Some(_) => vec![None],
        None => {
            let w = Shape::interval(-r, r);
            let mut out = Vec::new();
            for p in Enumerator::new(sft, w.sites().to_vec(), None, budget).collect()? {
                let pat = Pattern::new(w.clone(), p.clone())?;
                let z = sft
                    .order()
                    .into_iter()
                    .find(|&a| sft.pattern_admissible_at(&pat.with(Site::ORIGIN, a), Site::ORIGIN))
                    .unwrap_or(p[r as usize]);
                out.push(Some((p, z)));
            }
            out
        }
    };
    let safe = sft.asserted.safe_symbol;

    let mut best = 0.0f64;
    let mut states_used = 0u64;
    let mut key = Vec::new();
    let mut key2 = Vec::new();
    for core in &cores {
        let mut states: HashMap<Vec<u8>, (f64, f64)> = HashMap::from([(Vec::new(), (0.0, 0.0))]);
        for p in -l..=l {
            let mut next: HashMap<Vec<u8>, (f64, f64)> = HashMap::new();
            for (st, &(hi, lo)) in &states {
                let mut hist = st.clone();
                hist.push(0);
                let last = hist.len() - 1;
                for a in 0..sft.q() as u8 {
                    if let Some((word, _)) = core {
                        if (-r..=r).contains(&p) && word[(p + r) as usize] != a {
                            continue;
                        }
                    }
                    hist[last] = a;
                    let ok = forbidden.iter().all(|(d, f)| {
                        if *d > last {
                            return true;
                        }
                        let start = last - d;
                        !f.iter().all(|&(o, b)| hist[start + o] == b)
                    });
                    if !ok {
                        continue;
                    }
                    let mut term = 0.0;
                    if (0..=reach as i64).contains(&p) {
                        let start = last - reach;
                        let o0 = reach - p as usize;
                        let z = match core {
                            Some((_, z)) => *z,
                            None => safe.expect("safe symbol"),
                        };
                        if hist[start + o0] != z {
                            for (offs, table) in &entries {
                                if offs.binary_search(&o0).is_err() {
                                    continue;
                                }
                                key.clear();
                                key2.clear();
                                for &o in offs {
                                    key.push(hist[start + o]);
                                    key2.push(if o == o0 { z } else { hist[start + o] });
                                }
                                term += table.get(&key2).copied().unwrap_or(0.0)
                                    - table.get(&key).copied().unwrap_or(0.0);
                            }
                        }
                    }
                    let from = hist.len().saturating_sub(keep);
                    let slot = next.entry(hist[from..].to_vec()).or_insert((f64::NEG_INFINITY, f64::INFINITY));
                    slot.0 = slot.0.max(hi + term);
                    slot.1 = slot.1.min(lo + term);
                }
            }
            states_used += next.len() as u64;
            if states_used > budget {
                return Err(CocycleError::Budget(format!("{budget} scan states")));
            }
            states = next;
        }
        for (hi, lo) in states.values() {
            best = best.max(hi.abs()).max(lo.abs());
        }
    }
    Ok((best, states_used))
}
