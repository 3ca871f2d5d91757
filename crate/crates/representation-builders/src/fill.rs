//! Filling the annulus `F_{n+N} \ F_n` between a configuration and a fixed anchor.

use std::collections::HashMap;

use lattice_core::{Configuration, SftSpace, Shape, Site, View};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{BuildError, Result};

/// `(u + K) ∩ (v + K) = ∅` for all distinct `u, v` in `d`.
pub fn is_separated(d: &Shape, k: &Shape) -> bool {
    let diffs = k.minus(k);
    let sites = d.sites();
    sites.iter().enumerate().all(|(i, &u)| sites[i + 1..].iter().all(|&v| !diffs.contains(u - v)))
}

/// Partitions `f` into `K`-separated classes: a maximal `K`-separated subset `D` (greedy in site
/// order) is translated by every `u ∈ K + K` and intersected with `f`, then made disjoint in
/// that order. Empty classes are dropped; `K` must be symmetric and contain the origin.
pub fn separated_partition(f: &Shape, k: &Shape) -> Result<Vec<Shape>> {
    if !k.contains(Site::ORIGIN) || k.neg() != *k {
        return Err(BuildError::Parameter("K must be symmetric and contain the origin".into()));
    }
    let diffs = k.minus(k);
    let mut d: Vec<Site> = Vec::new();
    for s in f.iter() {
        if d.iter().all(|&u| !diffs.contains(s - u)) {
            d.push(s);
        }
    }
    let d = Shape::new(d);
    let mut covered = Shape::empty();
    let mut classes = Vec::new();
    for u in k.plus(k).iter() {
        let class = d.translate(u).intersection(f).difference(&covered);
        if !class.is_empty() {
            covered = covered.union(&class);
            classes.push(class);
        }
    }
    debug_assert_eq!(covered, *f);
    Ok(classes)
}

/// The box `[-n, n]^d`.
pub fn box_shape(n: i64, dim: usize) -> Shape {
    Shape::ball(n, dim)
}

/// Data for the fill map `z(x, n)`: the space, the anchor `w` and the constants
/// `K = F_{N'} ⊇` every forbidden shape, `N = 2N'`.
#[derive(Debug, Clone)]
pub struct FillContext {
    sft: SftSpace,
    anchor: Configuration,
    fill_radius: i64,
    k: Shape,
}

impl FillContext {
    pub fn new(sft: &SftSpace, anchor: Configuration) -> Result<Self> {
        if !sft.asserted.ssf {
            return Err(BuildError::Precondition("the fill map needs a space asserted single-site fillable".into()));
        }
        if sft.at_most_one().is_some() {
            return Err(BuildError::Precondition("count constraints are not supported by the fill map".into()));
        }
        if anchor.dim() != sft.dimension() || !sft.background_admissible(&anchor) {
            return Err(BuildError::Precondition("the anchor is not an admissible configuration".into()));
        }
        let fill_radius = sft.forbidden().iter().flat_map(|p| p.shape().iter()).map(|s| s.linf()).max().unwrap_or(0);
        let k = box_shape(fill_radius, sft.dimension());
        Ok(FillContext { sft: sft.clone(), anchor, fill_radius, k })
    }

    pub fn sft(&self) -> &SftSpace {
        &self.sft
    }

    pub fn anchor(&self) -> &Configuration {
        &self.anchor
    }

    /// `N'`.
    pub fn fill_radius(&self) -> i64 {
        self.fill_radius
    }

    /// `N = 2N'`.
    pub fn margin(&self) -> i64 {
        2 * self.fill_radius
    }

    pub fn k_shape(&self) -> &Shape {
        &self.k
    }

    /// `F_{n+N} \ F_n` split into `K`-separated classes, filled in this order.
    pub fn partition(&self, n: i64) -> Result<Vec<Shape>> {
        let dim = self.sft.dimension();
        let annulus = box_shape(n + self.margin(), dim).difference(&box_shape(n, dim));
        separated_partition(&annulus, &self.k)
    }

    /// `Λ = F_{ℓN}` for `ℓ` classes.
    pub fn locality_shape(&self, n: i64) -> Result<Shape> {
        let l = self.partition(n)?.len() as i64;
        Ok(box_shape(l * self.margin(), self.sft.dimension()))
    }
}

/// A pattern under construction: assigned sites, everything else unknown.
struct Partial<'a> {
    sft: &'a SftSpace,
    known: HashMap<Site, u8>,
    outer: i64,
    anchor: &'a Configuration,
}

impl Partial<'_> {
    fn get(&self, s: Site) -> Option<u8> {
        if s.linf() > self.outer {
            Some(self.anchor.at(s))
        } else {
            self.known.get(&s).copied()
        }
    }

    /// No forbidden pattern through `s` is fully determined and matched.
    fn clean_at(&self, s: Site) -> bool {
        self.sft.forbidden().iter().all(|f| {
            f.shape().iter().all(|a| {
                let t = s - a;
                !f.iter().all(|(o, sym)| self.get(o + t) == Some(sym))
            })
        })
    }
}

/// `z(x, n)`: `x` on `F_n`, the anchor outside `F_{n+N}`, and the annulus filled class by class
/// with the least symbol keeping the known part locally admissible.
pub fn build_fill(ctx: &FillContext, x: &dyn View, n: i64) -> Result<Configuration> {
    let m = ctx.margin();
    if n <= m {
        return Err(BuildError::Parameter(format!("the fill map needs n > N = {m}")));
    }
    let dim = ctx.sft.dimension();
    let inner = box_shape(n, dim);
    let mut partial = Partial {
        sft: &ctx.sft,
        known: inner.iter().map(|s| (s, x.at(s))).collect(),
        outer: n + m,
        anchor: &ctx.anchor,
    };
    let order = ctx.sft.order();
    for class in ctx.partition(n)? {
        // Sites of one class never share a forbidden occurrence, so each is filled against the
        // previous classes only.
        let mut chosen = Vec::with_capacity(class.len());
        for s in class.iter() {
            let mut pick = None;
            for &a in &order {
                partial.known.insert(s, a);
                if partial.clean_at(s) {
                    pick = Some(a);
                    break;
                }
            }
            partial.known.remove(&s);
            let a = pick.ok_or_else(|| BuildError::FillFailure { site: s.to_string() })?;
            chosen.push((s, a));
        }
        partial.known.extend(chosen);
    }
    let mut z = ctx.anchor.clone();
    for (s, a) in partial.known {
        z.set(s, a);
    }
    Ok(z)
}

/// Sites of `F_{n+N}` where two fills differ.
fn fill_diff(a: &Configuration, b: &Configuration, outer: i64, dim: usize) -> Shape {
    Shape::new(box_shape(outer, dim).iter().filter(|&s| a.at(s) != b.at(s)))
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LocalityReport {
    pub samples: u64,
    pub interior_changes: u64,
    pub margin_changes: u64,
    pub violations: u64,
    pub example: Option<String>,
}

/// Samples admissible `x` on `F_n` (anchor outside), changes one site `j ∈ F_n` to another
/// admissible symbol, and checks that `z` changes only at `j` when `j ∈ F_{n-N}` and only
/// inside `j + Λ` otherwise.
pub fn check_fill_locality(ctx: &FillContext, n: i64, samples: u64, seed: u64) -> Result<LocalityReport> {
    let dim = ctx.sft.dimension();
    let m = ctx.margin();
    let lambda = ctx.locality_shape(n)?;
    let inner = box_shape(n, dim);
    let deep = box_shape(n - m, dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LocalityReport::default();
    for _ in 0..samples {
        let x = random_inside(ctx, &inner, &mut rng)?;
        let j = inner.sites()[rng.gen_range(0..inner.len())];
        let alternatives: Vec<u8> = (0..ctx.sft.q() as u8)
            .filter(|&b| b != x.at(j) && ctx.sft.config_admissible_at(&x.with(j, b), j))
            .collect();
        if alternatives.is_empty() {
            continue;
        }
        let y = x.with(j, alternatives[rng.gen_range(0..alternatives.len())]);
        let (zx, zy) = (build_fill(ctx, &x, n)?, build_fill(ctx, &y, n)?);
        let changed = fill_diff(&zx, &zy, n + m, dim);
        let allowed = if deep.contains(j) {
            report.interior_changes += 1;
            Shape::singleton(j)
        } else {
            report.margin_changes += 1;
            lambda.translate(j)
        };
        report.samples += 1;
        if !changed.is_subset(&allowed) {
            report.violations += 1;
            report.example.get_or_insert_with(|| format!("site {j}: fill changed at {:?}", changed.sites()));
        }
    }
    Ok(report)
}

/// A random admissible pattern on `inner` (random admissible symbol site by site, checked
/// against the sites already placed and the anchor outside). Falls back to the anchor after
/// repeated dead ends.
fn random_inside(ctx: &FillContext, inner: &Shape, rng: &mut ChaCha8Rng) -> Result<Configuration> {
    let radius = inner.radius();
    'attempt: for _ in 0..64 {
        let mut partial = Partial { sft: &ctx.sft, known: HashMap::new(), outer: radius, anchor: &ctx.anchor };
        for s in inner.iter() {
            let mut options: Vec<u8> = (0..ctx.sft.q() as u8).collect();
            loop {
                if options.is_empty() {
                    continue 'attempt;
                }
                let a = options.swap_remove(rng.gen_range(0..options.len()));
                partial.known.insert(s, a);
                if partial.clean_at(s) {
                    break;
                }
            }
        }
        let mut x = ctx.anchor.clone();
        for (s, a) in partial.known {
            x.set(s, a);
        }
        if inner.iter().all(|s| ctx.sft.config_admissible_at(&x, s)) {
            return Ok(x);
        }
    }
    Ok(ctx.anchor.clone())
}
