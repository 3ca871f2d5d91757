//! The [`Cocycle`] trait and the generic cocycles used across the workspace.

use std::collections::HashMap;
use std::sync::Arc;

use lattice_core::{
    checks::{pivot_path, zeta_symbol, MoveOrder},
    AsymptoticPair, Configuration, Overlay, Pattern, SftSpace, Shape, Site, View,
};

use crate::error::{CocycleError, Result};
use crate::interaction::Interaction;

/// A real function on asymptotic pairs that is additive along chains and shift-invariant.
///
/// `eval` receives two views and a finite set outside of which they agree.
pub trait Cocycle: Send + Sync {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> Result<f64>;

    /// A finite `G` such that `x ↦ ψ(x, ζ_0 x)` only reads `x_G` (for the ζ of the
    /// underlying space), when known.
    fn generator_shape(&self) -> Option<Shape> {
        None
    }

    /// A finite set `D ⊇ b` such that, on pairs differing inside `b`, the value only depends
    /// on the restrictions to `D`.
    fn memory_set(&self, _b: &Shape) -> Option<Shape> {
        None
    }

    /// An upper bound on `|ψ(x,y) - ψ(x',y')|` over pairs differing inside `b` whose
    /// restrictions to `b + [-r, r]^d` coincide.
    fn modulus(&self, _b: &Shape, _r: i64) -> Option<f64> {
        None
    }

    fn as_interaction(&self) -> Option<&Interaction> {
        None
    }

    fn integer_valued(&self) -> bool {
        false
    }
}

/// Every site of `c` lies in `b + [-r, r]^d`.
pub fn near(c: &Shape, b: &Shape, r: i64) -> bool {
    c.iter().all(|s| b.iter().any(|t| (s - t).linf() <= r))
}

pub fn eval_pair(c: &dyn Cocycle, pair: &AsymptoticPair) -> Result<f64> {
    c.eval(&pair.left, &pair.right, pair.disagreement())
}

pub fn eval_configs(c: &dyn Cocycle, x: &Configuration, y: &Configuration) -> Result<f64> {
    let pair = AsymptoticPair::new(x.clone(), y.clone())?;
    eval_pair(c, &pair)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroCocycle;

impl Cocycle for ZeroCocycle {
    fn eval(&self, _: &dyn View, _: &dyn View, _: &Shape) -> Result<f64> {
        Ok(0.0)
    }

    fn generator_shape(&self) -> Option<Shape> {
        Some(Shape::empty())
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        Some(b.clone())
    }

    fn modulus(&self, _: &Shape, _: i64) -> Option<f64> {
        Some(0.0)
    }

    fn integer_valued(&self) -> bool {
        true
    }
}

/// `ψ_Φ(x, y) = Σ_C Φ_C(y) - Φ_C(x)`.
impl Cocycle for Interaction {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> Result<f64> {
        Ok(self.energy_delta(x, y, diff))
    }

    fn generator_shape(&self) -> Option<Shape> {
        Some(self.reach(&Shape::singleton(Site::ORIGIN)))
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        Some(self.reach(b))
    }

    fn modulus(&self, b: &Shape, r: i64) -> Option<f64> {
        let loose: f64 = self
            .placements_meeting(b)
            .iter()
            .filter(|(_, c)| !near(c, b, r))
            .map(|(i, _)| 2.0 * self.entries()[*i].oscillation())
            .sum();
        Some(loose + 2.0 * self.tail_bound() * b.len() as f64)
    }

    fn as_interaction(&self) -> Option<&Interaction> {
        Some(self)
    }
}

/// `Δ_w(x, y) = Σ_i 1[w occurs in y at i] - 1[w occurs in x at i]`.
#[derive(Debug, Clone)]
pub struct PatternCount {
    word: Pattern,
}

impl PatternCount {
    pub fn new(word: &Pattern) -> Self {
        PatternCount { word: word.normalized() }
    }

    pub fn word(&self) -> &Pattern {
        &self.word
    }

    fn occurs(&self, x: &dyn View, t: Site) -> bool {
        self.word.iter().all(|(s, a)| x.at(s + t) == a)
    }
}

impl Cocycle for PatternCount {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> Result<f64> {
        let mut total = 0i64;
        for t in diff.minus(self.word.shape()).iter() {
            total += i64::from(self.occurs(y, t)) - i64::from(self.occurs(x, t));
        }
        Ok(total as f64)
    }

    fn generator_shape(&self) -> Option<Shape> {
        None
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        let s = self.word.shape();
        Some(b.minus(s).plus(s).union(b))
    }

    fn modulus(&self, b: &Shape, r: i64) -> Option<f64> {
        let s = self.word.shape();
        let loose = b.minus(s).iter().filter(|&t| !near(&s.translate(t), b, r)).count();
        Some(2.0 * loose as f64)
    }

    fn integer_valued(&self) -> bool {
        true
    }
}

/// `Σ_j c_j ψ_j`.
#[derive(Clone, Default)]
pub struct Combination {
    terms: Vec<(f64, Arc<dyn Cocycle>)>,
}

impl Combination {
    pub fn new() -> Self {
        Combination::default()
    }

    pub fn term(mut self, c: f64, psi: Arc<dyn Cocycle>) -> Self {
        self.terms.push((c, psi));
        self
    }

    /// `ψ - ψ_Φ`.
    pub fn difference(psi: Arc<dyn Cocycle>, phi: Interaction) -> Self {
        Combination::new().term(1.0, psi).term(-1.0, Arc::new(phi))
    }
}

fn union_all(parts: impl Iterator<Item = Option<Shape>>) -> Option<Shape> {
    let mut acc = Shape::empty();
    for p in parts {
        acc = acc.union(&p?);
    }
    Some(acc)
}

impl Cocycle for Combination {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> Result<f64> {
        let mut total = 0.0;
        for (c, psi) in &self.terms {
            total += c * psi.eval(x, y, diff)?;
        }
        Ok(total)
    }

    fn generator_shape(&self) -> Option<Shape> {
        union_all(self.terms.iter().map(|(_, p)| p.generator_shape()))
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        union_all(self.terms.iter().map(|(_, p)| p.memory_set(b)))
    }

    fn modulus(&self, b: &Shape, r: i64) -> Option<f64> {
        let mut total = 0.0;
        for (c, p) in &self.terms {
            total += c.abs() * p.modulus(b, r)?;
        }
        Some(total)
    }

    fn integer_valued(&self) -> bool {
        self.terms.iter().all(|(c, p)| c.fract() == 0.0 && p.integer_valued())
    }
}

/// Values overriding a base view; used to walk along a path of moves.
pub struct Patched<'a> {
    base: &'a dyn View,
    over: HashMap<Site, u8>,
}

impl<'a> Patched<'a> {
    pub fn new(base: &'a dyn View) -> Self {
        Patched { base, over: HashMap::new() }
    }

    pub fn set(&mut self, s: Site, a: u8) {
        self.over.insert(s, a);
    }
}

impl View for Patched<'_> {
    fn at(&self, s: Site) -> u8 {
        self.over.get(&s).copied().unwrap_or_else(|| self.base.at(s))
    }
}

pub type GeneratorFn = Arc<dyn Fn(&[u8]) -> f64 + Send + Sync>;

/// A cocycle specified by its generator `F(x) = ψ(x, ζ_0 x) = g(x_G)`, evaluated by walking
/// a single-site path from `x` to `y`. Needs the pivot property inside the search box.
#[derive(Clone)]
pub struct GeneratorCocycle {
    sft: SftSpace,
    shape: Shape,
    g: GeneratorFn,
    margin: i64,
    path_budget: usize,
    order: MoveOrder,
}

impl GeneratorCocycle {
    pub fn new(sft: SftSpace, shape: Shape, g: GeneratorFn) -> Self {
        GeneratorCocycle { sft, shape, g, margin: 1, path_budget: 1 << 20, order: MoveOrder::Forward }
    }

    /// The search box for paths is the disagreement set grown by `margin`.
    pub fn with_margin(mut self, margin: i64) -> Self {
        self.margin = margin;
        self
    }

    /// Order in which the path search tries moves; different orders give different paths.
    pub fn with_order(mut self, order: MoveOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_path_budget(mut self, budget: usize) -> Self {
        self.path_budget = budget;
        self
    }

    /// The generator of `ψ_Φ`, reading `x` on the sets of `Φ` through the origin together
    /// with the neighbourhood that decides `ζ_0`.
    pub fn from_interaction(sft: &SftSpace, phi: &Interaction) -> Self {
        let f = sft.forbidden_union();
        let context = Shape::singleton(Site::ORIGIN).plus(&f).minus(&f);
        let shape = phi.reach(&Shape::singleton(Site::ORIGIN)).union(&context);
        let bg = Configuration::constant(sft.dimension(), sft.order()[0]);
        let (space, g_shape, phi) = (sft.clone(), shape.clone(), phi.clone());
        let origin = Shape::singleton(Site::ORIGIN);
        let g: GeneratorFn = Arc::new(move |w: &[u8]| {
            let x = Overlay::new(&bg, &g_shape, w);
            let a = [zeta_symbol(&space, &x, Site::ORIGIN)];
            let y = Overlay::new(&x, &origin, &a);
            phi.energy_delta(&x, &y, &origin)
        });
        GeneratorCocycle::new(sft.clone(), shape, g)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    fn generator_at(&self, z: &dyn View, k: Site, buf: &mut Vec<u8>) -> f64 {
        buf.clear();
        buf.extend(self.shape.iter().map(|s| z.at(s + k)));
        (self.g)(buf)
    }
}

impl Cocycle for GeneratorCocycle {
    fn eval(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> Result<f64> {
        if diff.is_empty() {
            return Ok(0.0);
        }
        let dim = self.sft.dimension();
        let search = diff.plus(&Shape::ball(self.margin, dim));
        let path = pivot_path(&self.sft, x, y, &search, self.order, self.path_budget)
            .map_err(CocycleError::from)?;
        let mut z = Patched::new(x);
        let mut buf = Vec::with_capacity(self.shape.len());
        let mut total = 0.0;
        for (k, a) in path {
            total += self.generator_at(&z, k, &mut buf);
            z.set(k, a);
            total -= self.generator_at(&z, k, &mut buf);
        }
        Ok(total)
    }

    fn generator_shape(&self) -> Option<Shape> {
        Some(self.shape.clone())
    }

    fn memory_set(&self, b: &Shape) -> Option<Shape> {
        let search = b.plus(&Shape::ball(self.margin, self.sft.dimension()));
        Some(search.plus(&self.shape).union(&search))
    }
}
