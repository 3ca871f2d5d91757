//! Specification kernels on finite regions and the cocycle recovered from a specification.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use lattice_core::{
    checks::memory_set, AsymptoticPair, Configuration, Enumerator, Overlay, Pattern, SftSpace, Shape,
    View,
};

use crate::cocycle::Cocycle;
use crate::error::{CocycleError, Result};

/// A family of probability kernels `K_A(x, ·)` on patterns over finite regions `A`.
pub trait Specification {
    /// `K_A(x, [w])` for a pattern `w` on `region` (symbols in site order).
    fn prob(&self, region: &Shape, boundary: &Configuration, w: &[u8]) -> Result<f64>;
}

/// The Gibbs specification `K_A(x, [w]) ∝ exp(-ψ(x, x_{A^c} ∨ w))` over `L_{A|x}`.
pub struct GibbsSpec<'a> {
    pub sft: &'a SftSpace,
    pub cocycle: &'a dyn Cocycle,
    pub budget: u64,
}

impl<'a> GibbsSpec<'a> {
    pub fn new(sft: &'a SftSpace, cocycle: &'a dyn Cocycle, budget: u64) -> Self {
        GibbsSpec { sft, cocycle, budget }
    }

    pub fn kernel(&self, region: &Shape, boundary: &Configuration) -> Result<Kernel> {
        Kernel::build(self, region, boundary.clone())
    }

    /// The kernel with the boundary given only on an annulus around the region. The annulus
    /// must contain every site the admissibility test and the cocycle can look at.
    pub fn kernel_from_annulus(&self, region: &Shape, annulus: &Pattern) -> Result<Kernel> {
        let mut needed = memory_set(self.sft, region);
        if let Some(m) = self.cocycle.memory_set(region) {
            needed = needed.union(&m);
        }
        let needed = needed.difference(region);
        if !needed.is_subset(annulus.shape()) {
            return Err(CocycleError::Precondition(format!(
                "annulus of {} sites does not cover the {} boundary sites the kernel depends on",
                annulus.len(),
                needed.len()
            )));
        }
        let bg = Configuration::constant(self.sft.dimension(), self.sft.order()[0]).with_pattern(annulus);
        Kernel::build(self, region, bg)
    }
}

impl Specification for GibbsSpec<'_> {
    fn prob(&self, region: &Shape, boundary: &Configuration, w: &[u8]) -> Result<f64> {
        self.kernel(region, boundary)?.prob(w)
    }
}

/// A fully enumerated kernel: the admissible fillings and their probabilities.
#[derive(Debug, Clone)]
pub struct Kernel {
    region: Shape,
    probs: BTreeMap<Vec<u8>, f64>,
}

impl Kernel {
    fn build(spec: &GibbsSpec<'_>, region: &Shape, boundary: Configuration) -> Result<Kernel> {
        let e = Enumerator::for_window(spec.sft, region, Some(&boundary), spec.budget);
        let mut logw: Vec<(Vec<u8>, f64)> = Vec::new();
        let mut failure = None;
        e.for_each(|w| {
            let y = Overlay::new(&boundary, region, w);
            match spec.cocycle.eval(&boundary, &y, region) {
                Ok(v) => {
                    logw.push((w.to_vec(), -v));
                    ControlFlow::Continue(())
                }
                Err(err) => {
                    failure = Some(err);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(err) = failure {
            return Err(err);
        }
        if logw.is_empty() {
            return Err(CocycleError::Domain("no admissible filling for this boundary".into()));
        }
        let top = logw.iter().map(|(_, l)| *l).fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = logw.iter().map(|(_, l)| (l - top).exp()).sum();
        let probs = logw.into_iter().map(|(w, l)| (w, (l - top).exp() / z)).collect();
        Ok(Kernel { region: region.clone(), probs })
    }

    pub fn region(&self) -> &Shape {
        &self.region
    }

    pub fn support(&self) -> impl Iterator<Item = &[u8]> {
        self.probs.keys().map(|w| w.as_slice())
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, w: &[u8]) -> Result<f64> {
        if w.len() != self.region.len() {
            return Err(CocycleError::Precondition("pattern does not fit the region".into()));
        }
        Ok(self.probs.get(w).copied().unwrap_or(0.0))
    }

    /// `K_A(x, [v])` for a pattern `v` on a subset of the region.
    pub fn marginal(&self, sub: &Shape, v: &[u8]) -> Result<f64> {
        let idx: Vec<usize> = sub
            .iter()
            .map(|s| self.region.index_of(s))
            .collect::<Option<_>>()
            .ok_or_else(|| CocycleError::Precondition("marginal outside the region".into()))?;
        Ok(self
            .probs
            .iter()
            .filter(|(w, _)| idx.iter().zip(v).all(|(&i, &a)| w[i] == a))
            .map(|(_, p)| p)
            .sum())
    }
}

/// `ψ(x, y) = log K_A(x, [x_A]) - log K_A(x, [y_A])` with `A` the disagreement set.
pub fn cocycle_from_spec(spec: &dyn Specification, pair: &AsymptoticPair) -> Result<f64> {
    let a = pair.disagreement();
    if a.is_empty() {
        return Ok(0.0);
    }
    let xa: Vec<u8> = a.iter().map(|s| pair.left.at(s)).collect();
    let ya: Vec<u8> = a.iter().map(|s| pair.right.at(s)).collect();
    let px = spec.prob(a, &pair.left, &xa)?;
    let py = spec.prob(a, &pair.left, &ya)?;
    if px <= 0.0 || py <= 0.0 {
        return Err(CocycleError::Domain("kernel gives zero mass to one side of the pair".into()));
    }
    Ok(px.ln() - py.ln())
}
