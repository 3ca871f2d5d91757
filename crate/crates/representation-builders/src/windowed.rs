//! A configuration space restricted to a finite window with a fixed boundary outside it.

use std::collections::HashMap;

use lattice_core::{Configuration, Enumerator, Overlay, SftSpace, Shape, Site};

use crate::error::{BuildError, Result};

/// All admissible configurations that agree with `boundary` off `window`.
///
/// Fills are stored in lexicographic order of their symbols (listed in window site order),
/// so the first fill with a given restriction is the canonical element of that cylinder.
#[derive(Debug, Clone)]
pub struct WindowedSpace {
    sft: SftSpace,
    window: Shape,
    boundary: Configuration,
    fills: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl WindowedSpace {
    pub fn new(sft: &SftSpace, window: Shape, boundary: Configuration, budget: u64) -> Result<Self> {
        if sft.at_most_one().is_some() {
            return Err(BuildError::Precondition("count constraints are not supported in windowed spaces".into()));
        }
        let mut fills = Enumerator::for_window(sft, &window, Some(&boundary), budget).collect()?;
        fills.sort_unstable();
        if fills.is_empty() {
            return Err(BuildError::Precondition("no admissible configuration fits the boundary".into()));
        }
        let index = fills.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        Ok(WindowedSpace { sft: sft.clone(), window, boundary, fills, index })
    }

    /// The window `[lo, hi]` in one dimension over a constant boundary symbol.
    pub fn interval(sft: &SftSpace, lo: i64, hi: i64, boundary_symbol: u8, budget: u64) -> Result<Self> {
        WindowedSpace::new(sft, Shape::interval(lo, hi), Configuration::constant(sft.dimension(), boundary_symbol), budget)
    }

    pub fn sft(&self) -> &SftSpace {
        &self.sft
    }

    pub fn window(&self) -> &Shape {
        &self.window
    }

    pub fn boundary(&self) -> &Configuration {
        &self.boundary
    }

    pub fn fills(&self) -> &[Vec<u8>] {
        &self.fills
    }

    pub fn len(&self) -> usize {
        self.fills.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fills.is_empty()
    }

    pub fn contains(&self, fill: &[u8]) -> bool {
        self.index.contains_key(fill)
    }

    pub fn view<'a>(&'a self, fill: &'a [u8]) -> Overlay<'a> {
        Overlay::new(&self.boundary, &self.window, fill)
    }

    /// Positions within a fill of the sites of `shape`, which must lie in the window.
    pub fn slots(&self, shape: &Shape) -> Result<Vec<usize>> {
        shape
            .iter()
            .map(|s| {
                self.window
                    .index_of(s)
                    .ok_or_else(|| BuildError::Precondition(format!("site {s} lies outside the window")))
            })
            .collect()
    }

    /// The sites of `shape` where two fills differ.
    pub fn diff(&self, a: &[u8], b: &[u8]) -> Shape {
        Shape::new(self.window.iter().zip(a.iter().zip(b)).filter(|(_, (p, q))| p != q).map(|(s, _)| s))
    }

    /// Fills grouped by their restriction to `window \ b`; each group is a class of `𝒯_b`.
    /// Groups and their members are in lexicographic order.
    pub fn groups(&self, b: &Shape) -> Vec<Vec<usize>> {
        let outside: Vec<usize> = self
            .window
            .iter()
            .enumerate()
            .filter(|(_, s)| !b.contains(*s))
            .map(|(i, _)| i)
            .collect();
        let mut by_key: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, f) in self.fills.iter().enumerate() {
            let key: Vec<u8> = outside.iter().map(|&j| f[j]).collect();
            let g = *by_key.entry(key).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        groups
    }

    /// Number of unordered pairs `{x, y}`, `x ≠ y`, in `𝒯_b`.
    pub fn pair_count(&self, b: &Shape) -> u64 {
        self.groups(b).iter().map(|g| (g.len() * (g.len() - 1) / 2) as u64).sum()
    }

    /// For every restriction to `shape`, the index of its canonical (least) fill.
    pub fn canonical(&self, shape: &Shape) -> Result<HashMap<Vec<u8>, usize>> {
        let slots = self.slots(shape)?;
        let mut out = HashMap::new();
        for (i, f) in self.fills.iter().enumerate() {
            out.entry(slots.iter().map(|&j| f[j]).collect()).or_insert(i);
        }
        Ok(out)
    }

    /// Restriction of a fill to the given slots.
    pub fn restrict(fill: &[u8], slots: &[usize]) -> Vec<u8> {
        slots.iter().map(|&j| fill[j]).collect()
    }

    /// Site lists for reports.
    pub fn describe(shape: &Shape, dim: usize) -> Vec<Vec<i64>> {
        shape.iter().map(|s: Site| s.coords(dim)).collect()
    }
}
