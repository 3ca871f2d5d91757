use crate::error::{LatticeError, Result};
use crate::shape::Shape;
use crate::site::Site;

/// A symbol assignment on a finite shape; `symbols[i]` belongs to `shape.sites()[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    shape: Shape,
    symbols: Vec<u8>,
}

impl Pattern {
    pub fn new(shape: Shape, symbols: Vec<u8>) -> Result<Self> {
        if shape.len() != symbols.len() {
            return Err(LatticeError::LengthMismatch { sites: shape.len(), symbols: symbols.len() });
        }
        Ok(Pattern { shape, symbols })
    }

    /// Build from unordered `(site, symbol)` pairs; later duplicates win.
    pub fn from_pairs<I: IntoIterator<Item = (Site, u8)>>(pairs: I) -> Self {
        let map: std::collections::BTreeMap<Site, u8> = pairs.into_iter().collect();
        let shape = Shape::new(map.keys().copied());
        Pattern { shape, symbols: map.into_values().collect() }
    }

    pub fn empty() -> Self {
        Pattern { shape: Shape::empty(), symbols: Vec::new() }
    }

    /// A one-dimensional word placed at `start`.
    pub fn word(start: i64, symbols: &[u8]) -> Self {
        let shape = Shape::interval(start, start + symbols.len() as i64 - 1);
        Pattern { shape, symbols: symbols.to_vec() }
    }

    pub fn uniform(shape: Shape, symbol: u8) -> Self {
        let symbols = vec![symbol; shape.len()];
        Pattern { shape, symbols }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, s: Site) -> Option<u8> {
        self.shape.index_of(s).map(|i| self.symbols[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Site, u8)> + '_ {
        self.shape.iter().zip(self.symbols.iter().copied())
    }

    /// Restriction to a sub-shape; `None` if `sub` is not contained in the shape.
    pub fn restrict(&self, sub: &Shape) -> Option<Pattern> {
        let symbols = sub.iter().map(|s| self.get(s)).collect::<Option<Vec<u8>>>()?;
        Some(Pattern { shape: sub.clone(), symbols })
    }

    /// The join `self ∨ other`; `None` when they disagree on the overlap.
    pub fn join(&self, other: &Pattern) -> Option<Pattern> {
        for (s, a) in other.iter() {
            if let Some(b) = self.get(s) {
                if a != b {
                    return None;
                }
            }
        }
        Some(Pattern::from_pairs(self.iter().chain(other.iter())))
    }

    /// Overwrite (or add) one site.
    pub fn with(&self, s: Site, a: u8) -> Pattern {
        match self.shape.index_of(s) {
            Some(i) => {
                let mut p = self.clone();
                p.symbols[i] = a;
                p
            }
            None => Pattern::from_pairs(self.iter().chain(std::iter::once((s, a)))),
        }
    }

    pub fn translate(&self, t: Site) -> Pattern {
        Pattern { shape: self.shape.translate(t), symbols: self.symbols.clone() }
    }

    /// Translate so that the least site is the origin.
    pub fn normalized(&self) -> Pattern {
        let (shape, _) = self.shape.normalized();
        Pattern { shape, symbols: self.symbols.clone() }
    }

    /// Whether `self`, moved by `t`, occurs inside `host`.
    pub fn occurs_at(&self, host: &Pattern, t: Site) -> bool {
        self.iter().all(|(s, a)| host.get(s + t) == Some(a))
    }
}
