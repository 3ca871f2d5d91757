use std::collections::BTreeMap;

use crate::error::{LatticeError, Result};
use crate::pattern::Pattern;
use crate::shape::Shape;
use crate::site::Site;

/// Anything that assigns a symbol to every site.
pub trait View {
    fn at(&self, s: Site) -> u8;
}

/// A configuration given by a rectangular periodic background and a finite patch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    dim: usize,
    period: [usize; 2],
    cell: Vec<u8>,
    patch: BTreeMap<Site, u8>,
}

impl Configuration {
    pub fn constant(dim: usize, symbol: u8) -> Self {
        Configuration { dim, period: [1, 1], cell: vec![symbol], patch: BTreeMap::new() }
    }

    /// `cell` is indexed row-major as `cell[x + px * y]` for `0 <= x < px`, `0 <= y < py`.
    pub fn periodic(dim: usize, period: [usize; 2], cell: Vec<u8>) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(LatticeError::BadDimension(dim));
        }
        let period = if dim == 1 { [period[0], 1] } else { period };
        if period[0] == 0 || period[1] == 0 || cell.len() != period[0] * period[1] {
            return Err(LatticeError::Parse(format!(
                "cell of length {} does not match period {:?}",
                cell.len(),
                period
            )));
        }
        Ok(Configuration { dim, period, cell, patch: BTreeMap::new() })
    }

    /// Background from a function of the site, sampled on one period.
    pub fn periodic_fn(dim: usize, period: [usize; 2], f: impl Fn(Site) -> u8) -> Self {
        let period = if dim == 1 { [period[0], 1] } else { period };
        let mut cell = Vec::with_capacity(period[0] * period[1]);
        for y in 0..period[1] as i64 {
            for x in 0..period[0] as i64 {
                cell.push(f(Site::new(x, y)));
            }
        }
        Configuration { dim, period, cell, patch: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> [usize; 2] {
        self.period
    }

    pub fn cell(&self) -> &[u8] {
        &self.cell
    }

    pub fn background_at(&self, s: Site) -> u8 {
        let px = self.period[0] as i64;
        let py = self.period[1] as i64;
        let i = s.x.rem_euclid(px) + px * s.y.rem_euclid(py);
        self.cell[i as usize]
    }

    pub fn background(&self) -> Configuration {
        Configuration { patch: BTreeMap::new(), ..self.clone() }
    }

    pub fn same_background(&self, other: &Configuration) -> bool {
        self.dim == other.dim && self.period == other.period && self.cell == other.cell
    }

    /// Set one site; entries equal to the background are dropped from the patch.
    pub fn set(&mut self, s: Site, a: u8) {
        if self.background_at(s) == a {
            self.patch.remove(&s);
        } else {
            self.patch.insert(s, a);
        }
    }

    pub fn with(&self, s: Site, a: u8) -> Configuration {
        let mut c = self.clone();
        c.set(s, a);
        c
    }

    pub fn with_pattern(&self, p: &Pattern) -> Configuration {
        let mut c = self.clone();
        for (s, a) in p.iter() {
            c.set(s, a);
        }
        c
    }

    pub fn patch(&self) -> &BTreeMap<Site, u8> {
        &self.patch
    }

    /// Sites where the configuration departs from its background.
    pub fn patch_support(&self) -> Shape {
        Shape::new(self.patch.keys().copied())
    }

    pub fn pattern(&self, shape: &Shape) -> Pattern {
        let symbols = shape.iter().map(|s| self.at(s)).collect();
        Pattern::new(shape.clone(), symbols).expect("lengths agree")
    }

    /// The shifted configuration `σ^k x`, defined by `(σ^k x)_i = x_{i+k}`.
    pub fn shift(&self, k: Site) -> Configuration {
        let px = self.period[0];
        let py = self.period[1];
        let mut cell = vec![0; px * py];
        for y in 0..py {
            for x in 0..px {
                cell[x + px * y] = self.background_at(Site::new(x as i64, y as i64) + k);
            }
        }
        let patch = self.patch.iter().map(|(&s, &a)| (s - k, a)).collect();
        Configuration { dim: self.dim, period: self.period, cell, patch }
    }

    /// Number of occurrences of `a`, or `None` when the background contains it.
    pub fn count_finite(&self, a: u8) -> Option<usize> {
        if self.cell.contains(&a) {
            return None;
        }
        Some(self.patch.values().filter(|&&b| b == a).count())
    }
}

impl View for Configuration {
    fn at(&self, s: Site) -> u8 {
        match self.patch.get(&s) {
            Some(&a) => a,
            None => self.background_at(s),
        }
    }
}

/// Symbols on a finite shape laid over another view.
pub struct Overlay<'a> {
    pub base: &'a dyn View,
    pub shape: &'a Shape,
    pub symbols: &'a [u8],
}

impl<'a> Overlay<'a> {
    pub fn new(base: &'a dyn View, shape: &'a Shape, symbols: &'a [u8]) -> Self {
        debug_assert_eq!(shape.len(), symbols.len());
        Overlay { base, shape, symbols }
    }
}

impl View for Overlay<'_> {
    fn at(&self, s: Site) -> u8 {
        match self.shape.index_of(s) {
            Some(i) => self.symbols[i],
            None => self.base.at(s),
        }
    }
}

/// A view translated by `k`: reads `(σ^k x)_i = x_{i+k}`.
pub struct Shifted<'a> {
    pub base: &'a dyn View,
    pub k: Site,
}

impl View for Shifted<'_> {
    fn at(&self, s: Site) -> u8 {
        self.base.at(s + self.k)
    }
}

/// The sites of `window` where two views differ.
pub fn disagreement_in(x: &dyn View, y: &dyn View, window: &Shape) -> Shape {
    window.filter(|&s| x.at(s) != y.at(s))
}

/// Two configurations over the same background, with their finite disagreement set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticPair {
    pub left: Configuration,
    pub right: Configuration,
    disagreement: Shape,
}

impl AsymptoticPair {
    pub fn new(left: Configuration, right: Configuration) -> Result<Self> {
        if !left.same_background(&right) {
            return Err(LatticeError::Precondition(
                "the two configurations have different backgrounds".into(),
            ));
        }
        let support = left.patch_support().union(&right.patch_support());
        let disagreement = disagreement_in(&left, &right, &support);
        Ok(AsymptoticPair { left, right, disagreement })
    }

    pub fn disagreement(&self) -> &Shape {
        &self.disagreement
    }

    pub fn swap(&self) -> AsymptoticPair {
        AsymptoticPair {
            left: self.right.clone(),
            right: self.left.clone(),
            disagreement: self.disagreement.clone(),
        }
    }

    pub fn shift(&self, k: Site) -> AsymptoticPair {
        AsymptoticPair {
            left: self.left.shift(k),
            right: self.right.shift(k),
            disagreement: self.disagreement.translate(-k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_moves_patch_and_background() {
        let x = Configuration::periodic_fn(2, [4, 2], |s| ((s.x + 2 * s.y).rem_euclid(4)) as u8)
            .with(Site::new(5, 5), 3);
        let k = Site::new(2, -1);
        let sx = x.shift(k);
        for s in Shape::ball(6, 2).iter() {
            assert_eq!(sx.at(s), x.at(s + k));
        }
    }

    #[test]
    fn pair_disagreement_is_exact() {
        let x = Configuration::constant(1, 0).with(Site::d1(1), 1).with(Site::d1(4), 1);
        let y = Configuration::constant(1, 0).with(Site::d1(4), 1).with(Site::d1(-2), 1);
        let p = AsymptoticPair::new(x, y).unwrap();
        assert_eq!(p.disagreement(), &Shape::new([Site::d1(-2), Site::d1(1)]));
    }
}
