use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::site::Site;

/// A finite set of sites kept sorted in lexicographic order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Shape {
    sites: Vec<Site>,
}

impl Shape {
    pub fn new<I: IntoIterator<Item = Site>>(sites: I) -> Self {
        let mut sites: Vec<Site> = sites.into_iter().collect();
        sites.sort_unstable();
        sites.dedup();
        Shape { sites }
    }

    pub fn empty() -> Self {
        Shape { sites: Vec::new() }
    }

    pub fn singleton(s: Site) -> Self {
        Shape { sites: vec![s] }
    }

    /// The one-dimensional interval `[a, b]`.
    pub fn interval(a: i64, b: i64) -> Self {
        Shape { sites: (a..=b).map(Site::d1).collect() }
    }

    /// The box `[-n, n]^d`.
    pub fn ball(n: i64, dim: usize) -> Self {
        if n < 0 {
            return Shape::empty();
        }
        if dim == 1 {
            return Shape::interval(-n, n);
        }
        Shape::new((-n..=n).flat_map(|x| (-n..=n).map(move |y| Site::new(x, y))))
    }

    /// `{s : |s|_1 <= n}` in dimension `dim`.
    pub fn l1_ball(n: i64, dim: usize) -> Self {
        Shape::ball(n, dim).filter(|s| s.l1() <= n)
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn iter(&self) -> impl Iterator<Item = Site> + '_ {
        self.sites.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, s: Site) -> bool {
        self.sites.binary_search(&s).is_ok()
    }

    /// Position of `s` in the canonical order.
    pub fn index_of(&self, s: Site) -> Option<usize> {
        self.sites.binary_search(&s).ok()
    }

    pub fn min_site(&self) -> Option<Site> {
        self.sites.first().copied()
    }

    pub fn filter(&self, keep: impl Fn(&Site) -> bool) -> Shape {
        Shape { sites: self.sites.iter().copied().filter(|s| keep(s)).collect() }
    }

    pub fn translate(&self, t: Site) -> Shape {
        // translation preserves lexicographic order
        Shape { sites: self.sites.iter().map(|&s| s + t).collect() }
    }

    pub fn neg(&self) -> Shape {
        Shape::new(self.sites.iter().map(|&s| -s))
    }

    /// Minkowski sum `self + other`.
    pub fn plus(&self, other: &Shape) -> Shape {
        let set: BTreeSet<Site> =
            self.iter().flat_map(|a| other.iter().map(move |b| a + b)).collect();
        Shape { sites: set.into_iter().collect() }
    }

    /// Minkowski difference `self - other`, i.e. `self + (-other)`.
    pub fn minus(&self, other: &Shape) -> Shape {
        self.plus(&other.neg())
    }

    pub fn union(&self, other: &Shape) -> Shape {
        Shape::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &Shape) -> Shape {
        self.filter(|s| !other.contains(*s))
    }

    pub fn intersection(&self, other: &Shape) -> Shape {
        self.filter(|s| other.contains(*s))
    }

    pub fn is_subset(&self, other: &Shape) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn meets(&self, other: &Shape) -> bool {
        self.iter().any(|s| other.contains(s))
    }

    /// Translate so that the least site sits at the origin; returns the offset removed.
    pub fn normalized(&self) -> (Shape, Site) {
        match self.min_site() {
            None => (Shape::empty(), Site::ORIGIN),
            Some(m) => (self.translate(-m), m),
        }
    }

    /// Largest coordinate-wise extent (0 for a single site).
    pub fn diameter(&self) -> i64 {
        match self.bounding_box() {
            None => 0,
            Some((lo, hi)) => (hi.x - lo.x).max(hi.y - lo.y),
        }
    }

    pub fn bounding_box(&self) -> Option<(Site, Site)> {
        let first = *self.sites.first()?;
        let mut lo = first;
        let mut hi = first;
        for s in self.iter() {
            lo = Site::new(lo.x.min(s.x), lo.y.min(s.y));
            hi = Site::new(hi.x.max(s.x), hi.y.max(s.y));
        }
        Some((lo, hi))
    }

    /// Smallest `r` with `self ⊆ [-r, r]^d`.
    pub fn radius(&self) -> i64 {
        self.iter().map(Site::linf).max().unwrap_or(0)
    }
}

impl FromIterator<Site> for Shape {
    fn from_iter<I: IntoIterator<Item = Site>>(iter: I) -> Self {
        Shape::new(iter)
    }
}
