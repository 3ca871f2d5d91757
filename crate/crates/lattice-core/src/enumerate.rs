//! Depth-first enumeration of locally admissible patterns on a finite set of free sites,
//! optionally glued to fixed boundary symbols.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::config::View;
use crate::error::{LatticeError, Result};
use crate::pattern::Pattern;
use crate::shape::Shape;
use crate::sft::SftSpace;
use crate::site::Site;

/// A forbidden occurrence reduced to the free slots it covers: it is present exactly when
/// every listed slot carries the listed symbol.
pub type Check = Vec<(usize, u8)>;

/// All forbidden occurrences that touch a free site and lie inside `free ∪ fixed`, with
/// fixed parts already matched (occurrences contradicted by the fixed symbols are dropped).
pub fn occurrences(
    sft: &SftSpace,
    free: &[Site],
    slot_of: &dyn Fn(Site) -> Option<usize>,
    fixed: &dyn Fn(Site) -> Option<u8>,
) -> Vec<Check> {
    let mut out = Vec::new();
    for f in sft.forbidden() {
        let mut seen = HashSet::new();
        for &s in free {
            for a in f.shape().iter() {
                let t = s - a;
                if !seen.insert(t) {
                    continue;
                }
                let mut check = Vec::with_capacity(f.len());
                let mut alive = true;
                for (site, sym) in f.iter() {
                    let site = site + t;
                    if let Some(i) = slot_of(site) {
                        check.push((i, sym));
                    } else {
                        match fixed(site) {
                            Some(b) if b == sym => {}
                            _ => {
                                alive = false;
                                break;
                            }
                        }
                    }
                }
                if alive && !check.is_empty() {
                    check.sort_unstable();
                    out.push(check);
                }
            }
        }
    }
    out
}

fn fires(check: &Check, state: &[u8]) -> bool {
    check.iter().all(|&(i, a)| state[i] == a)
}

/// Enumerates assignments of the free sites (in the given order, symbols in alphabet order)
/// that create no forbidden occurrence. The visiting order is lexicographic.
pub struct Enumerator<'a> {
    sft: &'a SftSpace,
    sites: Vec<Site>,
    completed: Vec<Vec<Check>>,
    marked_fixed: usize,
    budget: u64,
}

impl<'a> Enumerator<'a> {
    /// `fixed` supplies boundary symbols for the sites of `fixed_shape`.
    pub fn new(
        sft: &'a SftSpace,
        sites: Vec<Site>,
        fixed: Option<(&dyn View, &Shape)>,
        budget: u64,
    ) -> Self {
        let index: std::collections::HashMap<Site, usize> =
            sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let slot_of = |s: Site| index.get(&s).copied();
        let fixed_of = |s: Site| match fixed {
            Some((view, shape)) if shape.contains(s) && !index.contains_key(&s) => Some(view.at(s)),
            _ => None,
        };
        let mut completed = vec![Vec::new(); sites.len()];
        for check in occurrences(sft, &sites, &slot_of, &fixed_of) {
            let last = check.last().expect("nonempty").0;
            completed[last].push(check);
        }
        let marked_fixed = match (sft.at_most_one(), fixed) {
            (Some(a), Some((view, shape))) => {
                shape.iter().filter(|s| !index.contains_key(s) && view.at(*s) == a).count()
            }
            _ => 0,
        };
        Enumerator { sft, sites, completed, marked_fixed, budget }
    }

    /// Free sites = `window`, boundary read from `boundary` on the margin that forbidden
    /// shapes can reach.
    pub fn for_window(
        sft: &'a SftSpace,
        window: &Shape,
        boundary: Option<&dyn View>,
        budget: u64,
    ) -> Self {
        match boundary {
            None => Enumerator::new(sft, window.sites().to_vec(), None, budget),
            Some(view) => {
                let f = sft.forbidden_union();
                let margin = window.plus(&f.minus(&f)).difference(window);
                Enumerator::new(sft, window.sites().to_vec(), Some((view, &margin)), budget)
            }
        }
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Visit every admissible assignment. Returns the number of search nodes used.
    pub fn for_each(&self, mut visit: impl FnMut(&[u8]) -> ControlFlow<()>) -> Result<u64> {
        self.for_each_prefix(self.sites.len(), &mut visit)
    }

    /// Visit every assignment of the first `prefix` sites that extends to an admissible
    /// assignment of all sites.
    pub fn for_each_prefix(
        &self,
        prefix: usize,
        mut visit: impl FnMut(&[u8]) -> ControlFlow<()>,
    ) -> Result<u64> {
        let mut buf = vec![0u8; self.sites.len()];
        let mut nodes = 0u64;
        let _ = self.dfs(0, prefix.min(self.sites.len()), &mut buf, self.marked_fixed, &mut visit, &mut nodes)?;
        Ok(nodes)
    }

    pub fn collect(&self) -> Result<Vec<Vec<u8>>> {
        let mut out = Vec::new();
        self.for_each(|s| {
            out.push(s.to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    fn accepts(&self, depth: usize, buf: &[u8], marked: usize) -> Option<usize> {
        let a = buf[depth];
        let marked = marked + usize::from(self.sft.at_most_one() == Some(a));
        if marked > 1 {
            return None;
        }
        if self.completed[depth].iter().any(|c| fires(c, buf)) {
            return None;
        }
        Some(marked)
    }

    fn tick(&self, nodes: &mut u64) -> Result<()> {
        *nodes += 1;
        if *nodes > self.budget {
            return Err(LatticeError::Budget { limit: self.budget });
        }
        Ok(())
    }

    fn dfs(
        &self,
        depth: usize,
        prefix: usize,
        buf: &mut Vec<u8>,
        marked: usize,
        visit: &mut dyn FnMut(&[u8]) -> ControlFlow<()>,
        nodes: &mut u64,
    ) -> Result<ControlFlow<()>> {
        if depth == prefix {
            if prefix < self.sites.len() && !self.completes(depth, buf, marked, nodes)? {
                return Ok(ControlFlow::Continue(()));
            }
            return Ok(visit(&buf[..prefix]));
        }
        for a in 0..self.sft.q() as u8 {
            self.tick(nodes)?;
            buf[depth] = a;
            if let Some(m) = self.accepts(depth, buf, marked) {
                if self.dfs(depth + 1, prefix, buf, m, visit, nodes)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn completes(&self, depth: usize, buf: &mut Vec<u8>, marked: usize, nodes: &mut u64) -> Result<bool> {
        if depth == self.sites.len() {
            return Ok(true);
        }
        for a in 0..self.sft.q() as u8 {
            self.tick(nodes)?;
            buf[depth] = a;
            if let Some(m) = self.accepts(depth, buf, marked) {
                if self.completes(depth + 1, buf, m, nodes)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// For every site of a finite region, the forbidden occurrences that contain it. Used to
/// test single-site (or few-site) moves against a fixed outside.
pub struct ContainChecks {
    per_site: Vec<Vec<Check>>,
}

impl ContainChecks {
    pub fn new(sft: &SftSpace, region: &Shape, outside: &dyn View) -> Self {
        let slot_of = |s: Site| region.index_of(s);
        let fixed_of = |s: Site| Some(outside.at(s));
        let mut per_site = vec![Vec::new(); region.len()];
        for check in occurrences(sft, region.sites(), &slot_of, &fixed_of) {
            for &(i, _) in &check {
                per_site[i].push(check.clone());
            }
        }
        ContainChecks { per_site }
    }

    pub fn admissible_at(&self, state: &[u8], i: usize) -> bool {
        !self.per_site[i].iter().any(|c| fires(c, state))
    }
}

/// Patterns on `shape` that extend to a locally admissible pattern on `shape + [-halo, halo]^d`.
///
/// Exact for single-site fillable spaces; otherwise the result is the locally admissible
/// language at the stated halo, which may overcount. `budget` caps search nodes.
pub fn language(sft: &SftSpace, shape: &Shape, halo: i64, budget: u64) -> Result<Vec<Pattern>> {
    let ext = shape.plus(&Shape::ball(halo, sft.dimension()));
    let mut order: Vec<Site> = shape.sites().to_vec();
    order.extend(ext.difference(shape).iter());
    let e = Enumerator::new(sft, order, None, budget);
    let mut out = Vec::new();
    e.for_each_prefix(shape.len(), |p| {
        out.push(Pattern::new(shape.clone(), p.to_vec()).expect("lengths agree"));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
