//! Potentials for cocycles on finite equivalence relations.
//!
//! Given edges `p → q` with values `Δ(p, q)`, finds `F` with `F(q) - F(p) = Δ(p, q)` using a
//! union-find whose links carry offsets. Each class is normalized so that its least pattern
//! has potential 0.

use std::collections::HashMap;

use crate::error::{BuildError, Result};

pub const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Default)]
pub struct Potential {
    ids: HashMap<Vec<u8>, usize>,
    keys: Vec<Vec<u8>>,
    parent: Vec<usize>,
    /// `F(node) - F(parent)`.
    offset: Vec<f64>,
    tolerance: f64,
}

impl Potential {
    pub fn new() -> Self {
        Potential { tolerance: TOLERANCE, ..Default::default() }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn id(&mut self, key: &[u8]) -> usize {
        if let Some(&i) = self.ids.get(key) {
            return i;
        }
        let i = self.keys.len();
        self.ids.insert(key.to_vec(), i);
        self.keys.push(key.to_vec());
        self.parent.push(i);
        self.offset.push(0.0);
        i
    }

    /// Root of `i` and `F(i) - F(root)`, compressing the path.
    fn find(&mut self, i: usize) -> (usize, f64) {
        let mut path = Vec::new();
        let mut r = i;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // Walk back from the node nearest the root, accumulating offsets.
        let mut acc = 0.0;
        for &n in path.iter().rev() {
            acc += self.offset[n];
            self.offset[n] = acc;
            self.parent[n] = r;
        }
        (r, if path.is_empty() { 0.0 } else { self.offset[i] })
    }

    /// Records `F(q) - F(p) = delta`.
    pub fn link(&mut self, p: &[u8], q: &[u8], delta: f64) -> Result<()> {
        let (i, j) = (self.id(p), self.id(q));
        let (ri, fi) = self.find(i);
        let (rj, fj) = self.find(j);
        if ri == rj {
            let found = fj - fi;
            if (found - delta).abs() > self.tolerance {
                return Err(BuildError::Consistency {
                    from: format!("{p:?}"),
                    to: format!("{q:?}"),
                    expected: found,
                    found: delta,
                });
            }
            return Ok(());
        }
        // F(rj) - F(ri) = F(i) + delta - F(j) - F(ri) = fi + delta - fj
        self.parent[rj] = ri;
        self.offset[rj] = fi + delta - fj;
        Ok(())
    }

    /// The potential of every pattern seen, zero at the least pattern of each class.
    pub fn solve(mut self) -> HashMap<Vec<u8>, f64> {
        let n = self.keys.len();
        let mut raw = vec![(0usize, 0.0f64); n];
        for (i, slot) in raw.iter_mut().enumerate() {
            *slot = self.find(i);
        }
        let mut base: HashMap<usize, (Vec<u8>, f64)> = HashMap::new();
        for (i, &(r, f)) in raw.iter().enumerate() {
            let e = base.entry(r).or_insert_with(|| (self.keys[i].clone(), f));
            if self.keys[i] < e.0 {
                *e = (self.keys[i].clone(), f);
            }
        }
        raw.iter()
            .enumerate()
            .map(|(i, &(r, f))| (self.keys[i].clone(), f - base[&r].1))
            .collect()
    }

    pub fn classes(&mut self) -> usize {
        let n = self.keys.len();
        (0..n).filter(|&i| self.find(i).0 == i).count()
    }
}
