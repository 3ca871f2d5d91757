//! Interactions: finite families of pattern potentials, either shift-invariant (one table
//! per normalized shape) or indexed by explicit finite sets of sites.

use std::collections::BTreeMap;

use lattice_core::{Pattern, SftSpace, Shape, Site, View};
use serde::{Deserialize, Serialize};

use crate::error::{CocycleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `Φ_{S+t}(x) = Φ_S(σ^t x)`; shapes are stored normalized.
    ShiftInvariant,
    /// Every stored shape is an actual set of sites.
    SiteIndexed,
}

/// Potential values on one shape, keyed by the symbols in shape order. Missing keys are 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub shape: Shape,
    pub table: BTreeMap<Vec<u8>, f64>,
}

impl Entry {
    /// `max - min` over the table values together with the implicit zero.
    pub fn oscillation(&self) -> f64 {
        let (lo, hi) = self
            .table
            .values()
            .fold((0.0f64, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        hi - lo
    }

    pub fn sup(&self) -> f64 {
        self.table.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interaction {
    mode: Mode,
    entries: Vec<Entry>,
    index: BTreeMap<Shape, usize>,
    tail_bound: f64,
}

impl Interaction {
    pub fn new(mode: Mode) -> Self {
        Interaction { mode, entries: Vec::new(), index: BTreeMap::new(), tail_bound: 0.0 }
    }

    pub fn shift_invariant() -> Self {
        Self::new(Mode::ShiftInvariant)
    }

    pub fn site_indexed() -> Self {
        Self::new(Mode::SiteIndexed)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Declared bound on the norm of the terms that were dropped when this interaction was
    /// truncated. Zero for exact interactions.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn with_tail_bound(mut self, tail: f64) -> Self {
        self.tail_bound = tail;
        self
    }

    fn key(&self, p: &Pattern) -> Pattern {
        match self.mode {
            Mode::ShiftInvariant => p.normalized(),
            Mode::SiteIndexed => p.clone(),
        }
    }

    fn slot(&mut self, shape: &Shape) -> usize {
        if let Some(&i) = self.index.get(shape) {
            return i;
        }
        self.entries.push(Entry { shape: shape.clone(), table: BTreeMap::new() });
        self.index.insert(shape.clone(), self.entries.len() - 1);
        self.entries.len() - 1
    }

    pub fn set(&mut self, p: &Pattern, value: f64) {
        let p = self.key(p);
        let i = self.slot(p.shape());
        if value == 0.0 {
            self.entries[i].table.remove(p.symbols());
        } else {
            self.entries[i].table.insert(p.symbols().to_vec(), value);
        }
    }

    pub fn add(&mut self, p: &Pattern, value: f64) {
        let v = self.get(p) + value;
        self.set(p, v);
    }

    pub fn get(&self, p: &Pattern) -> f64 {
        let p = self.key(p);
        self.index
            .get(p.shape())
            .and_then(|&i| self.entries[i].table.get(p.symbols()))
            .copied()
            .unwrap_or(0.0)
    }

    /// `self + c * other`. Both must have the same mode.
    pub fn combine(&self, c: f64, other: &Interaction) -> Result<Interaction> {
        if self.mode != other.mode {
            return Err(CocycleError::Precondition("interactions of different modes".into()));
        }
        let mut out = self.clone();
        for e in &other.entries {
            for (w, &v) in &e.table {
                let p = Pattern::new(e.shape.clone(), w.clone()).expect("table key fits shape");
                out.add(&p, c * v);
            }
        }
        out.tail_bound = self.tail_bound + c.abs() * other.tail_bound;
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> Interaction {
        let mut out = self.clone();
        for e in &mut out.entries {
            for v in e.table.values_mut() {
                *v *= c;
            }
        }
        out.tail_bound *= c.abs();
        out
    }

    /// Every concrete set `C` carrying a potential with `C ∩ d ≠ ∅`, with the entry it uses.
    pub fn placements_meeting(&self, d: &Shape) -> Vec<(usize, Shape)> {
        let mut out = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            if e.table.is_empty() {
                continue;
            }
            match self.mode {
                Mode::SiteIndexed => {
                    if e.shape.meets(d) {
                        out.push((i, e.shape.clone()));
                    }
                }
                Mode::ShiftInvariant => {
                    for t in d.minus(&e.shape).iter() {
                        out.push((i, e.shape.translate(t)));
                    }
                }
            }
        }
        out
    }

    /// `Φ_C(x)` for a placement produced by [`Interaction::placements_meeting`].
    pub fn value_at(&self, entry: usize, placement: &Shape, x: &dyn View, buf: &mut Vec<u8>) -> f64 {
        buf.clear();
        buf.extend(placement.iter().map(|s| x.at(s)));
        self.entries[entry].table.get(buf.as_slice()).copied().unwrap_or(0.0)
    }

    /// `Σ_C Φ_C(y) - Φ_C(x)` over the sets meeting `diff`, where `x` and `y` agree off `diff`.
    pub fn energy_delta(&self, x: &dyn View, y: &dyn View, diff: &Shape) -> f64 {
        let mut buf = Vec::new();
        self.placements_meeting(diff)
            .iter()
            .map(|(i, c)| self.value_at(*i, c, y, &mut buf) - self.value_at(*i, c, x, &mut buf))
            .sum()
    }

    /// Union of all sets carrying a potential that meet `d`, together with `d`.
    pub fn reach(&self, d: &Shape) -> Shape {
        self.placements_meeting(d).into_iter().fold(d.clone(), |acc, (_, c)| acc.union(&c))
    }

    /// Largest diameter of a stored shape.
    pub fn range(&self) -> i64 {
        self.entries.iter().filter(|e| !e.table.is_empty()).map(|e| e.shape.diameter()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.table.is_empty())
    }

    pub fn to_json(&self, sft: &SftSpace) -> String {
        let file = InteractionFile {
            mode: self.mode,
            tail_bound: self.tail_bound,
            entries: self
                .entries
                .iter()
                .filter(|e| !e.table.is_empty())
                .map(|e| EntryFile {
                    shape: e.shape.iter().map(|s| s.coords(sft.dimension())).collect(),
                    table: e.table.iter().map(|(w, &v)| (encode_word(sft, w), v)).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str, sft: &SftSpace) -> Result<Self> {
        let file: InteractionFile =
            serde_json::from_str(text).map_err(|e| CocycleError::Parse(e.to_string()))?;
        let mut out = Interaction::new(file.mode).with_tail_bound(file.tail_bound);
        for e in file.entries {
            let sites: Vec<Site> = e
                .shape
                .iter()
                .map(|c| Site::from_coords(c).ok_or_else(|| CocycleError::Parse(format!("bad site {c:?}"))))
                .collect::<Result<_>>()?;
            let shape = Shape::new(sites.iter().copied());
            if shape.len() != sites.len() {
                return Err(CocycleError::Parse("repeated site in an interaction shape".into()));
            }
            for (word, v) in e.table {
                let symbols = decode_word(sft, &word, shape.len())?;
                let p = Pattern::new(shape.clone(), symbols)?;
                out.add(&p, v);
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct InteractionFile {
    mode: Mode,
    #[serde(default)]
    tail_bound: f64,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    shape: Vec<Vec<i64>>,
    table: BTreeMap<String, f64>,
}

fn single_char(sft: &SftSpace) -> bool {
    sft.alphabet().iter().all(|a| a.chars().count() == 1)
}

/// Symbols in shape order: concatenated names when every name is one character, otherwise
/// comma separated.
pub fn encode_word(sft: &SftSpace, w: &[u8]) -> String {
    let names = w.iter().map(|&a| sft.symbol_name(a));
    if single_char(sft) {
        names.collect()
    } else {
        names.collect::<Vec<_>>().join(",")
    }
}

pub fn decode_word(sft: &SftSpace, word: &str, len: usize) -> Result<Vec<u8>> {
    let symbols: Vec<u8> = if single_char(sft) {
        word.chars().map(|c| sft.symbol_index(&c.to_string())).collect::<lattice_core::Result<_>>()?
    } else {
        word.split(',').map(|c| sft.symbol_index(c.trim())).collect::<lattice_core::Result<_>>()?
    };
    if symbols.len() != len {
        return Err(CocycleError::Parse(format!("word {word:?} does not fit a shape of {len} sites")));
    }
    Ok(symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::Configuration;

    #[test]
    fn shift_invariant_lookup_ignores_position() {
        let mut phi = Interaction::shift_invariant();
        phi.set(&Pattern::word(0, &[1, 1]), 2.5);
        assert_eq!(phi.get(&Pattern::word(7, &[1, 1])), 2.5);
        assert_eq!(phi.get(&Pattern::word(7, &[1, 0])), 0.0);
    }

    #[test]
    fn energy_delta_counts_each_bond_once() {
        let mut phi = Interaction::shift_invariant();
        phi.set(&Pattern::word(0, &[1, 1]), 1.0);
        let x = Configuration::constant(1, 0).with(Site::d1(0), 1).with(Site::d1(1), 1);
        let y = x.with(Site::d1(1), 0);
        let d = Shape::singleton(Site::d1(1));
        assert_eq!(phi.energy_delta(&x, &y, &d), -1.0);
        assert_eq!(phi.energy_delta(&y, &x, &d), 1.0);
    }

    #[test]
    fn combine_cancels() {
        let mut phi = Interaction::shift_invariant();
        phi.set(&Pattern::word(0, &[1, 0, 1]), 0.25);
        let z = phi.combine(-1.0, &phi).unwrap();
        assert!(z.is_zero());
    }
}
