use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::{Configuration, View};
use crate::error::{LatticeError, Result};
use crate::pattern::Pattern;
use crate::shape::Shape;
use crate::site::Site;

/// Structural properties claimed by whoever built the space. Checkers may falsify them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Asserted {
    pub ssf: bool,
    pub safe_symbol: Option<u8>,
    pub pivot: bool,
}

/// A configuration space over Z^d described by forbidden patterns.
///
/// `at_most_one` adds the non-local constraint "the symbol occurs at most once", which is
/// how the sunny-side-up space is represented; it is evaluated on whole finite patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpace {
    dimension: usize,
    alphabet: Vec<String>,
    forbidden: Vec<Pattern>,
    pub asserted: Asserted,
    at_most_one: Option<u8>,
}

impl SftSpace {
    pub fn new(dimension: usize, alphabet: Vec<String>, forbidden: Vec<Pattern>) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return Err(LatticeError::BadDimension(dimension));
        }
        let q = alphabet.len();
        if q == 0 || q > u8::MAX as usize {
            return Err(LatticeError::Parse(format!("alphabet of size {q}")));
        }
        let mut set = BTreeSet::new();
        for f in forbidden {
            if f.is_empty() {
                return Err(LatticeError::Parse("empty forbidden pattern".into()));
            }
            check_symbols(f.symbols(), q)?;
            if dimension == 1 && f.shape().iter().any(|s| s.y != 0) {
                return Err(LatticeError::Parse("two-dimensional site in a 1d space".into()));
            }
            set.insert(f.normalized());
        }
        Ok(SftSpace {
            dimension,
            alphabet,
            forbidden: set.into_iter().collect(),
            asserted: Asserted::default(),
            at_most_one: None,
        })
    }

    /// Alphabet `"0", "1", ..., "q-1"`.
    pub fn numeric_alphabet(q: usize) -> Vec<String> {
        (0..q).map(|a| a.to_string()).collect()
    }

    pub fn with_asserted(mut self, asserted: Asserted) -> Self {
        self.asserted = asserted;
        self
    }

    pub fn with_at_most_one(mut self, symbol: u8) -> Self {
        self.at_most_one = Some(symbol);
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.len()
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn at_most_one(&self) -> Option<u8> {
        self.at_most_one
    }

    pub fn symbol_index(&self, name: &str) -> Result<u8> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .map(|i| i as u8)
            .ok_or_else(|| LatticeError::UnknownSymbol(name.to_string()))
    }

    pub fn symbol_name(&self, a: u8) -> &str {
        &self.alphabet[a as usize]
    }

    /// Symbols in the order used by ζ and by fills: alphabet order, with a declared safe
    /// symbol moved to the front.
    pub fn order(&self) -> Vec<u8> {
        let mut out: Vec<u8> = (0..self.q() as u8).collect();
        if let Some(safe) = self.asserted.safe_symbol {
            out.retain(|&a| a != safe);
            out.insert(0, safe);
        }
        out
    }

    /// Union `F` of the (normalized) forbidden shapes.
    pub fn forbidden_union(&self) -> Shape {
        self.forbidden.iter().fold(Shape::empty(), |acc, f| acc.union(f.shape()))
    }

    /// Smallest `r` with `F - F ⊆ [-r, r]^d`.
    pub fn interaction_radius(&self) -> i64 {
        let f = self.forbidden_union();
        f.minus(&f).radius()
    }

    pub fn local_admissible(&self, p: &Pattern) -> Result<bool> {
        check_symbols(p.symbols(), self.q())?;
        if let Some(a) = self.at_most_one {
            if p.symbols().iter().filter(|&&b| b == a).count() > 1 {
                return Ok(false);
            }
        }
        for f in &self.forbidden {
            let anchor = f.shape().min_site().expect("nonempty");
            for s in p.shape().iter() {
                if f.occurs_at(p, s - anchor) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No forbidden occurrence inside `p` contains the site `k`.
    pub fn pattern_admissible_at(&self, p: &Pattern, k: Site) -> bool {
        self.forbidden.iter().all(|f| {
            f.shape().iter().all(|a| !f.occurs_at(p, k - a))
        })
    }

    /// No forbidden occurrence in the (infinite) view contains `k`.
    pub fn view_admissible_at(&self, x: &dyn View, k: Site) -> bool {
        self.forbidden.iter().all(|f| {
            f.shape().iter().all(|a| {
                let t = k - a;
                !f.iter().all(|(s, b)| x.at(s + t) == b)
            })
        })
    }

    /// Admissibility of a configuration near `k`, including the global counting constraint.
    pub fn config_admissible_at(&self, x: &Configuration, k: Site) -> bool {
        if let Some(a) = self.at_most_one {
            match x.count_finite(a) {
                Some(c) if c <= 1 => {}
                _ => return false,
            }
        }
        self.view_admissible_at(x, k)
    }

    /// Checks the background on one period with enough margin to see every forbidden shape.
    pub fn background_admissible(&self, x: &Configuration) -> bool {
        let [px, py] = x.period();
        let base = if self.dimension == 1 {
            Shape::interval(0, px as i64 - 1)
        } else {
            Shape::new(
                (0..px as i64).flat_map(|i| (0..py as i64).map(move |j| Site::new(i, j))),
            )
        };
        let bg = x.background();
        base.iter().all(|s| self.view_admissible_at(&bg, s))
            && self.at_most_one.is_none_or(|a| !x.cell().contains(&a))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SftFile =
            serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))?;
        file.into_space()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SftFile::from_space(self)).expect("serializable")
    }
}

fn check_symbols(symbols: &[u8], q: usize) -> Result<()> {
    match symbols.iter().find(|&&a| a as usize >= q) {
        Some(&a) => Err(LatticeError::SymbolOutOfRange { index: a as usize, size: q }),
        None => Ok(()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ForbiddenEntry {
    shape: Vec<Vec<i64>>,
    symbols: Vec<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct AssertedEntry {
    #[serde(default)]
    ssf: bool,
    #[serde(default)]
    safe_symbol: Option<String>,
    #[serde(default)]
    pivot: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct SftFile {
    dimension: usize,
    alphabet: Vec<String>,
    #[serde(default)]
    forbidden: Vec<ForbiddenEntry>,
    #[serde(default)]
    asserted: AssertedEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    at_most_one: Option<String>,
}

impl SftFile {
    fn into_space(self) -> Result<SftSpace> {
        let lookup = |name: &str| -> Result<u8> {
            self.alphabet
                .iter()
                .position(|a| a == name)
                .map(|i| i as u8)
                .ok_or_else(|| LatticeError::UnknownSymbol(name.to_string()))
        };
        let mut forbidden = Vec::new();
        for entry in &self.forbidden {
            if entry.shape.len() != entry.symbols.len() {
                return Err(LatticeError::LengthMismatch {
                    sites: entry.shape.len(),
                    symbols: entry.symbols.len(),
                });
            }
            let mut pairs = Vec::new();
            for (c, name) in entry.shape.iter().zip(&entry.symbols) {
                if c.len() != self.dimension {
                    return Err(LatticeError::Parse(format!("coordinate {c:?} has wrong length")));
                }
                let site = Site::from_coords(c)
                    .ok_or_else(|| LatticeError::Parse(format!("bad coordinate {c:?}")))?;
                pairs.push((site, lookup(name)?));
            }
            forbidden.push(Pattern::from_pairs(pairs));
        }
        let asserted = Asserted {
            ssf: self.asserted.ssf,
            safe_symbol: self.asserted.safe_symbol.as_deref().map(lookup).transpose()?,
            pivot: self.asserted.pivot,
        };
        let at_most_one = self.at_most_one.as_deref().map(lookup).transpose()?;
        let mut space =
            SftSpace::new(self.dimension, self.alphabet.clone(), forbidden)?.with_asserted(asserted);
        space.at_most_one = at_most_one;
        Ok(space)
    }

    fn from_space(sft: &SftSpace) -> SftFile {
        let name = |a: u8| sft.symbol_name(a).to_string();
        SftFile {
            dimension: sft.dimension,
            alphabet: sft.alphabet.clone(),
            forbidden: sft
                .forbidden
                .iter()
                .map(|f| ForbiddenEntry {
                    shape: f.shape().iter().map(|s| s.coords(sft.dimension)).collect(),
                    symbols: f.symbols().iter().map(|&a| name(a)).collect(),
                })
                .collect(),
            asserted: AssertedEntry {
                ssf: sft.asserted.ssf,
                safe_symbol: sft.asserted.safe_symbol.map(name),
                pivot: sft.asserted.pivot,
            },
            at_most_one: sft.at_most_one.map(name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hardcore() -> SftSpace {
        SftSpace::new(1, SftSpace::numeric_alphabet(2), vec![Pattern::word(0, &[1, 1])]).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let s = hardcore().with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true });
        let back = SftSpace::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_out_of_range_symbols() {
        let err = hardcore().local_admissible(&Pattern::word(0, &[0, 5])).unwrap_err();
        assert_eq!(err, LatticeError::SymbolOutOfRange { index: 5, size: 2 });
    }

    #[test]
    fn unknown_symbol_in_json() {
        let text = r#"{"dimension":1,"alphabet":["0","1"],"forbidden":[{"shape":[[0]],"symbols":["7"]}]}"#;
        assert!(matches!(SftSpace::from_json(text), Err(LatticeError::UnknownSymbol(_))));
    }
}
