//! Seeded random admissible patterns, used for sampled norm estimates.

use std::collections::HashMap;

use lattice_core::{enumerate::occurrences, enumerate::Check, SftSpace, Shape, Site};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{CocycleError, Result};

/// Draws locally admissible patterns on a fixed window by randomized depth-first search.
/// Only forbidden occurrences lying inside the window are checked.
pub struct WindowSampler<'a> {
    sft: &'a SftSpace,
    window: Shape,
    completed: Vec<Vec<Check>>,
    node_budget: u64,
}

impl<'a> WindowSampler<'a> {
    pub fn new(sft: &'a SftSpace, window: Shape, node_budget: u64) -> Self {
        let sites = window.sites().to_vec();
        let index: HashMap<Site, usize> = sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let slot_of = |s: Site| index.get(&s).copied();
        let none = |_: Site| -> Option<u8> { None };
        let mut completed = vec![Vec::new(); sites.len()];
        for c in occurrences(sft, &sites, &slot_of, &none) {
            completed[c.last().expect("nonempty").0].push(c);
        }
        WindowSampler { sft, window, completed, node_budget }
    }

    pub fn window(&self) -> &Shape {
        &self.window
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<Vec<u8>> {
        let n = self.window.len();
        let mut buf = vec![0u8; n];
        let mut nodes = 0u64;
        if self.dfs(0, &mut buf, 0, rng, &mut nodes)? {
            Ok(buf)
        } else {
            Err(CocycleError::Domain("the window has no admissible pattern".into()))
        }
    }

    fn dfs<R: Rng>(&self, depth: usize, buf: &mut [u8], marked: usize, rng: &mut R, nodes: &mut u64) -> Result<bool> {
        if depth == buf.len() {
            return Ok(true);
        }
        let mut symbols: Vec<u8> = (0..self.sft.q() as u8).collect();
        symbols.shuffle(rng);
        for a in symbols {
            *nodes += 1;
            if *nodes > self.node_budget {
                return Err(CocycleError::Budget(format!("{} search nodes", self.node_budget)));
            }
            let m = marked + usize::from(self.sft.at_most_one() == Some(a));
            if m > 1 {
                continue;
            }
            buf[depth] = a;
            if self.completed[depth].iter().any(|c| c.iter().all(|&(i, b)| buf[i] == b)) {
                continue;
            }
            if self.dfs(depth + 1, buf, m, rng, nodes)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::Pattern;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_admissible() {
        let hardcore = SftSpace::new(
            1,
            SftSpace::numeric_alphabet(2),
            vec![Pattern::word(0, &[1, 1])],
        )
        .unwrap();
        let w = Shape::interval(-10, 10);
        let s = WindowSampler::new(&hardcore, w.clone(), 1 << 20);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = Pattern::new(w.clone(), s.sample(&mut rng).unwrap()).unwrap();
            assert!(hardcore.local_admissible(&p).unwrap());
        }
    }
}
