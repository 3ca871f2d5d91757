//! Window-bounded checkers for the structural properties of a space. None of these prove a
//! global property; they either find a witness against it or report the window inspected.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::ops::ControlFlow;

use crate::config::{Configuration, Overlay, View};
use crate::enumerate::{language, ContainChecks, Enumerator};
use crate::error::{LatticeError, Result};
use crate::pattern::Pattern;
use crate::shape::Shape;
use crate::sft::{Asserted, SftSpace};
use crate::site::Site;

/// `A + F - F` where `F` is the union of forbidden shapes.
pub fn memory_set(sft: &SftSpace, a: &Shape) -> Shape {
    if sft.forbidden().is_empty() {
        return a.clone();
    }
    let f = sft.forbidden_union();
    a.plus(&f).minus(&f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TmpCheck {
    /// No counterexample among the admissible patterns of the window.
    Holds { window: Shape, patterns: usize },
    /// `x` and `y` agree on `b \ a` but `x_b ∨ y_{W \ a}` (`glued`) is not admissible.
    Counterexample { x: Pattern, y: Pattern, glued: Pattern },
}

impl TmpCheck {
    pub fn holds(&self) -> bool {
        matches!(self, TmpCheck::Holds { .. })
    }
}

/// Tests whether `b` behaves as a memory set for `a` on all admissible patterns of `window`.
pub fn check_tmp_window(
    sft: &SftSpace,
    a: &Shape,
    b: &Shape,
    window: &Shape,
    budget: u64,
) -> Result<TmpCheck> {
    if !a.is_subset(b) || !b.is_subset(window) {
        return Err(LatticeError::Precondition("expected a ⊆ b ⊆ window".into()));
    }
    let all = Enumerator::for_window(sft, window, None, budget).collect()?;
    let ring = b.difference(a);
    let ring_idx: Vec<usize> = ring.iter().map(|s| window.index_of(s).expect("inside")).collect();
    let a_idx: Vec<usize> = a.iter().map(|s| window.index_of(s).expect("inside")).collect();

    // group by the symbols on b \ a; inside a group any x_a may be glued to any y
    let mut groups: BTreeMap<Vec<u8>, (BTreeSet<Vec<u8>>, Vec<usize>)> = BTreeMap::new();
    for (n, w) in all.iter().enumerate() {
        let key: Vec<u8> = ring_idx.iter().map(|&i| w[i]).collect();
        let inner: Vec<u8> = a_idx.iter().map(|&i| w[i]).collect();
        let g = groups.entry(key).or_default();
        g.0.insert(inner);
        g.1.push(n);
    }
    for (inners, members) in groups.values() {
        for inner in inners {
            for &m in members {
                let y = &all[m];
                let mut z = y.clone();
                for (k, &i) in a_idx.iter().enumerate() {
                    z[i] = inner[k];
                }
                let glued = Pattern::new(window.clone(), z)?;
                if !sft.local_admissible(&glued)? {
                    let x_full = all
                        .iter()
                        .find(|w| {
                            ring_idx.iter().all(|&i| w[i] == y[i])
                                && a_idx.iter().enumerate().all(|(k, &i)| w[i] == inner[k])
                        })
                        .expect("inner value came from some member");
                    return Ok(TmpCheck::Counterexample {
                        x: Pattern::new(window.clone(), x_full.clone())?,
                        y: Pattern::new(window.clone(), y.clone())?,
                        glued,
                    });
                }
            }
        }
    }
    Ok(TmpCheck::Holds { window: window.clone(), patterns: all.len() })
}

/// Visiting order for moves during the pivot search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoveOrder {
    #[default]
    Forward,
    Reverse,
}

/// Breadth-first search for a shortest sequence of single-site admissible changes turning
/// `x` into `y`, with every site outside `search_box` frozen.
pub fn pivot_path(
    sft: &SftSpace,
    x: &dyn View,
    y: &dyn View,
    search_box: &Shape,
    order: MoveOrder,
    budget: usize,
) -> Result<Vec<(Site, u8)>> {
    let blocks = block_path(sft, x, y, search_box, 1, order, budget)?;
    Ok(blocks.into_iter().map(|m| m[0]).collect())
}

/// Like [`pivot_path`] but each move may rewrite up to `block` sites at once.
pub fn block_path(
    sft: &SftSpace,
    x: &dyn View,
    y: &dyn View,
    search_box: &Shape,
    block: usize,
    order: MoveOrder,
    budget: usize,
) -> Result<Vec<Vec<(Site, u8)>>> {
    let n = search_box.len();
    let start: Vec<u8> = search_box.iter().map(|s| x.at(s)).collect();
    let goal: Vec<u8> = search_box.iter().map(|s| y.at(s)).collect();
    let checks = ContainChecks::new(sft, search_box, x);
    let q = sft.q() as u8;
    let mut sites: Vec<usize> = (0..n).collect();
    if order == MoveOrder::Reverse {
        sites.reverse();
    }

    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, Vec<(usize, u8)>)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    let mut found = start == goal;
    while let Some(state) = queue.pop_front() {
        if found {
            break;
        }
        let mut moves: Vec<Vec<(usize, u8)>> = Vec::new();
        for &i in &sites {
            for a in 0..q {
                if a != state[i] {
                    moves.push(vec![(i, a)]);
                }
            }
        }
        if block >= 2 {
            for (ii, &i) in sites.iter().enumerate() {
                for &j in &sites[ii + 1..] {
                    for a in 0..q {
                        for b in 0..q {
                            if a != state[i] && b != state[j] {
                                moves.push(vec![(i, a), (j, b)]);
                            }
                        }
                    }
                }
            }
        }
        for mv in moves {
            let mut next = state.clone();
            for &(i, a) in &mv {
                next[i] = a;
            }
            if !mv.iter().all(|&(i, _)| checks.admissible_at(&next, i)) {
                continue;
            }
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return Err(LatticeError::Budget { limit: budget as u64 });
            }
            parent.insert(next.clone(), Some((state.clone(), mv)));
            if next == goal {
                found = true;
                break;
            }
            queue.push_back(next);
        }
    }
    if !found {
        return Err(LatticeError::NoPath { window: n, explored: parent.len() });
    }
    let mut path = Vec::new();
    let mut cur = goal;
    while let Some(Some((prev, mv))) = parent.get(&cur) {
        path.push(mv.iter().map(|&(i, a)| (search_box.sites()[i], a)).collect());
        cur = prev.clone();
    }
    path.reverse();
    Ok(path)
}

/// Replace `x_k` by the least symbol (in [`SftSpace::order`]) keeping `x` admissible.
pub fn zeta(sft: &SftSpace, x: &Configuration, k: Site) -> Configuration {
    for a in sft.order() {
        let candidate = x.with(k, a);
        if sft.config_admissible_at(&candidate, k) {
            return candidate;
        }
    }
    // x_k itself is always a candidate when x is admissible
    x.clone()
}

/// The symbol ζ writes at `k`, reading the neighbourhood from a view.
pub fn zeta_symbol(sft: &SftSpace, x: &dyn View, k: Site) -> u8 {
    let here = Shape::singleton(k);
    for a in sft.order() {
        let sym = [a];
        let probe = Overlay::new(x, &here, &sym);
        if sft.view_admissible_at(&probe, k) {
            return a;
        }
    }
    x.at(k)
}

/// Extend `p` to `k` by the least symbol keeping local admissibility.
pub fn fill_single_site(sft: &SftSpace, p: &Pattern, k: Site) -> Result<Pattern> {
    if p.shape().contains(k) {
        return Err(LatticeError::Precondition(format!("{k} already belongs to the pattern")));
    }
    for a in sft.order() {
        let q = p.with(k, a);
        let count_ok = match sft.at_most_one() {
            Some(m) => q.symbols().iter().filter(|&&b| b == m).count() <= 1,
            None => true,
        };
        if count_ok && sft.pattern_admissible_at(&q, k) {
            return Ok(q);
        }
    }
    Err(LatticeError::FillFailure { site: k })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeriveError {
    Lattice(LatticeError),
    /// The memory window failed the TMP check; the witness is attached.
    TmpFailure(TmpCheck),
}

impl From<LatticeError> for DeriveError {
    fn from(e: LatticeError) -> Self {
        DeriveError::Lattice(e)
    }
}

impl std::fmt::Display for DeriveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeriveError::Lattice(e) => write!(f, "{e}"),
            DeriveError::TmpFailure(_) => write!(f, "memory window fails the TMP check"),
        }
    }
}

impl std::error::Error for DeriveError {}

/// For a space with a safe symbol whose memory set for `{0}` is `B = [-w, w]^d`, forbid
/// every pattern on `B` that is not admissible.
pub fn derive_sft_from_tmp_safe(
    sft_like: &SftSpace,
    window: i64,
    budget: u64,
) -> std::result::Result<SftSpace, DeriveError> {
    if sft_like.asserted.safe_symbol.is_none() {
        return Err(LatticeError::Precondition("a safe symbol must be declared".into()).into());
    }
    let d = sft_like.dimension();
    let b = Shape::ball(window, d);
    let check = check_tmp_window(
        sft_like,
        &Shape::singleton(Site::ORIGIN),
        &b,
        &Shape::ball(2 * window, d),
        budget,
    )?;
    if !check.holds() {
        return Err(DeriveError::TmpFailure(check));
    }
    let allowed: BTreeSet<Vec<u8>> = language(sft_like, &b, window, budget)?
        .into_iter()
        .map(|p| p.symbols().to_vec())
        .collect();
    let mut forbidden = Vec::new();
    Enumerator::new(&free_space(sft_like), b.sites().to_vec(), None, budget).for_each(|w| {
        if !allowed.contains(w) {
            forbidden.push(Pattern::new(b.clone(), w.to_vec()).expect("lengths agree"));
        }
        ControlFlow::Continue(())
    })?;
    Ok(SftSpace::new(d, sft_like.alphabet().to_vec(), forbidden)?
        .with_asserted(sft_like.asserted.clone()))
}

fn free_space(sft: &SftSpace) -> SftSpace {
    SftSpace::new(sft.dimension(), sft.alphabet().to_vec(), Vec::new())
        .expect("same alphabet")
        .with_asserted(Asserted::default())
}

/// Apply a path of moves to a configuration, checking admissibility after every step.
pub fn replay(sft: &SftSpace, x: &Configuration, path: &[Vec<(Site, u8)>]) -> Option<Configuration> {
    let mut z = x.clone();
    for mv in path {
        for &(s, a) in mv {
            z.set(s, a);
        }
        if !mv.iter().all(|&(s, _)| sft.config_admissible_at(&z, s)) {
            return None;
        }
    }
    Some(z)
}
