//! Exact checks of the two marker conditions: mutual and self Hamming separation, and low
//! interval counts for every small pattern.

use lattice_core::{AsymptoticPair, Pattern, Site, View};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::params::{Certificate, MarkerParams};
use crate::word::Word;

/// `max_I |Σ_{i∈I} s_i|` over intervals `I`, via prefix sums.
pub fn interval_extreme(seq: &[i64]) -> i64 {
    let (mut p, mut hi, mut lo) = (0i64, 0i64, 0i64);
    for &s in seq {
        p += s;
        hi = hi.max(p);
        lo = lo.min(p);
    }
    hi - lo
}

/// `Δ_w^I(x, y)`; `interval = None` means `I = ℤ`.
pub fn delta_count(w: &Pattern, interval: Option<(i64, i64)>, pair: &AsymptoticPair) -> i64 {
    let w = w.normalized();
    let occurs = |x: &dyn View, i: i64| w.iter().all(|(s, a)| x.at(s + Site::d1(i)) == a);
    let mut total = 0;
    for t in pair.disagreement().minus(w.shape()).iter() {
        let i = t.x;
        if let Some((a, b)) = interval {
            if i < a || i > b {
                continue;
            }
        }
        total += i64::from(occurs(&pair.right, i)) - i64::from(occurs(&pair.left, i));
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationScan {
    pub ok: bool,
    pub min_hamming: usize,
    pub failure: Option<String>,
}

/// Condition (a): `Ham(u, v)` and the Hamming distances of every nonzero shift of the padded
/// words against `u` and `v` exceed `(1 - δ) n / 2`. Shifts with `|j| ≥ n` all read the zero
/// word, so `j ∈ [-n, n] \ {0}` covers every case.
pub fn condition_a(params: &MarkerParams, u: &Word, v: &Word) -> SeparationScan {
    let n = params.n as i64;
    let mut min_h = u.hamming(v);
    if !params.far_enough(min_h) {
        return SeparationScan { ok: false, min_hamming: min_h, failure: Some(format!("Ham(u, v) = {min_h}")) };
    }
    for j in (-n..=n).filter(|&j| j != 0) {
        for (name, src) in [("x", u), ("y", v)] {
            for (target, t) in [("u", u), ("v", v)] {
                let h = src.window_hamming(j, t);
                min_h = min_h.min(h);
                if !params.far_enough(h) {
                    return SeparationScan {
                        ok: false,
                        min_hamming: min_h,
                        failure: Some(format!("Ham((σ^{j} {name})[0, n-1], {target}) = {h}")),
                    };
                }
            }
        }
    }
    SeparationScan { ok: true, min_hamming: min_h, failure: None }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountScan {
    pub ok: bool,
    pub shapes: u64,
    pub max_count: i64,
    /// Offending shape, pattern (symbols in shape order) and count.
    pub failure: Option<(Vec<i64>, Vec<u8>, i64)>,
}

/// Largest interval count over all patterns on one shape (offsets sorted, first offset 0).
struct ShapeCounter<'a> {
    xs: &'a [u8],
    ys: &'a [u8],
    pad: i64,
    n: i64,
}

impl ShapeCounter<'_> {
    fn worst(&self, offs: &[i64], prefix: &mut Vec<[i64; 3]>) -> (i64, usize) {
        let size = 1usize << offs.len();
        prefix.clear();
        prefix.resize(size, [0; 3]);
        let span = *offs.last().expect("nonempty");
        for i in -span..self.n {
            let (mut cx, mut cy) = (0usize, 0usize);
            for (t, &o) in offs.iter().enumerate() {
                let at = (i + o + self.pad) as usize;
                cx |= (self.xs[at] as usize) << t;
                cy |= (self.ys[at] as usize) << t;
            }
            if cx != cy {
                let e = &mut prefix[cy];
                e[0] += 1;
                e[1] = e[1].max(e[0]);
                let e = &mut prefix[cx];
                e[0] -= 1;
                e[2] = e[2].min(e[0]);
            }
        }
        prefix
            .iter()
            .enumerate()
            .map(|(c, e)| (e[1] - e[2], c))
            .max()
            .expect("nonempty")
    }
}

fn padded(w: &Word, pad: i64) -> Vec<u8> {
    (-pad..w.len() as i64 + pad).map(|i| w.padded(i)).collect()
}

fn failure_of(offs: &[i64], code: usize, count: i64) -> (Vec<i64>, Vec<u8>, i64) {
    let symbols = (0..offs.len()).map(|t| ((code >> t) & 1) as u8).collect();
    (offs.to_vec(), symbols, count)
}

/// Calls `visit` on every offset list `[0, a_1 < ... ]` extending `offs` with offsets
/// at most `max_off` and at most `k` entries; stops when `visit` returns false.
fn for_shapes(offs: &mut Vec<i64>, k: usize, max_off: i64, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    if !visit(offs) {
        return false;
    }
    if offs.len() == k {
        return true;
    }
    let last = *offs.last().expect("nonempty");
    for next in last + 1..=max_off {
        offs.push(next);
        let go = for_shapes(offs, k, max_off, visit);
        offs.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Number of shapes `D ⊆ [0, n-1]` with `min D = 0` and `|D| ≤ k`.
pub fn shape_count(n: usize, k: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for s in 0..k.min(n) {
        // c = C(n-1, s)
        total = total.saturating_add(c);
        c = c.saturating_mul((n - 1 - s) as u64) / (s as u64 + 1);
    }
    total
}

/// Condition (b), exhaustively: for every shape `D ⊆ [0, n-1]` with `min D = 0` and
/// `|D| ≤ k`, every pattern on it and every interval `I`, `|Δ_w^I| < ε n`.
pub fn condition_b(params: &MarkerParams, u: &Word, v: &Word, stop_early: bool) -> CountScan {
    let n = params.n as i64;
    let (xs, ys) = (padded(u, n), padded(v, n));
    let counter = ShapeCounter { xs: &xs, ys: &ys, pad: n, n };
    let k = params.k.min(params.n);

    let per_first = |first: i64| -> CountScan {
        let mut scan = CountScan { ok: true, shapes: 0, max_count: 0, failure: None };
        let mut prefix = Vec::new();
        let mut visit = |offs: &[i64]| -> bool {
            let (count, code) = counter.worst(offs, &mut prefix);
            scan.shapes += 1;
            scan.max_count = scan.max_count.max(count);
            if !params.low_count(count) {
                if scan.ok {
                    scan.failure = Some(failure_of(offs, code, count));
                }
                scan.ok = false;
                if stop_early {
                    return false;
                }
            }
            true
        };
        if first == 0 {
            visit(&[0]);
        } else if k >= 2 {
            let mut offs = vec![0, first];
            for_shapes(&mut offs, k, n - 1, &mut visit);
        }
        scan
    };

    let parts: Vec<CountScan> = if stop_early {
        let mut out = Vec::new();
        for first in 0..n {
            let s = per_first(first);
            let failed = !s.ok;
            out.push(s);
            if failed {
                break;
            }
        }
        out
    } else {
        (0..n).into_par_iter().map(per_first).collect()
    };
    merge(parts)
}

fn merge(parts: Vec<CountScan>) -> CountScan {
    let mut out = CountScan { ok: true, shapes: 0, max_count: 0, failure: None };
    for p in parts {
        out.shapes += p.shapes;
        out.max_count = out.max_count.max(p.max_count);
        if !p.ok && out.ok {
            out.failure = p.failure;
        }
        out.ok &= p.ok;
    }
    out
}

/// Condition (b) on `count` random shapes (seeded); used when the exhaustive check is too
/// large. A pass here is not a certificate.
pub fn condition_b_sampled(params: &MarkerParams, u: &Word, v: &Word, count: u64, seed: u64) -> CountScan {
    let n = params.n as i64;
    let (xs, ys) = (padded(u, n), padded(v, n));
    let counter = ShapeCounter { xs: &xs, ys: &ys, pad: n, n };
    let parts: Vec<CountScan> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let size = 1 + (i as usize % params.k.min(params.n));
            let mut offs: Vec<i64> = std::iter::once(0)
                .chain(sample(&mut rng, params.n - 1, size - 1).into_iter().map(|a| a as i64 + 1))
                .collect();
            offs.sort_unstable();
            let mut prefix = Vec::new();
            let (c, code) = counter.worst(&offs, &mut prefix);
            let ok = params.low_count(c);
            CountScan { ok, shapes: 1, max_count: c, failure: (!ok).then(|| failure_of(&offs, code, c)) }
        })
        .collect();
    merge(parts)
}

/// Runs both conditions. Condition (b) is exhaustive when the number of shapes is at most
/// `shape_budget`, and sampled (reported as not exhaustive) otherwise.
pub fn verify_markers(params: &MarkerParams, u: &Word, v: &Word, shape_budget: u64) -> Certificate {
    let a = condition_a(params, u, v);
    let exhaustive = shape_count(params.n, params.k) <= shape_budget;
    let b = if exhaustive {
        condition_b(params, u, v, false)
    } else {
        condition_b_sampled(params, u, v, shape_budget, params.seed)
    };
    let failure = a.failure.clone().or_else(|| {
        b.failure.as_ref().map(|(d, w, c)| format!("|Δ_w^I| = {c} for shape {d:?}, pattern {w:?}"))
    });
    Certificate {
        condition_a: a.ok,
        condition_b: b.ok,
        exhaustive,
        shapes_checked: b.shapes,
        min_hamming: a.min_hamming,
        max_interval_count: b.max_count,
        attempts: 0,
        failure,
    }
}
