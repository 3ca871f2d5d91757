//! The example spaces by name.

use lattice_core::{Asserted, Pattern, SftSpace, Site};

use crate::error::{Result, ZooError};

fn unit_steps(d: usize) -> Vec<Site> {
    if d == 1 {
        vec![Site::d1(1)]
    } else {
        vec![Site::new(1, 0), Site::new(0, 1)]
    }
}

fn check_dim(d: usize) -> Result<()> {
    if (1..=2).contains(&d) {
        Ok(())
    } else {
        Err(ZooError::Parameter(format!("dimension {d} is not supported")))
    }
}

/// All of `{0..q-1}^{Z^d}`.
pub fn full(q: usize, d: usize) -> Result<SftSpace> {
    check_dim(d)?;
    if q == 0 {
        return Err(ZooError::Parameter("the alphabet needs at least one symbol".into()));
    }
    Ok(SftSpace::new(d, SftSpace::numeric_alphabet(q), vec![])?
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true }))
}

/// No two adjacent ones.
pub fn hardcore(d: usize) -> Result<SftSpace> {
    check_dim(d)?;
    let forbidden = unit_steps(d).into_iter().map(|e| Pattern::from_pairs([(Site::ORIGIN, 1), (e, 1)])).collect();
    Ok(SftSpace::new(d, SftSpace::numeric_alphabet(2), forbidden)?
        .with_asserted(Asserted { ssf: true, safe_symbol: Some(0), pivot: true }))
}

/// Proper `q`-colorings of the grid.
pub fn coloring(q: usize, d: usize) -> Result<SftSpace> {
    check_dim(d)?;
    if q < 2 {
        return Err(ZooError::Parameter("a coloring needs at least two colors".into()));
    }
    let mut forbidden = Vec::new();
    for e in unit_steps(d) {
        for a in 0..q as u8 {
            forbidden.push(Pattern::from_pairs([(Site::ORIGIN, a), (e, a)]));
        }
    }
    let ssf = q > 2 * d;
    let pivot = q >= 2 * d + 2 || (d == 2 && (q == 2 || q == 3));
    Ok(SftSpace::new(d, SftSpace::numeric_alphabet(q), forbidden)?
        .with_asserted(Asserted { ssf, safe_symbol: None, pivot }))
}

/// Binary configurations with at most one `1`. No structural property is asserted.
pub fn sunny(d: usize) -> Result<SftSpace> {
    check_dim(d)?;
    Ok(SftSpace::new(d, SftSpace::numeric_alphabet(2), vec![])?.with_at_most_one(1))
}

fn args(spec: &str, name: &str) -> Option<Vec<usize>> {
    let inner = spec.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Parses `full(q,d)`, `hardcore(d)`, `coloring(q,d)` or `sunny(d)`.
pub fn builtin_space(spec: &str) -> Result<SftSpace> {
    let spec: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || ZooError::UnknownSpace(spec.clone());
    for (name, arity) in [("full", 2), ("hardcore", 1), ("coloring", 2), ("sunny", 1)] {
        if let Some(a) = args(&spec, name) {
            if a.len() != arity {
                return Err(unknown());
            }
            return match name {
                "full" => full(a[0], a[1]),
                "hardcore" => hardcore(a[0]),
                "coloring" => coloring(a[0], a[1]),
                _ => sunny(a[0]),
            };
        }
    }
    Err(unknown())
}
