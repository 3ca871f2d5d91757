//! Shape literals: `a..b` ranges, `{s1;s2;...}` lists, and `(i,j)` sites or `(a..b,c..d)` boxes
//! in two dimensions. Chains are shapes separated by `;` outside braces.

use lattice_core::{Shape, Site};

use crate::error::{CliError, Result};

fn bad(text: &str) -> CliError {
    CliError::Usage(format!("cannot read shape {text:?}"))
}

fn range(text: &str) -> Result<(i64, i64)> {
    let t = text.trim();
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad(text));
    match t.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(bad(text));
            }
            Ok((a, b))
        }
        None => {
            let a = parse(t)?;
            Ok((a, a))
        }
    }
}

fn element(text: &str, dim: usize) -> Result<Shape> {
    let t = text.trim();
    if dim == 1 {
        let (a, b) = range(t.trim_start_matches('(').trim_end_matches(')'))?;
        return Ok(Shape::interval(a, b));
    }
    let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| bad(text))?;
    let (xs, ys) = inner.split_once(',').ok_or_else(|| bad(text))?;
    let ((x0, x1), (y0, y1)) = (range(xs)?, range(ys)?);
    Ok(Shape::new((x0..=x1).flat_map(|x| (y0..=y1).map(move |y| Site::new(x, y)))))
}

pub fn parse_shape(text: &str, dim: usize) -> Result<Shape> {
    let t = text.trim();
    match t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        Some(inner) if inner.trim().is_empty() => Ok(Shape::empty()),
        Some(inner) => inner.split(';').try_fold(Shape::empty(), |acc, e| Ok(acc.union(&element(e, dim)?))),
        None => element(t, dim),
    }
}

pub fn parse_chain(text: &str, dim: usize) -> Result<Vec<Shape>> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(bad(text));
        }
    }
    parts.push(&text[start..]);
    parts.into_iter().filter(|p| !p.trim().is_empty()).map(|p| parse_shape(p, dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_shape("-8..8", 1).unwrap(), Shape::interval(-8, 8));
        assert_eq!(parse_shape("{0}", 1).unwrap(), Shape::singleton(Site::ORIGIN));
        assert_eq!(parse_shape("{-1;3..4}", 1).unwrap(), Shape::new([Site::d1(-1), Site::d1(3), Site::d1(4)]));
        assert_eq!(parse_shape("(-1..1,-1..1)", 2).unwrap(), Shape::ball(1, 2));
        assert_eq!(parse_shape("{(0,0);(1,0)}", 2).unwrap().len(), 2);
        let chain = parse_chain("{0};{-1..1};{-3..3}", 1).unwrap();
        assert_eq!(chain, vec![Shape::interval(0, 0), Shape::interval(-1, 1), Shape::interval(-3, 3)]);
        assert!(parse_shape("3..1", 1).is_err());
        assert!(parse_shape("(0,0", 2).is_err());
        assert!(parse_chain("{0}};{1}", 1).is_err());
    }
}
