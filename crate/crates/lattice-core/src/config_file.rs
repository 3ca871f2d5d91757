//! Configuration files: a periodic background cell and a finite patch, symbols by name.
//!
//! ```json
//! {"background": {"period": [2, 1], "cell": ["0", "1"]}, "patch": {"(3,0)": "1"}}
//! ```
//!
//! Patch keys are `"(i,j)"` in two dimensions and `"(i)"` or `"i"` in one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{LatticeError, Result};
use crate::sft::SftSpace;
use crate::site::Site;

#[derive(Debug, Serialize, Deserialize)]
struct Background {
    #[serde(default = "unit_period")]
    period: Vec<usize>,
    cell: Vec<String>,
}

fn unit_period() -> Vec<usize> {
    vec![1, 1]
}

#[derive(Debug, Serialize, Deserialize)]
struct ConfigFile {
    background: Background,
    #[serde(default)]
    patch: BTreeMap<String, String>,
}

fn parse_site(key: &str, dim: usize) -> Result<Site> {
    let bad = || LatticeError::Parse(format!("bad site {key:?}"));
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    let coords: Vec<i64> = inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    if coords.len() != dim {
        return Err(bad());
    }
    Site::from_coords(&coords).ok_or_else(bad)
}

fn site_key(s: Site, dim: usize) -> String {
    let c: Vec<String> = s.coords(dim).iter().map(i64::to_string).collect();
    format!("({})", c.join(","))
}

pub fn config_from_json(text: &str, sft: &SftSpace) -> Result<Configuration> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))?;
    let dim = sft.dimension();
    let period = match file.background.period.as_slice() {
        [p] => [*p, 1],
        [p, q] => [*p, *q],
        _ => return Err(LatticeError::Parse("period needs one or two entries".into())),
    };
    let cell = file.background.cell.iter().map(|a| sft.symbol_index(a)).collect::<Result<Vec<u8>>>()?;
    let mut x = Configuration::periodic(dim, period, cell)?;
    for (k, a) in &file.patch {
        x.set(parse_site(k, dim)?, sft.symbol_index(a)?);
    }
    Ok(x)
}

pub fn config_to_json(x: &Configuration, sft: &SftSpace) -> String {
    let [px, py] = x.period();
    let period = if x.dim() == 1 { vec![px] } else { vec![px, py] };
    let file = ConfigFile {
        background: Background { period, cell: x.cell().iter().map(|&a| sft.symbol_name(a).to_string()).collect() },
        patch: x.patch().iter().map(|(&s, &a)| (site_key(s, x.dim()), sft.symbol_name(a).to_string())).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
