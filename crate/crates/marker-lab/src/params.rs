use serde::{Deserialize, Serialize};

use crate::error::{MarkerError, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkerParams {
    /// Largest shape size covered by the low-count condition.
    pub k: usize,
    /// Word length.
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    /// The constant `K` in the marker interaction.
    pub k_const: i64,
    pub seed: u64,
}

impl MarkerParams {
    pub fn new(k: usize, n: usize, epsilon: f64, seed: u64) -> Self {
        MarkerParams { k, n, delta: 0.5, epsilon, k_const: 16, seed }
    }

    /// `ε_k = 1 / (k² 2^k)`.
    pub fn epsilon_schedule(k: usize) -> f64 {
        1.0 / ((k * k) as f64 * 2f64.powi(k as i32))
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(MarkerError::InvalidParams("k must be positive".into()));
        }
        if self.n < 4 {
            return Err(MarkerError::InvalidParams("n must be at least 4".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(MarkerError::InvalidParams("delta must lie in (0, 1)".into()));
        }
        if self.epsilon <= 0.0 {
            return Err(MarkerError::InvalidParams("epsilon must be positive".into()));
        }
        if self.k_const <= 0 {
            return Err(MarkerError::InvalidParams("K must be positive".into()));
        }
        Ok(())
    }

    /// `Ham > (1 - δ) n / 2`.
    pub fn far_enough(&self, ham: usize) -> bool {
        2.0 * ham as f64 > (1.0 - self.delta) * self.n as f64
    }

    /// `|Δ| < ε n`.
    pub fn low_count(&self, count: i64) -> bool {
        (count.unsigned_abs() as f64) < self.epsilon * self.n as f64
    }
}

/// What a verification run established.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub condition_a: bool,
    pub condition_b: bool,
    /// Condition (b) was checked on every shape (otherwise on a sample of shapes).
    pub exhaustive: bool,
    pub shapes_checked: u64,
    /// Smallest Hamming distance met while checking condition (a).
    pub min_hamming: usize,
    /// Largest `|Δ_w^I|` met while checking condition (b).
    pub max_interval_count: i64,
    /// Candidate pairs drawn by the search before this one passed.
    pub attempts: u64,
    pub failure: Option<String>,
}

impl Certificate {
    /// Both conditions hold and condition (b) was checked exhaustively.
    pub fn full(&self) -> bool {
        self.condition_a && self.condition_b && self.exhaustive
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkerData {
    pub params: MarkerParams,
    pub u: Word,
    pub v: Word,
    pub certified: Certificate,
}

#[derive(Serialize, Deserialize)]
struct MarkerFile {
    params: MarkerParams,
    u: String,
    v: String,
    certified: Certificate,
}

impl MarkerData {
    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn to_json(&self) -> String {
        let file = MarkerFile {
            params: self.params.clone(),
            u: self.u.to_string(),
            v: self.v.to_string(),
            certified: self.certified.clone(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MarkerFile = serde_json::from_str(text).map_err(|e| MarkerError::Parse(e.to_string()))?;
        let u = Word::parse(&file.u)?;
        let v = Word::parse(&file.v)?;
        if u.len() != file.params.n || v.len() != file.params.n {
            return Err(MarkerError::Parse("word lengths disagree with n".into()));
        }
        file.params.validate()?;
        Ok(MarkerData { params: file.params, u, v, certified: file.certified })
    }
}
