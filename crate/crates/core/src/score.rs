//! Dense per-node scores, the common output of every predictor.

use std::cmp::Ordering;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Result};

/// Dense length-`n` scores tagged with the method that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub provenance: String,
}

impl ScoreVector {
    pub fn new(values: Vec<f64>, provenance: impl Into<String>) -> Self {
        ScoreVector {
            values,
            provenance: provenance.into(),
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }

    /// Indices of the `k` largest entries, ties by ascending index.
    pub fn top_k(&self, k: usize) -> Vec<usize> {
        top_k(&self.values, k)
    }
}

impl Deref for ScoreVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

/// Element-wise combination of two score vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combine {
    Max,
    Mul,
}

impl Combine {
    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            Combine::Max => a.max(b),
            Combine::Mul => a * b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Combine::Max => "max",
            Combine::Mul => "mul",
        }
    }
}

pub fn combine_scores(a: &ScoreVector, b: &ScoreVector, mode: Combine) -> Result<ScoreVector> {
    check_len(a.len(), b.len())?;
    let values = a.iter().zip(b.iter()).map(|(&x, &y)| mode.apply(x, y)).collect();
    Ok(ScoreVector::new(
        values,
        format!("{}({},{})", mode.name(), a.provenance, b.provenance),
    ))
}

/// Ranking order: larger score first, NaN last, equal scores by index.
pub(crate) fn rank_cmp(values: &[f64], i: usize, j: usize) -> Ordering {
    desc(values[i], values[j]).then(i.cmp(&j))
}

pub(crate) fn desc(a: f64, b: f64) -> Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => b.partial_cmp(&a).unwrap(),
    }
}

pub(crate) fn top_k(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    let k = k.min(idx.len());
    if k == 0 {
        return Vec::new();
    }
    if k < idx.len() {
        idx.select_nth_unstable_by(k - 1, |&i, &j| rank_cmp(values, i, j));
        idx.truncate(k);
    }
    idx.sort_unstable_by(|&i, &j| rank_cmp(values, i, j));
    idx
}
