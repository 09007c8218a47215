//! Seeded PageRank, triangle reinforced PageRank and their diagnostics.

mod pagerank;
mod seed;
mod stability;
mod trpr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use pagerank::{pagerank, pagerank_steps, pair_seeded_pagerank, single_seeded_pagerank};
pub use seed::{make_seed, SeedKind, SeedVector};
pub use stability::{average_ranks, kendall_tau_b, rank_stability, spearman};
pub use trpr::{convergence_trace, trpr, Trpr};

/// Parameters shared by every diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionParams {
    /// Probability of following an edge rather than teleporting to the seed.
    pub alpha: f64,
    /// Fixed TRPR iteration count.
    pub iterations: usize,
    /// L1 stopping bound for the PageRank solve; `None` means `1e-15 · n`.
    pub tolerance: Option<f64>,
}

impl Default for DiffusionParams {
    fn default() -> Self {
        DiffusionParams {
            alpha: 0.85,
            iterations: 10,
            tolerance: None,
        }
    }
}

impl DiffusionParams {
    pub fn with_alpha(alpha: f64) -> Self {
        DiffusionParams {
            alpha,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.iterations == 0 {
            return Err(Error::invalid("iterations must be at least 1"));
        }
        if let Some(t) = self.tolerance {
            if t.is_nan() || t <= 0.0 {
                return Err(Error::invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(())
    }

    pub fn tolerance_for(&self, n: usize) -> f64 {
        self.tolerance.unwrap_or(1e-15 * n.max(1) as f64)
    }

    /// Iteration cap for the PageRank solve, `10⁶ / (1 - α)`.
    pub fn max_steps(&self) -> usize {
        (1e6 / (1.0 - self.alpha)).ceil() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validate() {
        assert!(DiffusionParams::default().validate().is_ok());
        assert!(DiffusionParams::with_alpha(1.0).validate().is_err());
        assert!(DiffusionParams::with_alpha(0.0).validate().is_err());
        let p = DiffusionParams { iterations: 0, ..Default::default() };
        assert!(p.validate().is_err());
        let p = DiffusionParams { tolerance: Some(0.0), ..Default::default() };
        assert!(p.validate().is_err());
        assert!((DiffusionParams::default().tolerance_for(10) - 1e-14).abs() < 1e-28);
    }
}
