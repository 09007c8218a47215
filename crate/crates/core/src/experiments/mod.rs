//! Evaluation protocols for pairwise and standard link prediction.
//!
//! Pairwise runs hold out edges (random hold-out, temporal prefix, or the
//! triangles of a single seed edge), sample seed edges from what remains and
//! score every method on the same split and seed edge. Success at `k` means
//! at least one ground-truth node ranks among the top `k` candidates.
//! Standard link prediction scores single nodes and reports per-node AUC.

mod linkpred;
mod metrics;
mod pairwise;
mod report;
mod split;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linkpred::{
    run_standard_linkpred, LinkPredConfig, LinkPredMethod, LinkPredOutcome, LinkPredSummary,
    MaxVariant, NodeAuc,
};
pub use metrics::{auc, best_rank, candidates, ground_truth, success_probability, TrialReport};
pub use pairwise::{
    run_pairwise_experiment, score_pairwise, Method, PairwiseConfig, PairwiseInput,
    PairwiseOutcome, ProtocolSpec, SummaryRow, TrialContext,
};
pub use report::{write_linkpred, write_pairwise, LINKPRED_FILES, PAIRWISE_FILES};
pub use split::{split_holdout, split_loeto, split_temporal, Protocol, SplitDataset, TestEdge};

/// Which held-out wedges make a node a correct prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TruthMode {
    /// Both `(u,w)` and `(v,w)` are held out.
    #[default]
    And,
    /// Exactly one of them is held out and the other is in training.
    Or,
}

impl FromStr for TruthMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "and" => Ok(TruthMode::And),
            "or" => Ok(TruthMode::Or),
            _ => Err(Error::invalid(format!("unknown truth mode `{s}`"))),
        }
    }
}

impl fmt::Display for TruthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthMode::And => "and",
            TruthMode::Or => "or",
        })
    }
}

/// Which training-adjacent nodes are removed from the candidate list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateRule {
    /// Drop nodes adjacent to either seed endpoint.
    AdjacentToEither,
    /// Drop only nodes adjacent to both endpoints (triangles already closed).
    AdjacentToBoth,
}

impl CandidateRule {
    /// The rule under which `mode`'s ground truth can be ranked at all.
    pub fn default_for(mode: TruthMode) -> Self {
        match mode {
            TruthMode::And => CandidateRule::AdjacentToEither,
            TruthMode::Or => CandidateRule::AdjacentToBoth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalPolicy {
    pub k: usize,
    pub truth_mode: TruthMode,
    pub candidate_rule: CandidateRule,
}

impl EvalPolicy {
    pub fn new(k: usize, truth_mode: TruthMode) -> Self {
        EvalPolicy {
            k,
            truth_mode,
            candidate_rule: CandidateRule::default_for(truth_mode),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        Ok(())
    }
}

/// Independent stream `stream` of the master seed.
pub fn derive_rng(master: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}

/// Stream reserved for the hold-out split itself; trials use `0..trials`.
pub(crate) const SPLIT_STREAM: u64 = u64::MAX;
