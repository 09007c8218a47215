use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::UsageError;

#[derive(Parser, Debug)]
#[command(name = "trilink", version, about = "Pairwise link prediction with triangle reinforced PageRank")]
pub struct Cli {
    /// Cap on worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Success-probability experiment on seed edges.
    Pairwise(PairwiseArgs),
    /// Per-node AUC for multi-seeded standard link prediction.
    Linkpred(LinkpredArgs),
    /// TRPR convergence and rank-stability trace for one seed edge.
    Diagnose(DiagnoseArgs),
    /// Count (and optionally list) the triangles of an edge list.
    Triangles(TrianglesArgs),
    /// Generate a growing preferential attachment graph.
    GenGpa(GenGpaArgs),
}

/// Fills every unset field of `self` from the config file.
pub trait Merge: Sized {
    fn merge(self, file: Self) -> Self;

    fn config_path(&self) -> Option<&Path>;

    fn resolve(self) -> anyhow::Result<Self>
    where
        Self: DeserializeOwned,
    {
        let Some(path) = self.config_path() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(path)?;
        let file: Self = serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("config {}: {e}", path.display())))?;
        Ok(self.merge(file))
    }
}

macro_rules! impl_merge {
    ($ty:ty; opts: $($o:ident),*; flags: $($f:ident),*) => {
        impl Merge for $ty {
            fn merge(mut self, file: Self) -> Self {
                $( if self.$o.is_none() { self.$o = file.$o; } )*
                $( self.$f |= file.$f; )*
                self
            }

            fn config_path(&self) -> Option<&Path> {
                self.config.as_deref()
            }
        }
    };
}

#[derive(Args, Deserialize, Debug, Default)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct PairwiseArgs {
    /// JSON file with any of these options; flags given here win.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Edge list, one `u v` or `u v t` per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// holdout, temporal or loeto.
    #[arg(long)]
    pub protocol: Option<String>,
    /// Held-out fraction (holdout, default 0.3) or training prefix (temporal, default 0.8).
    #[arg(long)]
    pub fraction: Option<f64>,
    /// Comma-separated method names.
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master RNG seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// and (default) or or.
    #[arg(long)]
    pub truth_mode: Option<String>,
    /// adjacent-to-either or adjacent-to-both; defaults to the truth mode's rule.
    #[arg(long)]
    pub candidate_rule: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// TRPR iterations.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// L1 stopping bound for PageRank solves.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Also sample seed edges without ground truth.
    #[arg(long)]
    pub allow_empty_truth: bool,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
impl_merge!(PairwiseArgs; opts: input, protocol, fraction, methods, k, trials, seed, truth_mode,
    candidate_rule, alpha, iterations, tolerance, out; flags: allow_empty_truth);

#[derive(Args, Deserialize, Debug, Default)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct LinkpredArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Held-out fraction (default 0.2).
    #[arg(long)]
    pub fraction: Option<f64>,
    /// Cohort size (default 100).
    #[arg(long)]
    pub num_nodes: Option<usize>,
    /// baseline, sum, max, max-single, star, trpr, oracle.
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
impl_merge!(LinkpredArgs; opts: input, fraction, num_nodes, methods, seed, alpha, iterations,
    tolerance, out; flags: );

#[derive(Args, Deserialize, Debug, Default)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct DiagnoseArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Seed edge endpoints by label; a random edge is drawn when omitted.
    #[arg(long, requires = "seed_v")]
    pub seed_u: Option<String>,
    #[arg(long, requires = "seed_u")]
    pub seed_v: Option<String>,
    /// RNG seed for drawing the seed edge.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Iterations to trace (default 200).
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Nodes in the top-ranked restriction (default 100).
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Use the weighted variant.
    #[arg(long)]
    pub weighted: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
impl_merge!(DiagnoseArgs; opts: input, seed_u, seed_v, seed, max_iters, top, alpha, out;
    flags: weighted);

#[derive(Args, Debug)]
pub struct TrianglesArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Write one triangle per line, as labels, to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenGpaArgs {
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Probability that an event adds an edge between existing nodes.
    #[arg(long, default_value_t = 0.5)]
    pub p_edge: f64,
    #[arg(long, default_value_t = 5)]
    pub clique: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge-list output; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn required<T>(value: Option<T>, flag: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| UsageError(format!("--{flag} is required")).into())
}
