use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{
    make_seed, pair_seeded_pagerank, single_seeded_pagerank, trpr, DiffusionParams, SeedKind,
};
use crate::error::{Error, Result};
use crate::graph::{build_graph, EdgeList, Graph};
use crate::local::{score_all_nodes, LocalMethod};
use crate::score::{combine_scores, Combine, ScoreVector};
use crate::synth::RNG_NAME;
use crate::triangles::{enumerate_triangles, TriangleSet};

use super::metrics::{candidates, ground_truth, report, TrialReport};
use super::split::{split_holdout, split_loeto, split_temporal, SplitDataset};
use super::{derive_rng, CandidateRule, EvalPolicy, TruthMode};

/// LOETO draws per trial before the run is abandoned.
const LOETO_ATTEMPTS: usize = 1000;

/// Pairwise predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PairSeed,
    Trpr,
    Trprw,
    /// Single-seeded PageRank from the endpoint with the lower dense index.
    SingleSeed,
    /// Single-seeded PageRank from the other endpoint.
    SingleSeedHi,
    /// Element-wise max of the two single-seeded vectors.
    PprMax,
    /// Element-wise product of the two single-seeded vectors.
    PprMul,
    Local(LocalMethod),
    /// Indicator of the ground truth; an upper bound for harness checks.
    Oracle,
    /// Negated ground-truth indicator.
    AntiOracle,
}

impl Method {
    pub fn defaults() -> Vec<Method> {
        [
            "pairseed", "trpr", "trprw", "ss", "ppr-max", "ppr-mul", "js", "aa", "pa", "js-max",
            "js-mul", "aa-max", "aa-mul",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
    }

    fn needs_triangles(self) -> bool {
        matches!(self, Method::Trpr | Method::Trprw)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::PairSeed => f.write_str("pairseed"),
            Method::Trpr => f.write_str("trpr"),
            Method::Trprw => f.write_str("trprw"),
            Method::SingleSeed => f.write_str("ss"),
            Method::SingleSeedHi => f.write_str("ss-hi"),
            Method::PprMax => f.write_str("ppr-max"),
            Method::PprMul => f.write_str("ppr-mul"),
            Method::Local(m) => m.fmt(f),
            Method::Oracle => f.write_str("oracle"),
            Method::AntiOracle => f.write_str("antioracle"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pairseed" => Method::PairSeed,
            "trpr" => Method::Trpr,
            "trprw" => Method::Trprw,
            "ss" => Method::SingleSeed,
            "ss-hi" => Method::SingleSeedHi,
            "ppr-max" => Method::PprMax,
            "ppr-mul" => Method::PprMul,
            "oracle" => Method::Oracle,
            "antioracle" => Method::AntiOracle,
            other => Method::Local(
                other
                    .parse()
                    .map_err(|_| Error::invalid(format!("unknown method `{other}`")))?,
            ),
        })
    }
}

/// Everything a pairwise predictor may look at for one trial.
#[derive(Debug, Clone, Copy)]
pub struct TrialContext<'a> {
    pub train: &'a Graph,
    pub triangles: Option<&'a TriangleSet>,
    pub u: usize,
    pub v: usize,
    /// Ground truth; read only by the oracle pseudo-methods.
    pub truth: &'a [usize],
    pub params: &'a DiffusionParams,
}

pub fn score_pairwise(method: Method, ctx: &TrialContext<'_>) -> Result<ScoreVector> {
    let TrialContext { train: g, u, v, params, .. } = *ctx;
    let tri = || {
        ctx.triangles
            .ok_or_else(|| Error::invalid("TRPR needs the triangle set of the training graph"))
    };
    let mut scores = match method {
        Method::PairSeed => pair_seeded_pagerank(g, u, v, params)?,
        Method::SingleSeed => single_seeded_pagerank(g, u.min(v), params)?,
        Method::SingleSeedHi => single_seeded_pagerank(g, u.max(v), params)?,
        Method::PprMax | Method::PprMul => {
            let mode = if method == Method::PprMax { Combine::Max } else { Combine::Mul };
            combine_scores(
                &single_seeded_pagerank(g, u, params)?,
                &single_seeded_pagerank(g, v, params)?,
                mode,
            )?
        }
        Method::Trpr | Method::Trprw => {
            let seed = make_seed(SeedKind::Pair(u, v), g)?;
            trpr(g, tri()?, &seed, params, method == Method::Trprw)?
        }
        Method::Local(m) => score_all_nodes(g, u, v, m)?,
        Method::Oracle | Method::AntiOracle => {
            let sign = if method == Method::Oracle { 1.0 } else { -1.0 };
            let mut x = vec![0.0; g.n()];
            for &w in ctx.truth {
                x[w] = sign;
            }
            ScoreVector::new(x, "")
        }
    };
    scores.provenance = method.to_string();
    Ok(scores)
}

/// Which split drives a pairwise run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProtocolSpec {
    Holdout { test_fraction: f64 },
    Temporal { train_fraction: f64 },
    Loeto,
}

impl ProtocolSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProtocolSpec::Holdout { .. } => "holdout",
            ProtocolSpec::Temporal { .. } => "temporal",
            ProtocolSpec::Loeto => "loeto",
        }
    }
}

pub enum PairwiseInput {
    Graph(Graph),
    Edges(EdgeList),
}

impl PairwiseInput {
    fn graph(&self) -> Result<Graph> {
        match self {
            PairwiseInput::Graph(g) => Ok(g.clone()),
            PairwiseInput::Edges(e) => build_graph(e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PairwiseConfig {
    pub protocol: ProtocolSpec,
    pub methods: Vec<Method>,
    pub ks: Vec<usize>,
    pub truth_mode: TruthMode,
    /// `None` picks the rule matching the truth mode.
    pub candidate_rule: Option<CandidateRule>,
    pub trials: usize,
    pub rng_seed: u64,
    pub params: DiffusionParams,
    /// Sample seed edges even when they have no ground truth (scored as misses).
    pub allow_empty_truth: bool,
}

impl Default for PairwiseConfig {
    fn default() -> Self {
        PairwiseConfig {
            protocol: ProtocolSpec::Holdout { test_fraction: 0.3 },
            methods: Method::defaults(),
            ks: vec![5, 25],
            truth_mode: TruthMode::And,
            candidate_rule: None,
            trials: 500,
            rng_seed: 0,
            params: DiffusionParams::default(),
            allow_empty_truth: false,
        }
    }
}

impl PairwiseConfig {
    fn policy(&self) -> EvalPolicy {
        EvalPolicy {
            k: self.ks.iter().copied().max().unwrap_or(1),
            truth_mode: self.truth_mode,
            candidate_rule: self
                .candidate_rule
                .unwrap_or_else(|| CandidateRule::default_for(self.truth_mode)),
        }
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("no methods given"));
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return Err(Error::invalid("every k must be at least 1"));
        }
        // LOETO holds out both wedge edges, so no node can have exactly one
        if self.protocol == ProtocolSpec::Loeto && self.truth_mode == TruthMode::Or {
            return Err(Error::invalid("LOETO has no OR ground truth; use the AND truth mode"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub method: String,
    pub k: usize,
    pub trials: usize,
    pub discards: usize,
    pub mean_sp: f64,
}

/// Replay information written next to the result tables.
#[derive(Debug, Clone, Serialize)]
pub struct PairwiseMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub rng: &'static str,
    pub rng_seed: u64,
    pub protocol: ProtocolSpec,
    pub methods: Vec<String>,
    pub ks: Vec<usize>,
    pub trials: usize,
    pub discards: usize,
    pub truth_mode: TruthMode,
    pub candidate_rule: CandidateRule,
    pub alpha: f64,
    pub iterations: usize,
    pub tolerance: Option<f64>,
    pub allow_empty_truth: bool,
    pub input_nodes: usize,
    pub input_edges: usize,
    /// Shared split statistics; absent for LOETO, which splits per trial.
    pub split: Option<SplitStats>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitStats {
    pub train_nodes: usize,
    pub train_edges: usize,
    pub train_edges_dropped: usize,
    pub test_edges: usize,
    pub usable_test_edges: usize,
    pub eligible_seed_edges: usize,
}

#[derive(Debug, Clone)]
pub struct PairwiseOutcome {
    pub summary: Vec<SummaryRow>,
    /// One report per trial, method and k, in that nesting order.
    pub details: Vec<TrialReport>,
    pub metadata: PairwiseMetadata,
}

struct TrialResult {
    reports: Vec<TrialReport>,
    discards: usize,
}

/// Runs `cfg.trials` seed-edge trials and scores every method on each.
pub fn run_pairwise_experiment(input: &PairwiseInput, cfg: &PairwiseConfig) -> Result<PairwiseOutcome> {
    cfg.validate()?;
    let policy = cfg.policy();
    let (input_nodes, input_edges, results, split_stats) = match cfg.protocol {
        ProtocolSpec::Holdout { test_fraction } => {
            let g = input.graph()?.largest_component().0;
            let split = split_holdout(&g, test_fraction, cfg.rng_seed)?;
            let (results, stats) = run_shared(&split, cfg, &policy)?;
            (g.n(), g.m(), results, Some(stats))
        }
        ProtocolSpec::Temporal { train_fraction } => {
            let PairwiseInput::Edges(edges) = input else {
                return Err(Error::invalid("temporal protocol needs a timestamped edge list"));
            };
            let g = build_graph(edges)?;
            let split = split_temporal(edges, train_fraction)?;
            let (results, stats) = run_shared(&split, cfg, &policy)?;
            (g.n(), g.m(), results, Some(stats))
        }
        ProtocolSpec::Loeto => {
            let g = input.graph()?.largest_component().0;
            let results = run_loeto(&g, cfg, &policy)?;
            (g.n(), g.m(), results, None)
        }
    };

    let discards: usize = results.iter().map(|r| r.discards).sum();
    let trials = results.len();
    let details: Vec<TrialReport> = results.into_iter().flat_map(|r| r.reports).collect();
    let mut summary = Vec::new();
    for m in &cfg.methods {
        let name = m.to_string();
        for &k in &cfg.ks {
            let hits: usize = details
                .iter()
                .filter(|r| r.method == name && r.k == k)
                .map(|r| r.sp as usize)
                .sum();
            summary.push(SummaryRow {
                method: name.clone(),
                k,
                trials,
                discards,
                mean_sp: hits as f64 / trials as f64,
            });
        }
    }
    let metadata = PairwiseMetadata {
        tool: "trilink",
        version: env!("CARGO_PKG_VERSION"),
        rng: RNG_NAME,
        rng_seed: cfg.rng_seed,
        protocol: cfg.protocol,
        methods: cfg.methods.iter().map(|m| m.to_string()).collect(),
        ks: cfg.ks.clone(),
        trials,
        discards,
        truth_mode: policy.truth_mode,
        candidate_rule: policy.candidate_rule,
        alpha: cfg.params.alpha,
        iterations: cfg.params.iterations,
        tolerance: cfg.params.tolerance,
        allow_empty_truth: cfg.allow_empty_truth,
        input_nodes,
        input_edges,
        split: split_stats,
    };
    Ok(PairwiseOutcome {
        summary,
        details,
        metadata,
    })
}

#[allow(clippy::too_many_arguments)]
fn score_trial(
    split: &SplitDataset,
    triangles: Option<&TriangleSet>,
    u: usize,
    v: usize,
    truth: &[usize],
    trial: usize,
    cfg: &PairwiseConfig,
    policy: &EvalPolicy,
) -> Result<Vec<TrialReport>> {
    let cands = candidates(&split.train, u, v, policy.candidate_rule);
    let ctx = TrialContext {
        train: &split.train,
        triangles,
        u,
        v,
        truth,
        params: &cfg.params,
    };
    let mut out = Vec::with_capacity(cfg.methods.len() * cfg.ks.len());
    for &m in &cfg.methods {
        let scores = score_pairwise(m, &ctx)?;
        for &k in &cfg.ks {
            out.push(report(&scores, split, u, v, &cands, truth, k, trial));
        }
    }
    Ok(out)
}

/// Hold-out and temporal runs: one split, many seed edges.
fn run_shared(
    split: &SplitDataset,
    cfg: &PairwiseConfig,
    policy: &EvalPolicy,
) -> Result<(Vec<TrialResult>, SplitStats)> {
    let triangles = cfg
        .methods
        .iter()
        .any(|m| m.needs_triangles())
        .then(|| enumerate_triangles(&split.train));
    let eligible: Vec<(usize, usize)> = split
        .train
        .edges()
        .filter(|&(u, v)| cfg.allow_empty_truth || !ground_truth(split, u, v, policy).is_empty())
        .collect();
    if eligible.is_empty() {
        return Err(Error::invalid("no training edge has any ground-truth node"));
    }
    let results = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_rng(cfg.rng_seed, t as u64);
            let (u, v) = eligible[rng.gen_range(0..eligible.len())];
            let truth = ground_truth(split, u, v, policy);
            let reports = score_trial(split, triangles.as_ref(), u, v, &truth, t, cfg, policy)?;
            Ok(TrialResult { reports, discards: 0 })
        })
        .collect::<Result<Vec<_>>>()?;
    let stats = SplitStats {
        train_nodes: split.train.n(),
        train_edges: split.train.m(),
        train_edges_dropped: split.train_edges_dropped,
        test_edges: split.test_edges.len(),
        usable_test_edges: split.usable_test_edges(),
        eligible_seed_edges: eligible.len(),
    };
    Ok((results, stats))
}

/// LOETO runs: a fresh split for every trial.
fn run_loeto(g: &Graph, cfg: &PairwiseConfig, policy: &EvalPolicy) -> Result<Vec<TrialResult>> {
    let in_triangle: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| {
            let nv = g.adj(v);
            g.adj(u).iter().any(|w| nv.binary_search(w).is_ok())
        })
        .collect();
    if in_triangle.is_empty() {
        return Err(Error::invalid("no edge lies in a triangle"));
    }
    let need_triangles = cfg.methods.iter().any(|m| m.needs_triangles());
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_rng(cfg.rng_seed, t as u64);
            let mut discards = 0;
            for _ in 0..LOETO_ATTEMPTS {
                let (a, b) = in_triangle[rng.gen_range(0..in_triangle.len())];
                let split = split_loeto(g, a, b)?;
                let ends = split
                    .train
                    .index_of(g.label(a))
                    .zip(split.train.index_of(g.label(b)));
                let Some((u, v)) = ends else {
                    discards += 1;
                    continue;
                };
                let truth = ground_truth(&split, u, v, policy);
                if truth.is_empty() {
                    discards += 1;
                    continue;
                }
                let triangles = need_triangles.then(|| enumerate_triangles(&split.train));
                let reports = score_trial(&split, triangles.as_ref(), u, v, &truth, t, cfg, policy)?;
                return Ok(TrialResult { reports, discards });
            }
            Err(Error::invalid(format!(
                "trial {t}: no valid LOETO seed edge after {LOETO_ATTEMPTS} draws"
            )))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate_gpa, GpaParams};

    fn gpa(seed: u64) -> Graph {
        generate_gpa(&GpaParams { steps: 300, p_edge: 0.6, rng_seed: seed, ..Default::default() }).unwrap()
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::defaults().into_iter().chain([Method::SingleSeedHi, Method::Oracle, Method::AntiOracle]) {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn oracle_is_perfect_and_antioracle_fails() {
        let cfg = PairwiseConfig {
            methods: vec![Method::Oracle, Method::AntiOracle],
            trials: 40,
            rng_seed: 3,
            ..Default::default()
        };
        let out = run_pairwise_experiment(&PairwiseInput::Graph(gpa(1)), &cfg).unwrap();
        assert_eq!(out.summary.len(), 4);
        for row in &out.summary {
            let want = if row.method == "oracle" { 1.0 } else { 0.0 };
            assert_eq!(row.mean_sp, want, "{row:?}");
        }
    }

    #[test]
    fn one_row_per_method_and_k() {
        let cfg = PairwiseConfig {
            methods: vec![Method::PairSeed, Method::Trpr, Method::Local(LocalMethod::Js)],
            trials: 10,
            ..Default::default()
        };
        let out = run_pairwise_experiment(&PairwiseInput::Graph(gpa(2)), &cfg).unwrap();
        assert_eq!(out.summary.len(), 6);
        assert_eq!(out.details.len(), 60);
        for pair in out.summary.chunks(2) {
            assert!(pair[1].mean_sp >= pair[0].mean_sp);
        }
    }

    #[test]
    fn loeto_runs_and_counts() {
        let cfg = PairwiseConfig {
            protocol: ProtocolSpec::Loeto,
            methods: vec![Method::Oracle, Method::PairSeed],
            ks: vec![5],
            trials: 15,
            rng_seed: 5,
            ..Default::default()
        };
        let out = run_pairwise_experiment(&PairwiseInput::Graph(gpa(4)), &cfg).unwrap();
        assert_eq!(out.metadata.trials, 15);
        assert_eq!(out.summary[0].mean_sp, 1.0);
        assert!(out.metadata.split.is_none());
    }

    #[test]
    fn temporal_needs_edges() {
        let cfg = PairwiseConfig {
            protocol: ProtocolSpec::Temporal { train_fraction: 0.8 },
            ..Default::default()
        };
        assert!(run_pairwise_experiment(&PairwiseInput::Graph(gpa(1)), &cfg).is_err());
    }

    #[test]
    fn bad_config() {
        let g = PairwiseInput::Graph(gpa(1));
        for cfg in [
            PairwiseConfig { trials: 0, ..Default::default() },
            PairwiseConfig { ks: vec![0], ..Default::default() },
            PairwiseConfig { methods: vec![], ..Default::default() },
        ] {
            assert!(run_pairwise_experiment(&g, &cfg).is_err());
        }
    }
}
