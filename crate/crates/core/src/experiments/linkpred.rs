use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{make_seed, pagerank, single_seeded_pagerank, trpr, DiffusionParams, SeedKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::synth::RNG_NAME;
use crate::triangles::{enumerate_triangles, TriangleSet};

use super::metrics::auc;
use super::split::{split_holdout, SplitDataset};

/// How the `max` method combines the vectors around a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxVariant {
    /// Element-wise max over the pair-seeded vectors of the edges at `i`.
    Pair,
    /// Element-wise max over single-seeded vectors of `i` and its neighbors.
    Single,
}

/// Single-node predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkPredMethod {
    /// Single-seeded PageRank.
    Baseline,
    /// PageRank seeded with weight `deg(i)` at `i` and 1 on each neighbor.
    Sum,
    Max(MaxVariant),
    /// PageRank seeded uniformly on the closed neighborhood.
    Star,
    /// TRPR seeded uniformly on the closed neighborhood.
    Trpr,
    /// Indicator of the held-out neighbors.
    Oracle,
}

impl LinkPredMethod {
    pub fn defaults() -> Vec<LinkPredMethod> {
        vec![
            LinkPredMethod::Baseline,
            LinkPredMethod::Sum,
            LinkPredMethod::Max(MaxVariant::Pair),
            LinkPredMethod::Star,
            LinkPredMethod::Trpr,
        ]
    }
}

impl fmt::Display for LinkPredMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkPredMethod::Baseline => "baseline",
            LinkPredMethod::Sum => "sum",
            LinkPredMethod::Max(MaxVariant::Pair) => "max",
            LinkPredMethod::Max(MaxVariant::Single) => "max-single",
            LinkPredMethod::Star => "star",
            LinkPredMethod::Trpr => "trpr",
            LinkPredMethod::Oracle => "oracle",
        })
    }
}

impl FromStr for LinkPredMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "baseline" => LinkPredMethod::Baseline,
            "sum" => LinkPredMethod::Sum,
            "max" => LinkPredMethod::Max(MaxVariant::Pair),
            "max-single" => LinkPredMethod::Max(MaxVariant::Single),
            "star" => LinkPredMethod::Star,
            "trpr" => LinkPredMethod::Trpr,
            "oracle" => LinkPredMethod::Oracle,
            _ => return Err(Error::invalid(format!("unknown link prediction method `{s}`"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct LinkPredConfig {
    pub test_fraction: f64,
    /// Cohort size: the highest-degree training nodes.
    pub num_nodes: usize,
    /// The baseline is always evaluated; listing it is optional.
    pub methods: Vec<LinkPredMethod>,
    pub rng_seed: u64,
    pub params: DiffusionParams,
}

impl Default for LinkPredConfig {
    fn default() -> Self {
        LinkPredConfig {
            test_fraction: 0.2,
            num_nodes: 100,
            methods: LinkPredMethod::defaults(),
            rng_seed: 0,
            params: DiffusionParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeAuc {
    pub node: String,
    pub degree: usize,
    pub method: String,
    pub auc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkPredSummary {
    pub method: String,
    pub mean_auc: f64,
    pub mean_delta_vs_baseline: f64,
    /// Mean distance of the (baseline, method) AUC points to the line y = x.
    pub mean_dist_to_diag: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkPredMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub rng: &'static str,
    pub rng_seed: u64,
    pub test_fraction: f64,
    pub num_nodes_requested: usize,
    pub cohort_size: usize,
    pub evaluated_nodes: usize,
    pub skipped_nodes: usize,
    pub methods: Vec<String>,
    pub alpha: f64,
    pub iterations: usize,
    pub tolerance: Option<f64>,
    pub input_nodes: usize,
    pub input_edges: usize,
    pub train_nodes: usize,
    pub train_edges: usize,
    pub train_edges_dropped: usize,
    pub test_edges: usize,
}

#[derive(Debug, Clone)]
pub struct LinkPredOutcome {
    /// Per-node rows, node-major in cohort order.
    pub nodes: Vec<NodeAuc>,
    pub summary: Vec<LinkPredSummary>,
    /// Cohort labels in selection order.
    pub cohort: Vec<String>,
    /// Cohort members without a usable positive or negative.
    pub skipped: Vec<String>,
    pub metadata: LinkPredMetadata,
}

/// Scores per-node link prediction for the top-degree training nodes.
pub fn run_standard_linkpred(g: &Graph, cfg: &LinkPredConfig) -> Result<LinkPredOutcome> {
    cfg.params.validate()?;
    if cfg.num_nodes == 0 {
        return Err(Error::invalid("num_nodes must be at least 1"));
    }
    let mut methods = vec![LinkPredMethod::Baseline];
    for &m in &cfg.methods {
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    let g = g.largest_component().0;
    let split = split_holdout(&g, cfg.test_fraction, cfg.rng_seed)?;
    let train = &split.train;

    let mut order: Vec<usize> = (0..train.n()).collect();
    order.sort_by(|&a, &b| train.deg(b).cmp(&train.deg(a)).then(a.cmp(&b)));
    if order.len() < cfg.num_nodes {
        log::warn!(
            "training graph has {} nodes; cohort shrinks from {}",
            order.len(),
            cfg.num_nodes
        );
    }
    order.truncate(cfg.num_nodes);

    let triangles = methods
        .contains(&LinkPredMethod::Trpr)
        .then(|| enumerate_triangles(train));
    let singles = single_cache(train, &order, &methods, &cfg.params)?;
    let ctx = NodeContext {
        split: &split,
        triangles: triangles.as_ref(),
        singles: &singles,
        params: &cfg.params,
    };

    let per_node: Vec<Option<Vec<f64>>> = order
        .par_iter()
        .map(|&i| ctx.evaluate(i, &methods))
        .collect::<Result<_>>()?;

    let mut nodes = Vec::new();
    let mut skipped = Vec::new();
    let mut evaluated = Vec::new();
    for (&i, aucs) in order.iter().zip(&per_node) {
        match aucs {
            None => skipped.push(train.label(i).to_owned()),
            Some(a) => {
                evaluated.push(a);
                for (m, &v) in methods.iter().zip(a) {
                    nodes.push(NodeAuc {
                        node: train.label(i).to_owned(),
                        degree: train.deg(i),
                        method: m.to_string(),
                        auc: v,
                    });
                }
            }
        }
    }
    if !skipped.is_empty() {
        log::warn!("{} cohort nodes had no held-out edge to score and were skipped", skipped.len());
    }

    let count = evaluated.len() as f64;
    let summary = methods
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let (mut sum, mut delta, mut dist) = (0.0, 0.0, 0.0);
            for a in &evaluated {
                sum += a[j];
                delta += a[j] - a[0];
                dist += (a[j] - a[0]).abs() / std::f64::consts::SQRT_2;
            }
            LinkPredSummary {
                method: m.to_string(),
                mean_auc: sum / count,
                mean_delta_vs_baseline: delta / count,
                mean_dist_to_diag: dist / count,
            }
        })
        .collect();

    let metadata = LinkPredMetadata {
        tool: "trilink",
        version: env!("CARGO_PKG_VERSION"),
        rng: RNG_NAME,
        rng_seed: cfg.rng_seed,
        test_fraction: cfg.test_fraction,
        num_nodes_requested: cfg.num_nodes,
        cohort_size: order.len(),
        evaluated_nodes: evaluated.len(),
        skipped_nodes: skipped.len(),
        methods: methods.iter().map(|m| m.to_string()).collect(),
        alpha: cfg.params.alpha,
        iterations: cfg.params.iterations,
        tolerance: cfg.params.tolerance,
        input_nodes: g.n(),
        input_edges: g.m(),
        train_nodes: train.n(),
        train_edges: train.m(),
        train_edges_dropped: split.train_edges_dropped,
        test_edges: split.test_edges.len(),
    };
    Ok(LinkPredOutcome {
        nodes,
        summary,
        cohort: order.iter().map(|&i| train.label(i).to_owned()).collect(),
        skipped,
        metadata,
    })
}

/// Single-seeded vectors for every node some method needs, solved once.
fn single_cache(
    g: &Graph,
    cohort: &[usize],
    methods: &[LinkPredMethod],
    params: &DiffusionParams,
) -> Result<HashMap<usize, Vec<f64>>> {
    let neighborhoods = methods.iter().any(|m| matches!(m, LinkPredMethod::Max(_)));
    let mut need: Vec<usize> = cohort.to_vec();
    if neighborhoods {
        need.extend(cohort.iter().flat_map(|&i| g.adj(i).iter().copied()));
    }
    need.sort_unstable();
    need.dedup();
    need.par_iter()
        .map(|&j| Ok((j, single_seeded_pagerank(g, j, params)?.into_inner())))
        .collect()
}

struct NodeContext<'a> {
    split: &'a SplitDataset,
    triangles: Option<&'a TriangleSet>,
    singles: &'a HashMap<usize, Vec<f64>>,
    params: &'a DiffusionParams,
}

impl NodeContext<'_> {
    /// AUC per method, or `None` when node `i` has nothing to evaluate.
    fn evaluate(&self, i: usize, methods: &[LinkPredMethod]) -> Result<Option<Vec<f64>>> {
        let g = &self.split.train;
        let nbrs = g.adj(i);
        let cands: Vec<usize> = (0..g.n())
            .filter(|&w| w != i && nbrs.binary_search(&w).is_err())
            .collect();
        let positives: Vec<usize> = self
            .split
            .test_neighbors(i)
            .iter()
            .copied()
            .filter(|w| cands.binary_search(w).is_ok())
            .collect();
        if positives.is_empty() || positives.len() == cands.len() {
            return Ok(None);
        }
        methods
            .iter()
            .map(|&m| auc(&self.scores(i, m, &positives)?, &positives, &cands))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn scores(&self, i: usize, method: LinkPredMethod, positives: &[usize]) -> Result<Vec<f64>> {
        let g = &self.split.train;
        let single = |j: usize| &self.singles[&j];
        Ok(match method {
            LinkPredMethod::Baseline => single(i).clone(),
            LinkPredMethod::Sum => pagerank(g, &make_seed(SeedKind::WeightedStar(i), g)?, self.params)?.into_inner(),
            LinkPredMethod::Star => pagerank(g, &make_seed(SeedKind::Star(i), g)?, self.params)?.into_inner(),
            LinkPredMethod::Trpr => {
                let ts = self
                    .triangles
                    .ok_or_else(|| Error::invalid("TRPR needs the triangle set"))?;
                let seed = make_seed(SeedKind::Star(i), g)?;
                trpr(g, ts, &seed, self.params, false)?.into_inner()
            }
            LinkPredMethod::Max(variant) => {
                let xi = single(i);
                let mut out = match variant {
                    MaxVariant::Pair => vec![f64::NEG_INFINITY; g.n()],
                    MaxVariant::Single => xi.clone(),
                };
                for &j in g.adj(i) {
                    let xj = single(j);
                    for (o, (&a, &b)) in out.iter_mut().zip(xi.iter().zip(xj)) {
                        let c = match variant {
                            MaxVariant::Pair => 0.5 * (a + b),
                            MaxVariant::Single => b,
                        };
                        *o = o.max(c);
                    }
                }
                out
            }
            LinkPredMethod::Oracle => {
                let mut x = vec![0.0; g.n()];
                for &w in positives {
                    x[w] = 1.0;
                }
                x
            }
        })
    }
}
