use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, edge_key, EdgeList, Graph};

use super::{derive_rng, SPLIT_STREAM};

/// How a split was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Protocol {
    Holdout { test_fraction: f64 },
    Temporal { train_fraction: f64 },
    Loeto { seed_u: String, seed_v: String },
    Custom,
}

/// A held-out edge, by original labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestEdge {
    pub u: String,
    pub v: String,
    /// Train-graph indices, or `None` when an endpoint fell out of the
    /// training component.
    pub index: Option<(usize, usize)>,
}

impl TestEdge {
    pub fn usable(&self) -> bool {
        self.index.is_some()
    }
}

/// Training graph (connected) plus held-out edges.
#[derive(Debug, Clone)]
pub struct SplitDataset {
    pub train: Graph,
    pub test_edges: Vec<TestEdge>,
    pub protocol: Protocol,
    pub rng_seed: Option<u64>,
    /// Training edges lost when the largest component was extracted.
    pub train_edges_dropped: usize,
    test_adj: Vec<Vec<usize>>,
}

impl SplitDataset {
    fn assemble(
        full_train: Graph,
        test_pairs: Vec<(String, String)>,
        protocol: Protocol,
        rng_seed: Option<u64>,
        min_nodes: usize,
    ) -> Result<Self> {
        let (train, _) = full_train.largest_component();
        if train.n() < min_nodes {
            return Err(Error::invalid(format!(
                "training component has {} nodes; at least {min_nodes} are needed",
                train.n()
            )));
        }
        let train_edges_dropped = full_train.m() - train.m();
        let mut test_adj = vec![Vec::new(); train.n()];
        let test_edges: Vec<TestEdge> = test_pairs
            .into_iter()
            .map(|(u, v)| {
                let index = train.index_of(&u).zip(train.index_of(&v));
                if let Some((a, b)) = index {
                    test_adj[a].push(b);
                    test_adj[b].push(a);
                }
                TestEdge { u, v, index }
            })
            .collect();
        for l in &mut test_adj {
            l.sort_unstable();
            l.dedup();
        }
        Ok(SplitDataset {
            train,
            test_edges,
            protocol,
            rng_seed,
            train_edges_dropped,
            test_adj,
        })
    }

    /// A split from an explicit training graph and held-out label pairs.
    /// The training graph is reduced to its largest component.
    pub fn from_parts(train: Graph, test: Vec<(String, String)>) -> Result<Self> {
        SplitDataset::assemble(train, test, Protocol::Custom, None, 0)
    }

    /// Held-out neighbors of a training node, sorted.
    pub fn test_neighbors(&self, i: usize) -> &[usize] {
        &self.test_adj[i]
    }

    pub fn is_test_edge(&self, u: usize, v: usize) -> bool {
        self.test_adj[u].binary_search(&v).is_ok()
    }

    pub fn usable_test_edges(&self) -> usize {
        self.test_edges.iter().filter(|e| e.usable()).count()
    }
}

fn labelled(g: &Graph, edges: &[(usize, usize)]) -> Vec<(String, String)> {
    edges
        .iter()
        .map(|&(a, b)| (g.label(a).to_string(), g.label(b).to_string()))
        .collect()
}

fn check_fraction(f: f64, what: &str) -> Result<()> {
    if f > 0.0 && f < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} must lie in (0, 1), got {f}")))
    }
}

/// Holds out `round(test_fraction · m)` uniformly random edges (at least one,
/// at most `m - 1`). The training graph is reduced to its largest component.
pub fn split_holdout(g: &Graph, test_fraction: f64, rng_seed: u64) -> Result<SplitDataset> {
    check_fraction(test_fraction, "test fraction")?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() < 2 {
        return Err(Error::invalid("hold-out split needs at least two edges"));
    }
    let mut rng = derive_rng(rng_seed, SPLIT_STREAM);
    edges.shuffle(&mut rng);
    let held = ((test_fraction * edges.len() as f64).round() as usize).clamp(1, edges.len() - 1);
    let test = labelled(g, &edges[..held]);
    let train = Graph::from_index_edges(g.labels().to_vec(), edges[held..].iter().copied())?;
    SplitDataset::assemble(train, test, Protocol::Holdout { test_fraction }, Some(rng_seed), 3)
}

/// Orders unique undirected edges by the time they first appear and keeps the
/// first `⌈train_fraction · unique⌉` for training.
pub fn split_temporal(edges: &EdgeList, train_fraction: f64) -> Result<SplitDataset> {
    check_fraction(train_fraction, "train fraction")?;
    if edges.is_empty() {
        return Err(Error::Empty("edge list has no edges"));
    }
    if !edges.has_timestamps() {
        return Err(Error::invalid("temporal split needs a timestamp on every edge"));
    }
    // (earliest time, first input position)
    let mut first: HashMap<(&str, &str), (i64, usize)> = HashMap::new();
    for (pos, r) in edges.records.iter().enumerate() {
        let key = if r.u <= r.v { (r.u.as_str(), r.v.as_str()) } else { (r.v.as_str(), r.u.as_str()) };
        let t = r.t.expect("checked above");
        first
            .entry(key)
            .and_modify(|e| {
                if t < e.0 {
                    e.0 = t;
                }
            })
            .or_insert((t, pos));
    }
    let mut unique: Vec<(i64, usize)> = first.values().copied().collect();
    unique.sort_unstable();
    let cut = ((train_fraction * unique.len() as f64) - 1e-9).ceil() as usize;
    let cut = cut.clamp(1, unique.len());
    let pair_at = |pos: usize| {
        let r = &edges.records[pos];
        (r.u.clone(), r.v.clone())
    };
    let train = build_graph(&EdgeList::from_pairs(unique[..cut].iter().map(|e| pair_at(e.1))))?;
    let test = unique[cut..].iter().map(|e| pair_at(e.1)).collect();
    SplitDataset::assemble(train, test, Protocol::Temporal { train_fraction }, None, 3)
}

/// Removes both wedge edges `(u,w)` and `(v,w)` of every triangle through the
/// seed edge `(u,v)`; the seed edge itself stays in training.
pub fn split_loeto(g: &Graph, u: usize, v: usize) -> Result<SplitDataset> {
    g.check_node(u)?;
    g.check_node(v)?;
    if !g.has_edge(u, v) {
        return Err(Error::invalid(format!(
            "({}, {}) is not an edge",
            g.label(u),
            g.label(v)
        )));
    }
    let nu: HashSet<usize> = g.adj(u).iter().copied().collect();
    let common: Vec<usize> = g.adj(v).iter().copied().filter(|w| nu.contains(w)).collect();
    if common.is_empty() {
        return Err(Error::NoTriangle(g.label(u).into(), g.label(v).into()));
    }
    let removed: HashSet<(usize, usize)> = common
        .iter()
        .flat_map(|&w| [edge_key(u, w), edge_key(v, w)])
        .collect();
    let mut test: Vec<(usize, usize)> = removed.iter().copied().collect();
    test.sort_unstable();
    let train = Graph::from_index_edges(
        g.labels().to_vec(),
        g.edges().filter(|e| !removed.contains(e)),
    )?;
    let protocol = Protocol::Loeto {
        seed_u: g.label(u).into(),
        seed_v: g.label(v).into(),
    };
    SplitDataset::assemble(train, labelled(g, &test), protocol, None, 0)
}
