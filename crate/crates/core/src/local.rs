//! Local similarity between nodes, and between a node and an edge.
//!
//! The edge variants replace a node's neighborhood by the edge neighborhood
//! `Γ((u,v)) = Γ(u) ∪ Γ(v) \ {u, v}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{edge_neighborhood, Graph};
use crate::score::{Combine, ScoreVector};

/// Similarity measure used as the base of a combined score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalBase {
    Js,
    Aa,
}

/// Edge–node scoring rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalMethod {
    Js,
    Aa,
    Pa,
    /// Endpoint node scores `base(w,u)` and `base(w,v)` combined by `Combine`.
    Combined(LocalBase, Combine),
}

impl fmt::Display for LocalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LocalMethod::Js => "js",
            LocalMethod::Aa => "aa",
            LocalMethod::Pa => "pa",
            LocalMethod::Combined(LocalBase::Js, Combine::Max) => "js-max",
            LocalMethod::Combined(LocalBase::Js, Combine::Mul) => "js-mul",
            LocalMethod::Combined(LocalBase::Aa, Combine::Max) => "aa-max",
            LocalMethod::Combined(LocalBase::Aa, Combine::Mul) => "aa-mul",
        };
        f.write_str(s)
    }
}

impl FromStr for LocalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "js" => LocalMethod::Js,
            "aa" => LocalMethod::Aa,
            "pa" => LocalMethod::Pa,
            "js-max" => LocalMethod::Combined(LocalBase::Js, Combine::Max),
            "js-mul" => LocalMethod::Combined(LocalBase::Js, Combine::Mul),
            "aa-max" => LocalMethod::Combined(LocalBase::Aa, Combine::Max),
            "aa-mul" => LocalMethod::Combined(LocalBase::Aa, Combine::Mul),
            _ => return Err(Error::invalid(format!("unknown local method `{s}`"))),
        })
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn jaccard(a: &[usize], b: &[usize]) -> f64 {
    let inter = intersect(a, b).len();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

/// `1 / ln |Γ(z)|`, or 0 when `|Γ(z)| ≤ 1`.
#[inline]
fn aa_weight(g: &Graph, z: usize) -> f64 {
    let d = g.deg(z);
    if d > 1 {
        1.0 / (d as f64).ln()
    } else {
        log::debug!("adamic-adar term for node {z} of degree {d} taken as 0");
        0.0
    }
}

fn adamic_adar(g: &Graph, a: &[usize], b: &[usize]) -> f64 {
    intersect(a, b).into_iter().map(|z| aa_weight(g, z)).sum()
}

fn distinct(g: &Graph, w: usize, u: usize) -> Result<()> {
    g.check_node(w)?;
    g.check_node(u)?;
    if w == u {
        Err(Error::invalid("similarity of a node with itself"))
    } else {
        Ok(())
    }
}

fn off_edge(g: &Graph, w: usize, u: usize, v: usize) -> Result<Vec<usize>> {
    g.check_node(w)?;
    if w == u || w == v {
        return Err(Error::invalid("scored node is an endpoint of the edge"));
    }
    edge_neighborhood(g, u, v)
}

pub fn js_node(g: &Graph, w: usize, u: usize) -> Result<f64> {
    distinct(g, w, u)?;
    Ok(jaccard(g.adj(w), g.adj(u)))
}

pub fn aa_node(g: &Graph, w: usize, u: usize) -> Result<f64> {
    distinct(g, w, u)?;
    Ok(adamic_adar(g, g.adj(w), g.adj(u)))
}

pub fn pa_node(g: &Graph, w: usize, u: usize) -> Result<f64> {
    distinct(g, w, u)?;
    Ok((g.deg(w) * g.deg(u)) as f64)
}

pub fn js_edge(g: &Graph, w: usize, u: usize, v: usize) -> Result<f64> {
    let nb = off_edge(g, w, u, v)?;
    Ok(jaccard(g.adj(w), &nb))
}

pub fn aa_edge(g: &Graph, w: usize, u: usize, v: usize) -> Result<f64> {
    let nb = off_edge(g, w, u, v)?;
    Ok(adamic_adar(g, g.adj(w), &nb))
}

pub fn pa_edge(g: &Graph, w: usize, u: usize, v: usize) -> Result<f64> {
    let nb = off_edge(g, w, u, v)?;
    Ok((g.deg(w) * nb.len()) as f64)
}

pub fn local_combined(
    g: &Graph,
    w: usize,
    u: usize,
    v: usize,
    base: LocalBase,
    mode: Combine,
) -> Result<f64> {
    off_edge(g, w, u, v)?;
    let f = match base {
        LocalBase::Js => js_node,
        LocalBase::Aa => aa_node,
    };
    Ok(mode.apply(f(g, w, u)?, f(g, w, v)?))
}

/// Scores every node against the pair `(u, v)`.
///
/// `u` and `v` themselves get `-∞` so they never enter a ranking. Counts are
/// accumulated over two-hop walks, so the cost is the number of two-hop paths
/// leaving the edge rather than `n` set intersections.
pub fn score_all_nodes(g: &Graph, u: usize, v: usize, method: LocalMethod) -> Result<ScoreVector> {
    let n = g.n();
    let values = match method {
        LocalMethod::Js | LocalMethod::Aa | LocalMethod::Pa => {
            let nb = edge_neighborhood(g, u, v)?;
            let size = nb.len();
            match method {
                LocalMethod::Pa => (0..n).map(|w| (g.deg(w) * size) as f64).collect(),
                LocalMethod::Js => {
                    let common = two_hop(g, &nb, |_| 1.0);
                    (0..n)
                        .map(|w| jaccard_from_counts(common[w], g.deg(w), size))
                        .collect()
                }
                _ => two_hop(g, &nb, |z| aa_weight(g, z)),
            }
        }
        LocalMethod::Combined(base, mode) => {
            g.check_node(u)?;
            g.check_node(v)?;
            if u == v {
                return Err(Error::invalid("edge endpoints must differ"));
            }
            let per_endpoint = |x: usize| -> Vec<f64> {
                match base {
                    LocalBase::Js => {
                        let common = two_hop(g, g.adj(x), |_| 1.0);
                        (0..n)
                            .map(|w| jaccard_from_counts(common[w], g.deg(w), g.deg(x)))
                            .collect()
                    }
                    LocalBase::Aa => two_hop(g, g.adj(x), |z| aa_weight(g, z)),
                }
            };
            let (su, sv) = (per_endpoint(u), per_endpoint(v));
            su.into_iter().zip(sv).map(|(a, b)| mode.apply(a, b)).collect()
        }
    };
    let mut values: Vec<f64> = values;
    values[u] = f64::NEG_INFINITY;
    values[v] = f64::NEG_INFINITY;
    Ok(ScoreVector::new(values, method.to_string()))
}

/// `out[w] = Σ weight(z)` over `z ∈ set ∩ Γ(w)`.
fn two_hop(g: &Graph, set: &[usize], weight: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; g.n()];
    for &z in set {
        let wz = weight(z);
        for &w in g.adj(z) {
            out[w] += wz;
        }
    }
    out
}

fn jaccard_from_counts(common: f64, a: usize, b: usize) -> f64 {
    let union = (a + b) as f64 - common;
    if union <= 0.0 {
        0.0
    } else {
        common / union
    }
}
