//! Generalized preferential attachment graphs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph};

/// RNG identity recorded in run metadata.
pub const RNG_NAME: &str = "ChaCha8";

/// Attempts at drawing a fresh edge before an edge event becomes a node event.
pub const EDGE_RETRIES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GpaParams {
    /// Probability that an event adds an edge between existing nodes.
    pub p_edge: f64,
    pub steps: usize,
    pub seed_clique: usize,
    pub rng_seed: u64,
}

impl Default for GpaParams {
    fn default() -> Self {
        GpaParams {
            p_edge: 0.5,
            steps: 1000,
            seed_clique: 5,
            rng_seed: 0,
        }
    }
}

impl GpaParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_edge) {
            return Err(Error::invalid(format!("p_edge must lie in [0, 1], got {}", self.p_edge)));
        }
        if self.seed_clique < 2 {
            return Err(Error::invalid("seed clique needs at least 2 nodes"));
        }
        Ok(())
    }
}

/// Grows a graph from a clique. Each event either joins two existing nodes,
/// both drawn proportionally to degree, or attaches a new node by one edge to
/// a degree-proportional existing node. An edge event that keeps drawing
/// self-pairs or existing edges turns into a node event.
pub fn generate_gpa(params: &GpaParams) -> Result<Graph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let k = params.seed_clique;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(k * (k - 1) / 2 + params.steps);
    // every node appears once per incident edge
    let mut stubs: Vec<usize> = Vec::with_capacity(2 * edges.capacity());
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    let mut n = k;
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
            present.insert((i, j));
            stubs.extend([i, j]);
        }
    }
    for _ in 0..params.steps {
        let mut added = false;
        if rng.gen::<f64>() < params.p_edge {
            for _ in 0..EDGE_RETRIES {
                let a = stubs[rng.gen_range(0..stubs.len())];
                let b = stubs[rng.gen_range(0..stubs.len())];
                if a != b && present.insert(edge_key(a, b)) {
                    edges.push((a, b));
                    stubs.extend([a, b]);
                    added = true;
                    break;
                }
            }
        }
        if !added {
            let target = stubs[rng.gen_range(0..stubs.len())];
            let new = n;
            n += 1;
            edges.push((new, target));
            present.insert(edge_key(new, target));
            stubs.extend([new, target]);
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Graph::from_index_edges(labels, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_events_only() {
        let g = generate_gpa(&GpaParams { p_edge: 0.0, steps: 40, ..Default::default() }).unwrap();
        assert_eq!((g.n(), g.m()), (45, 50));
    }

    #[test]
    fn zero_steps_is_the_clique() {
        let g = generate_gpa(&GpaParams { steps: 0, ..Default::default() }).unwrap();
        assert_eq!((g.n(), g.m()), (5, 10));
        assert!((0..5).all(|i| g.deg(i) == 4));
    }

    #[test]
    fn half_edge_events() {
        let g = generate_gpa(&GpaParams { p_edge: 0.5, steps: 1000, rng_seed: 11, ..Default::default() })
            .unwrap();
        // Binomial(1000, 1/2) node events; 4σ ≈ 64
        assert!((g.n() as i64 - 505).abs() <= 64, "n = {}", g.n());
        assert_eq!(g.m(), 1010);
        assert!(g.is_connected());
    }

    #[test]
    fn saturated_clique_degrades_to_node_events() {
        let g = generate_gpa(&GpaParams { p_edge: 1.0, steps: 5, seed_clique: 3, rng_seed: 1 }).unwrap();
        assert_eq!(g.m(), 8);
        assert!(g.n() > 3);
    }

    #[test]
    fn same_seed_same_graph() {
        let p = GpaParams { steps: 300, rng_seed: 42, ..Default::default() };
        let a = generate_gpa(&p).unwrap();
        let b = generate_gpa(&p).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        let c = generate_gpa(&GpaParams { rng_seed: 43, ..p }).unwrap();
        assert_ne!(a.edges().collect::<Vec<_>>(), c.edges().collect::<Vec<_>>());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(generate_gpa(&GpaParams { p_edge: 1.5, ..Default::default() }).is_err());
        assert!(generate_gpa(&GpaParams { seed_clique: 1, ..Default::default() }).is_err());
    }
}
