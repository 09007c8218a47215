use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which teleport distribution to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedKind {
    /// All mass on one node.
    Single(usize),
    /// Half the mass on each endpoint.
    Pair(usize, usize),
    /// Uniform over the closed neighborhood of a node.
    Star(usize),
    /// Weight `deg(u)` at `u` and 1 at every neighbor, normalized by `2 deg(u)`.
    WeightedStar(usize),
}

/// Sparse probability distribution over nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedVector {
    entries: Vec<(usize, f64)>,
}

impl SeedVector {
    /// Normalizes nonnegative weights to sum 1. Repeated nodes are merged.
    pub fn from_weights(weights: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for (i, w) in weights {
            if w.is_nan() || w < 0.0 || w.is_infinite() {
                return Err(Error::invalid(format!("seed weight {w} at node {i}")));
            }
            if w > 0.0 {
                entries.push((i, w));
            }
        }
        entries.sort_by_key(|e| e.0);
        entries.dedup_by(|next, kept| {
            if next.0 == kept.0 {
                kept.1 += next.1;
                true
            } else {
                false
            }
        });
        let total: f64 = entries.iter().map(|e| e.1).sum();
        if entries.is_empty() || total <= 0.0 {
            return Err(Error::invalid("seed vector has empty support"));
        }
        for e in &mut entries {
            e.1 /= total;
        }
        Ok(SeedVector { entries })
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> f64 {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .map_or(0.0, |p| self.entries[p].1)
    }

    pub fn to_dense(&self, n: usize) -> Result<Vec<f64>> {
        let mut x = vec![0.0; n];
        for &(i, w) in &self.entries {
            if i >= n {
                return Err(Error::NodeOutOfRange { index: i, n });
            }
            x[i] = w;
        }
        Ok(x)
    }
}

pub fn make_seed(kind: SeedKind, g: &Graph) -> Result<SeedVector> {
    match kind {
        SeedKind::Single(u) => {
            g.check_node(u)?;
            SeedVector::from_weights([(u, 1.0)])
        }
        SeedKind::Pair(u, v) => {
            g.check_node(u)?;
            g.check_node(v)?;
            if u == v {
                return Err(Error::invalid("pair seed needs two distinct nodes"));
            }
            SeedVector::from_weights([(u, 0.5), (v, 0.5)])
        }
        SeedKind::Star(u) => {
            let d = g.degree(u)?;
            if d == 0 {
                return Err(Error::IsolatedNode(u));
            }
            let w = 1.0 / (d as f64 + 1.0);
            SeedVector::from_weights(std::iter::once((u, w)).chain(g.adj(u).iter().map(|&j| (j, w))))
        }
        SeedKind::WeightedStar(u) => {
            let d = g.degree(u)?;
            if d == 0 {
                return Err(Error::IsolatedNode(u));
            }
            SeedVector::from_weights(
                std::iter::once((u, d as f64)).chain(g.adj(u).iter().map(|&j| (j, 1.0))),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pair_splits_in_half() {
        let g = fixtures::triangle_pendant();
        let s = make_seed(SeedKind::Pair(0, 1), &g).unwrap();
        assert_eq!(s.entries(), &[(0, 0.5), (1, 0.5)]);
        assert!(make_seed(SeedKind::Pair(1, 1), &g).is_err());
    }

    #[test]
    fn star_seeds() {
        let g = fixtures::star(&["a", "b", "x"]);
        let c = g.node("c").unwrap();
        let s = make_seed(SeedKind::Star(c), &g).unwrap();
        for l in ["c", "a", "b", "x"] {
            assert_eq!(s.get(g.node(l).unwrap()), 0.25);
        }
        let w = make_seed(SeedKind::WeightedStar(c), &g).unwrap();
        assert!((w.get(c) - 0.5).abs() < 1e-15);
        for l in ["a", "b", "x"] {
            assert!((w.get(g.node(l).unwrap()) - 1.0 / 6.0).abs() < 1e-15);
        }
        let total: f64 = w.entries().iter().map(|e| e.1).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn isolated_star_is_an_error() {
        let g = Graph::from_index_edges(vec!["a".into(), "b".into(), "z".into()], [(0, 1)]).unwrap();
        assert!(matches!(make_seed(SeedKind::Star(2), &g), Err(Error::IsolatedNode(2))));
        assert!(make_seed(SeedKind::WeightedStar(2), &g).is_err());
        assert!(make_seed(SeedKind::Single(9), &g).is_err());
    }

    #[test]
    fn weights_validate() {
        assert!(SeedVector::from_weights([(0, -1.0)]).is_err());
        assert!(SeedVector::from_weights([(0, 0.0)]).is_err());
        let s = SeedVector::from_weights([(2, 1.0), (0, 1.0), (2, 2.0)]).unwrap();
        assert_eq!(s.entries(), &[(0, 0.25), (2, 0.75)]);
    }
}
