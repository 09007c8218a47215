//! Triangle enumeration and implicit products with the triangle tensor.
//!
//! The tensor `T(i,j,k)` is 1 whenever `{i,j,k}` is a triangle, for all six
//! orderings of the indices. Nothing here ever materializes it: each product
//! is a single pass over the canonical triangle list.

use crate::error::{check_len, Result};
use crate::graph::Graph;

/// All triangles of a graph as canonical triples `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSet {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl TriangleSet {
    /// Wraps a triangle list. Triples are canonicalized and deduplicated but
    /// not checked against any graph.
    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Self {
        let mut triples: Vec<[usize; 3]> = triples
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        triples.sort_unstable();
        triples.dedup();
        TriangleSet { n, triples }
    }

    pub fn empty(n: usize) -> Self {
        TriangleSet { n, triples: Vec::new() }
    }

    /// Node count of the graph the triangles belong to.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// `z_i = Σ_{j,k} T(i,j,k) y(j) x(k)`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        check_len(self.n, y.len())?;
        let mut z = vec![0.0; self.n];
        self.bilinear_into(x, y, &mut z);
        Ok(z)
    }

    /// `(T[x]) 1`: the row sums, and by symmetry the column sums, of `T[x]`.
    pub fn row_sums(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        let mut z = vec![0.0; self.n];
        self.row_sums_into(x, &mut z);
        Ok(z)
    }

    pub(crate) fn bilinear_into(&self, x: &[f64], y: &[f64], z: &mut [f64]) {
        z.iter_mut().for_each(|v| *v = 0.0);
        for &[a, b, c] in &self.triples {
            z[a] += y[b] * x[c] + y[c] * x[b];
            z[b] += y[a] * x[c] + y[c] * x[a];
            z[c] += y[a] * x[b] + y[b] * x[a];
        }
    }

    pub(crate) fn row_sums_into(&self, x: &[f64], z: &mut [f64]) {
        z.iter_mut().for_each(|v| *v = 0.0);
        for &[a, b, c] in &self.triples {
            z[a] += x[b] + x[c];
            z[b] += x[a] + x[c];
            z[c] += x[a] + x[b];
        }
    }
}

/// Enumerates every triangle once, in lexicographic order.
///
/// For each edge `(u, v)` with `u < v`, the neighbors `w > v` common to both
/// endpoints are found by walking the shorter adjacency suffix and binary
/// searching the longer one.
pub fn enumerate_triangles(g: &Graph) -> TriangleSet {
    let mut triples = Vec::new();
    let mut common = Vec::new();
    for u in 0..g.n() {
        let nu = g.adj(u);
        for (pos, &v) in nu.iter().enumerate() {
            if v <= u {
                continue;
            }
            let su = &nu[pos + 1..];
            let nv = g.adj(v);
            let sv = &nv[nv.partition_point(|&w| w <= v)..];
            if su.is_empty() || sv.is_empty() {
                continue;
            }
            common.clear();
            let (short, long) = if su.len() <= sv.len() { (su, sv) } else { (sv, su) };
            let mut lo = 0;
            for &w in short {
                match long[lo..].binary_search(&w) {
                    Ok(p) => {
                        common.push(w);
                        lo += p + 1;
                    }
                    Err(p) => lo += p,
                }
                if lo >= long.len() {
                    break;
                }
            }
            triples.extend(common.iter().map(|&w| [u, v, w]));
        }
    }
    TriangleSet { n: g.n(), triples }
}

/// `γ · T[x] y + A y`.
pub fn reinforced_matrix_apply(
    g: &Graph,
    ts: &TriangleSet,
    x: &[f64],
    y: &[f64],
    gamma: f64,
) -> Result<Vec<f64>> {
    check_len(g.n(), ts.n())?;
    let mut z = ts.bilinear(x, y)?;
    for (i, zi) in z.iter_mut().enumerate() {
        let ay: f64 = g.adj(i).iter().map(|&j| y[j]).sum();
        *zi = gamma * *zi + ay;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{build_graph, EdgeList};

    fn clique(k: usize) -> Graph {
        let mut p = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                p.push((i, j));
            }
        }
        build_graph(&EdgeList::from_pairs(p)).unwrap()
    }

    #[test]
    fn k5_has_ten() {
        assert_eq!(enumerate_triangles(&clique(5)).count(), 10);
    }

    #[test]
    fn path_has_none() {
        let g = build_graph(&EdgeList::from_pairs([(1, 2), (2, 3)])).unwrap();
        assert!(enumerate_triangles(&g).is_empty());
    }

    #[test]
    fn couple_graph_triangles_all_hold_both_blues() {
        let c = fixtures::couple_graph();
        let ts = enumerate_triangles(&c.graph);
        assert_eq!(ts.count(), 6);
        for t in ts.triples() {
            assert!(t.contains(&c.blue[0]) && t.contains(&c.blue[1]));
            assert!(!t.contains(&c.red));
        }
    }

    #[test]
    fn single_triangle_products() {
        let ts = TriangleSet::from_triples(3, [[2, 0, 1]]);
        let one = [1.0; 3];
        assert_eq!(ts.bilinear(&one, &one).unwrap(), vec![2.0; 3]);
        assert_eq!(ts.row_sums(&one).unwrap(), vec![2.0; 3]);
        assert_eq!(ts.row_sums(&[1.0, 0.0, 0.0]).unwrap(), vec![0.0, 1.0, 1.0]);
        assert_eq!(ts.bilinear(&[0.0; 3], &one).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn k4_bilinear_ones() {
        let ts = enumerate_triangles(&clique(4));
        assert_eq!(ts.bilinear(&[1.0; 4], &[1.0; 4]).unwrap(), vec![6.0; 4]);
    }

    #[test]
    fn empty_set_row_sums_vanish() {
        let ts = TriangleSet::empty(4);
        assert_eq!(ts.row_sums(&[0.3; 4]).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let ts = TriangleSet::empty(4);
        assert!(ts.bilinear(&[1.0; 3], &[1.0; 4]).is_err());
        assert!(ts.row_sums(&[1.0; 5]).is_err());
    }

    #[test]
    fn reinforced_apply_examples() {
        let g = clique(3);
        let ts = enumerate_triangles(&g);
        let one = [1.0; 3];
        assert_eq!(reinforced_matrix_apply(&g, &ts, &one, &one, 1.0).unwrap(), vec![4.0; 3]);
        let y = [0.1, 0.2, 0.7];
        let ay = reinforced_matrix_apply(&g, &ts, &one, &y, 0.0).unwrap();
        let expect = [0.9, 0.8, 0.30000000000000004];
        for (a, b) in ay.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
