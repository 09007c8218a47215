//! Shared builders and brute-force oracles for the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use trilink::Graph;

pub fn graph_from(n: usize, edges: &[(usize, usize)]) -> Graph {
    let labels = (0..n).map(|i| i.to_string()).collect();
    Graph::from_index_edges(labels, edges.iter().copied()).unwrap()
}

/// Erdős–Rényi graph on `n` labelled nodes.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    graph_from(n, &edges)
}

/// Random graph on `2..=max_n` nodes from a bitmask over all pairs.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            graph_from(n, &edges)
        })
    })
}

/// Like [`arb_graph`] but with no isolated node: a spanning path is added.
pub fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_map(|g| {
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.extend((1..g.n()).map(|i| (i - 1, i)));
        graph_from(g.n(), &edges)
    })
}

pub fn dense_adjacency(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut a = vec![vec![0.0; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    a
}

/// Solves `m x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        m.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= f * y;
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| m[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / m[r][r];
    }
    x
}

/// Exact seeded PageRank, `(I - α A D⁻¹) x = (1 - α) s`.
pub fn dense_pagerank(g: &Graph, s: &[f64], alpha: f64) -> Vec<f64> {
    let n = g.n();
    let a = dense_adjacency(g);
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f64::from(u8::from(i == j)) - alpha * a[i][j] / g.deg(j) as f64)
                .collect()
        })
        .collect();
    solve(m, s.iter().map(|x| (1.0 - alpha) * x).collect())
}

/// Every triangle `i < j < k`, by triple loop.
pub fn brute_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Dense symmetric adjacency tensor, `t[i][j][k] = 1` iff `{i,j,k}` is a triangle.
pub fn dense_tensor(g: &Graph) -> Vec<Vec<Vec<f64>>> {
    let n = g.n();
    let mut t = vec![vec![vec![0.0; n]; n]; n];
    for [a, b, c] in brute_triangles(g) {
        for [i, j, k] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            t[i][j][k] = 1.0;
        }
    }
    t
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
