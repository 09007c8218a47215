//! Undirected simple graphs in compressed adjacency form.
//!
//! Nodes carry opaque labels from the input file and are addressed internally
//! by dense indices assigned in first-appearance order.

use std::collections::{HashMap, VecDeque};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// One record of an edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    pub t: Option<i64>,
}

/// Parsed edge-list file, in input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub records: Vec<EdgeRecord>,
    /// Self-loop records dropped during parsing.
    pub self_loops_dropped: usize,
}

impl EdgeList {
    /// Builds an untimed edge list from label pairs, dropping self-loops.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: ToString,
    {
        let mut list = EdgeList::default();
        for (u, v) in pairs {
            list.push(u.to_string(), v.to_string(), None);
        }
        list
    }

    /// Builds a timed edge list, dropping self-loops.
    pub fn from_timed<I, S>(records: I) -> Self
    where
        I: IntoIterator<Item = (S, S, i64)>,
        S: ToString,
    {
        let mut list = EdgeList::default();
        for (u, v, t) in records {
            list.push(u.to_string(), v.to_string(), Some(t));
        }
        list
    }

    fn push(&mut self, u: String, v: String, t: Option<i64>) {
        if u == v {
            self.self_loops_dropped += 1;
        } else {
            self.records.push(EdgeRecord { u, v, t });
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True when every record carries a timestamp.
    pub fn has_timestamps(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.t.is_some())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.records.iter().map(|r| (r.u.as_str(), r.v.as_str()))
    }
}

/// Parses a whitespace-delimited edge list.
///
/// Lines are `u v` or `u v t`; blank lines and lines starting with `#` or `%`
/// are skipped. Without `has_timestamps` a third column is accepted and
/// ignored. Self-loops are dropped; duplicates are kept.
pub fn load_edge_list<R: BufRead>(reader: R, has_timestamps: bool) -> Result<EdgeList> {
    let mut list = EdgeList::default();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let t = match (fields.len(), has_timestamps) {
            (3, true) => Some(fields[2].parse::<i64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("timestamp `{}` is not an integer", fields[2]),
            })?),
            (2, false) | (3, false) => None,
            (k, true) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected 3 fields (u v t), found {k}"),
                })
            }
            (k, false) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected 2 fields (u v), found {k}"),
                })
            }
        };
        list.push(fields[0].to_string(), fields[1].to_string(), t);
    }
    if list.self_loops_dropped > 0 {
        log::debug!("dropped {} self-loop records", list.self_loops_dropped);
    }
    Ok(list)
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.offsets == other.offsets && self.targets == other.targets && self.labels == other.labels
    }
}

impl Graph {
    /// Builds a graph on `labels.len()` nodes from dense-index edges.
    ///
    /// Self-loops and duplicate edges (in either orientation) are removed.
    pub fn from_index_edges<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { index: x, n });
                }
            }
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate node label `{l}`")));
            }
        }
        Ok(Graph {
            offsets,
            targets,
            labels,
            index,
        })
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbors of `i`. Panics when `i` is out of range.
    #[inline]
    pub fn adj(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Degree of `i`. Panics when `i` is out of range.
    #[inline]
    pub fn deg(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { index: i, n: self.n() })
        }
    }

    pub fn neighbors(&self, i: usize) -> Result<&[usize]> {
        self.check_node(i)?;
        Ok(self.adj(i))
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        self.check_node(i)?;
        Ok(self.deg(i))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.deg(i)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj(u).binary_search(&v).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| {
            self.adj(i)
                .iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn node(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList::from_pairs(self.edges().map(|(i, j)| (self.label(i), self.label(j))))
    }

    /// Writes the graph in the edge-list text format, one `u\tv` per line.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, j) in self.edges() {
            writeln!(out, "{}\t{}", self.label(i), self.label(j))?;
        }
        Ok(())
    }

    /// Connected components, each sorted ascending, ordered by their smallest index.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in self.adj(x) {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components().len() == 1
    }

    /// Subgraph induced by `keep` (any order, no duplicates), re-indexed in
    /// ascending order of the old indices. Returns the old-to-new map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        let mut old_to_new = vec![None; self.n()];
        for (new, &old) in sorted.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let labels = sorted.iter().map(|&i| self.labels[i].clone()).collect();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(i, j)| Some((old_to_new[i]?, old_to_new[j]?)))
            .collect();
        let g = Graph::from_index_edges(labels, edges).expect("induced subgraph is well formed");
        (g, old_to_new)
    }

    /// Largest connected component together with the old-to-new index map.
    ///
    /// Ties go to the component holding the smallest dense index.
    pub fn largest_component(&self) -> (Graph, Vec<Option<usize>>) {
        let comps = self.connected_components();
        let mut best: Option<&Vec<usize>> = None;
        for c in &comps {
            if best.is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
        match best {
            Some(c) if c.len() == self.n() => (self.clone(), (0..self.n()).map(Some).collect()),
            Some(c) => self.induced(c),
            None => (self.clone(), Vec::new()),
        }
    }
}

/// Builds an undirected simple graph, assigning dense indices in
/// first-appearance order.
pub fn build_graph(edges: &EdgeList) -> Result<Graph> {
    if edges.is_empty() {
        return Err(Error::Empty("edge list has no edges"));
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::with_capacity(edges.len());
    for r in &edges.records {
        let u = intern(&mut index, &mut labels, &r.u);
        let v = intern(&mut index, &mut labels, &r.v);
        pairs.push((u, v));
    }
    let g = Graph::from_index_edges(labels, pairs)?;
    let collapsed = edges.len() - g.m();
    if collapsed > 0 {
        log::debug!("collapsed {collapsed} duplicate edge records");
    }
    Ok(g)
}

fn intern<'a>(index: &mut HashMap<&'a str, usize>, labels: &mut Vec<String>, s: &'a str) -> usize {
    *index.entry(s).or_insert_with(|| {
        labels.push(s.to_string());
        labels.len() - 1
    })
}

/// Induced subgraph on the largest connected component; labels survive.
pub fn largest_connected_component(g: &Graph) -> Graph {
    g.largest_component().0
}

/// `Γ(u) ∪ Γ(v) \ {u, v}`, sorted. `(u, v)` need not be an edge.
pub fn edge_neighborhood(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::invalid("edge neighborhood needs two distinct nodes"));
    }
    let (a, b) = (g.adj(u), g.adj(v));
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if next != u && next != v {
            out.push(next);
        }
    }
    Ok(out)
}

/// Normalized `(min, max)` key for an undirected pair.
#[inline]
pub(crate) fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
