//! Small named graphs used throughout the tests and the CLI demo.

use crate::graph::{build_graph, EdgeList, Graph};

/// Two "blue" nodes joined by an edge, six "black" friends adjacent to both,
/// and one "red" node adjacent to every black node but to neither blue.
#[derive(Debug, Clone)]
pub struct CoupleGraph {
    pub graph: Graph,
    pub blue: [usize; 2],
    pub red: usize,
    pub black: Vec<usize>,
}

pub fn couple_graph() -> CoupleGraph {
    couple_graph_with(6)
}

/// Couple graph with `blacks` black nodes.
pub fn couple_graph_with(blacks: usize) -> CoupleGraph {
    let mut pairs = vec![("b1".to_string(), "b2".to_string())];
    for i in 1..=blacks {
        let k = format!("k{i}");
        pairs.push(("b1".into(), k.clone()));
        pairs.push(("b2".into(), k.clone()));
        pairs.push(("r".into(), k));
    }
    let graph = build_graph(&EdgeList::from_pairs(pairs)).expect("fixture is nonempty");
    let node = |l: &str| graph.index_of(l).unwrap();
    CoupleGraph {
        blue: [node("b1"), node("b2")],
        red: node("r"),
        black: (1..=blacks).map(|i| node(&format!("k{i}"))).collect(),
        graph,
    }
}

/// Triangle `{1,2,3}` with a pendant `4` hanging off `3`. Labels are the
/// numbers; dense indices are `label - 1`.
pub fn triangle_pendant() -> Graph {
    build_graph(&EdgeList::from_pairs([(1, 2), (2, 3), (1, 3), (3, 4)])).unwrap()
}

/// Complete graph on `k` nodes labelled `0..k`.
pub fn clique(k: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            pairs.push((i, j));
        }
    }
    build_graph(&EdgeList::from_pairs(pairs)).unwrap()
}

/// Cycle on `k` nodes labelled `0..k`.
pub fn cycle(k: usize) -> Graph {
    build_graph(&EdgeList::from_pairs((0..k).map(|i| (i, (i + 1) % k)))).unwrap()
}

/// Star with center `c` and the given leaves.
pub fn star(leaves: &[&str]) -> Graph {
    build_graph(&EdgeList::from_pairs(leaves.iter().map(|&l| ("c", l)))).unwrap()
}
