//! Pairwise link prediction on undirected graphs.
//!
//! Given an edge `(u, v)`, rank every other node by how likely it is to close
//! a triangle with that edge. Predictors include pair-seeded PageRank,
//! triangle reinforced PageRank (TRPR and its weighted variant) and
//! edge-node generalizations of Jaccard, Adamic–Adar and preferential
//! attachment. The [`experiments`] module carries the evaluation harness.

pub mod diffusion;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod graph;
pub mod local;
pub mod score;
pub mod synth;
pub mod triangles;

pub use diffusion::{DiffusionParams, SeedKind, SeedVector};
pub use error::{Error, Result};
pub use graph::{build_graph, load_edge_list, EdgeList, EdgeRecord, Graph};
pub use score::{combine_scores, Combine, ScoreVector};
pub use triangles::{enumerate_triangles, TriangleSet};
