//! Spanning trees of connectivity matrices and their exact comparison.

mod kruskal;
mod mst;
mod union_find;

pub use kruskal::{kruskal_mst, Edge, SpanningForest, WeightedGraph};
pub use mst::{
    compare_msts, growth_curve, joint_growth_curve, localize_nodes, mst_from_connectivity,
    MstComparison, SortedEdgeWeights, WeightMode,
};
pub use union_find::UnionFind;
