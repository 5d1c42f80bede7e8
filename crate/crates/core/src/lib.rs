//! Exact combinatorial inference for monotone graph features.
//!
//! Two sorted feature sequences of equal length `q` are compared through the
//! largest gap between their rank step functions. Its null distribution is
//! counted exactly over all `C(2q, q)` interleavings with an `O(q^2)`
//! band-restricted lattice recursion, so no permutation resampling is needed.
//!
//! The main application is comparing the sorted edge weights of two
//! minimum spanning trees built from correlation networks, see [`graph`].

pub mod connectivity;
pub mod error;
pub mod exact;
pub mod graph;
pub mod simulation;

pub use connectivity::{
    heritability_index, pearson_correlation_matrix, spearman_correlation, twin_edgewise_correlation,
    ConnectivityMatrix, DataMatrix, HeritabilityMap, TwinCohort, TwinCorrelation,
};
pub use error::{Error, Result};
pub use exact::{
    binomial, brute_force_pvalue, build_step_function, count_band_paths, discrepancy, exact_pvalue,
    BandCountTable, DiscrepancyResult, ExactPValue, MonotoneSequence, StepFunction,
};
pub use graph::{
    compare_msts, growth_curve, kruskal_mst, localize_nodes, mst_from_connectivity, Edge,
    MstComparison, SortedEdgeWeights, SpanningForest, WeightMode, WeightedGraph,
};
pub use simulation::{run_experiment, ExperimentReport, RngStream, SimulationConfig};
