//! Block-modular random networks and the combinatorial-vs-permutation
//! comparison harness.

mod experiment;
mod generate;
mod permutation;
mod rng;

pub use experiment::{run_experiment, ExperimentReport, Pairing, ReportCell, ReportRow, SimulationConfig};
pub use generate::{add_modular_structure, effective_modules, simulate_modular_data, standard_normal_matrix};
pub use permutation::{
    exhaustive_permutation_test, mst_weights, permutation_test, permutations_for_fraction,
    relabeling_count, run_combinatorial_trial, PermutationOptions, PermutationOutcome, Sampling,
};
pub use rng::RngStream;
