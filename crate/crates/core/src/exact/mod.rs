//! Exact combinatorial inference for two monotone feature sequences.

mod brute;
mod discrepancy;
mod lattice;
mod monotone;

pub use brute::{brute_force_pvalue, MAX_ENUMERATION_Q};
pub use discrepancy::{discrepancy, DiscrepancyResult};
pub use lattice::{
    band_path_count, binomial, count_band_paths, exact_pvalue, BandCountTable, ExactPValue,
};
pub use monotone::{build_step_function, MonotoneSequence, StepFunction};
