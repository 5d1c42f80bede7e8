//! Fixtures shared by the criterion benchmarks.

use combinf_core::simulation::simulate_modular_data;
use combinf_core::{pearson_correlation_matrix, ConnectivityMatrix, DataMatrix, RngStream};

/// Block-modular data with `p` nodes and `k` modules, fixed seed.
pub fn modular_data(n: usize, p: usize, k: usize, seed: u64) -> DataMatrix {
    simulate_modular_data(n, p, k, 0.1, &RngStream::new(seed, 0)).expect("valid fixture parameters")
}

/// Pearson correlation network of [`modular_data`].
pub fn correlation_network(n: usize, p: usize, k: usize, seed: u64) -> ConnectivityMatrix {
    pearson_correlation_matrix(&modular_data(n, p, k, seed)).expect("nondegenerate fixture")
}
