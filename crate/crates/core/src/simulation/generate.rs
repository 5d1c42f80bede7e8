use rand::Rng;
use rand_distr::StandardNormal;

use super::rng::RngStream;
use crate::connectivity::DataMatrix;
use crate::error::{Error, Result};

/// Resolves a module count; 0 means every node is its own module.
pub fn effective_modules(p: usize, k: usize) -> Result<usize> {
    let k = if k == 0 { p } else { k };
    if k > p || !p.is_multiple_of(k) {
        return Err(Error::InvalidParameter {
            name: "modules",
            reason: format!("{k} modules do not evenly divide {p} nodes"),
        });
    }
    Ok(k)
}

/// `n x p` matrix of independent standard normal draws, row-major order.
pub fn standard_normal_matrix(n: usize, p: usize, stream: &RngStream) -> Result<DataMatrix> {
    let mut rng = stream.rng();
    let data = (0..n * p).map(|_| rng.sample(StandardNormal)).collect();
    DataMatrix::new(n, p, data)
}

/// Block-modular structure on top of a base signal `x`: every node of module
/// `j` copies the module's first column of `x` plus independent
/// `N(0, sigma^2)` noise drawn from `noise`.
pub fn add_modular_structure(x: &DataMatrix, k: usize, sigma: f64, noise: &RngStream) -> Result<DataMatrix> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("must be finite and nonnegative, got {sigma}"),
        });
    }
    let (n, p) = (x.rows(), x.cols());
    let size = p / effective_modules(p, k)?;
    let mut rng = noise.rng();
    let y = (0..n * p)
        .map(|idx| {
            let (r, col) = (idx / p, idx % p);
            let leader = (col / size) * size;
            let e: f64 = rng.sample(StandardNormal);
            x.get(r, leader) + sigma * e
        })
        .collect();
    DataMatrix::new(n, p, y)
}

/// Fresh base signal and modular structure from one stream.
pub fn simulate_modular_data(
    n: usize,
    p: usize,
    k: usize,
    sigma: f64,
    stream: &RngStream,
) -> Result<DataMatrix> {
    effective_modules(p, k)?;
    let x = standard_normal_matrix(n, p, &stream.fork(0))?;
    add_modular_structure(&x, k, sigma, &stream.fork(1))
}
