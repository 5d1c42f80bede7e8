use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::RngStream;
use crate::connectivity::{pearson_correlation_matrix, DataMatrix};
use crate::error::{Error, Result};
use crate::exact::{binomial, discrepancy};
use crate::graph::{compare_msts, mst_from_connectivity, MstComparison, SortedEdgeWeights, WeightMode};

/// Pooled sizes above this cannot be encoded in a `u64` row mask.
const MAX_POOLED_ROWS: usize = 62;

/// Pearson correlation network -> spanning tree under `mode` -> sorted tree
/// weights.
pub fn mst_weights(data: &DataMatrix, mode: WeightMode) -> Result<SortedEdgeWeights> {
    let c = pearson_correlation_matrix(data)?;
    Ok(mst_from_connectivity(&c, mode)?.1)
}

/// Exact combinatorial test of equal spanning-tree shape for two groups.
pub fn run_combinatorial_trial(a: &DataMatrix, b: &DataMatrix, mode: WeightMode) -> Result<MstComparison> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    compare_msts(&mst_weights(a, mode)?, &mst_weights(b, mode)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// Relabelings drawn uniformly, repeats allowed.
    #[default]
    WithReplacement,
    /// Relabelings drawn without repeats.
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PermutationOptions {
    /// Report `(hits + 1) / (N + 1)` instead of `hits / N`.
    pub add_one: bool,
    pub sampling: Sampling,
    /// Spanning-tree weighting of the correlation networks.
    pub weight_mode: WeightMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermutationOutcome {
    pub p_value: f64,
    pub observed_d: usize,
    /// Relabelings whose statistic reached `observed_d`.
    pub exceedances: usize,
    pub permutations: usize,
    /// The request exceeded the number of distinct relabelings and was cut.
    pub capped: bool,
}

/// Number of distinct splits of `2n` pooled images into two groups of `n`.
pub fn relabeling_count(n: usize) -> Result<u64> {
    binomial(2 * n as u64, n as u64)?
        .to_u64()
        .ok_or(Error::InvalidParameter {
            name: "n",
            reason: format!("C({}, {n}) overflows u64", 2 * n),
        })
}

/// `floor(fraction * C(2n, n))`, at least 1.
pub fn permutations_for_fraction(n: usize, fraction: f64) -> Result<usize> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "fraction",
            reason: format!("must lie in (0, 1], got {fraction}"),
        });
    }
    let total = relabeling_count(n)? as f64;
    Ok(((fraction * total).floor() as usize).max(1))
}

fn check_groups(a: &DataMatrix, b: &DataMatrix) -> Result<usize> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            left: a.rows(),
            right: b.rows(),
        });
    }
    let pooled = 2 * a.rows();
    if pooled > MAX_POOLED_ROWS {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("pooled sample of {pooled} exceeds {MAX_POOLED_ROWS}"),
        });
    }
    Ok(a.rows())
}

fn split_statistic(a: &DataMatrix, b: &DataMatrix, mode: WeightMode, mask: u64) -> Result<usize> {
    let pooled = 2 * a.rows();
    let (first, second): (Vec<usize>, Vec<usize>) = (0..pooled).partition(|&r| mask >> r & 1 == 1);
    let wa = mst_weights(&a.stack_rows(b, &first)?, mode)?;
    let wb = mst_weights(&a.stack_rows(b, &second)?, mode)?;
    Ok(discrepancy(&wa.weights, &wb.weights)?.d)
}

fn evaluate(
    a: &DataMatrix,
    b: &DataMatrix,
    masks: &[u64],
    opts: PermutationOptions,
    capped: bool,
) -> Result<PermutationOutcome> {
    let observed_d = run_combinatorial_trial(a, b, opts.weight_mode)?.d;
    let stats = masks
        .par_iter()
        .map(|&m| split_statistic(a, b, opts.weight_mode, m))
        .collect::<Result<Vec<usize>>>()?;
    let exceedances = stats.iter().filter(|&&d| d >= observed_d).count();
    let n = masks.len();
    let p_value = if opts.add_one {
        (exceedances + 1) as f64 / (n + 1) as f64
    } else {
        exceedances as f64 / n as f64
    };
    Ok(PermutationOutcome {
        p_value,
        observed_d,
        exceedances,
        permutations: n,
        capped,
    })
}

/// Sampled permutation test: pool the `2n` images, draw random relabelings
/// into two groups of `n`, and recompute the spanning-tree statistic.
pub fn permutation_test(
    a: &DataMatrix,
    b: &DataMatrix,
    num_permutations: usize,
    stream: &RngStream,
    opts: PermutationOptions,
) -> Result<PermutationOutcome> {
    let n = check_groups(a, b)?;
    if num_permutations == 0 {
        return Err(Error::InvalidParameter {
            name: "num_permutations",
            reason: "must be at least 1".into(),
        });
    }
    let total = relabeling_count(n)?;
    let mut count = num_permutations;
    let capped = count as u64 > total;
    if capped {
        log::warn!("{num_permutations} permutations requested but only {total} relabelings exist; capping");
        count = total as usize;
    }

    if opts.sampling == Sampling::Distinct && count as u64 == total {
        return evaluate(a, b, &all_splits(n), opts, capped);
    }

    let mut rng = stream.rng();
    let mut draw = || index::sample(&mut rng, 2 * n, n).iter().fold(0u64, |m, r| m | 1 << r);
    let masks: Vec<u64> = match opts.sampling {
        Sampling::WithReplacement => (0..count).map(|_| draw()).collect(),
        Sampling::Distinct => {
            let mut seen = HashSet::with_capacity(count);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let m = draw();
                if seen.insert(m) {
                    out.push(m);
                }
            }
            out
        }
    };
    evaluate(a, b, &masks, opts, capped)
}

/// Full enumeration of all `C(2n, n)` relabelings.
pub fn exhaustive_permutation_test(
    a: &DataMatrix,
    b: &DataMatrix,
    opts: PermutationOptions,
) -> Result<PermutationOutcome> {
    let n = check_groups(a, b)?;
    evaluate(a, b, &all_splits(n), opts, false)
}

/// Every `2n`-bit mask with exactly `n` bits set, ascending.
fn all_splits(n: usize) -> Vec<u64> {
    let limit = 1u64 << (2 * n);
    let mut mask = (1u64 << n) - 1;
    let mut out = Vec::new();
    while mask < limit {
        out.push(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}
