use serde::{Deserialize, Serialize};

use super::monotone::MonotoneSequence;
use crate::error::{Error, Result};

/// Observed value of the max-gap statistic between two step functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyResult {
    /// `max_t |phi(t) - psi(t)|`.
    pub d: usize,
    /// Smallest merged value at which the maximum is attained.
    pub argmax_location: f64,
    pub q: usize,
    /// Some value occurred in both sequences (or repeated inside one). The
    /// exact null distribution assumes tie-free data.
    pub ties_absorbed: bool,
}

/// Computes `D = sup_t |phi(t) - psi(t)|` by walking the merged sorted values.
///
/// All elements sharing a value are consumed before the gap is measured, so
/// the result is the supremum over continuous `t`.
pub fn discrepancy(a: &MonotoneSequence, b: &MonotoneSequence) -> Result<DiscrepancyResult> {
    let (xs, ys) = (a.values(), b.values());
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    let q = xs.len();
    let mut ties_absorbed = a.has_ties() || b.has_ties();

    let (mut i, mut j) = (0, 0);
    let mut best = 0usize;
    let mut argmax = xs[0].min(ys[0]);
    while i < q || j < q {
        let t = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        let (i0, j0) = (i, j);
        while i < q && xs[i] == t {
            i += 1;
        }
        while j < q && ys[j] == t {
            j += 1;
        }
        if i > i0 && j > j0 {
            ties_absorbed = true;
        }
        let gap = i.abs_diff(j);
        if gap > best {
            best = gap;
            argmax = t;
        }
    }

    Ok(DiscrepancyResult {
        d: best,
        argmax_location: argmax,
        q,
        ties_absorbed,
    })
}
