use crate::error::{Error, Result};

/// Largest `q` accepted by [`brute_force_pvalue`]; `C(24, 12) = 2_704_156`.
pub const MAX_ENUMERATION_Q: usize = 12;

/// `P(D_q >= d)` by walking every interleaving of `q` right-steps and `q`
/// up-steps. Independent of the lattice recursion; used as its oracle.
pub fn brute_force_pvalue(q: usize, d: usize) -> Result<f64> {
    if q == 0 {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: "must be at least 1".into(),
        });
    }
    if q > MAX_ENUMERATION_Q {
        return Err(Error::EnumerationCapacity {
            q,
            max: MAX_ENUMERATION_Q,
        });
    }
    let steps = 2 * q as u32;
    let mut total = 0u64;
    let mut hits = 0u64;
    // Gosper's hack: every `steps`-bit mask with exactly q ones, in order.
    let mut mask: u32 = (1 << q) - 1;
    let limit: u32 = 1 << steps;
    while mask < limit {
        total += 1;
        if max_gap(mask, steps) >= d {
            hits += 1;
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(hits as f64 / total as f64)
}

fn max_gap(mask: u32, steps: u32) -> usize {
    let (mut u, mut v, mut best) = (0i64, 0i64, 0i64);
    for bit in 0..steps {
        if mask >> bit & 1 == 1 {
            u += 1;
        } else {
            v += 1;
        }
        best = best.max((u - v).abs());
    }
    best as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(brute_force_pvalue(3, 2).unwrap(), 0.6);
        assert_eq!(brute_force_pvalue(1, 1).unwrap(), 1.0);
        assert_eq!(brute_force_pvalue(4, 5).unwrap(), 0.0);
        assert_eq!(brute_force_pvalue(3, 3).unwrap(), 0.1);
        assert_eq!(brute_force_pvalue(6, 0).unwrap(), 1.0);
    }

    #[test]
    fn capacity() {
        assert_eq!(
            brute_force_pvalue(13, 2),
            Err(Error::EnumerationCapacity { q: 13, max: 12 })
        );
        assert!(brute_force_pvalue(0, 1).is_err());
    }
}
