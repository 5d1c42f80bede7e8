//! Band-restricted lattice path counting and the exact null distribution of
//! the max-gap statistic.
//!
//! Under the null every interleaving of the two sorted samples is equally
//! likely. An interleaving is a monotone lattice path from `(0, 0)` to
//! `(q, q)`, and `D < d` holds exactly when the path never leaves the band
//! `|u - v| < d`. Counting in-band paths `A(u, v)` with the recursion
//! `A(u, v) = A(u-1, v) + A(u, v-1)` gives
//! `P(D >= d) = 1 - A(q, q) / C(2q, q)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact `C(n, k)` by multiplicative evaluation with exact division.
pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::BinomialDomain { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) since acc = C(n, i).
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Full `(q+1) x (q+1)` table of in-band path counts.
#[derive(Debug, Clone, PartialEq)]
pub struct BandCountTable {
    q: usize,
    d: usize,
    cells: Vec<BigUint>,
}

impl BandCountTable {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, u: usize, v: usize) -> &BigUint {
        &self.cells[u * (self.q + 1) + v]
    }

    /// `A(q, q)`, the number of paths that stay inside the band.
    pub fn total(&self) -> &BigUint {
        self.get(self.q, self.q)
    }

    pub fn in_band(&self, u: usize, v: usize) -> bool {
        u.abs_diff(v) < self.d
    }
}

fn check_qd(q: usize, d: usize, min_d: usize) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: "must be at least 1".into(),
        });
    }
    if d < min_d {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: format!("must be at least {min_d}"),
        });
    }
    Ok(())
}

fn boundary(i: usize, d: usize) -> BigUint {
    if i >= 1 && i < d {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

/// Fills the whole table. Prefer [`band_path_count`] when only `A(q, q)` is
/// needed; it keeps two rows.
pub fn count_band_paths(q: usize, d: usize) -> Result<BandCountTable> {
    check_qd(q, d, 1)?;
    let w = q + 1;
    let mut cells = vec![BigUint::zero(); w * w];
    for i in 1..=q {
        cells[i * w] = boundary(i, d);
        cells[i] = boundary(i, d);
    }
    for u in 1..=q {
        for v in 1..=q {
            if u.abs_diff(v) < d {
                cells[u * w + v] = &cells[(u - 1) * w + v] + &cells[u * w + v - 1];
            }
        }
    }
    Ok(BandCountTable { q, d, cells })
}

/// `A(q, q)` computed with two rows of storage.
pub fn band_path_count(q: usize, d: usize) -> Result<BigUint> {
    check_qd(q, d, 1)?;
    let mut prev: Vec<BigUint> = (0..=q).map(|v| boundary(v, d)).collect();
    let mut cur = vec![BigUint::zero(); q + 1];
    for u in 1..=q {
        cur[0] = boundary(u, d);
        for v in 1..=q {
            cur[v] = if u.abs_diff(v) < d {
                &prev[v] + &cur[v - 1]
            } else {
                BigUint::zero()
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev.swap_remove(q))
}

/// `P(D_q >= d)` as an exact rational and its nearest double.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPValue {
    pub q: usize,
    pub d: usize,
    /// `C(2q, q) - A(q, q)`, unreduced.
    pub numerator: BigUint,
    /// `C(2q, q)`, unreduced.
    pub denominator: BigUint,
    pub real_value: f64,
}

impl ExactPValue {
    fn from_parts(q: usize, d: usize, numerator: BigUint, denominator: BigUint) -> Self {
        let ratio = BigRational::new(BigInt::from(numerator.clone()), BigInt::from(denominator.clone()));
        // Correctly rounded for big ratios; clamp guards the [0, 1] contract.
        let real_value = ratio.to_f64().unwrap_or(0.0).clamp(0.0, 1.0);
        Self {
            q,
            d,
            numerator,
            denominator,
            real_value,
        }
    }

    /// Fraction in lowest terms.
    pub fn reduced(&self) -> (BigUint, BigUint) {
        if self.numerator.is_zero() {
            return (BigUint::zero(), BigUint::one());
        }
        let g = self.numerator.gcd(&self.denominator);
        (&self.numerator / &g, &self.denominator / &g)
    }

    pub fn fraction_string(&self) -> String {
        let (n, d) = self.reduced();
        format!("{n}/{d}")
    }
}

impl Serialize for ExactPValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactPValue", 3)?;
        st.serialize_field("value", &self.real_value)?;
        st.serialize_field("fraction", &self.fraction_string())?;
        st.serialize_field("q", &self.q)?;
        st.end()
    }
}

/// Exact `P(D_q >= d) = 1 - A(q, q) / C(2q, q)`.
///
/// `d = 0` is 1 by definition; `d > q` is 0 since no path leaves the grid.
pub fn exact_pvalue(q: usize, d: usize) -> Result<ExactPValue> {
    check_qd(q, d, 0)?;
    let total = binomial(2 * q as u64, q as u64)?;
    if d == 0 {
        return Ok(ExactPValue::from_parts(q, d, total.clone(), total));
    }
    let inside = band_path_count(q, d.min(q + 1))?;
    Ok(ExactPValue::from_parts(q, d, &total - inside, total))
}
