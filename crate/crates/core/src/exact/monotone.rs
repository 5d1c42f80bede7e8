use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted feature values `f(F_1) < f(F_2) < ... < f(F_q)`.
///
/// The strict constructor rejects ties. [`MonotoneSequence::nondecreasing`]
/// accepts them and records that it did, so downstream p-values can carry a
/// warning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneSequence {
    values: Vec<f64>,
    has_ties: bool,
}

impl MonotoneSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        if let Some(index) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing {
                index: index + 1,
                prev: values[index],
                next: values[index + 1],
            });
        }
        Ok(Self {
            values,
            has_ties: false,
        })
    }

    /// Tie-tolerant constructor: the input must be sorted but may repeat values.
    pub fn nondecreasing(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        if let Some(index) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotSorted {
                index: index + 1,
                prev: values[index],
                next: values[index + 1],
            });
        }
        let has_ties = values.windows(2).any(|w| w[0] == w[1]);
        Ok(Self { values, has_ties })
    }

    /// Sorts arbitrary finite values and builds a tie-tolerant sequence.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        values.sort_by(f64::total_cmp);
        Self::nondecreasing(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when the sequence repeats a value (only possible through the
    /// tie-tolerant constructors).
    pub fn has_ties(&self) -> bool {
        self.has_ties
    }

    pub fn step_function(&self) -> StepFunction {
        StepFunction {
            breakpoints: self.values.clone(),
        }
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

/// Nondecreasing integer step function: 0 below the first breakpoint, `j`
/// from the `j`-th breakpoint on, `q` past the last one.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
}

impl StepFunction {
    /// Number of breakpoints `<= t`.
    pub fn eval(&self, t: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= t)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }
}

/// Builds the step function mapping the `j`-th sorted value to `j`.
pub fn build_step_function(seq: &MonotoneSequence) -> StepFunction {
    seq.step_function()
}
