//! Solution records and the replay checker used to validate solver output.

use crate::arith::{evaluate, BinOp};
use crate::pool::Pool;
use crate::scalar::Scalar;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step<T: Scalar = u64> {
    Binary {
        left: T,
        op: BinOp,
        right: T,
        result: T,
    },
    Square {
        operand: T,
        result: T,
    },
}

impl<T: Scalar> Step<T> {
    pub fn binary(left: T, op: BinOp, right: T) -> Option<Self> {
        evaluate(left, right, op).map(|result| Step::Binary {
            left,
            op,
            right,
            result,
        })
    }

    pub fn square(operand: T) -> Option<Self> {
        let result = operand.checked_mul(&operand).filter(|r| *r <= T::LIMIT)?;
        Some(Step::Square { operand, result })
    }

    pub fn result(&self) -> T {
        match *self {
            Step::Binary { result, .. } | Step::Square { result, .. } => result,
        }
    }
}

impl<T: Scalar> fmt::Display for Step<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Binary {
                left,
                op,
                right,
                result,
            } => {
                write!(f, "{left} {op} {right} = {result}")
            }
            Step::Square { operand, result } => write!(f, "{operand} * {operand} = {result}"),
        }
    }
}

/// Steps leading from an initial pool to `result`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution<T: Scalar = u64> {
    pub steps: Vec<Step<T>>,
    pub result: T,
}

impl<T: Scalar> Solution<T> {
    /// The zero-step solution: `value` is already in the pool.
    pub fn given(value: T) -> Self {
        Solution {
            steps: Vec::new(),
            result: value,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Renders the listing with the remaining pool after each step,
    /// e.g. `6 * 5 = 30  {1,1,4,7,30}`.
    pub fn listing(&self, initial: &Pool<T>) -> Vec<String> {
        let mut pool = initial.clone();
        self.steps
            .iter()
            .map(|step| {
                match *step {
                    Step::Binary {
                        left,
                        right,
                        result,
                        ..
                    } => {
                        pool.take(left);
                        pool.take(right);
                        pool.put(result);
                    }
                    Step::Square { operand, result } => {
                        pool.take(operand);
                        pool.put(result);
                    }
                }
                format!("{step}  {pool}")
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {index} uses a value that is not in the pool")]
    MissingOperand { index: usize },
    #[error("step {index} states a result that does not match its operands")]
    WrongResult { index: usize },
    #[error("final value is not in the pool after the last step")]
    FinalMissing,
}

impl ReplayError {
    pub fn index(&self) -> Option<usize> {
        match *self {
            ReplayError::MissingOperand { index } | ReplayError::WrongResult { index } => {
                Some(index)
            }
            ReplayError::FinalMissing => None,
        }
    }
}

/// Replays `solution` against `initial`, checking every step is legal.
/// Returns the final value on success.
pub fn replay<T: Scalar>(initial: &Pool<T>, solution: &Solution<T>) -> Result<T, ReplayError> {
    let mut pool = initial.clone();
    for (index, step) in solution.steps.iter().enumerate() {
        match *step {
            Step::Binary {
                left,
                op,
                right,
                result,
            } => {
                if evaluate(left, right, op) != Some(result) {
                    return Err(ReplayError::WrongResult { index });
                }
                if !pool.take(left) {
                    return Err(ReplayError::MissingOperand { index });
                }
                if !pool.take(right) {
                    return Err(ReplayError::MissingOperand { index });
                }
                pool.put(result);
            }
            Step::Square { operand, result } => {
                if operand.checked_mul(&operand) != Some(result) || result > T::LIMIT {
                    return Err(ReplayError::WrongResult { index });
                }
                if !pool.take(operand) {
                    return Err(ReplayError::MissingOperand { index });
                }
                pool.put(result);
            }
        }
    }
    if pool.contains(solution.result) {
        Ok(solution.result)
    } else {
        Err(ReplayError::FinalMissing)
    }
}
