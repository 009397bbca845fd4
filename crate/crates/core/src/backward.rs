//! Backward chaining from the target, the historical approach.
//!
//! Both solvers start from the goal and consume one pool value per step
//! until the goal equals a pool value (the goal minus that value is 0).
//! Each step's inverse becomes a forward step, so the goal is always
//! built as a single chain: results that need two independently built
//! intermediates, like `29 * 31`, are out of reach.

use crate::arith::BinOp;
use crate::pool::Pool;
use crate::report::{SolveReport, TargetRange};
use crate::scalar::Scalar;
use crate::solution::{Solution, Step};

/// Which backward scheme to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackwardScheme {
    /// Odd steps add or subtract a pool value (or leave the goal alone),
    /// even steps divide by a pool value.
    Alternating,
    /// Every step applies any of the four operations with a pool value.
    AllOps,
}

type Candidate<T> = (T, Option<(usize, Step<T>)>);

struct Chain<T: Scalar> {
    scheme: BackwardScheme,
    /// Forward steps, last step first.
    steps: Vec<Step<T>>,
    trials: u64,
}

impl<T: Scalar> Chain<T> {
    fn alternating(&mut self, goal: T, pool: &[T]) -> bool {
        // new goal and, when a value was shifted in, its position and step
        let mut candidates: Vec<Candidate<T>> = vec![(goal, None)];
        for (i, &x) in pool.iter().enumerate() {
            if i > 0 && pool[i - 1] == x {
                continue;
            }
            if x == goal {
                return true;
            }
            if let Some(up) = goal.checked_add(&x).filter(|v| *v <= T::LIMIT) {
                let step = Step::Binary {
                    left: up,
                    op: BinOp::Sub,
                    right: x,
                    result: goal,
                };
                candidates.push((up, Some((i, step))));
            }
            if goal > x {
                let down = goal - x;
                let step = Step::Binary {
                    left: down,
                    op: BinOp::Add,
                    right: x,
                    result: goal,
                };
                candidates.push((down, Some((i, step))));
            }
        }
        for (c, shift) in candidates {
            let mut rest = pool.to_vec();
            if let Some((i, _)) = shift {
                rest.remove(i);
            }
            for j in 0..rest.len() {
                let y = rest[j];
                if (j > 0 && rest[j - 1] == y) || y == T::unit() {
                    continue;
                }
                self.trials += 1;
                if !(c % y).is_zero() {
                    continue;
                }
                let q = c / y;
                let mut next = rest.clone();
                next.remove(j);
                let depth = self.steps.len();
                if let Some((_, step)) = shift {
                    self.steps.push(step);
                }
                self.steps.push(Step::Binary {
                    left: q,
                    op: BinOp::Mul,
                    right: y,
                    result: c,
                });
                if self.alternating(q, &next) {
                    return true;
                }
                self.steps.truncate(depth);
            }
        }
        false
    }

    fn all_ops(&mut self, goal: T, pool: &[T]) -> bool {
        for i in 0..pool.len() {
            let x = pool[i];
            if i > 0 && pool[i - 1] == x {
                continue;
            }
            if x == goal {
                return true;
            }
            let mut rest = pool.to_vec();
            rest.remove(i);
            if rest.is_empty() {
                continue;
            }
            for op in BinOp::ALL {
                self.trials += 1;
                // `c` is the new goal; `step` rebuilds `goal` from `c` and `x`
                let (c, step) = match op {
                    BinOp::Add => match goal.checked_add(&x).filter(|v| *v <= T::LIMIT) {
                        Some(c) => (
                            c,
                            Step::Binary {
                                left: c,
                                op: BinOp::Sub,
                                right: x,
                                result: goal,
                            },
                        ),
                        None => continue,
                    },
                    BinOp::Sub if goal > x => {
                        let c = goal - x;
                        (
                            c,
                            Step::Binary {
                                left: c,
                                op: BinOp::Add,
                                right: x,
                                result: goal,
                            },
                        )
                    }
                    BinOp::Sub => {
                        let c = x - goal;
                        (
                            c,
                            Step::Binary {
                                left: x,
                                op: BinOp::Sub,
                                right: c,
                                result: goal,
                            },
                        )
                    }
                    BinOp::Mul => match goal.checked_mul(&x).filter(|v| *v <= T::LIMIT) {
                        Some(c) if x > T::unit() => (
                            c,
                            Step::Binary {
                                left: c,
                                op: BinOp::Div,
                                right: x,
                                result: goal,
                            },
                        ),
                        _ => continue,
                    },
                    BinOp::Div => {
                        if x == T::unit() || !(goal % x).is_zero() {
                            continue;
                        }
                        let c = goal / x;
                        (
                            c,
                            Step::Binary {
                                left: c,
                                op: BinOp::Mul,
                                right: x,
                                result: goal,
                            },
                        )
                    }
                };
                self.steps.push(step);
                if self.all_ops(c, &rest) {
                    return true;
                }
                self.steps.pop();
            }
        }
        false
    }
}

/// Runs a backward scheme for one target. Returns the forward solution and
/// the number of trial operations spent.
pub fn solve_backward_counted<T: Scalar>(
    instance: &Pool<T>,
    target: T,
    scheme: BackwardScheme,
) -> (Option<Solution<T>>, u64) {
    let mut chain = Chain {
        scheme,
        steps: Vec::new(),
        trials: 0,
    };
    let pool = instance.as_slice();
    let found = match chain.scheme {
        BackwardScheme::Alternating => chain.alternating(target, pool),
        BackwardScheme::AllOps => chain.all_ops(target, pool),
    };
    let solution = found.then(|| {
        let mut steps = chain.steps;
        steps.reverse();
        Solution {
            steps,
            result: target,
        }
    });
    (solution, chain.trials)
}

/// Alternating add-or-subtract then divide scheme.
pub fn solve_backward_alternating<T: Scalar>(instance: &Pool<T>, target: T) -> Option<Solution<T>> {
    solve_backward_counted(instance, target, BackwardScheme::Alternating).0
}

/// All four operations applied to the goal at every step.
pub fn solve_backward_allops<T: Scalar>(instance: &Pool<T>, target: T) -> Option<Solution<T>> {
    solve_backward_counted(instance, target, BackwardScheme::AllOps).0
}

/// Runs the scheme once per target. `min_ops` holds the length of the
/// first chain found, which need not be the shortest.
pub fn backward_report<T: Scalar>(
    instance: &Pool<T>,
    range: TargetRange,
    scheme: BackwardScheme,
) -> SolveReport<T> {
    let mut report = SolveReport::empty(instance.clone(), range, true);
    for t in range.targets() {
        let Some(target) = T::narrow(t as u128) else {
            continue;
        };
        let (solution, trials) = solve_backward_counted(instance, target, scheme);
        report.nodes_visited += trials;
        if let Some(solution) = solution {
            report.mark(t as u128, solution.len() as u8);
            report.store(t as u128, solution);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::replay;

    fn pool(v: &[u64]) -> Pool {
        Pool::from_u64s(v).unwrap()
    }

    #[test]
    fn alternating_worked_example() {
        let p = pool(&[3, 50, 7, 4, 75, 8]);
        let sol = solve_backward_alternating(&p, 822).expect("solvable by backward chaining");
        assert_eq!(replay(&p, &sol), Ok(822));
        // the published chain: (822 + 50) / 4 = 218, (218 + 7) / 3 = 75, 75 - 75 = 0
        let published = Solution {
            steps: vec![
                Step::binary(75, BinOp::Mul, 3).unwrap(),
                Step::binary(225, BinOp::Sub, 7).unwrap(),
                Step::binary(218, BinOp::Mul, 4).unwrap(),
                Step::binary(872, BinOp::Sub, 50).unwrap(),
            ],
            result: 822,
        };
        assert_eq!(replay(&p, &published), Ok(822));
    }

    #[test]
    fn all_ops_worked_example() {
        let p = pool(&[3, 50, 7, 4, 75, 8]);
        let sol = solve_backward_allops(&p, 822).unwrap();
        assert_eq!(replay(&p, &sol), Ok(822));
        assert!(sol.len() <= 5);
    }

    #[test]
    fn intermediate_products_are_out_of_reach() {
        let p = pool(&[1, 1, 4, 5, 6, 7]);
        assert!(solve_backward_alternating(&p, 899).is_none());
        assert!(solve_backward_allops(&p, 899).is_none());
    }

    #[test]
    fn trivial_cases() {
        let five = pool(&[5]);
        assert_eq!(
            solve_backward_alternating(&five, 5),
            Some(Solution::given(5))
        );
        assert_eq!(solve_backward_allops(&five, 5), Some(Solution::given(5)));
        assert_eq!(solve_backward_alternating(&five, 6), None);
        let p = pool(&[2, 3]);
        let sol = solve_backward_allops(&p, 6).unwrap();
        assert_eq!(replay(&p, &sol), Ok(6));
        assert_eq!(sol.len(), 1);
    }
}
