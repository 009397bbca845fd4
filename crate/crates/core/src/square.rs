//! The extended game where any available number `v <= A` may be replaced by
//! its square, each squaring counting as one operation.
//!
//! Search runs over subsets of the instance. For every proper subset the
//! solver keeps every value it can produce, with the fewest operations and
//! how that value was made; squaring is closed over each subset. Values of
//! the full set are never stored: each target is instead looked up from its
//! possible last operation across every split of the full set. The state
//! space is finite because squaring only applies below `A` and every value
//! is capped at 63 bits.

use crate::arith::{combine, BinOp};
use crate::bfs::{build_decomposition, DecompositionTable};
use crate::error::Error;
use crate::pool::Pool;
use crate::report::{SolveReport, TargetRange, UNSOLVED};
use crate::solution::{Solution, Step};
use crate::Value;
use rustc_hash::FxHashMap;
use std::collections::BTreeSet;

/// Largest bound accepted without an explicit override.
pub const MAX_SQUARE_BOUND: u64 = 45_000;

const VALUE_CAP: Value = i64::MAX as Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareConfig {
    bound: u64,
}

impl SquareConfig {
    /// `1 <= bound <= 45000`.
    pub fn new(bound: u64) -> Result<Self, Error> {
        if !(1..=MAX_SQUARE_BOUND).contains(&bound) {
            return Err(Error::SquareBound {
                got: bound,
                max: MAX_SQUARE_BOUND,
            });
        }
        Ok(SquareConfig { bound })
    }

    /// Any positive bound; values stay capped at 63 bits regardless.
    pub fn unchecked(bound: u64) -> Result<Self, Error> {
        if bound == 0 {
            return Err(Error::SquareBound {
                got: 0,
                max: u64::MAX,
            });
        }
        Ok(SquareConfig { bound })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }
}

#[derive(Debug, Clone, Copy)]
enum Origin {
    Given,
    Squared(Value),
    Combined {
        op: BinOp,
        left: Value,
        left_mask: u32,
        right: Value,
    },
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    ops: u8,
    origin: Origin,
}

type ValueMap = FxHashMap<Value, Entry>;

/// `(ops, squares applied after it, op, left, left_mask, right)`
type LastStep = (u8, Vec<Value>, BinOp, Value, u32, Value);

struct Search<'a> {
    values: &'a [Value],
    table: DecompositionTable,
    bound: u64,
    sets: Vec<ValueMap>,
    attempts: u64,
}

impl Search<'_> {
    fn build_mask(&mut self, mask: u32) {
        let mut map = ValueMap::default();
        if mask.count_ones() == 1 {
            let v = self.values[mask.trailing_zeros() as usize];
            map.insert(
                v,
                Entry {
                    ops: 0,
                    origin: Origin::Given,
                },
            );
        } else {
            for &(sub, comp) in self.table.pairs(mask) {
                let (left, right) = (&self.sets[sub as usize], &self.sets[comp as usize]);
                for (&x, ex) in left {
                    for (&y, ey) in right {
                        let ((a, ea, am), (b, eb)) = if x >= y {
                            ((x, ex, sub), (y, ey))
                        } else {
                            ((y, ey, comp), (x, ex))
                        };
                        let ops = ea.ops + eb.ops + 1;
                        for op in BinOp::ALL {
                            self.attempts += 1;
                            let Some(r) = combine(a, b, op) else { continue };
                            let entry = Entry {
                                ops,
                                origin: Origin::Combined {
                                    op,
                                    left: a,
                                    left_mask: am,
                                    right: b,
                                },
                            };
                            map.entry(r)
                                .and_modify(|e| {
                                    if ops < e.ops {
                                        *e = entry
                                    }
                                })
                                .or_insert(entry);
                        }
                    }
                }
            }
        }
        self.close_squares(&mut map);
        self.sets[mask as usize] = map;
    }

    /// Squares every value in `2..=bound`, repeatedly. Values are handled in
    /// increasing order, so each one's count is final before it is squared.
    fn close_squares(&self, map: &mut ValueMap) {
        let mut pending: BTreeSet<Value> = map
            .keys()
            .copied()
            .filter(|&v| v >= 2 && v <= self.bound)
            .collect();
        while let Some(v) = pending.pop_first() {
            let Some(s) = v.checked_mul(v).filter(|s| *s <= VALUE_CAP) else {
                continue;
            };
            let ops = map[&v].ops + 1;
            let entry = Entry {
                ops,
                origin: Origin::Squared(v),
            };
            let improved = match map.get_mut(&s) {
                Some(e) if e.ops <= ops => false,
                Some(e) => {
                    *e = entry;
                    true
                }
                None => {
                    map.insert(s, entry);
                    true
                }
            };
            if improved && s <= self.bound {
                pending.insert(s);
            }
        }
    }

    /// Cheapest way to produce `u` over the full set with a binary last
    /// step, as `(ops, op, left, left_mask, right)`.
    fn last_step(&mut self, u: Value, first_only: bool) -> Option<(u8, BinOp, Value, u32, Value)> {
        let full = self.table.full_mask();
        let mut best: Option<(u8, BinOp, Value, u32, Value)> = None;
        for &(sub, comp) in self.table.pairs(full) {
            let (small, large) = if self.sets[sub as usize].len() <= self.sets[comp as usize].len()
            {
                (sub, comp)
            } else {
                (comp, sub)
            };
            let (sa, la) = (&self.sets[small as usize], &self.sets[large as usize]);
            for (&a, ea) in sa {
                // every way `u = a op b` or `u = b op a` could hold
                let candidates = [
                    u.checked_sub(a),
                    a.checked_sub(u),
                    u.checked_add(a),
                    u.is_multiple_of(a).then(|| u / a),
                    (a % u == 0).then(|| a / u),
                    u.checked_mul(a),
                ];
                for b in candidates.into_iter().flatten() {
                    let Some(eb) = la.get(&b) else { continue };
                    self.attempts += 1;
                    let (hi, lo, hi_mask) = if a >= b { (a, b, small) } else { (b, a, large) };
                    let Some(op) = BinOp::ALL
                        .into_iter()
                        .find(|&op| combine(hi, lo, op) == Some(u))
                    else {
                        continue;
                    };
                    let ops = ea.ops + eb.ops + 1;
                    if best.is_none_or(|(o, ..)| ops < o) {
                        best = Some((ops, op, hi, hi_mask, lo));
                        if first_only {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    fn steps(&self, mask: u32, value: Value, out: &mut Vec<Step>) {
        match self.sets[mask as usize][&value].origin {
            Origin::Given => {}
            Origin::Squared(v) => {
                self.steps(mask, v, out);
                out.push(Step::Square {
                    operand: v,
                    result: value,
                });
            }
            Origin::Combined {
                op,
                left,
                left_mask,
                right,
            } => {
                self.steps(left_mask, left, out);
                self.steps(mask ^ left_mask, right, out);
                out.push(Step::Binary {
                    left,
                    op,
                    right,
                    result: value,
                });
            }
        }
    }
}

/// How far a run should go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareGoal {
    /// Fewest operations and a solution for every target.
    Shortest,
    /// Only whether each target is reachable; stops once all are.
    Reachable,
}

/// Solves `instance` for every target of `range` with squaring allowed.
/// Solutions are recorded in the report. Only `u64` values are supported:
/// squares need the full 63-bit range.
pub fn solve_with_square(
    instance: &Pool<Value>,
    range: TargetRange,
    cfg: SquareConfig,
) -> SolveReport<Value> {
    let all: Vec<u64> = range.targets().collect();
    solve_square_targets(instance, range, cfg, &all, SquareGoal::Shortest)
}

/// Like [`solve_with_square`] but only for `wanted` targets of `range`.
/// Targets outside `wanted` stay unsolved in the report.
pub fn solve_square_targets(
    instance: &Pool<Value>,
    range: TargetRange,
    cfg: SquareConfig,
    wanted: &[u64],
    goal: SquareGoal,
) -> SolveReport<Value> {
    let mut report = SolveReport::empty(instance.clone(), range, goal == SquareGoal::Shortest);
    let values = instance.as_slice();
    let n = values.len();
    let table = build_decomposition(n).expect("pool sizes 1..=10 are valid");
    let full = table.full_mask();
    let mut search = Search {
        values,
        table,
        bound: cfg.bound,
        sets: vec![ValueMap::default(); 1 << n],
        attempts: 0,
    };
    let mut wanted: Vec<u64> = wanted
        .iter()
        .copied()
        .filter(|&t| range.contains(t))
        .collect();
    wanted.sort_unstable();
    wanted.dedup();
    // where each target's best production lives: (mask, ops)
    let mut best_at: FxHashMap<u64, (u32, u8)> = FxHashMap::default();
    let order: Vec<u32> = search.table.order().to_vec();
    for &mask in &order {
        if mask == full && n > 1 {
            break;
        }
        search.build_mask(mask);
        for &t in &wanted {
            if let Some(e) = search.sets[mask as usize].get(&t) {
                let better = best_at.get(&t).is_none_or(|&(_, o)| e.ops < o);
                if better {
                    best_at.insert(t, (mask, e.ops));
                }
            }
        }
        if goal == SquareGoal::Reachable && best_at.len() == wanted.len() {
            break;
        }
    }

    let mut last_steps: FxHashMap<u64, LastStep> = FxHashMap::default();
    if n > 1 && !(goal == SquareGoal::Reachable && best_at.len() == wanted.len()) {
        for &t in &wanted {
            if goal == SquareGoal::Reachable && best_at.contains_key(&t) {
                continue;
            }
            // t itself, or a chain of square roots within the bound
            let mut roots = vec![(t, Vec::new())];
            let mut chain = Vec::new();
            let mut u = t;
            while let Some(r) = exact_sqrt(u).filter(|&r| r >= 2 && r <= cfg.bound) {
                chain.push(u);
                u = r;
                roots.push((u, chain.clone()));
            }
            for (root, squares) in roots {
                let Some((ops, op, left, left_mask, right)) =
                    search.last_step(root, goal == SquareGoal::Reachable)
                else {
                    continue;
                };
                let total = ops + squares.len() as u8;
                let known = best_at.get(&t).map(|&(_, o)| o);
                let staged = last_steps.get(&t).map(|s| s.0);
                if known.is_none_or(|o| total < o) && staged.is_none_or(|o| total < o) {
                    last_steps.insert(t, (total, squares, op, left, left_mask, right));
                }
                if goal == SquareGoal::Reachable {
                    break;
                }
            }
        }
    }

    for &t in &wanted {
        let via_full = last_steps.get(&t);
        let via_subset = best_at.get(&t);
        let (ops, solution) = match (via_subset, via_full) {
            (_, Some((ops, squares, op, left, left_mask, right))) => {
                let solution = (goal == SquareGoal::Shortest).then(|| {
                    let mut steps = Vec::new();
                    search.steps(*left_mask, *left, &mut steps);
                    search.steps(full ^ left_mask, *right, &mut steps);
                    let root = squares.last().map_or(t, |&s| exact_sqrt(s).unwrap());
                    steps.push(Step::Binary {
                        left: *left,
                        op: *op,
                        right: *right,
                        result: root,
                    });
                    for &s in squares.iter().rev() {
                        steps.push(Step::Square {
                            operand: exact_sqrt(s).unwrap(),
                            result: s,
                        });
                    }
                    Solution { steps, result: t }
                });
                (*ops, solution)
            }
            (Some(&(mask, ops)), None) => {
                let solution = (goal == SquareGoal::Shortest).then(|| {
                    let mut steps = Vec::new();
                    search.steps(mask, t, &mut steps);
                    Solution { steps, result: t }
                });
                (ops, solution)
            }
            (None, None) => continue,
        };
        debug_assert!(ops < UNSOLVED);
        report.mark(t as u128, ops);
        if let Some(s) = solution {
            report.store(t as u128, s);
        }
    }
    report.nodes_visited = search.attempts;
    report
}

fn exact_sqrt(v: Value) -> Option<Value> {
    let r = (v as f64).sqrt() as Value;
    (r.saturating_sub(1)..=r + 1).find(|&c| c.checked_mul(c) == Some(v))
}

/// One row of a bound sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub bound: u64,
    /// Instances with at least one unsolved target.
    pub sets: usize,
    /// Unsolved (instance, target) problems.
    pub unsolved: usize,
    /// The unsolved targets of each such instance, in instance order.
    pub holdouts: Vec<(Pool<Value>, Vec<u64>)>,
}

/// Counts unsolved problems for each bound in `bounds` (sorted ascending,
/// duplicates dropped). Each bound only re-examines what the previous one
/// left unsolved: raising the bound never removes a move, so anything
/// solved stays solved. `workers` threads split the instances statically.
pub fn bound_sweep(
    instances: &[Pool<Value>],
    range: TargetRange,
    bounds: &[u64],
    workers: usize,
) -> Result<Vec<SweepRow>, Error> {
    let mut bounds = bounds.to_vec();
    bounds.sort_unstable();
    bounds.dedup();
    let configs: Vec<SquareConfig> = bounds
        .iter()
        .map(|&b| SquareConfig::unchecked(b))
        .collect::<Result<_, _>>()?;
    let all: Vec<u64> = range.targets().collect();
    let mut open: Vec<(Pool<Value>, Vec<u64>)> =
        instances.iter().map(|p| (p.clone(), all.clone())).collect();
    let mut rows = Vec::with_capacity(bounds.len());
    for cfg in configs {
        open = crate::parallel::map_chunks(&open, workers, |(pool, targets)| {
            let report = solve_square_targets(pool, range, cfg, targets, SquareGoal::Reachable);
            let left: Vec<u64> = targets
                .iter()
                .copied()
                .filter(|&t| !report.solved(t))
                .collect();
            (pool.clone(), left)
        })
        .into_iter()
        .filter(|(_, left)| !left.is_empty())
        .collect();
        rows.push(SweepRow {
            bound: cfg.bound(),
            sets: open.len(),
            unsolved: open.iter().map(|(_, l)| l.len()).sum(),
            holdouts: open.clone(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs::{solve_bfs, Storage};
    use crate::solution::replay;

    fn pool(v: &[u64]) -> Pool {
        Pool::from_u64s(v).unwrap()
    }

    #[test]
    fn bound_validation() {
        assert!(SquareConfig::new(0).is_err());
        assert!(SquareConfig::new(45_001).is_err());
        assert!(SquareConfig::unchecked(45_001).is_ok());
        assert!(SquareConfig::new(45_000).is_ok());
    }

    #[test]
    fn squaring_unlocks_999() {
        let p = pool(&[1, 2, 3, 4, 5, 6]);
        let range = TargetRange::single(999).unwrap();
        let plain = solve_with_square(&p, range, SquareConfig::new(1).unwrap());
        assert!(!plain.solved(999));
        let report = solve_with_square(&p, range, SquareConfig::new(18).unwrap());
        let sol = report.solution(999).unwrap();
        assert_eq!(replay(&p, sol), Ok(999));
        assert!(sol.steps.iter().any(|s| matches!(s, Step::Square { .. })));
    }

    #[test]
    fn bound_one_matches_standard_game() {
        for v in [
            [1, 1, 4, 5, 6, 7],
            [3, 3, 25, 50, 75, 100],
            [1, 1, 2, 2, 3, 3],
            [2, 4, 5, 6, 10, 50],
        ] {
            let p = pool(&v);
            let plain = solve_bfs(&p, TargetRange::STANDARD, Storage::Sets).unwrap();
            let sq = solve_with_square(&p, TargetRange::STANDARD, SquareConfig::new(1).unwrap());
            assert_eq!(plain.min_ops, sq.min_ops, "{p}");
            for t in TargetRange::STANDARD.targets().filter(|&t| sq.solved(t)) {
                let sol = sq.solution(t).unwrap();
                assert_eq!(replay(&p, sol), Ok(t));
                assert_eq!(sol.len(), sq.min_ops_for(t).unwrap() as usize);
            }
        }
    }

    #[test]
    fn reachable_goal_agrees_with_shortest() {
        let p = pool(&[1, 1, 8, 8, 9, 9]);
        let cfg = SquareConfig::new(10).unwrap();
        let full = solve_with_square(&p, TargetRange::STANDARD, cfg);
        let all: Vec<u64> = TargetRange::STANDARD.targets().collect();
        let quick =
            solve_square_targets(&p, TargetRange::STANDARD, cfg, &all, SquareGoal::Reachable);
        assert_eq!(full.solved_bits(), quick.solved_bits());
    }

    #[test]
    fn small_pools() {
        let p = pool(&[3]);
        let r = solve_with_square(
            &p,
            TargetRange::new(1, 100).unwrap(),
            SquareConfig::new(10).unwrap(),
        );
        assert_eq!(r.min_ops_for(3), Some(0));
        assert_eq!(r.min_ops_for(9), Some(1));
        assert_eq!(r.min_ops_for(81), Some(2));
        assert!(!r.solved(4));
        let sol = r.solution(81).unwrap();
        assert_eq!(replay(&p, sol), Ok(81));
    }

    #[test]
    fn sweep_is_monotone() {
        let sets = vec![
            pool(&[1, 1, 8, 8, 9, 9]),
            pool(&[1, 2, 3, 4, 5, 6]),
            pool(&[2, 4, 5, 6, 10, 50]),
        ];
        let rows = bound_sweep(&sets, TargetRange::STANDARD, &[10, 1, 2], 2).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.bound).collect::<Vec<_>>(),
            vec![1, 2, 10]
        );
        assert!(rows
            .windows(2)
            .all(|w| w[1].sets <= w[0].sets && w[1].unsolved <= w[0].unsolved));
        assert_eq!(rows[0].holdouts.len(), rows[0].sets);
    }
}
