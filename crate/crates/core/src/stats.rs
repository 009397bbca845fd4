//! Queries over a [`GameDatabase`]. All of them are pure functions of the
//! database contents.

use crate::database::{GameDatabase, Record};
use crate::enumeration::{is_large, STANDARD_TILES};
use crate::pool::Pool;
use crate::report::{nearest_solved, UNSOLVED};
use crate::Value;
use std::collections::BTreeMap;

/// Problems per distance to the nearest reachable target of the range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceHistogram {
    pub counts: BTreeMap<u64, u64>,
    /// Problems of instances that reach no target of the range at all.
    pub unreachable: u64,
}

impl DistanceHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum::<u64>() + self.unreachable
    }

    pub fn at(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }
}

pub fn distance_histogram(db: &GameDatabase) -> DistanceHistogram {
    let mut h = DistanceHistogram::default();
    for r in &db.records {
        for t in db.range.targets() {
            match nearest_solved(&r.min_ops, db.range, t) {
                Some((_, d)) => *h.counts.entry(d).or_default() += 1,
                None => h.unreachable += 1,
            }
        }
    }
    h
}

/// `(target, instances solving it)` for every target of the range.
pub fn per_target_success(db: &GameDatabase) -> Vec<(u64, u64)> {
    let mut counts = vec![0u64; db.range.len()];
    for r in &db.records {
        for (c, &o) in counts.iter_mut().zip(&r.min_ops) {
            *c += (o != UNSOLVED) as u64;
        }
    }
    db.range.targets().zip(counts).collect()
}

/// Instances reaching every target, in database order.
pub fn instances_solving_all(db: &GameDatabase) -> Vec<&Pool<Value>> {
    db.records
        .iter()
        .filter(|r| r.min_ops.iter().all(|&o| o != UNSOLVED))
        .map(|r| &r.instance)
        .collect()
}

/// Tuple statistics count each instance once per occurrence of the tuple
/// in it, so `problems` and `solved` are occurrence-weighted while
/// `instances` counts distinct instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuccessRow {
    pub instances: u64,
    pub problems: u64,
    pub solved: u64,
}

impl SuccessRow {
    pub fn rate(&self) -> f64 {
        if self.problems == 0 {
            0.0
        } else {
            self.solved as f64 / self.problems as f64
        }
    }

    fn add(&mut self, r: &Record) {
        self.add_weighted(r, 1);
    }

    fn add_weighted(&mut self, r: &Record, weight: u64) {
        self.instances += 1;
        self.problems += weight * r.min_ops.len() as u64;
        self.solved += weight * r.solved_count() as u64;
    }
}

/// Rows indexed by the number of large tiles in the instance.
pub fn large_count_breakdown(db: &GameDatabase) -> Vec<(usize, SuccessRow)> {
    let mut rows: BTreeMap<usize, SuccessRow> = (0..=4.min(db.n as usize))
        .map(|k| {
            (
                k,
                SuccessRow {
                    instances: 0,
                    problems: 0,
                    solved: 0,
                },
            )
        })
        .collect();
    for r in &db.records {
        let k = r
            .instance
            .as_slice()
            .iter()
            .filter(|&&v| is_large(v))
            .count();
        rows.entry(k)
            .or_insert(SuccessRow {
                instances: 0,
                problems: 0,
                solved: 0,
            })
            .add(r);
    }
    rows.into_iter().collect()
}

/// For every tile value: instances containing it and their problems solved.
pub fn presence(db: &GameDatabase) -> Vec<(u64, SuccessRow)> {
    STANDARD_TILES
        .iter()
        .map(|&(v, _)| (v, tuple_success(db, &[v])))
        .collect()
}

fn contains_multiset(instance: &[Value], tuple: &[Value]) -> bool {
    // both sorted ascending
    let mut it = instance.iter();
    tuple.iter().all(|t| it.any(|v| v == t))
}

/// Ways to pick `tuple` out of `instance` as positions: the product of
/// C(copies in instance, copies in tuple) per value. Both sorted.
fn occurrences(instance: &[Value], tuple: &[Value]) -> u64 {
    tuple
        .chunk_by(|a, b| a == b)
        .map(|run| {
            let have = instance.iter().filter(|&&v| v == run[0]).count() as u64;
            let k = run.len() as u64;
            (0..k).fold(1, |acc, i| acc * (have - i) / (i + 1))
        })
        .product()
}

/// Success over the instances that contain `tuple` as a sub-multiset.
pub fn tuple_success(db: &GameDatabase, tuple: &[Value]) -> SuccessRow {
    let mut tuple = tuple.to_vec();
    tuple.sort_unstable();
    let mut row = SuccessRow {
        instances: 0,
        problems: 0,
        solved: 0,
    };
    for r in db
        .records
        .iter()
        .filter(|r| contains_multiset(r.instance.as_slice(), &tuple))
    {
        row.add_weighted(r, occurrences(r.instance.as_slice(), &tuple));
    }
    row
}

/// Every sub-multiset of `size` tiles appearing in some instance, ranked
/// by success rate, best first; ties keep tuple order.
pub fn rank_tuples(db: &GameDatabase, size: usize) -> Vec<(Vec<Value>, SuccessRow)> {
    let mut rows: BTreeMap<Vec<Value>, SuccessRow> = BTreeMap::new();
    let mut seen = Vec::new();
    for r in &db.records {
        seen.clear();
        sub_multisets(r.instance.as_slice(), size, &mut Vec::new(), &mut seen);
        for t in seen.drain(..) {
            let weight = occurrences(r.instance.as_slice(), &t);
            rows.entry(t)
                .or_insert(SuccessRow {
                    instances: 0,
                    problems: 0,
                    solved: 0,
                })
                .add_weighted(r, weight);
        }
    }
    let mut out: Vec<_> = rows.into_iter().collect();
    // exact comparison of solved/problems by cross-multiplying
    out.sort_by(|a, b| {
        let lhs = a.1.solved as u128 * b.1.problems as u128;
        let rhs = b.1.solved as u128 * a.1.problems as u128;
        rhs.cmp(&lhs)
    });
    out
}

fn sub_multisets(
    values: &[Value],
    size: usize,
    current: &mut Vec<Value>,
    out: &mut Vec<Vec<Value>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for i in 0..values.len() {
        if i > 0 && values[i] == values[i - 1] {
            continue;
        }
        current.push(values[i]);
        sub_multisets(&values[i + 1..], size, current, out);
        current.pop();
    }
}

/// Instances ranked by targets solved, best first. On a database of
/// five-tile draws this answers which five numbers solve most on their own.
pub fn rank_instances(db: &GameDatabase) -> Vec<(&Pool<Value>, usize)> {
    let mut out: Vec<_> = db
        .records
        .iter()
        .map(|r| (&r.instance, r.solved_count()))
        .collect();
    out.sort_by_key(|e| std::cmp::Reverse(e.1));
    out
}

/// Filters for [`select_problems`]; unset fields do not constrain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Selection {
    /// Solved problems needing at least this many operations.
    pub min_ops: Option<u8>,
    /// Unsolved problems whose nearest reachable target is at least this far.
    pub min_distance: Option<u64>,
    /// Unsolved problems whose nearest reachable target needs at least
    /// this many operations.
    pub nearest_min_ops: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub instance: Pool<Value>,
    pub target: u64,
    /// `None` when unsolved.
    pub min_ops: Option<u8>,
    /// Nearest reachable target, its distance and operation count.
    pub nearest: Option<(u64, u64, u8)>,
}

/// Problems matching every set criterion, in database then target order.
pub fn select_problems(db: &GameDatabase, sel: Selection) -> Vec<Problem> {
    let mut out = Vec::new();
    for r in &db.records {
        for t in db.range.targets() {
            let ops = r.min_ops[db.range.index(t).unwrap()];
            let solved = ops != UNSOLVED;
            let nearest = nearest_solved(&r.min_ops, db.range, t)
                .map(|(v, d)| (v, d, r.min_ops[db.range.index(v).unwrap()]));
            if let Some(k) = sel.min_ops {
                if !solved || ops < k {
                    continue;
                }
            }
            if let Some(d) = sel.min_distance {
                if solved || nearest.is_some_and(|(_, nd, _)| nd < d) {
                    continue;
                }
            }
            if let Some(k) = sel.nearest_min_ops {
                if solved || nearest.is_none_or(|(_, _, no)| no < k) {
                    continue;
                }
            }
            out.push(Problem {
                instance: r.instance.clone(),
                target: t,
                min_ops: solved.then_some(ops),
                nearest,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::database::{build_from_instances, default_engine};
    use crate::report::TargetRange;

    fn small_db() -> GameDatabase {
        let instances = [
            [1, 1, 2, 2, 3, 3],
            [1, 1, 4, 5, 6, 7],
            [2, 8, 9, 50, 75, 100],
        ]
        .iter()
        .map(|v| Pool::from_u64s(v).unwrap())
        .collect();
        build_from_instances(6, instances, TargetRange::STANDARD, 1, default_engine()).unwrap()
    }

    #[test]
    fn histogram_totals() {
        let db = small_db();
        let h = distance_histogram(&db);
        assert_eq!(h.total(), db.problem_count());
        assert_eq!(h.at(0), db.solved_count());
        // {1,1,2,2,3,3} reaches nothing in range
        assert_eq!(h.unreachable, 899);
    }

    #[test]
    fn solving_all_is_consistent_with_per_target() {
        let db = small_db();
        let all = instances_solving_all(&db);
        assert_eq!(
            all,
            vec![&Pool::from_u64s(&[2, 8, 9, 50, 75, 100]).unwrap()]
        );
        assert!(per_target_success(&db)
            .iter()
            .all(|&(_, c)| c >= all.len() as u64));
    }

    #[test]
    fn tuples() {
        let db = small_db();
        assert_eq!(tuple_success(&db, &[1, 1]).instances, 2);
        assert_eq!(tuple_success(&db, &[1, 1, 1]).instances, 0);
        assert_eq!(tuple_success(&db, &[100, 2]).solved, 899);
        let ranked = rank_tuples(&db, 5);
        assert_eq!(ranked[0].1.solved, 899);
        assert!(ranked.iter().all(|(t, _)| t.len() == 5));
        assert!(contains_multiset(&[1, 1, 4], &[1, 4]));
        assert!(!contains_multiset(&[1, 4, 4], &[1, 1]));
        assert_eq!(occurrences(&[1, 1, 2, 2, 3, 3], &[1, 1, 2, 2, 3]), 2);
        assert_eq!(occurrences(&[1, 1, 2, 2, 3, 3], &[1, 2]), 4);
        assert_eq!(occurrences(&[1, 4, 5], &[4]), 1);
        let pair = tuple_success(&db, &[1, 2]);
        assert_eq!((pair.instances, pair.problems, pair.solved), (1, 4 * 899, 0));
    }

    #[test]
    fn selection() {
        let db = small_db();
        assert_eq!(
            select_problems(&db, Selection::default()).len() as u64,
            db.problem_count()
        );
        let hard = select_problems(
            &db,
            Selection {
                min_ops: Some(5),
                ..Default::default()
            },
        );
        assert!(hard
            .iter()
            .any(|p| p.target == 899 && p.instance.as_slice() == [1, 1, 4, 5, 6, 7]));
        assert!(hard.iter().all(|p| p.min_ops >= Some(5)));
        let far = select_problems(
            &db,
            Selection {
                min_distance: Some(3),
                ..Default::default()
            },
        );
        assert!(far.iter().all(|p| p.min_ops.is_none()));
    }
}
