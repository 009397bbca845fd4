use countdown_core::canon::{canonicalize, ExprTree};
use countdown_core::square::{solve_with_square, SquareConfig};
use countdown_core::{evaluate, replay, Algorithm, BinOp, Engine, Pool, TargetRange};
use proptest::prelude::*;

fn pools(max_len: usize) -> impl Strategy<Value = Pool> {
    prop::collection::vec(1u64..=100, 1..=max_len).prop_map(|v| Pool::from_u64s(&v).unwrap())
}

/// Folds the pool left to right with the chosen operations, skipping
/// steps that are not exact positive arithmetic.
fn tree_from(pool: &Pool, ops: &[(u8, bool)]) -> ExprTree {
    let values = pool.as_slice();
    let mut acc = ExprTree::Leaf(values[0]);
    let mut value = values[0];
    for (&v, &(op, flip)) in values[1..].iter().zip(ops) {
        let op = BinOp::ALL[op as usize % 4];
        let (l, r, vl, vr) = if flip {
            (ExprTree::Leaf(v), acc.clone(), v, value)
        } else {
            (acc.clone(), ExprTree::Leaf(v), value, v)
        };
        if let Some(nv) = evaluate(vl, vr, op) {
            acc = ExprTree::node(op, l, r);
            value = nv;
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exhaustive_engines_agree(p in pools(5)) {
        let range = TargetRange::new(1, 400).unwrap();
        let reference = Engine::new(Algorithm::Dfs).solve(&p, range).unwrap();
        for a in [Algorithm::DfsNaive, Algorithm::DfsHash, Algorithm::DfsHashSet, Algorithm::BfsArray, Algorithm::BfsSet] {
            for bits in [8, 15] {
                let r = Engine::new(a).hash_bits(bits).solve(&p, range).unwrap();
                prop_assert_eq!(&r.min_ops, &reference.min_ops, "{}", a);
            }
        }
    }

    #[test]
    fn recorded_solutions_replay(p in pools(5)) {
        let range = TargetRange::new(1, 300).unwrap();
        let r = Engine::new(Algorithm::DfsHash).recording(true).solve(&p, range).unwrap();
        for t in range.targets().filter(|&t| r.solved(t)) {
            let s = r.solution(t).unwrap();
            prop_assert_eq!(replay(&p, s), Ok(t));
            prop_assert_eq!(s.len(), r.min_ops_for(t).unwrap() as usize);
        }
    }

    #[test]
    fn backward_solutions_are_valid(p in pools(5)) {
        let range = TargetRange::new(1, 300).unwrap();
        let exact = Engine::new(Algorithm::BfsSet).solve(&p, range).unwrap();
        for a in [Algorithm::Backward, Algorithm::BackwardAll] {
            let r = Engine::new(a).recording(true).solve(&p, range).unwrap();
            for t in range.targets().filter(|&t| r.solved(t)) {
                prop_assert!(exact.solved(t));
                prop_assert_eq!(replay(&p, r.solution(t).unwrap()), Ok(t));
            }
        }
    }

    #[test]
    fn canonical_form_is_stable(p in pools(6), ops in prop::collection::vec((0u8..4, any::<bool>()), 5)) {
        let t = tree_from(&p, &ops);
        let once = canonicalize(&t, &p);
        prop_assert_eq!(&canonicalize(&once, &p), &once);
        prop_assert_eq!(once.value(), t.value());
    }

    #[test]
    fn square_bound_one_is_the_standard_game(p in pools(4)) {
        let range = TargetRange::new(1, 300).unwrap();
        let plain = Engine::new(Algorithm::BfsSet).solve(&p, range).unwrap();
        let sq = solve_with_square(&p, range, SquareConfig::new(1).unwrap());
        prop_assert_eq!(plain.min_ops, sq.min_ops);
    }

    #[test]
    fn square_bound_is_monotone(p in pools(4), a in 1u64..30, b in 1u64..30) {
        let range = TargetRange::new(1, 300).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        let small = solve_with_square(&p, range, SquareConfig::new(lo).unwrap());
        let large = solve_with_square(&p, range, SquareConfig::new(hi).unwrap());
        for t in range.targets() {
            if let Some(o) = small.min_ops_for(t) {
                prop_assert!(large.min_ops_for(t).is_some_and(|l| l <= o));
            }
            if let Some(s) = large.solution(t) {
                prop_assert_eq!(replay(&p, s), Ok(t));
            }
        }
    }
}
