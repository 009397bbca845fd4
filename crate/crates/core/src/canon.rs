//! Expression trees, their reduction to a canonical form, and counting of
//! distinct solutions.
//!
//! Reduction rules, applied until nothing changes:
//! - a built value (a subterm, or a group of terms inside a flattened
//!   region) equal to a starting number is replaced by that number
//! - `+` and `*` are commutative (children are sorted)
//! - `A * 1`, `A / 1`, `A + 0`, `A - 0` become `A`
//! - maximal `+`/`-` regions become a list of added and a list of
//!   subtracted terms; a group of added terms and a group of subtracted
//!   terms with equal sums cancel; the same for `*`/`/` with products, where
//!   a quotient that cancels completely becomes 1

use crate::arith::{combine, evaluate, BinOp};
use crate::error::Error;
use crate::pool::Pool;
use crate::report::TargetRange;
use crate::Value;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// Default cap on raw trees examined per problem.
pub const DEFAULT_TREE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExprTree {
    Leaf(Value),
    Node(BinOp, Box<ExprTree>, Box<ExprTree>),
    Square(Box<ExprTree>),
}

impl ExprTree {
    pub fn node(op: BinOp, left: ExprTree, right: ExprTree) -> Self {
        ExprTree::Node(op, Box::new(left), Box::new(right))
    }

    pub fn square(child: ExprTree) -> Self {
        ExprTree::Square(Box::new(child))
    }

    /// Exact value, or `None` when some node is not a positive integer.
    pub fn value(&self) -> Option<Value> {
        match self {
            ExprTree::Leaf(v) => Some(*v),
            ExprTree::Node(op, l, r) => evaluate(l.value()?, r.value()?, *op),
            ExprTree::Square(c) => {
                let v = c.value()?;
                v.checked_mul(v).filter(|s| *s <= i64::MAX as u64)
            }
        }
    }

    pub fn leaves(&self) -> Vec<Value> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Value>) {
        match self {
            ExprTree::Leaf(v) => out.push(*v),
            ExprTree::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
            ExprTree::Square(c) => c.collect_leaves(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ExprTree::Leaf(_) => 1,
            ExprTree::Node(_, l, r) => 1 + l.size() + r.size(),
            ExprTree::Square(c) => 1 + c.size(),
        }
    }

    /// Parses the prefix form printed by `Display`, e.g. `(* (+ 2 3) 100)`.
    pub fn parse(text: &str) -> Option<ExprTree> {
        let tokens: Vec<String> = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let mut pos = 0;
        let tree = parse_tokens(&tokens, &mut pos)?;
        (pos == tokens.len()).then_some(tree)
    }
}

fn parse_tokens(tokens: &[String], pos: &mut usize) -> Option<ExprTree> {
    let tok = tokens.get(*pos)?;
    *pos += 1;
    if tok != "(" {
        return tok.parse().ok().filter(|v| *v > 0).map(ExprTree::Leaf);
    }
    let head = tokens.get(*pos)?.clone();
    *pos += 1;
    let tree = if head == "sq" {
        ExprTree::square(parse_tokens(tokens, pos)?)
    } else {
        let mut chars = head.chars();
        let op = BinOp::from_symbol(chars.next()?)?;
        if chars.next().is_some() {
            return None;
        }
        let l = parse_tokens(tokens, pos)?;
        let r = parse_tokens(tokens, pos)?;
        ExprTree::node(op, l, r)
    };
    (tokens.get(*pos)? == ")").then(|| *pos += 1)?;
    Some(tree)
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprTree::Leaf(v) => write!(f, "{v}"),
            ExprTree::Node(op, l, r) => write!(f, "({} {l} {r})", op.symbol()),
            ExprTree::Square(c) => write!(f, "(sq {c})"),
        }
    }
}

/// Normal form. Lists are sorted; `value` leads the ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Canon {
    Leaf(Value),
    Square {
        value: Value,
        child: Box<Canon>,
    },
    Sum {
        value: Value,
        pos: Vec<Canon>,
        neg: Vec<Canon>,
    },
    Prod {
        value: Value,
        num: Vec<Canon>,
        den: Vec<Canon>,
    },
}

impl Canon {
    fn value(&self) -> Value {
        match self {
            Canon::Leaf(v) => *v,
            Canon::Square { value, .. } | Canon::Sum { value, .. } | Canon::Prod { value, .. } => {
                *value
            }
        }
    }
}

fn normalize(tree: &ExprTree) -> Canon {
    match tree {
        ExprTree::Leaf(v) => Canon::Leaf(*v),
        ExprTree::Square(c) => {
            let child = normalize(c);
            let v = child.value();
            Canon::Square {
                value: v * v,
                child: Box::new(child),
            }
        }
        ExprTree::Node(op, l, r) => {
            let (l, r) = (normalize(l), normalize(r));
            match op {
                BinOp::Add | BinOp::Sub => {
                    let (mut pos, mut neg) = (Vec::new(), Vec::new());
                    split_sum(l, false, &mut pos, &mut neg);
                    split_sum(r, *op == BinOp::Sub, &mut pos, &mut neg);
                    build_sum(pos, neg)
                }
                BinOp::Mul | BinOp::Div => {
                    let (mut num, mut den) = (Vec::new(), Vec::new());
                    split_prod(l, false, &mut num, &mut den);
                    split_prod(r, *op == BinOp::Div, &mut num, &mut den);
                    build_prod(num, den)
                }
            }
        }
    }
}

fn split_sum(c: Canon, flip: bool, pos: &mut Vec<Canon>, neg: &mut Vec<Canon>) {
    match c {
        Canon::Sum { pos: p, neg: n, .. } => {
            let (p, n) = if flip { (n, p) } else { (p, n) };
            pos.extend(p);
            neg.extend(n);
        }
        other if flip => neg.push(other),
        other => pos.push(other),
    }
}

fn split_prod(c: Canon, flip: bool, num: &mut Vec<Canon>, den: &mut Vec<Canon>) {
    match c {
        Canon::Prod { num: p, den: q, .. } => {
            let (p, q) = if flip { (q, p) } else { (p, q) };
            num.extend(p);
            den.extend(q);
        }
        other if flip => den.push(other),
        other => num.push(other),
    }
}

/// Finds the smallest pair of index groups, one per side, whose folded
/// values agree. Sides hold at most a handful of terms.
fn cancellable(a: &[Canon], b: &[Canon], fold: fn(&[Value]) -> Option<u128>) -> Option<(u32, u32)> {
    if a.is_empty() || b.is_empty() || a.len() > 16 || b.len() > 16 {
        return None;
    }
    let side = |terms: &[Canon]| -> Vec<(u32, u128)> {
        let mut out: Vec<(u32, u128)> = (1u32..1 << terms.len())
            .filter_map(|m| {
                let picked: Vec<Value> = (0..terms.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| terms[i].value())
                    .collect();
                fold(&picked).map(|v| (m, v))
            })
            .collect();
        out.sort_by_key(|&(m, _)| (m.count_ones(), m));
        out
    };
    let (sa, sb) = (side(a), side(b));
    let mut best: Option<(u32, u32)> = None;
    for &(ma, va) in &sa {
        for &(mb, vb) in &sb {
            if va == vb {
                let size = ma.count_ones() + mb.count_ones();
                if best.is_none_or(|(x, y)| size < x.count_ones() + y.count_ones()) {
                    best = Some((ma, mb));
                }
            }
        }
    }
    best
}

fn remove_mask(terms: &mut Vec<Canon>, mask: u32) {
    let mut i = 0;
    terms.retain(|_| {
        let keep = mask >> i & 1 == 0;
        i += 1;
        keep
    });
}

fn fold_sum(v: &[Value]) -> Option<u128> {
    Some(v.iter().map(|&x| x as u128).sum())
}

fn fold_prod(v: &[Value]) -> Option<u128> {
    v.iter()
        .try_fold(1u128, |acc, &x| acc.checked_mul(x as u128))
}

fn build_sum(mut pos: Vec<Canon>, mut neg: Vec<Canon>) -> Canon {
    pos.retain(|c| c.value() != 0);
    neg.retain(|c| c.value() != 0);
    while let Some((mp, mn)) = cancellable(&pos, &neg, fold_sum) {
        remove_mask(&mut pos, mp);
        remove_mask(&mut neg, mn);
    }
    pos.sort();
    neg.sort();
    if neg.is_empty() && pos.len() == 1 {
        return pos.pop().unwrap();
    }
    let total: i128 = pos.iter().map(|c| c.value() as i128).sum::<i128>()
        - neg.iter().map(|c| c.value() as i128).sum::<i128>();
    Canon::Sum {
        value: total.max(0) as Value,
        pos,
        neg,
    }
}

fn build_prod(mut num: Vec<Canon>, mut den: Vec<Canon>) -> Canon {
    let keep_one = num.iter().chain(&den).all(|c| c.value() == 1);
    if !keep_one {
        num.retain(|c| c.value() != 1);
        den.retain(|c| c.value() != 1);
    }
    while let Some((mn, md)) = cancellable(&num, &den, fold_prod) {
        if mn.count_ones() as usize == num.len() {
            // the whole quotient is 1
            return Canon::Leaf(1);
        }
        remove_mask(&mut num, mn);
        remove_mask(&mut den, md);
    }
    num.sort();
    den.sort();
    if den.is_empty() && num.len() == 1 {
        return num.pop().unwrap();
    }
    let top = fold_prod(&num.iter().map(Canon::value).collect::<Vec<_>>()).unwrap_or(0);
    let bottom = fold_prod(&den.iter().map(Canon::value).collect::<Vec<_>>()).unwrap_or(1);
    Canon::Prod {
        value: (top / bottom.max(1)) as Value,
        num,
        den,
    }
}

/// Replaces the first built subterm (pre-order) whose value is a starting
/// number, whether or not that number is used elsewhere in the tree: a built
/// 10 next to a given 10 reads as the given number twice. Inside a
/// flattened region any group of terms counts as a subterm, smallest first.
fn substitute(node: &Canon, pool: &Pool) -> Option<Canon> {
    if !matches!(node, Canon::Leaf(_)) && pool.contains(node.value()) {
        return Some(Canon::Leaf(node.value()));
    }
    let in_list = |list: &[Canon]| -> Option<Vec<Canon>> {
        list.iter().enumerate().find_map(|(i, c)| {
            substitute(c, pool).map(|new| {
                let mut out = list.to_vec();
                out[i] = new;
                out
            })
        })
    };
    match node {
        Canon::Leaf(_) => None,
        Canon::Square { value, child } => substitute(child, pool).map(|c| Canon::Square {
            value: *value,
            child: Box::new(c),
        }),
        Canon::Sum { pos, neg, .. } => {
            if let Some((p, n)) = replace_group(pos, neg, pool, group_sum) {
                return Some(build_sum(p, n));
            }
            if let Some(p) = in_list(pos) {
                return Some(build_sum(p, neg.clone()));
            }
            in_list(neg).map(|n| build_sum(pos.clone(), n))
        }
        Canon::Prod { num, den, .. } => {
            if let Some((p, d)) = replace_group(num, den, pool, group_prod) {
                return Some(build_prod(p, d));
            }
            if let Some(p) = in_list(num) {
                return Some(build_prod(p, den.clone()));
            }
            in_list(den).map(|d| build_prod(num.clone(), d))
        }
    }
}

fn group_sum(up: &[Value], down: &[Value]) -> Option<Value> {
    let a: u128 = up.iter().map(|&x| x as u128).sum();
    let b: u128 = down.iter().map(|&x| x as u128).sum();
    (a > b).then(|| (a - b) as Value)
}

fn group_prod(up: &[Value], down: &[Value]) -> Option<Value> {
    let a = fold_prod(up)?;
    let b = fold_prod(down)?;
    (a % b == 0).then(|| (a / b) as Value)
}

/// A proper group of terms (at least two, at least one from `up`) whose
/// combined value is a starting number. Returns the lists with the group
/// replaced by that number.
fn replace_group(
    up: &[Canon],
    down: &[Canon],
    pool: &Pool,
    fold: fn(&[Value], &[Value]) -> Option<Value>,
) -> Option<(Vec<Canon>, Vec<Canon>)> {
    let (nu, nd) = (up.len(), down.len());
    if nu + nd > 16 {
        return None;
    }
    let full: u32 = (1 << (nu + nd)) - 1;
    let mut masks: Vec<u32> = (1..full)
        .filter(|m| m.count_ones() >= 2 && m & ((1 << nu) - 1) != 0)
        .collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    for m in masks {
        let pick = |list: &[Canon], shift: usize| -> Vec<Value> {
            (0..list.len())
                .filter(|i| m >> (i + shift) & 1 == 1)
                .map(|i| list[i].value())
                .collect()
        };
        let Some(v) = fold(&pick(up, 0), &pick(down, nu)) else {
            continue;
        };
        if !pool.contains(v) {
            continue;
        }
        let keep = |list: &[Canon], shift: usize| -> Vec<Canon> {
            (0..list.len())
                .filter(|i| m >> (i + shift) & 1 == 0)
                .map(|i| list[i].clone())
                .collect()
        };
        let mut new_up = keep(up, 0);
        new_up.push(Canon::Leaf(v));
        return Some((new_up, keep(down, nu)));
    }
    None
}

fn reduce(tree: &ExprTree, pool: &Pool) -> Canon {
    let mut canon = normalize(tree);
    while let Some(next) = substitute(&canon, pool) {
        if next == canon {
            break;
        }
        canon = next;
    }
    canon
}

/// Turns a normal form back into a tree. Sums start from the smallest
/// added term and subtract as soon as the running value stays positive;
/// products likewise divide as soon as the division is exact.
fn rebuild(c: &Canon) -> ExprTree {
    match c {
        Canon::Leaf(v) => ExprTree::Leaf(*v),
        Canon::Square { child, .. } => ExprTree::square(rebuild(child)),
        Canon::Sum { pos, neg, .. } => fold_terms(pos, neg, BinOp::Add, BinOp::Sub),
        Canon::Prod { num, den, .. } => fold_terms(num, den, BinOp::Mul, BinOp::Div),
    }
}

fn fold_terms(up: &[Canon], down: &[Canon], grow: BinOp, shrink: BinOp) -> ExprTree {
    let mut acc = (up[0].value(), rebuild(&up[0]));
    let mut ups = up[1..].iter();
    let mut downs = down.iter().peekable();
    loop {
        if let Some(d) = downs.peek() {
            if let Some(v) = evaluate(acc.0, d.value(), shrink) {
                acc = (v, ExprTree::node(shrink, acc.1, rebuild(d)));
                downs.next();
                continue;
            }
        }
        match ups.next() {
            Some(u) => {
                let v = evaluate(acc.0, u.value(), grow).unwrap_or(0);
                acc = (v, ExprTree::node(grow, acc.1, rebuild(u)));
            }
            None => break,
        }
    }
    // anything left over cannot be placed exactly; append in order
    for d in downs {
        acc = (0, ExprTree::node(shrink, acc.1, rebuild(d)));
    }
    acc.1
}

/// Reduces `tree` to its canonical representative for `initial`.
pub fn canonicalize(tree: &ExprTree, initial: &Pool) -> ExprTree {
    rebuild(&reduce(tree, initial))
}

/// Whether two solutions count as the same under the reduction rules.
pub fn same_solution(a: &ExprTree, b: &ExprTree, initial: &Pool) -> bool {
    reduce(a, initial) == reduce(b, initial)
}

/// Distinct canonical solutions for one problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCount {
    pub target: Value,
    /// Canonical trees, sorted.
    pub solutions: Vec<ExprTree>,
    /// Raw trees examined before reduction.
    pub raw: u64,
}

impl SolutionCount {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }
}

/// A value and, for built trees, the operation and child ids.
type ArenaNode = (Value, Option<(BinOp, u32, u32)>);

/// Every distinct computation tree over subsets of the instance, built
/// mask by mask. Trees are stored once each, larger operand on the left.
struct TreeArena {
    nodes: Vec<ArenaNode>,
}

impl TreeArena {
    fn tree(&self, id: u32) -> ExprTree {
        match self.nodes[id as usize] {
            (v, None) => ExprTree::Leaf(v),
            (_, Some((op, l, r))) => ExprTree::node(op, self.tree(l), self.tree(r)),
        }
    }
}

/// Calls `visit` with every tree whose value passes `wanted`, once per
/// distinct tree. Trees over the full set are generated but not stored.
fn for_each_tree(
    instance: &Pool,
    wanted: &dyn Fn(Value) -> bool,
    visit: &mut dyn FnMut(Value, &dyn Fn() -> ExprTree) -> Result<(), Error>,
) -> Result<(), Error> {
    let values = instance.as_slice();
    let n = values.len();
    let mut arena = TreeArena { nodes: Vec::new() };
    let mut by_mask: Vec<Vec<u32>> = vec![Vec::new(); 1 << n];
    for (i, &v) in values.iter().enumerate() {
        arena.nodes.push((v, None));
        by_mask[1 << i].push(i as u32);
        if wanted(v) {
            visit(v, &|| ExprTree::Leaf(v))?;
        }
    }
    if n < 2 {
        return Ok(());
    }
    let table = crate::bfs::build_decomposition(n)?;
    for &mask in table.order() {
        if mask.count_ones() < 2 {
            continue;
        }
        let store = mask != table.full_mask();
        let mut made = Vec::new();
        for &(sub, comp) in table.pairs(mask) {
            for &x in &by_mask[sub as usize] {
                for &y in &by_mask[comp as usize] {
                    let (vx, vy) = (arena.nodes[x as usize].0, arena.nodes[y as usize].0);
                    let (a, b, va, vb) = if vx >= vy {
                        (x, y, vx, vy)
                    } else {
                        (y, x, vy, vx)
                    };
                    for op in BinOp::ALL {
                        let Some(r) = combine(va, vb, op) else {
                            continue;
                        };
                        if wanted(r) {
                            let build = || ExprTree::node(op, arena.tree(a), arena.tree(b));
                            visit(r, &build)?;
                        }
                        if store {
                            made.push((r, Some((op, a, b))));
                        }
                    }
                }
            }
        }
        let base = arena.nodes.len() as u32;
        by_mask[mask as usize] = (base..base + made.len() as u32).collect();
        arena.nodes.extend(made);
    }
    Ok(())
}

/// Enumerates every computation reaching `target` and counts the distinct
/// canonical forms. Fails with `BudgetExceeded` past `budget` raw trees.
pub fn count_distinct_solutions(
    instance: &Pool,
    target: Value,
    budget: u64,
) -> Result<SolutionCount, Error> {
    let mut found = BTreeSet::new();
    let mut raw = 0u64;
    for_each_tree(instance, &|v| v == target, &mut |_, build| {
        raw += 1;
        if raw > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        found.insert(reduce(&build(), instance));
        Ok(())
    })?;
    let mut solutions: Vec<ExprTree> = found.iter().map(rebuild).collect();
    solutions.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    Ok(SolutionCount {
        target,
        solutions,
        raw,
    })
}

/// Distinct-solution count for every target of `range` (0 = unsolved).
pub fn solution_counts(instance: &Pool, range: TargetRange) -> Result<Vec<u32>, Error> {
    let mut found: Vec<HashSet<Canon>> = vec![HashSet::new(); range.len()];
    for_each_tree(instance, &|v| range.contains(v), &mut |v, build| {
        let idx = range.index(v).expect("filtered to the range");
        found[idx].insert(reduce(&build(), instance));
        Ok(())
    })?;
    Ok(found.iter().map(|s| s.len() as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool(v: &[u64]) -> Pool {
        Pool::from_u64s(v).unwrap()
    }

    fn t(s: &str) -> ExprTree {
        ExprTree::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let tree = t("(* (+ 2 3) 100)");
        assert_eq!(tree.to_string(), "(* (+ 2 3) 100)");
        assert_eq!(tree.value(), Some(500));
        assert_eq!(t("(sq 18)").value(), Some(324));
        assert!(ExprTree::parse("(+ 1)").is_none());
        assert!(ExprTree::parse("(% 1 2)").is_none());
    }

    #[test]
    fn additive_region_collapses_to_given_number() {
        let p = pool(&[1, 2, 3, 4, 6, 50]);
        let tree = t("(+ (+ 1 4) (- 6 (+ 3 2)))");
        assert_eq!(canonicalize(&tree, &p), t("6"));
    }

    #[test]
    fn given_number_preferred_over_built() {
        let p = pool(&[2, 3, 5, 100]);
        assert_eq!(canonicalize(&t("(* (+ 2 3) 100)"), &p), t("(* 5 100)"));
        assert!(same_solution(&t("(* 100 5)"), &t("(* (+ 3 2) 100)"), &p));
    }

    #[test]
    fn identities_and_commutativity() {
        let p = pool(&[1, 7, 9]);
        assert_eq!(canonicalize(&t("(* 9 1)"), &p), t("9"));
        assert_eq!(canonicalize(&t("(/ 9 1)"), &p), t("9"));
        assert_eq!(
            canonicalize(&t("(+ 9 7)"), &p),
            canonicalize(&t("(+ 7 9)"), &p)
        );
        assert_eq!(
            canonicalize(&t("(* 9 7)"), &p),
            canonicalize(&t("(* 7 9)"), &p)
        );
    }

    #[test]
    fn canonical_form_is_stable_and_keeps_value() {
        let p = pool(&[2, 4, 5, 6, 10, 50]);
        for s in [
            "(- (* 50 (+ 2 4)) (* 10 (+ 5 6)))",
            "(/ (* 50 (* 6 4)) 10)",
            "(+ (- 50 10) (* 2 (+ 6 (* 5 4))))",
        ] {
            let tree = t(s);
            let once = canonicalize(&tree, &p);
            assert_eq!(canonicalize(&once, &p), once, "{s}");
            assert_eq!(once.value(), tree.value(), "{s}");
        }
    }

    #[test]
    fn most_solved_problem() {
        let c = count_distinct_solutions(&pool(&[2, 4, 5, 6, 10, 50]), 120, DEFAULT_TREE_BUDGET)
            .unwrap();
        assert_eq!(c.count(), 232);
        let p = pool(&[2, 4, 5, 6, 10, 50]);
        for s in &c.solutions {
            assert_eq!(s.value(), Some(120), "{s}");
            assert_eq!(&canonicalize(s, &p), s, "{s}");
        }
    }

    #[test]
    fn worked_example_has_one_solution() {
        let c =
            count_distinct_solutions(&pool(&[1, 1, 4, 5, 6, 7]), 899, DEFAULT_TREE_BUDGET).unwrap();
        assert_eq!(c.count(), 1);
        assert_eq!(
            c.solutions[0].to_string(),
            "(* (+ 1 (* 4 7)) (+ 1 (* 5 6)))"
        );
    }

    #[test]
    fn trivial_counts() {
        assert_eq!(
            count_distinct_solutions(&pool(&[5]), 5, DEFAULT_TREE_BUDGET)
                .unwrap()
                .count(),
            1
        );
        let none =
            count_distinct_solutions(&pool(&[1, 1, 2, 2, 3, 3]), 500, DEFAULT_TREE_BUDGET).unwrap();
        assert_eq!(none.count(), 0);
        assert!(count_distinct_solutions(&pool(&[2, 4, 5, 6, 10, 50]), 120, 10).is_err());
    }
}
