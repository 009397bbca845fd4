//! Binary operations and the admissibility rules applied by every solver.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div];

    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    pub fn from_symbol(c: char) -> Option<BinOp> {
        match c {
            '+' => Some(BinOp::Add),
            '-' => Some(BinOp::Sub),
            '*' | 'x' | '×' => Some(BinOp::Mul),
            '/' => Some(BinOp::Div),
            _ => None,
        }
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, BinOp::Add | BinOp::Mul)
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Exact arithmetic with no pruning: the result must be a positive integer
/// within the scalar's limit. Operand order is taken as given.
#[inline]
pub fn evaluate<T: Scalar>(a: T, b: T, op: BinOp) -> Option<T> {
    let r = match op {
        BinOp::Add => a.checked_add(&b)?,
        BinOp::Sub => {
            if a <= b {
                return None;
            }
            a - b
        }
        BinOp::Mul => a.checked_mul(&b)?,
        BinOp::Div => {
            if b.is_zero() || !(a % b).is_zero() {
                return None;
            }
            a / b
        }
    };
    if r.is_zero() || r > T::LIMIT {
        None
    } else {
        Some(r)
    }
}

/// Applies `op` to `a` and `b` (caller guarantees `a >= b`) under the
/// pruning rules shared by all solvers. `None` means the combination is
/// not worth exploring: it is impossible, overflows, or can only produce
/// a pool that is a sub-multiset of one already available.
///
/// Rejected: multiplying or dividing by 1, subtracting equal values,
/// `a - b == b`, `a / b == b`, inexact division and overflow.
#[inline]
pub fn combine<T: Scalar>(a: T, b: T, op: BinOp) -> Option<T> {
    debug_assert!(a >= b, "combine expects the larger operand first");
    let one = T::unit();
    match op {
        BinOp::Add => {
            let r = a.checked_add(&b)?;
            (r <= T::LIMIT).then_some(r)
        }
        BinOp::Sub => {
            if a == b {
                return None;
            }
            let r = a - b;
            (r != b).then_some(r)
        }
        BinOp::Mul => {
            if b == one {
                return None;
            }
            let r = a.checked_mul(&b)?;
            (r <= T::LIMIT).then_some(r)
        }
        BinOp::Div => {
            if b == one || !(a % b).is_zero() {
                return None;
            }
            let r = a / b;
            (r != b).then_some(r)
        }
    }
}

/// Every unordered pair of pool positions, larger value first.
pub fn canonical_pairs<T: Scalar>(values: &[T]) -> impl Iterator<Item = (T, T)> + '_ {
    let n = values.len();
    (0..n).flat_map(move |i| {
        (i + 1..n).map(move |j| {
            let (a, b) = (values[i], values[j]);
            if a >= b {
                (a, b)
            } else {
                (b, a)
            }
        })
    })
}
