//! Integer types usable as game values.
//!
//! Every solver is generic over [`Scalar`], an unsigned primitive integer
//! with a ceiling on admissible intermediate results. The standard game
//! runs on `u64` capped at 63 bits; `u16` reproduces the behaviour of
//! early short-integer solvers and `u128` lets the square variant go
//! past the 64-bit ceiling on bound `A`.

use num_traits::{PrimInt, Unsigned};
use std::fmt::{Debug, Display};
use std::hash::Hash;

pub trait Scalar:
    PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + 'static
{
    /// Largest admissible intermediate result. Anything above is pruned.
    const LIMIT: Self;

    fn widen(self) -> u128;

    fn narrow(value: u128) -> Option<Self>;

    /// `1` as `Self`, without going through `NumCast`.
    #[inline]
    fn unit() -> Self {
        Self::one()
    }
}

macro_rules! impl_scalar {
    ($t:ty, $limit:expr) => {
        impl Scalar for $t {
            const LIMIT: Self = $limit;

            #[inline]
            fn widen(self) -> u128 {
                self as u128
            }

            #[inline]
            fn narrow(value: u128) -> Option<Self> {
                if value >= 1 && value <= Self::LIMIT as u128 {
                    Some(value as Self)
                } else {
                    None
                }
            }
        }
    };
}

impl_scalar!(u16, u16::MAX);
impl_scalar!(u32, u32::MAX);
impl_scalar!(u64, i64::MAX as u64);
impl_scalar!(u128, u128::MAX >> 1);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narrow_rejects_zero_and_overflow() {
        assert_eq!(u16::narrow(0), None);
        assert_eq!(u16::narrow(65535), Some(65535));
        assert_eq!(u16::narrow(65536), None);
        assert_eq!(u64::narrow(1 << 63), None);
        assert_eq!(u64::narrow((1 << 63) - 1), Some(i64::MAX as u64));
    }
}
