use crate::error::Error;
use crate::scalar::Scalar;
use std::fmt;

/// Largest number of starting values any solver accepts.
pub const MAX_POOL: usize = 10;

/// A multiset of usable values, kept sorted ascending.
///
/// Equal values are distinct resources: `{1,1,4}` holds two 1s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pool<T: Scalar = u64> {
    values: Vec<T>,
}

impl<T: Scalar> Pool<T> {
    /// Builds an instance pool: 1 to 10 values, each at least 1.
    pub fn new(values: impl IntoIterator<Item = T>) -> Result<Self, Error> {
        let mut values: Vec<T> = values.into_iter().collect();
        if values.is_empty() || values.len() > MAX_POOL {
            return Err(Error::PoolSize(values.len()));
        }
        if values.iter().any(|v| v.is_zero() || *v > T::LIMIT) {
            return Err(Error::ValueOutOfRange);
        }
        values.sort_unstable();
        Ok(Pool { values })
    }

    /// Builds a pool from `u64` literals, for tests and the command line.
    pub fn from_u64s(values: &[u64]) -> Result<Self, Error> {
        let converted: Option<Vec<T>> = values.iter().map(|&v| T::narrow(v as u128)).collect();
        Pool::new(converted.ok_or(Error::ValueOutOfRange)?)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn count(&self, v: T) -> usize {
        self.values.iter().filter(|&&x| x == v).count()
    }

    pub fn contains(&self, v: T) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// Removes one copy of `v`; false when absent.
    pub fn take(&mut self, v: T) -> bool {
        match self.values.binary_search(&v) {
            Ok(i) => {
                self.values.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn put(&mut self, v: T) {
        let i = self.values.partition_point(|&x| x <= v);
        self.values.insert(i, v);
    }

    pub fn max(&self) -> T {
        *self.values.last().expect("pools are never empty")
    }

    pub fn to_u64s(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.widen() as u64).collect()
    }

    /// Converts to another scalar width; `None` if a value does not fit.
    pub fn cast<U: Scalar>(&self) -> Option<Pool<U>> {
        let values: Option<Vec<U>> = self.values.iter().map(|v| U::narrow(v.widen())).collect();
        values.map(|values| Pool { values })
    }

    /// True if `other` is a sub-multiset of `self`.
    pub fn includes(&self, other: &[T]) -> bool {
        let mut sorted = other.to_vec();
        sorted.sort_unstable();
        let mut i = 0;
        for v in sorted {
            while i < self.values.len() && self.values[i] < v {
                i += 1;
            }
            if i == self.values.len() || self.values[i] != v {
                return false;
            }
            i += 1;
        }
        true
    }
}

impl<T: Scalar> fmt::Display for Pool<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
