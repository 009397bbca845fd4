//! Incremental pool signatures and the transposition tables that store them.
//!
//! A pool's signature is the wrapping sum of a 64-bit key per value. Adding
//! a value adds its key, removing it subtracts; xor would not do because two
//! equal values would cancel out.

use crate::error::Error;

pub const DEFAULT_HASH_BITS: u32 = 15;
pub const MIN_HASH_BITS: u32 = 8;
pub const MAX_HASH_BITS: u32 = 28;

/// 64-bit key for a value: a fixed avalanche mix, identical across runs.
#[inline]
pub fn key_of(value: u128) -> u64 {
    let lo = value as u64;
    let hi = (value >> 64) as u64;
    let mut z = lo ^ hi.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// How a table slot handles two signatures with the same index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollisionPolicy {
    /// One signature per slot, overwritten on mismatch.
    ReplaceAlways,
    /// Every signature that hashed to the slot is kept.
    SetPerSlot,
}

#[derive(Debug, Clone)]
enum Slots {
    Single(Vec<u64>),
    Sets(Vec<Vec<u64>>),
}

/// Fixed-size transposition table indexed by the low `bits` of a signature.
#[derive(Debug, Clone)]
pub struct TranspositionTable {
    mask: u64,
    slots: Slots,
    stored: u64,
}

impl TranspositionTable {
    pub fn new(bits: u32, policy: CollisionPolicy) -> Result<Self, Error> {
        if !(MIN_HASH_BITS..=MAX_HASH_BITS).contains(&bits) {
            return Err(Error::HashBits(bits));
        }
        let size = 1usize << bits;
        let slots = match policy {
            CollisionPolicy::ReplaceAlways => Slots::Single(vec![0; size]),
            CollisionPolicy::SetPerSlot => Slots::Sets(vec![Vec::new(); size]),
        };
        Ok(TranspositionTable {
            mask: (size - 1) as u64,
            slots,
            stored: 0,
        })
    }

    /// Records `signature`; returns true if it was already present.
    #[inline]
    pub fn check_insert(&mut self, signature: u64) -> bool {
        // 0 marks an empty slot in the single-signature layout
        let signature = signature.max(1);
        let index = (signature & self.mask) as usize;
        match &mut self.slots {
            Slots::Single(slots) => {
                let slot = &mut slots[index];
                if *slot == signature {
                    return true;
                }
                *slot = signature;
            }
            Slots::Sets(slots) => {
                let slot = &mut slots[index];
                if slot.contains(&signature) {
                    return true;
                }
                slot.push(signature);
            }
        }
        self.stored += 1;
        false
    }

    pub fn stored(&self) -> u64 {
        self.stored
    }
}

/// Running signature of the pool currently being searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Signature(pub u64);

impl Signature {
    pub fn of(values: impl IntoIterator<Item = u128>) -> Self {
        let mut s = Signature::default();
        for v in values {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, value: u128) {
        self.0 = self.0.wrapping_add(key_of(value));
    }

    #[inline]
    pub fn remove(&mut self, value: u128) {
        self.0 = self.0.wrapping_sub(key_of(value));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_values_do_not_cancel() {
        let with_pair = Signature::of([1, 1, 2, 3, 4]);
        let without = Signature::of([2, 3, 4]);
        assert_ne!(with_pair, without);
    }

    #[test]
    fn signature_is_order_independent_and_reversible() {
        let a = Signature::of([3, 50, 7, 4]);
        let b = Signature::of([50, 4, 7, 3]);
        assert_eq!(a, b);
        let mut c = a;
        c.remove(7);
        c.remove(4);
        c.insert(28);
        assert_eq!(c, Signature::of([3, 50, 28]));
        c.remove(28);
        c.insert(7);
        c.insert(4);
        assert_eq!(c, a);
    }

    #[test]
    fn table_policies() {
        let mut t = TranspositionTable::new(8, CollisionPolicy::ReplaceAlways).unwrap();
        assert!(!t.check_insert(0x100));
        assert!(t.check_insert(0x100));
        // same slot, different signature: overwrites
        assert!(!t.check_insert(0x200));
        assert!(!t.check_insert(0x100));

        let mut s = TranspositionTable::new(8, CollisionPolicy::SetPerSlot).unwrap();
        assert!(!s.check_insert(0x100));
        assert!(!s.check_insert(0x200));
        assert!(s.check_insert(0x100));
        assert!(s.check_insert(0x200));
        assert!(TranspositionTable::new(7, CollisionPolicy::SetPerSlot).is_err());
        assert!(TranspositionTable::new(29, CollisionPolicy::SetPerSlot).is_err());
    }

    #[test]
    fn keys_are_deterministic() {
        assert_eq!(key_of(899), key_of(899));
        assert_ne!(key_of(1), key_of(2));
    }
}
