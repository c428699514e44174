//! Closed hash tables with linear probing over packed integer keys.
//!
//! Both variants store keys from `[0, 2^key_bits)` in `2^log_m` slots, with
//! `key_bits = log_m + log2(sigma)`. The plain table keeps whole keys; the
//! compact table keeps only the quotient of a bijective hash and recovers the
//! rest from the slot position and its probe displacement.

use crate::bits::{BitVec, PackedVec};
use crate::error::{Error, Result};
use crate::hashing::{scramble, BijectiveTransform};
use crate::trie::displacement::Displacements;

pub trait KeyTable: Sized {
    fn new(log_m: u32, key_bits: u32) -> Self;
    fn log_capacity(&self) -> u32;
    fn key_bits(&self) -> u32;
    fn len(&self) -> u64;
    fn is_occupied(&self, slot: u64) -> bool;
    /// Key stored in an occupied slot.
    fn key_at(&self, slot: u64) -> u64;
    /// Distance from the key's initial address to its slot.
    fn displacement(&self, slot: u64) -> u64;
    fn find(&self, key: u64) -> Option<u64>;
    /// Stores a key absent from the table in the first vacant slot from its initial address.
    fn insert(&mut self, key: u64) -> Result<u64>;
    fn memory_bytes(&self) -> usize;

    #[inline]
    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn capacity(&self) -> u64 {
        1 << self.log_capacity()
    }
}

/// Whole keys in `key_bits`-wide slots; the all-ones slot value marks a vacancy.
#[derive(Clone, Debug)]
pub struct PlainKeyTable {
    slots: PackedVec,
    log_m: u32,
    len: u64,
}

impl PlainKeyTable {
    #[inline]
    fn empty(&self) -> u64 {
        if self.slots.width() >= 64 {
            u64::MAX
        } else {
            (1 << self.slots.width()) - 1
        }
    }

    #[inline]
    fn home(&self, key: u64) -> u64 {
        scramble(key) & (self.capacity() - 1)
    }
}

impl KeyTable for PlainKeyTable {
    fn new(log_m: u32, key_bits: u32) -> Self {
        PlainKeyTable {
            slots: PackedVec::new(1 << log_m, key_bits, u64::MAX),
            log_m,
            len: 0,
        }
    }

    fn log_capacity(&self) -> u32 {
        self.log_m
    }

    fn key_bits(&self) -> u32 {
        self.slots.width()
    }

    fn len(&self) -> u64 {
        self.len
    }

    #[inline]
    fn is_occupied(&self, slot: u64) -> bool {
        self.slots.get(slot as usize) != self.empty()
    }

    #[inline]
    fn key_at(&self, slot: u64) -> u64 {
        self.slots.get(slot as usize)
    }

    fn displacement(&self, slot: u64) -> u64 {
        slot.wrapping_sub(self.home(self.key_at(slot))) & (self.capacity() - 1)
    }

    #[inline]
    fn find(&self, key: u64) -> Option<u64> {
        let mask = self.capacity() - 1;
        let empty = self.empty();
        let mut i = self.home(key);
        loop {
            match self.slots.get(i as usize) {
                k if k == key => return Some(i),
                k if k == empty => return None,
                _ => i = (i + 1) & mask,
            }
        }
    }

    fn insert(&mut self, key: u64) -> Result<u64> {
        debug_assert!(key < self.empty());
        let mask = self.capacity() - 1;
        let empty = self.empty();
        let mut i = self.home(key);
        loop {
            match self.slots.get(i as usize) {
                k if k == empty => break,
                k if k == key => return Err(Error::ContractViolation("key already present")),
                _ => i = (i + 1) & mask,
            }
        }
        self.slots.set(i as usize, key);
        self.len += 1;
        Ok(i)
    }

    fn memory_bytes(&self) -> usize {
        self.slots.memory_bytes()
    }
}

/// Quotients of a bijective hash plus an occupancy bitmap and tiered displacements.
#[derive(Clone, Debug)]
pub struct CompactKeyTable {
    quotients: PackedVec,
    occupied: BitVec,
    displacements: Displacements,
    transform: BijectiveTransform,
    log_m: u32,
    len: u64,
}

impl CompactKeyTable {
    #[inline]
    fn split(&self, key: u64) -> (u64, u64) {
        let y = self.transform.apply(key);
        (y & (self.capacity() - 1), y >> self.log_m)
    }

    pub fn transform(&self) -> &BijectiveTransform {
        &self.transform
    }

    pub fn quotient_at(&self, slot: u64) -> u64 {
        self.quotients.get(slot as usize)
    }

    pub fn escaped_counts(&self) -> (usize, usize) {
        self.displacements.escaped_counts()
    }
}

impl KeyTable for CompactKeyTable {
    fn new(log_m: u32, key_bits: u32) -> Self {
        assert!(key_bits > log_m);
        let m = 1usize << log_m;
        CompactKeyTable {
            quotients: PackedVec::new(m, key_bits - log_m, 0),
            occupied: BitVec::new(m),
            displacements: Displacements::new(log_m),
            transform: BijectiveTransform::new(key_bits),
            log_m,
            len: 0,
        }
    }

    fn log_capacity(&self) -> u32 {
        self.log_m
    }

    fn key_bits(&self) -> u32 {
        self.transform.bits()
    }

    fn len(&self) -> u64 {
        self.len
    }

    #[inline]
    fn is_occupied(&self, slot: u64) -> bool {
        self.occupied.get(slot as usize)
    }

    fn key_at(&self, slot: u64) -> u64 {
        let home = slot.wrapping_sub(self.displacement(slot)) & (self.capacity() - 1);
        let y = (self.quotients.get(slot as usize) << self.log_m) | home;
        self.transform.unapply(y)
    }

    #[inline]
    fn displacement(&self, slot: u64) -> u64 {
        self.displacements.get(slot as usize)
    }

    #[inline]
    fn find(&self, key: u64) -> Option<u64> {
        let mask = self.capacity() - 1;
        let (mut i, quot) = self.split(key);
        let mut dist = 0;
        while self.occupied.get(i as usize) {
            if self.quotients.get(i as usize) == quot && self.displacements.get(i as usize) == dist {
                return Some(i);
            }
            i = (i + 1) & mask;
            dist += 1;
        }
        None
    }

    fn insert(&mut self, key: u64) -> Result<u64> {
        let mask = self.capacity() - 1;
        let (mut i, quot) = self.split(key);
        let mut dist = 0;
        while self.occupied.get(i as usize) {
            if self.quotients.get(i as usize) == quot && self.displacements.get(i as usize) == dist {
                return Err(Error::ContractViolation("key already present"));
            }
            i = (i + 1) & mask;
            dist += 1;
        }
        self.quotients.set(i as usize, quot);
        self.occupied.set(i as usize, true);
        self.displacements.set(i as usize, dist);
        self.len += 1;
        Ok(i)
    }

    fn memory_bytes(&self) -> usize {
        self.quotients.memory_bytes() + self.occupied.memory_bytes() + self.displacements.memory_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hashing::SplitMix64;
    use alloc::vec::Vec;

    fn exercise<T: KeyTable>() {
        let mut t = T::new(10, 22);
        let mut rng = SplitMix64::new(9);
        let mut keys = Vec::new();
        while keys.len() < 900 {
            let k = rng.below(1 << 22);
            if t.find(k).is_none() {
                let slot = t.insert(k).unwrap();
                assert_eq!(t.key_at(slot), k);
                keys.push(k);
            }
        }
        assert_eq!(t.len(), 900);
        for &k in &keys {
            let slot = t.find(k).unwrap();
            assert_eq!(t.key_at(slot), k);
            assert!(matches!(t.insert(k), Err(Error::ContractViolation(_))));
        }
        // Every probe run from an entry's initial address to its slot is unbroken.
        for slot in (0..t.capacity()).filter(|&s| t.is_occupied(s)) {
            let d = t.displacement(slot);
            for back in 0..=d {
                assert!(t.is_occupied(slot.wrapping_sub(back) & (t.capacity() - 1)));
            }
        }
    }

    #[test]
    fn plain_table() {
        exercise::<PlainKeyTable>();
    }

    #[test]
    fn compact_table() {
        exercise::<CompactKeyTable>();
    }

    #[test]
    fn compact_table_spills_into_every_tier() {
        // Keys sharing one initial address build a single long probe run.
        let mut t = CompactKeyTable::new(10, 20);
        let target = 5;
        let mut placed = Vec::new();
        let mut k = 0u64;
        while placed.len() < 200 {
            if t.split(k).0 == target {
                placed.push((k, t.insert(k).unwrap()));
            }
            k += 1;
        }
        for (j, &(key, slot)) in placed.iter().enumerate() {
            assert_eq!(slot, (target + j as u64) & 1023);
            assert_eq!(t.displacement(slot), j as u64);
            assert_eq!(t.key_at(slot), key);
            assert_eq!(t.find(key), Some(slot));
        }
        let (aux, over) = t.escaped_counts();
        assert_eq!(aux, 128);
        assert_eq!(over, 200 - 143);
    }
}
