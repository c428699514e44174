//! Linear-probing map for displacements too large for the compact tiers.

use crate::bits::{BitVec, PackedVec};
use crate::config::exceeds_max_load;
use crate::hashing::scramble;

#[derive(Clone, Debug)]
pub(crate) struct OverflowTable {
    keys: PackedVec,
    values: PackedVec,
    occupied: BitVec,
    width: u32,
    len: usize,
}

impl OverflowTable {
    pub(crate) fn new(capacity: usize, width: u32) -> Self {
        debug_assert!(capacity.is_power_of_two());
        OverflowTable {
            keys: PackedVec::new(capacity, width, 0),
            values: PackedVec::new(capacity, width, 0),
            occupied: BitVec::new(capacity),
            width,
            len: 0,
        }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn capacity(&self) -> usize {
        self.keys.len()
    }

    /// Slot holding `key`, or the vacant slot where it would go.
    fn probe(&self, key: u64) -> (usize, bool) {
        let mask = self.capacity() - 1;
        let mut i = scramble(key) as usize & mask;
        while self.occupied.get(i) {
            if self.keys.get(i) == key {
                return (i, true);
            }
            i = (i + 1) & mask;
        }
        (i, false)
    }

    pub(crate) fn get(&self, key: u64) -> Option<u64> {
        match self.probe(key) {
            (i, true) => Some(self.values.get(i)),
            _ => None,
        }
    }

    pub(crate) fn insert(&mut self, key: u64, value: u64) {
        if let (i, true) = self.probe(key) {
            self.values.set(i, value);
            return;
        }
        if exceeds_max_load(self.len as u64 + 1, self.capacity() as u64) {
            let mut bigger = OverflowTable::new(self.capacity() * 2, self.width);
            for i in (0..self.capacity()).filter(|&i| self.occupied.get(i)) {
                bigger.insert(self.keys.get(i), self.values.get(i));
            }
            *self = bigger;
        }
        let (i, _) = self.probe(key);
        self.keys.set(i, key);
        self.values.set(i, value);
        self.occupied.set(i, true);
        self.len += 1;
    }

    pub(crate) fn memory_bytes(&self) -> usize {
        self.keys.memory_bytes() + self.values.memory_bytes() + self.occupied.memory_bytes()
    }
}
