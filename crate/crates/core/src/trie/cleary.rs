//! Cleary-style compact hash table.
//!
//! Keys are split by a bijective transform into a home address and a quotient;
//! only the quotient is stored. Entries of one run of occupied slots are kept
//! sorted by home address, so the home of a stored quotient is recovered from
//! two bitmaps: `virgin[h]` is set iff some key has home `h`, and `change[p]`
//! is set iff slot `p` holds the first entry of a home-address group. The
//! j-th group of a run belongs to the j-th virgin bit counted from the run
//! start. A third bitmap marks occupied slots because every quotient value is
//! legal.

use alloc::vec::Vec;

use crate::bits::{BitVec, PackedVec};
use crate::config::exceeds_max_load;
use crate::hashing::BijectiveTransform;

#[derive(Clone, Debug)]
pub(crate) struct ClearyTable {
    log_cap: u32,
    key_bits: u32,
    value_bits: u32,
    transform: BijectiveTransform,
    quotients: PackedVec,
    values: PackedVec,
    virgin: BitVec,
    change: BitVec,
    occupied: BitVec,
    len: usize,
}

impl ClearyTable {
    /// A table of `2^log_cap` slots over keys of `key_bits` bits; `log_cap <= key_bits`.
    pub(crate) fn new(log_cap: u32, key_bits: u32, value_bits: u32) -> Self {
        assert!(log_cap <= key_bits && key_bits >= 1);
        let cap = 1usize << log_cap;
        ClearyTable {
            log_cap,
            key_bits,
            value_bits,
            transform: BijectiveTransform::new(key_bits),
            quotients: PackedVec::new(cap, key_bits - log_cap, 0),
            values: PackedVec::new(cap, value_bits, 0),
            virgin: BitVec::new(cap),
            change: BitVec::new(cap),
            occupied: BitVec::new(cap),
            len: 0,
        }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub(crate) fn capacity(&self) -> usize {
        1 << self.log_cap
    }

    #[inline]
    fn next(&self, i: usize) -> usize {
        (i + 1) & (self.capacity() - 1)
    }

    #[inline]
    fn prev(&self, i: usize) -> usize {
        i.wrapping_sub(1) & (self.capacity() - 1)
    }

    #[inline]
    fn split(&self, key: u64) -> (usize, u64) {
        let y = self.transform.apply(key);
        ((y & (self.capacity() as u64 - 1)) as usize, y >> self.log_cap)
    }

    /// First slot of the run of occupied slots containing `pos`.
    fn run_start(&self, pos: usize) -> usize {
        debug_assert!(self.occupied.get(pos));
        let mut s = pos;
        while self.occupied.get(self.prev(s)) {
            s = self.prev(s);
        }
        s
    }

    /// Set virgin bits in the circular range `[from, to]`.
    fn virgin_between(&self, from: usize, to: usize) -> usize {
        if from <= to {
            self.virgin.count_ones(from, to + 1)
        } else {
            self.virgin.count_ones(from, self.capacity()) + self.virgin.count_ones(0, to + 1)
        }
    }

    /// Slot of the `rank`-th (1-based) group start at or after `from`, or the
    /// first empty slot if the run ends first.
    fn nth_group(&self, from: usize, rank: usize) -> usize {
        let mut pos = from;
        let mut seen = 0;
        while self.occupied.get(pos) {
            if self.change.get(pos) {
                seen += 1;
                if seen == rank {
                    return pos;
                }
            }
            pos = self.next(pos);
        }
        pos
    }

    /// Half-open circular span `[start, end)` of the group with home `home`.
    fn group_span(&self, home: usize) -> (usize, usize) {
        let s = self.run_start(home);
        let start = self.nth_group(s, self.virgin_between(s, home));
        debug_assert!(self.occupied.get(start) && self.change.get(start));
        let mut end = self.next(start);
        while self.occupied.get(end) && !self.change.get(end) {
            end = self.next(end);
        }
        (start, end)
    }

    fn find_slot(&self, key: u64) -> Option<usize> {
        let (home, quot) = self.split(key);
        if !self.virgin.get(home) {
            return None;
        }
        let (mut pos, end) = self.group_span(home);
        loop {
            if self.quotients.get(pos) == quot {
                return Some(pos);
            }
            pos = self.next(pos);
            if pos == end {
                return None;
            }
        }
    }

    pub(crate) fn get(&self, key: u64) -> Option<u64> {
        self.find_slot(key).map(|p| self.values.get(p))
    }

    /// Inserts or overwrites. Returns false when the table cannot hold another
    /// key (it already spans the whole key universe at maximum load).
    pub(crate) fn insert(&mut self, key: u64, value: u64) -> bool {
        debug_assert!(value < 1 << self.value_bits);
        if let Some(p) = self.find_slot(key) {
            self.values.set(p, value);
            return true;
        }
        if exceeds_max_load(self.len as u64 + 1, self.capacity() as u64) {
            if self.log_cap == self.key_bits {
                return false;
            }
            self.grow();
        }
        self.insert_new(key, value);
        true
    }

    fn insert_new(&mut self, key: u64, value: u64) {
        let (home, quot) = self.split(key);
        if !self.occupied.get(home) {
            debug_assert!(!self.virgin.get(home));
            self.virgin.set(home, true);
            self.put(home, quot, value, true);
            self.occupied.set(home, true);
        } else if self.virgin.get(home) {
            let (_, end) = self.group_span(home);
            self.shift_insert(end, quot, value, false);
        } else {
            self.virgin.set(home, true);
            let s = self.run_start(home);
            let at = self.nth_group(s, self.virgin_between(s, home));
            self.shift_insert(at, quot, value, true);
        }
        self.len += 1;
    }

    #[inline]
    fn put(&mut self, pos: usize, quot: u64, value: u64, group_start: bool) {
        self.quotients.set(pos, quot);
        self.values.set(pos, value);
        self.change.set(pos, group_start);
    }

    /// Places an entry at `pos`, moving the tail of the run one slot right.
    fn shift_insert(&mut self, pos: usize, quot: u64, value: u64, group_start: bool) {
        let mut empty = pos;
        while self.occupied.get(empty) {
            empty = self.next(empty);
        }
        let mut p = empty;
        while p != pos {
            let q = self.prev(p);
            let (qq, qv, qc) = (self.quotients.get(q), self.values.get(q), self.change.get(q));
            self.put(p, qq, qv, qc);
            p = q;
        }
        self.put(pos, quot, value, group_start);
        self.occupied.set(empty, true);
    }

    /// Key stored at occupied slot `pos`.
    fn key_at(&self, pos: usize) -> u64 {
        let s = self.run_start(pos);
        let group = if s <= pos {
            self.change.count_ones(s, pos + 1)
        } else {
            self.change.count_ones(s, self.capacity()) + self.change.count_ones(0, pos + 1)
        };
        let mut home = s;
        let mut seen = 0;
        loop {
            if self.virgin.get(home) {
                seen += 1;
                if seen == group {
                    break;
                }
            }
            home = self.next(home);
        }
        let y = (self.quotients.get(pos) << self.log_cap) | home as u64;
        self.transform.unapply(y)
    }

    /// All stored `(key, value)` pairs in slot order.
    pub(crate) fn entries(&self) -> Vec<(u64, u64)> {
        (0..self.capacity())
            .filter(|&p| self.occupied.get(p))
            .map(|p| (self.key_at(p), self.values.get(p)))
            .collect()
    }

    fn grow(&mut self) {
        let entries = self.entries();
        *self = ClearyTable::new(self.log_cap + 1, self.key_bits, self.value_bits);
        for (k, v) in entries {
            self.insert_new(k, v);
        }
    }

    pub(crate) fn memory_bytes(&self) -> usize {
        self.quotients.memory_bytes()
            + self.values.memory_bytes()
            + self.virgin.memory_bytes()
            + self.change.memory_bytes()
            + self.occupied.memory_bytes()
    }
}
