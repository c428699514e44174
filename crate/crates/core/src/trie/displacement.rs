//! Three-tier store of probe displacements for compact tables.
//!
//! Small values live in a 4-bit array. The all-ones 4-bit value is an escape:
//! the entry is then found in the compact auxiliary table (offset by the
//! escape value, 7 bits) or, failing that, in the overflow table.

use crate::bits::PackedVec;
use crate::trie::cleary::ClearyTable;
use crate::trie::overflow::OverflowTable;

/// Bits per entry of the first tier.
pub const TIER1_BITS: u32 = 4;
/// Bits per value of the second tier.
pub const TIER2_BITS: u32 = 7;
/// Initial slots of the second tier.
pub const TIER2_INITIAL_CAPACITY: usize = 1 << 12;
/// Initial slots of the third tier.
pub const TIER3_INITIAL_CAPACITY: usize = 1 << 6;

const ESCAPE: u64 = (1 << TIER1_BITS) - 1;
const TIER2_LIMIT: u64 = ESCAPE + (1 << TIER2_BITS);

/// Which tier holds a displacement value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Inline,
    Auxiliary,
    Overflow,
}

pub fn tier_of(displacement: u64) -> Tier {
    if displacement < ESCAPE {
        Tier::Inline
    } else if displacement < TIER2_LIMIT {
        Tier::Auxiliary
    } else {
        Tier::Overflow
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Displacements {
    inline: PackedVec,
    auxiliary: ClearyTable,
    overflow: OverflowTable,
}

impl Displacements {
    /// Store for a table of `2^log_m` slots.
    pub(crate) fn new(log_m: u32) -> Self {
        let m = 1usize << log_m;
        let aux_log = TIER2_INITIAL_CAPACITY.trailing_zeros().min(log_m);
        Displacements {
            inline: PackedVec::new(m, TIER1_BITS, 0),
            auxiliary: ClearyTable::new(aux_log, log_m, TIER2_BITS),
            overflow: OverflowTable::new(TIER3_INITIAL_CAPACITY, log_m),
        }
    }

    #[inline]
    pub(crate) fn get(&self, slot: usize) -> u64 {
        let d = self.inline.get(slot);
        if d < ESCAPE {
            return d;
        }
        if let Some(v) = self.auxiliary.get(slot as u64) {
            return v + ESCAPE;
        }
        self.overflow
            .get(slot as u64)
            .expect("escaped displacement missing from both auxiliary tiers")
    }

    /// Records the displacement of a newly filled slot.
    pub(crate) fn set(&mut self, slot: usize, displacement: u64) {
        match tier_of(displacement) {
            Tier::Inline => self.inline.set(slot, displacement),
            Tier::Auxiliary => {
                self.inline.set(slot, ESCAPE);
                if !self.auxiliary.insert(slot as u64, displacement - ESCAPE) {
                    self.overflow.insert(slot as u64, displacement);
                }
            }
            Tier::Overflow => {
                self.inline.set(slot, ESCAPE);
                self.overflow.insert(slot as u64, displacement);
            }
        }
    }

    /// Entries held by the auxiliary and overflow tiers.
    pub(crate) fn escaped_counts(&self) -> (usize, usize) {
        (self.auxiliary.len(), self.overflow.len())
    }

    pub(crate) fn memory_bytes(&self) -> usize {
        self.inline.memory_bytes() + self.auxiliary.memory_bytes() + self.overflow.memory_bytes()
    }
}
