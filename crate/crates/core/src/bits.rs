//! Fixed-width packed integer arrays and plain bitmaps.

use alloc::vec;
use alloc::vec::Vec;
use core::mem::size_of;

/// Number of bits needed to write `x` in binary; `bit_width(0) == 0`.
#[inline]
pub fn bit_width(x: u64) -> u32 {
    64 - x.leading_zeros()
}

#[inline]
fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// An array of `len` unsigned integers, each stored in exactly `width` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedVec {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

impl PackedVec {
    /// Creates `len` entries of `width` bits, all set to `fill` (truncated to `width`).
    pub fn new(len: usize, width: u32, fill: u64) -> Self {
        assert!(width <= 64, "packed width {width} exceeds 64 bits");
        let nbits = len * width as usize;
        let mut v = PackedVec {
            words: vec![0; nbits.div_ceil(64)],
            width,
            len,
        };
        let fill = fill & low_mask(width);
        if fill == low_mask(width) && width > 0 {
            v.words.iter_mut().for_each(|w| *w = u64::MAX);
        } else if fill != 0 {
            for i in 0..len {
                v.set(i, fill);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width as usize;
        let (word, off) = (bit / 64, (bit % 64) as u32);
        let mask = low_mask(self.width);
        if off + self.width <= 64 {
            (self.words[word] >> off) & mask
        } else {
            let lo = self.words[word] >> off;
            let hi = self.words[word + 1] << (64 - off);
            (lo | hi) & mask
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u64) {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return;
        }
        let mask = low_mask(self.width);
        debug_assert!(value <= mask, "value {value} does not fit {} bits", self.width);
        let value = value & mask;
        let bit = i * self.width as usize;
        let (word, off) = (bit / 64, (bit % 64) as u32);
        self.words[word] = (self.words[word] & !(mask << off)) | (value << off);
        if off + self.width > 64 {
            let spill = off + self.width - 64;
            let hi_mask = low_mask(spill);
            self.words[word + 1] = (self.words[word + 1] & !hi_mask) | (value >> (64 - off));
        }
    }

    /// Bytes of backing storage.
    pub fn memory_bytes(&self) -> usize {
        self.words.len() * size_of::<u64>()
    }
}

/// A fixed-length bitmap with word-level popcount.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn new(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    /// Number of set bits in `[from, to)`.
    pub fn count_ones(&self, from: usize, to: usize) -> usize {
        debug_assert!(from <= to && to <= self.len);
        if from == to {
            return 0;
        }
        let (fw, lw) = (from / 64, (to - 1) / 64);
        let head = u64::MAX << (from % 64);
        let tail = u64::MAX >> (63 - (to - 1) % 64);
        if fw == lw {
            return (self.words[fw] & head & tail).count_ones() as usize;
        }
        let mut n = (self.words[fw] & head).count_ones() as usize;
        n += self.words[fw + 1..lw]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>();
        n + (self.words[lw] & tail).count_ones() as usize
    }

    /// Number of machine words `count_ones(from, to)` touches.
    pub fn words_spanned(from: usize, to: usize) -> usize {
        if from == to {
            0
        } else {
            (to - 1) / 64 - from / 64 + 1
        }
    }

    pub fn memory_bytes(&self) -> usize {
        self.words.len() * size_of::<u64>()
    }
}
