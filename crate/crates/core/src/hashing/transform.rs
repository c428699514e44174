use crate::error::{Error, Result};

/// Odd multiplier source; truncated to the domain width.
const MULTIPLIER: u64 = 0x9E37_79B9_7F4A_7C15;

/// An invertible hash on `[0, 2^z)`: a xorshift step `x ^ (x >> a)` with
/// `a > z / 2` (an involution), followed by multiplication by an odd constant
/// modulo `2^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BijectiveTransform {
    bits: u32,
    shift: u32,
    multiplier: u64,
    inverse_multiplier: u64,
}

#[inline]
fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of odd `p` modulo 2^64 by Newton iteration (each step doubles the correct low bits).
fn inverse_mod_2_64(p: u64) -> u64 {
    debug_assert!(p & 1 == 1);
    let mut x = p; // correct to 3 bits since p * p = 1 (mod 8)
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(x)));
    }
    x
}

impl BijectiveTransform {
    /// A transform over `[0, 2^bits)`, `1 <= bits <= 64`.
    pub fn new(bits: u32) -> Self {
        assert!((1..=64).contains(&bits), "transform width {bits} out of range");
        let m = mask(bits);
        let multiplier = (MULTIPLIER & m) | 1;
        BijectiveTransform {
            bits,
            shift: bits / 2 + 1,
            multiplier,
            inverse_multiplier: inverse_mod_2_64(multiplier) & m,
        }
    }

    /// Same construction at a different width.
    pub fn rescale(&self, bits: u32) -> Self {
        BijectiveTransform::new(bits)
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn shift(&self) -> u32 {
        self.shift
    }

    #[inline]
    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    #[inline]
    pub fn inverse_multiplier(&self) -> u64 {
        self.inverse_multiplier
    }

    /// The xorshift half; its own inverse.
    #[inline]
    pub fn xorshift(&self, x: u64) -> u64 {
        x ^ (x >> self.shift)
    }

    pub fn forward(&self, x: u64) -> Result<u64> {
        if x > mask(self.bits) {
            return Err(Error::ContractViolation("transform input outside its domain"));
        }
        Ok(self.apply(x))
    }

    pub fn inverse(&self, y: u64) -> Result<u64> {
        if y > mask(self.bits) {
            return Err(Error::ContractViolation("transform input outside its domain"));
        }
        Ok(self.unapply(y))
    }

    /// `forward` without the domain check (checked in debug builds).
    #[inline]
    pub(crate) fn apply(&self, x: u64) -> u64 {
        debug_assert!(x <= mask(self.bits));
        self.xorshift(x).wrapping_mul(self.multiplier) & mask(self.bits)
    }

    #[inline]
    pub(crate) fn unapply(&self, y: u64) -> u64 {
        debug_assert!(y <= mask(self.bits));
        self.xorshift(y.wrapping_mul(self.inverse_multiplier) & mask(self.bits))
    }
}
