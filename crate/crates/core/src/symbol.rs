//! Edge symbols of the path-decomposed trie.
//!
//! A regular edge is labeled by a pair `(byte, offset)` where the offset is the
//! mismatch position inside the parent's node label, capped below `lambda`.
//! Offsets at or beyond `lambda` are reached through chains of step edges.
//! Codes are laid out as `byte * lambda + offset`, the step symbol sits at
//! `256 * lambda`, and the code space is rounded up to `512 * lambda` so that
//! it is a power of two.

use crate::error::{Error, Result};

/// The terminator appended to every keyword.
pub const TERMINATOR: u8 = 0x00;

/// An integer-coded edge symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSymbol(pub u32);

impl EdgeSymbol {
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }
}

/// Decoded form of an [`EdgeSymbol`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Branching byte and offset within the parent label (offset < lambda).
    Byte(u8, u32),
    /// Step edge; advances the offset by lambda.
    Step,
}

/// The fixed edge alphabet for a given `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    lambda: u32,
    log_lambda: u32,
}

impl Alphabet {
    pub fn new(lambda: u32) -> Result<Self> {
        if lambda < 4 || !lambda.is_power_of_two() {
            return Err(Error::InvalidConfig("lambda must be a power of two >= 4"));
        }
        if lambda > 1 << 16 {
            return Err(Error::InvalidConfig("lambda must not exceed 2^16"));
        }
        Ok(Alphabet {
            lambda,
            log_lambda: lambda.trailing_zeros(),
        })
    }

    #[inline]
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Size of the code space, `2 * 256 * lambda`.
    #[inline]
    pub fn sigma(&self) -> u64 {
        512 * self.lambda as u64
    }

    /// `log2(sigma)`.
    #[inline]
    pub fn sigma_bits(&self) -> u32 {
        9 + self.log_lambda
    }

    #[inline]
    pub fn step(&self) -> EdgeSymbol {
        EdgeSymbol(256 * self.lambda)
    }

    /// Internal marker used as the root's key in hash-addressed backends.
    /// Never produced by [`Alphabet::encode`].
    #[inline]
    pub(crate) fn root_marker(&self) -> EdgeSymbol {
        EdgeSymbol((self.sigma() - 1) as u32)
    }

    pub fn encode(&self, branch: Branch) -> Result<EdgeSymbol> {
        match branch {
            Branch::Step => Ok(self.step()),
            Branch::Byte(c, i) if i < self.lambda => Ok(self.byte(c, i)),
            Branch::Byte(..) => Err(Error::ContractViolation("branch offset must be below lambda")),
        }
    }

    /// Encodes a regular symbol; `offset` must already be below lambda.
    #[inline]
    pub(crate) fn byte(&self, c: u8, offset: u32) -> EdgeSymbol {
        debug_assert!(offset < self.lambda);
        EdgeSymbol(((c as u32) << self.log_lambda) | offset)
    }

    pub fn decode(&self, sym: EdgeSymbol) -> Result<Branch> {
        let step = 256 * self.lambda;
        match sym.0 {
            c if c < step => Ok(Branch::Byte(
                (c >> self.log_lambda) as u8,
                c & (self.lambda - 1),
            )),
            c if c == step => Ok(Branch::Step),
            _ => Err(Error::Corruption("edge symbol outside the alphabet")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        let a = Alphabet::new(8).unwrap();
        assert_eq!(a.encode(Branch::Byte(b'i', 5)).unwrap(), EdgeSymbol(845));
        assert_eq!(a.encode(Branch::Byte(0, 0)).unwrap(), EdgeSymbol(0));
        assert_eq!(a.encode(Branch::Step).unwrap(), EdgeSymbol(2048));
        assert_eq!(a.decode(EdgeSymbol(845)).unwrap(), Branch::Byte(b'i', 5));
        assert_eq!(a.decode(EdgeSymbol(0)).unwrap(), Branch::Byte(0, 0));
        assert_eq!(a.decode(EdgeSymbol(2048)).unwrap(), Branch::Step);
    }

    #[test]
    fn offset_out_of_range_is_rejected() {
        let a = Alphabet::new(8).unwrap();
        assert!(matches!(a.encode(Branch::Byte(1, 8)), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn codes_above_step_are_corrupt() {
        let a = Alphabet::new(8).unwrap();
        assert!(matches!(a.decode(EdgeSymbol(2049)), Err(Error::Corruption(_))));
        assert!(matches!(a.decode(a.root_marker()), Err(Error::Corruption(_))));
    }

    #[test]
    fn exhaustive_roundtrip_and_order() {
        for lambda in [4u32, 8, 16, 32, 64] {
            let a = Alphabet::new(lambda).unwrap();
            assert!(a.sigma().is_power_of_two());
            let mut prev = None;
            for c in 0..=255u8 {
                for i in 0..lambda {
                    let s = a.encode(Branch::Byte(c, i)).unwrap();
                    assert_eq!(a.decode(s).unwrap(), Branch::Byte(c, i));
                    assert!(prev.is_none_or(|p| p < s));
                    prev = Some(s);
                }
            }
            assert!(prev.unwrap() < a.step());
            assert!((a.step().0 as u64) < a.sigma());
        }
    }

    #[test]
    fn bad_lambda() {
        assert!(Alphabet::new(2).is_err());
        assert!(Alphabet::new(12).is_err());
    }
}
