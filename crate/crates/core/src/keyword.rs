use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::symbol::TERMINATOR;

/// A validated dictionary key. Internally carries exactly one trailing terminator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Keyword(Vec<u8>);

impl Keyword {
    pub fn new(raw: &[u8]) -> Result<Self> {
        validate(raw)?;
        let mut bytes = Vec::with_capacity(raw.len() + 1);
        bytes.extend_from_slice(raw);
        bytes.push(TERMINATOR);
        Ok(Keyword(bytes))
    }

    /// The key bytes without the terminator.
    pub fn as_bytes(&self) -> &[u8] {
        &self.0[..self.0.len() - 1]
    }

    /// The key bytes followed by the terminator.
    pub fn terminated(&self) -> &[u8] {
        &self.0
    }

    /// Length without the terminator.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_bytes(mut self) -> Vec<u8> {
        self.0.pop();
        self.0
    }
}

impl fmt::Debug for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Keyword(\"{}\")", self.as_bytes().escape_ascii())
    }
}

/// Checks a raw key without copying it.
pub fn validate(raw: &[u8]) -> Result<()> {
    if raw.is_empty() {
        return Err(Error::InvalidKeyword("empty keyword"));
    }
    if raw.contains(&TERMINATOR) {
        return Err(Error::InvalidKeyword("keyword contains the terminator byte 0x00"));
    }
    if raw.len() >= u32::MAX as usize {
        return Err(Error::InvalidKeyword("keyword longer than 2^32 - 2 bytes"));
    }
    Ok(())
}

/// A 32-bit payload. [`Value::DELETED`] marks a deleted keyword and is never accepted from callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(pub u32);

impl Value {
    pub const DELETED: Value = Value(u32::MAX);

    pub fn new(x: u32) -> Result<Self> {
        if x == u32::MAX {
            Err(Error::ReservedValue(x))
        } else {
            Ok(Value(x))
        }
    }

    #[inline]
    pub fn is_deleted(self) -> bool {
        self == Value::DELETED
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}
