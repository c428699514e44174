//! Variable-byte integer codes: 7 payload bits per byte, least significant
//! group first, continuation flag in the high bit.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Appends the code of `n` to `out`; returns the number of bytes written.
pub fn encode(mut n: u64, out: &mut Vec<u8>) -> usize {
    let mut written = 1;
    while n >= 0x80 {
        out.push((n as u8 & 0x7F) | 0x80);
        n >>= 7;
        written += 1;
    }
    out.push(n as u8);
    written
}

/// Length of the code of `n` in bytes.
pub fn encoded_len(n: u64) -> usize {
    let bits = (64 - n.leading_zeros()).max(1) as usize;
    bits.div_ceil(7)
}

/// Decodes one integer starting at `offset`; returns the value and the bytes consumed.
pub fn decode(buf: &[u8], offset: usize) -> Result<(u64, usize)> {
    let mut value = 0u64;
    let mut shift = 0;
    let mut pos = offset;
    loop {
        let byte = *buf
            .get(pos)
            .ok_or(Error::Corruption("vbyte code runs past the end of the buffer"))?;
        if shift > 63 || (shift == 63 && byte & 0x7F > 1) {
            return Err(Error::Corruption("vbyte code overflows 64 bits"));
        }
        value |= ((byte & 0x7F) as u64) << shift;
        pos += 1;
        if byte & 0x80 == 0 {
            return Ok((value, pos - offset));
        }
        shift += 7;
    }
}
