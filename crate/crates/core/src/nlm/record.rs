//! Byte layout of one node-label record.
//!
//! A record starts with a VByte header: `0` for a step node (nothing follows),
//! otherwise `len + 1` followed by the `len` label bytes and the 4-byte
//! little-endian value. Terminators are not stored.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hashing::vbyte;
use crate::keyword::Value;
use crate::nlm::LabelView;

pub(crate) const VALUE_BYTES: usize = 4;

pub(crate) fn encode(payload: LabelView<'_>, out: &mut Vec<u8>) {
    match payload {
        LabelView::Step => {
            vbyte::encode(0, out);
        }
        LabelView::Node { label, value } => {
            vbyte::encode(label.len() as u64 + 1, out);
            out.extend_from_slice(label);
            out.extend_from_slice(&value.get().to_le_bytes());
        }
    }
}

pub(crate) fn encoded_len(payload: LabelView<'_>) -> usize {
    match payload {
        LabelView::Step => 1,
        LabelView::Node { label, .. } => {
            vbyte::encoded_len(label.len() as u64 + 1) + label.len() + VALUE_BYTES
        }
    }
}

/// A decoded record and where its pieces sit in the buffer.
pub(crate) struct Located<'a> {
    pub view: LabelView<'a>,
    /// Offset of the value field, if any.
    pub value_at: Option<usize>,
}

pub(crate) fn decode(buf: &[u8], offset: usize) -> Result<Located<'_>> {
    let (header, used) = vbyte::decode(buf, offset)?;
    let start = offset + used;
    if header == 0 {
        return Ok(Located {
            view: LabelView::Step,
            value_at: None,
        });
    }
    let len = (header - 1) as usize;
    let value_at = start + len;
    let end = value_at + VALUE_BYTES;
    if end > buf.len() {
        return Err(Error::Corruption("label record runs past the end of its group"));
    }
    let value = u32::from_le_bytes(buf[value_at..end].try_into().expect("4 bytes"));
    Ok(Located {
        view: LabelView::Node {
            label: &buf[start..value_at],
            value: Value(value),
        },
        value_at: Some(value_at),
    })
}

/// Offset just past the record starting at `offset`, reading only its header.
pub(crate) fn skip(buf: &[u8], offset: usize) -> Result<usize> {
    let (header, used) = vbyte::decode(buf, offset)?;
    let end = match header {
        0 => offset + used,
        h => offset + used + (h - 1) as usize + VALUE_BYTES,
    };
    if end > buf.len() {
        return Err(Error::Corruption("label record runs past the end of its group"));
    }
    Ok(end)
}

/// Offset of the `rank`-th record (0-based) in a concatenation of records.
pub(crate) fn nth(buf: &[u8], rank: usize) -> Result<usize> {
    let mut pos = 0;
    for _ in 0..rank {
        pos = skip(buf, pos)?;
    }
    Ok(pos)
}

pub(crate) fn write_value(buf: &mut [u8], value_at: usize, value: Value) {
    buf[value_at..value_at + VALUE_BYTES].copy_from_slice(&value.get().to_le_bytes());
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn step_is_a_single_zero_byte() {
        let mut v = Vec::new();
        encode(LabelView::Step, &mut v);
        assert_eq!(v, vec![0]);
        let r = decode(&v, 0).unwrap();
        assert_eq!(r.view, LabelView::Step);
        assert_eq!(skip(&v, 0).unwrap(), 1);
    }

    #[test]
    fn empty_label_is_distinct_from_step() {
        let mut v = Vec::new();
        encode(LabelView::Node { label: b"", value: Value(3) }, &mut v);
        assert_eq!(v, vec![1, 3, 0, 0, 0]);
        assert_eq!(decode(&v, 0).unwrap().view, LabelView::Node { label: b"", value: Value(3) });
    }

    #[test]
    fn truncated_record() {
        assert!(decode(&[5, b'a'], 0).is_err());
        assert!(skip(&[5, b'a'], 0).is_err());
        assert!(skip(&[0x80], 0).is_err());
    }
}
