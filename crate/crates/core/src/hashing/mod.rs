//! Hash functions and byte codecs.

mod scramble;
mod transform;
pub mod vbyte;

pub use scramble::{scramble, SplitMix64};
pub use transform::BijectiveTransform;
