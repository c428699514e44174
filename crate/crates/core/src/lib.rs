//! Dynamic path-decomposed trie: a keyword dictionary that stores each
//! keyword in a single trie node, over compact hash-based trie backends.
//!
//! ```
//! use dynpdt::{Config, Dictionary, LabelMapKind, Repr};
//!
//! let mut d = Dictionary::new(Config::new(Repr::Cbt, LabelMapKind::Slm)).unwrap();
//! d.insert(b"technology", 1).unwrap();
//! d.insert(b"technics", 2).unwrap();
//! assert_eq!(d.lookup(b"technics").unwrap(), Some(2));
//! assert_eq!(d.lookup(b"tech").unwrap(), None);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod bits;
pub mod config;
pub mod dict;
pub mod error;
pub mod hashing;
pub mod keyword;
pub mod nlm;
pub mod symbol;
pub mod trie;

pub use analysis::{anticentroid_bound, centroid_bound, shape_stats, ShapeStats};
pub use config::{Config, LabelMapKind, Repr};
pub use dict::{DeleteOutcome, Dictionary, InsertOutcome};
pub use error::{Error, Result};
pub use keyword::{Keyword, Value};
pub use symbol::{Alphabet, Branch, EdgeSymbol};
