//! Node-label maps: node id to label bytes plus the embedded value.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::config::{Config, LabelMapKind};
use crate::error::Result;
use crate::keyword::Value;
use crate::trie::{IdRemap, NodeId};

mod plain;
mod record;
mod sparse;

pub use plain::PlainLabelMap;
pub use sparse::{SparseBonsaiLabelMap, SparseFkLabelMap};

/// What a node carries: nothing for a step node, otherwise its label and value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelView<'a> {
    Step,
    Node { label: &'a [u8], value: Value },
}

impl<'a> LabelView<'a> {
    pub fn label(&self) -> &'a [u8] {
        match *self {
            LabelView::Step => &[],
            LabelView::Node { label, .. } => label,
        }
    }

    pub fn value(&self) -> Option<Value> {
        match *self {
            LabelView::Step => None,
            LabelView::Node { value, .. } => Some(value),
        }
    }

    pub fn is_step(&self) -> bool {
        matches!(self, LabelView::Step)
    }

    pub fn to_owned(&self) -> OwnedLabel {
        match *self {
            LabelView::Step => OwnedLabel::Step,
            LabelView::Node { label, value } => OwnedLabel::Node {
                label: label.to_vec(),
                value,
            },
        }
    }
}

/// Owned counterpart of [`LabelView`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OwnedLabel {
    Step,
    Node { label: Vec<u8>, value: Value },
}

impl OwnedLabel {
    pub fn view(&self) -> LabelView<'_> {
        match self {
            OwnedLabel::Step => LabelView::Step,
            OwnedLabel::Node { label, value } => LabelView::Node { label, value: *value },
        }
    }
}

pub trait NodeLabelMap {
    /// Stores the record of a node that has none yet.
    fn associate(&mut self, id: NodeId, payload: LabelView<'_>) -> Result<()>;
    fn access(&self, id: NodeId) -> Result<Option<LabelView<'_>>>;
    /// Overwrites the value of a labeled node in place.
    fn update_value(&mut self, id: NodeId, value: Value) -> Result<()>;
    /// Moves every record to its new id after the trie renumbered its nodes.
    fn remap(&mut self, remap: &IdRemap) -> Result<()>;
    /// Makes room for ids below `capacity`.
    fn reserve_ids(&mut self, capacity: u64);
    /// Number of stored records.
    fn len(&self) -> u64;
    fn memory_bytes(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Creates the label map selected by `cfg`, sized for a trie of `capacity` slots.
pub fn new_label_map(cfg: &Config, capacity: u64) -> Result<Box<dyn NodeLabelMap + Send + Sync>> {
    cfg.validate()?;
    let mut map: Box<dyn NodeLabelMap + Send + Sync> = match (cfg.nlm, cfg.repr.is_bonsai()) {
        (LabelMapKind::Plm, _) => Box::new(PlainLabelMap::new()),
        (LabelMapKind::Slm, true) => Box::new(SparseBonsaiLabelMap::new(cfg.ell)),
        (LabelMapKind::Slm, false) => Box::new(SparseFkLabelMap::new(cfg.ell)),
    };
    map.reserve_ids(capacity);
    Ok(map)
}
