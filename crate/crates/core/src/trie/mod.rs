//! Dynamic tries over [`EdgeSymbol`]s backed by closed hash tables.
//!
//! Two families are provided. In the m-Bonsai family ([`PlainBonsaiTrie`],
//! [`CompactBonsaiTrie`]) a node's id is the slot that stores it, so growing
//! the table renumbers every node and produces an [`IdRemap`]. In the FK-hash
//! family ([`PlainFkTrie`], [`CompactFkTrie`]) ids are handed out densely from
//! zero and stored next to each slot, so they survive growth.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::config::{Config, Repr};
use crate::error::Result;
use crate::symbol::{Alphabet, EdgeSymbol};

mod bonsai;
mod cleary;
pub mod displacement;
mod fk;
mod overflow;
pub mod table;

pub use bonsai::BonsaiTrie;
pub use fk::FkTrie;
pub use table::{CompactKeyTable, KeyTable, PlainKeyTable};

pub type NodeId = u64;

pub type PlainBonsaiTrie = BonsaiTrie<PlainKeyTable>;
pub type CompactBonsaiTrie = BonsaiTrie<CompactKeyTable>;
pub type PlainFkTrie = FkTrie<PlainKeyTable>;
pub type CompactFkTrie = FkTrie<CompactKeyTable>;

const UNMAPPED: u64 = u64::MAX;

/// Old-id to new-id translation emitted when an m-Bonsai table grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdRemap {
    new_ids: Vec<u64>,
    new_capacity: u64,
}

impl IdRemap {
    pub(crate) fn new(new_ids: Vec<u64>, new_capacity: u64) -> Self {
        IdRemap {
            new_ids,
            new_capacity,
        }
    }

    /// The identity on `live` ids of a table with `capacity` slots.
    pub fn identity(capacity: u64, live: impl IntoIterator<Item = NodeId>) -> Self {
        let mut new_ids = alloc::vec![UNMAPPED; capacity as usize];
        for id in live {
            new_ids[id as usize] = id;
        }
        IdRemap::new(new_ids, capacity)
    }

    /// Builds a remap from explicit pairs; ids not listed are dead.
    pub fn from_pairs(old_capacity: u64, new_capacity: u64, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut new_ids = alloc::vec![UNMAPPED; old_capacity as usize];
        for (old, new) in pairs {
            new_ids[old as usize] = new;
        }
        IdRemap::new(new_ids, new_capacity)
    }

    #[inline]
    pub fn get(&self, old: NodeId) -> Option<NodeId> {
        match self.new_ids.get(old as usize) {
            Some(&id) if id != UNMAPPED => Some(id),
            _ => None,
        }
    }

    pub fn old_capacity(&self) -> u64 {
        self.new_ids.len() as u64
    }

    pub fn new_capacity(&self) -> u64 {
        self.new_capacity
    }

    /// Live `(old, new)` pairs in old-id order.
    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.new_ids
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != UNMAPPED)
            .map(|(o, &n)| (o as NodeId, n))
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when no two live old ids map to the same new id and all new ids are in range.
    pub fn is_injective(&self) -> bool {
        let mut seen = crate::bits::BitVec::new(self.new_capacity as usize);
        for (_, n) in self.pairs() {
            if n >= self.new_capacity || seen.get(n as usize) {
                return false;
            }
            seen.set(n as usize, true);
        }
        true
    }
}

/// What happened to the table while adding a child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    None,
    /// The table doubled; ids are unchanged.
    Rehashed,
    /// The table doubled and every id moved.
    Remapped(IdRemap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddOutcome {
    /// Id of the new child, valid after any growth this call performed.
    pub id: NodeId,
    pub growth: Growth,
}

/// The abstract dynamic trie contract shared by all backends.
pub trait TrieBackend {
    fn alphabet(&self) -> Alphabet;
    fn root(&self) -> NodeId;
    /// Nodes including the root.
    fn node_count(&self) -> u64;
    fn capacity(&self) -> u64;
    /// Number of doublings performed so far.
    fn growth_count(&self) -> u64;
    /// Whether ids survive growth.
    fn stable_ids(&self) -> bool;
    fn get_child(&self, u: NodeId, c: EdgeSymbol) -> Option<NodeId>;
    /// Adds a child `c` below `u`, growing the table first when the load would exceed 0.9.
    /// If the ids were remapped by growth, `u` is translated before inserting.
    fn add_child(&mut self, u: NodeId, c: EdgeSymbol) -> Result<AddOutcome>;
    fn parent(&self, u: NodeId) -> Result<NodeId>;
    fn edge(&self, u: NodeId) -> Result<EdgeSymbol>;
    /// Calls `f(id, parent, edge)` for every non-root node.
    fn for_each_node(&self, f: &mut dyn FnMut(NodeId, NodeId, EdgeSymbol));
    fn memory_bytes(&self) -> usize;
}

/// Creates the backend selected by `cfg.repr`, containing only the root.
pub fn new_backend(cfg: &Config) -> Result<Box<dyn TrieBackend + Send + Sync>> {
    cfg.validate()?;
    Ok(match cfg.repr {
        Repr::Pbt => Box::new(PlainBonsaiTrie::new(cfg)?),
        Repr::Cbt => Box::new(CompactBonsaiTrie::new(cfg)?),
        Repr::Pfkt => Box::new(PlainFkTrie::new(cfg)?),
        Repr::Cfkt => Box::new(CompactFkTrie::new(cfg)?),
    })
}
