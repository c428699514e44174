use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::config::{exceeds_max_load, Config};
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, EdgeSymbol};
use crate::trie::table::KeyTable;
use crate::trie::{AddOutcome, Growth, IdRemap, NodeId, TrieBackend, UNMAPPED};

/// m-Bonsai trie: a node is the slot holding the key `parent * sigma + symbol`,
/// and its id is that slot index.
///
/// The root is stored like any other node under the reserved key
/// `(0, sigma - 1)`; the top symbol code is never a real edge.
#[derive(Clone, Debug)]
pub struct BonsaiTrie<T> {
    table: T,
    alphabet: Alphabet,
    root: NodeId,
    max_log_m: u32,
    growths: u64,
}

impl<T: KeyTable> BonsaiTrie<T> {
    pub fn new(cfg: &Config) -> Result<Self> {
        cfg.validate()?;
        let alphabet = cfg.alphabet()?;
        let log_m = cfg.initial_capacity.trailing_zeros();
        let mut table = T::new(log_m, log_m + alphabet.sigma_bits());
        let root = table.insert(alphabet.root_marker().code() as u64)?;
        Ok(BonsaiTrie {
            table,
            alphabet,
            root,
            max_log_m: cfg.max_capacity().trailing_zeros(),
            growths: 0,
        })
    }

    #[inline]
    fn pack(&self, parent: NodeId, c: EdgeSymbol) -> u64 {
        (parent << self.alphabet.sigma_bits()) | c.code() as u64
    }

    #[inline]
    fn unpack(&self, key: u64) -> (NodeId, EdgeSymbol) {
        let bits = self.alphabet.sigma_bits();
        (key >> bits, EdgeSymbol((key & ((1 << bits) - 1)) as u32))
    }

    #[inline]
    fn is_live(&self, u: NodeId) -> bool {
        u < self.table.capacity() && self.table.is_occupied(u)
    }

    /// Probe distance of the node's slot from its initial address.
    pub fn displacement(&self, u: NodeId) -> Option<u64> {
        self.is_live(u).then(|| self.table.displacement(u))
    }

    pub fn table(&self) -> &T {
        &self.table
    }

    fn parent_and_edge(&self, u: NodeId) -> Result<(NodeId, EdgeSymbol)> {
        if u == self.root {
            return Err(Error::ContractViolation("the root has no parent"));
        }
        if !self.is_live(u) {
            return Err(Error::ContractViolation("node id is not live"));
        }
        Ok(self.unpack(self.table.key_at(u)))
    }

    /// Doubles the table, relocating every node after all of its ancestors.
    ///
    /// Slots are scanned left to right. From each unrelocated node the walk
    /// climbs towards the root until it meets a relocated ancestor, then
    /// re-inserts the recorded path top-down into the new table. Each node is
    /// relocated exactly once.
    fn grow(&mut self) -> Result<IdRemap> {
        let log_m = self.table.log_capacity();
        if log_m >= self.max_log_m {
            return Err(Error::ResourceExhausted {
                max_capacity: 1 << self.max_log_m,
            });
        }
        let m = self.table.capacity() as usize;
        let mut next = T::new(log_m + 1, log_m + 1 + self.alphabet.sigma_bits());
        let new_root = next.insert(self.alphabet.root_marker().code() as u64)?;

        let mut map = vec![UNMAPPED; m];
        let mut done = BitVec::new(m);
        done.set(self.root as usize, true);
        map[self.root as usize] = new_root;

        let mut path: Vec<(NodeId, EdgeSymbol)> = Vec::new();
        let mut relocated = 0u64;
        for i in 0..m as u64 {
            if !self.table.is_occupied(i) {
                continue;
            }
            let mut u = i;
            path.clear();
            while !done.get(u as usize) {
                let (parent, c) = self.unpack(self.table.key_at(u));
                path.push((u, c));
                u = parent;
            }
            let mut v = map[u as usize];
            for &(old, c) in path.iter().rev() {
                v = next.insert(self.pack(v, c))?;
                map[old as usize] = v;
                done.set(old as usize, true);
                relocated += 1;
            }
        }
        debug_assert_eq!(relocated + 1, self.table.len());
        debug_assert_eq!(next.len(), self.table.len());

        self.table = next;
        self.root = new_root;
        self.growths += 1;
        Ok(IdRemap::new(map, self.table.capacity()))
    }
}

impl<T: KeyTable> TrieBackend for BonsaiTrie<T> {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn root(&self) -> NodeId {
        self.root
    }

    fn node_count(&self) -> u64 {
        self.table.len()
    }

    fn capacity(&self) -> u64 {
        self.table.capacity()
    }

    fn growth_count(&self) -> u64 {
        self.growths
    }

    fn stable_ids(&self) -> bool {
        false
    }

    #[inline]
    fn get_child(&self, u: NodeId, c: EdgeSymbol) -> Option<NodeId> {
        if u >= self.table.capacity() {
            return None;
        }
        self.table.find(self.pack(u, c))
    }

    fn add_child(&mut self, u: NodeId, c: EdgeSymbol) -> Result<AddOutcome> {
        if c > self.alphabet.step() {
            return Err(Error::ContractViolation("edge symbol outside the alphabet"));
        }
        if !self.is_live(u) {
            return Err(Error::ContractViolation("node id is not live"));
        }
        let mut parent = u;
        let mut growth = Growth::None;
        if exceeds_max_load(self.table.len() + 1, self.table.capacity()) {
            let remap = self.grow()?;
            parent = remap.get(u).expect("live node missing from remap");
            growth = Growth::Remapped(remap);
        }
        let id = self.table.insert(self.pack(parent, c)).map_err(|_| {
            Error::ContractViolation("child with this symbol already exists")
        })?;
        Ok(AddOutcome { id, growth })
    }

    fn parent(&self, u: NodeId) -> Result<NodeId> {
        self.parent_and_edge(u).map(|(p, _)| p)
    }

    fn edge(&self, u: NodeId) -> Result<EdgeSymbol> {
        self.parent_and_edge(u).map(|(_, c)| c)
    }

    fn for_each_node(&self, f: &mut dyn FnMut(NodeId, NodeId, EdgeSymbol)) {
        for slot in 0..self.table.capacity() {
            if slot != self.root && self.table.is_occupied(slot) {
                let (p, c) = self.unpack(self.table.key_at(slot));
                f(slot, p, c);
            }
        }
    }

    fn memory_bytes(&self) -> usize {
        self.table.memory_bytes()
    }
}
