use crate::bits::PackedVec;
use crate::config::{exceeds_max_load, Config};
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, EdgeSymbol};
use crate::trie::table::KeyTable;
use crate::trie::{AddOutcome, Growth, NodeId, TrieBackend};

/// FK-hash trie: slots hold `parent * sigma + symbol` keys and a parallel
/// array holds the dense id assigned when each node was created.
///
/// The root has id 0 and no slot. Looking up a node's parent or edge by id
/// has no index and scans the table; bulk traversal goes through
/// [`TrieBackend::for_each_node`].
#[derive(Clone, Debug)]
pub struct FkTrie<T> {
    table: T,
    ids: PackedVec,
    next_id: u64,
    alphabet: Alphabet,
    max_log_m: u32,
    growths: u64,
}

impl<T: KeyTable> FkTrie<T> {
    pub fn new(cfg: &Config) -> Result<Self> {
        cfg.validate()?;
        let alphabet = cfg.alphabet()?;
        let log_m = cfg.initial_capacity.trailing_zeros();
        Ok(FkTrie {
            table: T::new(log_m, log_m + alphabet.sigma_bits()),
            ids: PackedVec::new(1 << log_m, log_m, 0),
            next_id: 1,
            alphabet,
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

    pub fn table(&self) -> &T {
        &self.table
    }

    /// Slot holding node `u`, found by scanning the id array.
    pub fn slot_of(&self, u: NodeId) -> Option<u64> {
        (0..self.table.capacity()).find(|&s| self.table.is_occupied(s) && self.ids.get(s as usize) == u)
    }

    fn parent_and_edge(&self, u: NodeId) -> Result<(NodeId, EdgeSymbol)> {
        if u == 0 {
            return Err(Error::ContractViolation("the root has no parent"));
        }
        if u >= self.next_id {
            return Err(Error::ContractViolation("node id is not live"));
        }
        let slot = self.slot_of(u).ok_or(Error::Corruption("live id missing from the table"))?;
        Ok(self.unpack(self.table.key_at(slot)))
    }

    /// Rehashes every slot into a table twice the size; ids move with their keys.
    fn grow(&mut self) -> Result<()> {
        let log_m = self.table.log_capacity();
        if log_m >= self.max_log_m {
            return Err(Error::ResourceExhausted {
                max_capacity: 1 << self.max_log_m,
            });
        }
        let mut table = T::new(log_m + 1, self.table.key_bits() + 1);
        let mut ids = PackedVec::new(1 << (log_m + 1), log_m + 1, 0);
        for s in 0..self.table.capacity() {
            if self.table.is_occupied(s) {
                let slot = table.insert(self.table.key_at(s))?;
                ids.set(slot as usize, self.ids.get(s as usize));
            }
        }
        self.table = table;
        self.ids = ids;
        self.growths += 1;
        Ok(())
    }
}

impl<T: KeyTable> TrieBackend for FkTrie<T> {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn root(&self) -> NodeId {
        0
    }

    fn node_count(&self) -> u64 {
        self.next_id
    }

    fn capacity(&self) -> u64 {
        self.table.capacity()
    }

    fn growth_count(&self) -> u64 {
        self.growths
    }

    fn stable_ids(&self) -> bool {
        true
    }

    #[inline]
    fn get_child(&self, u: NodeId, c: EdgeSymbol) -> Option<NodeId> {
        if u >= self.next_id {
            return None;
        }
        self.table
            .find(self.pack(u, c))
            .map(|s| self.ids.get(s as usize))
    }

    fn add_child(&mut self, u: NodeId, c: EdgeSymbol) -> Result<AddOutcome> {
        if c > self.alphabet.step() {
            return Err(Error::ContractViolation("edge symbol outside the alphabet"));
        }
        if u >= self.next_id {
            return Err(Error::ContractViolation("node id is not live"));
        }
        let mut growth = Growth::None;
        if exceeds_max_load(self.next_id + 1, self.table.capacity()) {
            self.grow()?;
            growth = Growth::Rehashed;
        }
        let slot = self.table.insert(self.pack(u, c)).map_err(|_| {
            Error::ContractViolation("child with this symbol already exists")
        })?;
        let id = self.next_id;
        self.ids.set(slot as usize, id);
        self.next_id += 1;
        Ok(AddOutcome { id, growth })
    }

    fn parent(&self, u: NodeId) -> Result<NodeId> {
        self.parent_and_edge(u).map(|(p, _)| p)
    }

    fn edge(&self, u: NodeId) -> Result<EdgeSymbol> {
        self.parent_and_edge(u).map(|(_, c)| c)
    }

    fn for_each_node(&self, f: &mut dyn FnMut(NodeId, NodeId, EdgeSymbol)) {
        for s in 0..self.table.capacity() {
            if self.table.is_occupied(s) {
                let (p, c) = self.unpack(self.table.key_at(s));
                f(self.ids.get(s as usize), p, c);
            }
        }
    }

    fn memory_bytes(&self) -> usize {
        self.table.memory_bytes() + self.ids.memory_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Branch;
    use crate::trie::{CompactFkTrie, PlainFkTrie};
    use alloc::vec::Vec;

    fn exercise<T: KeyTable>(mut t: FkTrie<T>) {
        let a = t.alphabet();
        assert_eq!((t.root(), t.node_count()), (0, 1));
        let c = a.encode(Branch::Byte(b'q', 0)).unwrap();
        let out = t.add_child(0, c).unwrap();
        assert_eq!(out.id, 1);
        assert_eq!((t.parent(1).unwrap(), t.edge(1).unwrap()), (0, c));
        assert!(t.parent(0).is_err());
        assert!(t.add_child(7, c).is_err());

        let mut log: Vec<(NodeId, EdgeSymbol)> = Vec::from([(0, c)]);
        let mut k = 0u32;
        while t.growth_count() < 2 {
            let parent = (k as u64 * 5) % t.node_count();
            let c = EdgeSymbol(k % (a.step().code() + 1));
            k += 1;
            if t.get_child(parent, c).is_none() {
                let out = t.add_child(parent, c).unwrap();
                assert_eq!(out.id, log.len() as u64 + 1);
                log.push((parent, c));
            }
        }
        for (i, &(p, c)) in log.iter().enumerate() {
            assert_eq!(t.get_child(p, c), Some(i as u64 + 1));
        }
    }

    #[test]
    fn plain_and_compact_contract() {
        let cfg = Config::default().with_initial_capacity(16);
        exercise(PlainFkTrie::new(&cfg).unwrap());
        exercise(CompactFkTrie::new(&cfg).unwrap());
    }
}
