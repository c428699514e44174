//! The keyword dictionary: incremental path decomposition over a trie
//! backend and a node-label map.
//!
//! Every keyword is stored in exactly one node. Descending from the root, the
//! residual keyword `s` is compared with the node label `L` (both terminated).
//! At the first mismatch `i` the descent follows the edge `(s[i], i)` and drops
//! `i + 1` bytes of `s`. Offsets `i >= lambda` first walk `i / lambda` step
//! edges and then use `i % lambda`. An insert that falls off the trie creates
//! the missing step nodes and one new node labeled with the rest of `s`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::keyword::{self, Keyword, Value};
use crate::nlm::{new_label_map, LabelView, NodeLabelMap};
use crate::symbol::{Alphabet, Branch, EdgeSymbol, TERMINATOR};
use crate::trie::{new_backend, Growth, NodeId, TrieBackend};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted,
    AlreadyPresent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeleteOutcome {
    Deleted,
    NotFound,
}

/// One node reported by [`Dictionary::traverse`].
#[derive(Clone, Copy, Debug)]
pub struct NodeVisit<'a> {
    pub id: NodeId,
    /// Non-step ancestors of the node.
    pub depth: u32,
    pub payload: LabelView<'a>,
    /// The full keyword (without terminator) of a labeled node; empty for step nodes.
    pub key: &'a [u8],
    /// Entered through a terminator edge: the keyword ends at the edge and
    /// the label carries no terminator of its own.
    pub terminal: bool,
}

/// Index of the first mismatch between the terminated residual `s` and the
/// terminated label `label ++ [T]`, or `None` when they are equal.
///
/// A node reached through a terminator edge has an empty label and is
/// matched by the empty residual.
fn mismatch(s: &[u8], label: &[u8]) -> Result<Option<usize>> {
    if s.is_empty() {
        return match label.is_empty() {
            true => Ok(None),
            false => Err(Error::Corruption("keyword ends above a labeled node")),
        };
    }
    let common = s.len().min(label.len());
    if let Some(i) = (0..common).find(|&i| s[i] != label[i]) {
        return Ok(Some(i));
    }
    match s.get(label.len()) {
        Some(&TERMINATOR) if s.len() == label.len() + 1 => Ok(None),
        Some(_) => Ok(Some(label.len())),
        None => Err(Error::Corruption("residual keyword shorter than a node label")),
    }
}

enum Probe {
    Found(Value),
    Branch { at: usize, byte: u8 },
}

pub struct Dictionary {
    cfg: Config,
    alphabet: Alphabet,
    trie: Box<dyn TrieBackend + Send + Sync>,
    labels: Box<dyn NodeLabelMap + Send + Sync>,
    key_count: u64,
}

impl core::fmt::Debug for Dictionary {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Dictionary")
            .field("cfg", &self.cfg)
            .field("key_count", &self.key_count)
            .field("node_count", &self.trie.node_count())
            .finish()
    }
}

impl Dictionary {
    pub fn new(cfg: Config) -> Result<Self> {
        let trie = new_backend(&cfg)?;
        let labels = new_label_map(&cfg, trie.capacity())?;
        Ok(Dictionary {
            alphabet: cfg.alphabet()?,
            cfg,
            trie,
            labels,
            key_count: 0,
        })
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// Live (not deleted) keywords.
    pub fn len(&self) -> u64 {
        self.key_count
    }

    pub fn is_empty(&self) -> bool {
        self.key_count == 0
    }

    pub fn node_count(&self) -> u64 {
        self.trie.node_count()
    }

    pub fn growth_count(&self) -> u64 {
        self.trie.growth_count()
    }

    pub fn trie(&self) -> &dyn TrieBackend {
        &*self.trie
    }

    pub fn labels(&self) -> &dyn NodeLabelMap {
        &*self.labels
    }

    /// Bytes held by the trie backend and the label map.
    pub fn memory_bytes(&self) -> usize {
        self.trie.memory_bytes() + self.labels.memory_bytes()
    }

    fn probe(&self, u: NodeId, s: &[u8]) -> Result<Probe> {
        match self.labels.access(u)? {
            Some(LabelView::Node { label, value }) => Ok(match mismatch(s, label)? {
                None => Probe::Found(value),
                Some(at) => Probe::Branch { at, byte: s[at] },
            }),
            Some(LabelView::Step) => Err(Error::Corruption("descent stopped on a step node")),
            None => Err(Error::Corruption("descent reached a node without a label")),
        }
    }

    /// Follows the step chain and branch edge for a mismatch at `at`.
    fn follow(&self, u: NodeId, at: usize, byte: u8) -> Option<NodeId> {
        let lambda = self.alphabet.lambda() as usize;
        let mut cur = u;
        for _ in 0..at / lambda {
            cur = self.trie.get_child(cur, self.alphabet.step())?;
        }
        self.trie
            .get_child(cur, self.alphabet.byte(byte, (at % lambda) as u32))
    }

    fn add_child(&mut self, u: NodeId, c: EdgeSymbol) -> Result<NodeId> {
        let out = self.trie.add_child(u, c)?;
        match out.growth {
            Growth::None => {}
            Growth::Rehashed => self.labels.reserve_ids(self.trie.capacity()),
            Growth::Remapped(remap) => self.labels.remap(&remap)?,
        }
        Ok(out.id)
    }

    /// Adds `key` with `value`. Re-inserting a deleted keyword revives it.
    pub fn insert(&mut self, key: &[u8], value: u32) -> Result<InsertOutcome> {
        let value = Value::new(value)?;
        let kw = Keyword::new(key)?;
        let full = kw.terminated();
        let root = self.trie.root();
        if self.labels.access(root)?.is_none() {
            self.labels.associate(root, LabelView::Node { label: kw.as_bytes(), value })?;
            self.key_count += 1;
            return Ok(InsertOutcome::Inserted);
        }

        let lambda = self.alphabet.lambda() as usize;
        let mut u = root;
        let mut s = full;
        loop {
            let (at, byte) = match self.probe(u, s)? {
                Probe::Found(old) if old.is_deleted() => {
                    self.labels.update_value(u, value)?;
                    self.key_count += 1;
                    return Ok(InsertOutcome::Inserted);
                }
                Probe::Found(_) => return Ok(InsertOutcome::AlreadyPresent),
                Probe::Branch { at, byte } => (at, byte),
            };
            if let Some(v) = self.follow(u, at, byte) {
                u = v;
                s = &s[at + 1..];
                continue;
            }

            let mut cur = u;
            let mut steps = 0;
            while steps < at / lambda {
                let step = self.alphabet.step();
                cur = match self.trie.get_child(cur, step) {
                    Some(v) => v,
                    None => {
                        let v = self.add_child(cur, step)?;
                        self.labels.associate(v, LabelView::Step)?;
                        v
                    }
                };
                steps += 1;
            }
            let offset = at - steps * lambda;
            debug_assert!(offset < lambda && at == steps * lambda + offset);
            let v = self.add_child(cur, self.alphabet.byte(byte, offset as u32))?;
            let label = match byte {
                TERMINATOR => &[][..],
                _ => &s[at + 1..s.len() - 1],
            };
            self.labels.associate(v, LabelView::Node { label, value })?;
            self.key_count += 1;
            return Ok(InsertOutcome::Inserted);
        }
    }

    /// Node holding `key`, with its current value (possibly the deletion marker).
    fn locate(&self, key: &[u8]) -> Result<Option<(NodeId, Value)>> {
        if keyword::validate(key).is_err() {
            return Ok(None);
        }
        let root = self.trie.root();
        if self.labels.access(root)?.is_none() {
            return Ok(None);
        }
        let kw = Keyword::new(key)?;
        let mut s = kw.terminated();
        let mut u = root;
        loop {
            match self.probe(u, s)? {
                Probe::Found(v) => return Ok(Some((u, v))),
                Probe::Branch { at, byte } => match self.follow(u, at, byte) {
                    Some(v) => {
                        u = v;
                        s = &s[at + 1..];
                    }
                    None => return Ok(None),
                },
            }
        }
    }

    pub fn lookup(&self, key: &[u8]) -> Result<Option<u32>> {
        Ok(self
            .locate(key)?
            .and_then(|(_, v)| (!v.is_deleted()).then_some(v.get())))
    }

    pub fn contains(&self, key: &[u8]) -> Result<bool> {
        self.lookup(key).map(|v| v.is_some())
    }

    /// Marks `key` deleted. The node and its label stay in place for reuse.
    pub fn delete(&mut self, key: &[u8]) -> Result<DeleteOutcome> {
        match self.locate(key)? {
            Some((u, v)) if !v.is_deleted() => {
                self.labels.update_value(u, Value::DELETED)?;
                self.key_count -= 1;
                Ok(DeleteOutcome::Deleted)
            }
            _ => Ok(DeleteOutcome::NotFound),
        }
    }

    /// Depth-first walk over all nodes, children in symbol order, rebuilding
    /// each labeled node's keyword on the way down.
    pub fn traverse(&self, visit: &mut dyn FnMut(NodeVisit<'_>)) -> Result<()> {
        let root = self.trie.root();
        let Some(root_payload) = self.labels.access(root)? else {
            return Ok(());
        };

        let mut edges: Vec<(NodeId, EdgeSymbol, NodeId)> = Vec::with_capacity(self.trie.node_count() as usize);
        self.trie.for_each_node(&mut |id, parent, c| edges.push((parent, c, id)));
        edges.sort_unstable();
        let children = |u: NodeId| {
            let lo = edges.partition_point(|e| e.0 < u);
            let hi = edges.partition_point(|e| e.0 <= u);
            &edges[lo..hi]
        };

        struct Frame {
            id: NodeId,
            depth: u32,
            /// Terminated keyword of the nearest labeled ancestor-or-self.
            owner_key: Vec<u8>,
            /// Bytes of `owner_key` that precede the owner's label.
            owner_prefix: usize,
            /// Step edges between the owner and this node.
            steps: usize,
            terminal: bool,
        }

        let lambda = self.alphabet.lambda() as usize;
        let mut root_key = root_payload.label().to_vec();
        root_key.push(TERMINATOR);
        let mut stack = alloc::vec![Frame {
            id: root,
            depth: 0,
            owner_key: root_key,
            owner_prefix: 0,
            steps: 0,
            terminal: false,
        }];
        while let Some(f) = stack.pop() {
            let payload = self
                .labels
                .access(f.id)?
                .ok_or(Error::Corruption("trie node without a label record"))?;
            let key = if payload.is_step() {
                &[][..]
            } else {
                &f.owner_key[..f.owner_key.len() - 1]
            };
            visit(NodeVisit {
                id: f.id,
                depth: f.depth,
                payload,
                key,
                terminal: f.terminal,
            });
            for &(_, c, child) in children(f.id).iter().rev() {
                match self.alphabet.decode(c)? {
                    Branch::Step => stack.push(Frame {
                        id: child,
                        depth: f.depth,
                        owner_key: f.owner_key.clone(),
                        owner_prefix: f.owner_prefix,
                        steps: f.steps + 1,
                        terminal: false,
                    }),
                    Branch::Byte(b, r) => {
                        let at = f.owner_prefix + f.steps * lambda + r as usize;
                        if at >= f.owner_key.len() {
                            return Err(Error::Corruption("branch offset beyond the parent label"));
                        }
                        let child_label = match self.labels.access(child)? {
                            Some(LabelView::Node { label, .. }) => label,
                            _ => return Err(Error::Corruption("branch edge leads to an unlabeled node")),
                        };
                        let terminal = b == TERMINATOR;
                        if terminal && !child_label.is_empty() {
                            return Err(Error::Corruption("terminator edge leads to a nonempty label"));
                        }
                        let mut owner_key = Vec::with_capacity(at + 2 + child_label.len());
                        owner_key.extend_from_slice(&f.owner_key[..at]);
                        if !terminal {
                            owner_key.push(b);
                            owner_key.extend_from_slice(child_label);
                        }
                        owner_key.push(TERMINATOR);
                        stack.push(Frame {
                            id: child,
                            depth: f.depth + 1,
                            owner_key,
                            owner_prefix: at + 1,
                            steps: 0,
                            terminal,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Every live keyword with its value, in depth-first order.
    pub fn enumerate(&self) -> Result<Vec<(Vec<u8>, u32)>> {
        let mut out = Vec::with_capacity(self.key_count as usize);
        self.traverse(&mut |n| {
            if let LabelView::Node { value, .. } = n.payload {
                if !value.is_deleted() {
                    out.push((n.key.to_vec(), value.get()));
                }
            }
        })?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_positions() {
        assert_eq!(mismatch(b"technics\0", b"technology").unwrap(), Some(5));
        assert_eq!(mismatch(b"cs\0", b"cs").unwrap(), None);
        assert_eq!(mismatch(b"l\0", b"lly").unwrap(), Some(1));
        assert_eq!(mismatch(b"abc\0", b"ab").unwrap(), Some(2));
        assert_eq!(mismatch(b"\0", b"").unwrap(), None);
        assert_eq!(mismatch(b"", b"").unwrap(), None);
        assert!(mismatch(b"", b"x").is_err());
        assert!(mismatch(b"ab", b"abc").is_err());
    }

    #[test]
    fn empty_dictionary() {
        let d = Dictionary::new(Config::default()).unwrap();
        assert_eq!(d.lookup(b"x").unwrap(), None);
        assert!(d.enumerate().unwrap().is_empty());
        assert_eq!(d.node_count(), 1);
    }

    #[test]
    fn invalid_input() {
        let mut d = Dictionary::new(Config::default()).unwrap();
        assert!(matches!(d.insert(b"", 1), Err(Error::InvalidKeyword(_))));
        assert!(matches!(d.insert(b"a\0", 1), Err(Error::InvalidKeyword(_))));
        assert!(matches!(d.insert(b"a", u32::MAX), Err(Error::ReservedValue(_))));
        assert_eq!(d.lookup(b"").unwrap(), None);
        assert_eq!(d.delete(b"a\0b").unwrap(), DeleteOutcome::NotFound);
    }
}
