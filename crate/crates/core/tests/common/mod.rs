//! Reference models and synthetic corpora shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use dynpdt::hashing::SplitMix64;
use dynpdt::trie::{AddOutcome, Growth, NodeId, TrieBackend};
use dynpdt::{Alphabet, Config, DeleteOutcome, EdgeSymbol, Error, InsertOutcome, LabelMapKind, Repr};

/// Plain ordered map with the dictionary's observable API.
#[derive(Clone, Debug, Default)]
pub struct OracleDictionary {
    map: BTreeMap<Vec<u8>, u32>,
}

impl OracleDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: &[u8], value: u32) -> InsertOutcome {
        match self.map.entry(key.to_vec()) {
            std::collections::btree_map::Entry::Occupied(_) => InsertOutcome::AlreadyPresent,
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
                InsertOutcome::Inserted
            }
        }
    }

    pub fn lookup(&self, key: &[u8]) -> Option<u32> {
        self.map.get(key).copied()
    }

    pub fn delete(&mut self, key: &[u8]) -> DeleteOutcome {
        match self.map.remove(key) {
            Some(_) => DeleteOutcome::Deleted,
            None => DeleteOutcome::NotFound,
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn entries(&self) -> BTreeSet<(Vec<u8>, u32)> {
        self.map.iter().map(|(k, v)| (k.clone(), *v)).collect()
    }
}

/// Adjacency-map trie with dense ids and explicit parent and edge arrays.
#[derive(Clone, Debug)]
pub struct OracleTrie {
    alphabet: Alphabet,
    children: Vec<HashMap<EdgeSymbol, NodeId>>,
    parents: Vec<(NodeId, EdgeSymbol)>,
}

impl OracleTrie {
    pub fn new(alphabet: Alphabet) -> Self {
        OracleTrie {
            alphabet,
            children: vec![HashMap::new()],
            parents: vec![(0, EdgeSymbol(0))],
        }
    }
}

impl TrieBackend for OracleTrie {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn root(&self) -> NodeId {
        0
    }

    fn node_count(&self) -> u64 {
        self.children.len() as u64
    }

    fn capacity(&self) -> u64 {
        (self.children.len() as u64).next_power_of_two()
    }

    fn growth_count(&self) -> u64 {
        0
    }

    fn stable_ids(&self) -> bool {
        true
    }

    fn get_child(&self, u: NodeId, c: EdgeSymbol) -> Option<NodeId> {
        self.children.get(u as usize)?.get(&c).copied()
    }

    fn add_child(&mut self, u: NodeId, c: EdgeSymbol) -> dynpdt::Result<AddOutcome> {
        let id = self.children.len() as NodeId;
        let kids = self
            .children
            .get_mut(u as usize)
            .ok_or(Error::ContractViolation("node id is not live"))?;
        if kids.insert(c, id).is_some() {
            return Err(Error::ContractViolation("child with this symbol already exists"));
        }
        self.children.push(HashMap::new());
        self.parents.push((u, c));
        Ok(AddOutcome { id, growth: Growth::None })
    }

    fn parent(&self, u: NodeId) -> dynpdt::Result<NodeId> {
        self.edge(u).map(|_| self.parents[u as usize].0)
    }

    fn edge(&self, u: NodeId) -> dynpdt::Result<EdgeSymbol> {
        match u {
            0 => Err(Error::ContractViolation("the root has no parent")),
            u if u as usize >= self.parents.len() => Err(Error::ContractViolation("node id is not live")),
            u => Ok(self.parents[u as usize].1),
        }
    }

    fn for_each_node(&self, f: &mut dyn FnMut(NodeId, NodeId, EdgeSymbol)) {
        for (id, &(p, c)) in self.parents.iter().enumerate().skip(1) {
            f(id as NodeId, p, c);
        }
    }

    fn memory_bytes(&self) -> usize {
        0
    }
}

pub fn all_combos() -> impl Iterator<Item = (Repr, LabelMapKind)> {
    Repr::ALL
        .into_iter()
        .flat_map(|r| LabelMapKind::ALL.into_iter().map(move |k| (r, k)))
}

pub fn config(repr: Repr, nlm: LabelMapKind, lambda: u32, ell: u32) -> Config {
    Config::new(repr, nlm).with_lambda(lambda).with_ell(ell)
}

pub fn shuffled<T: Clone>(items: &[T], seed: u64) -> Vec<T> {
    let mut v = items.to_vec();
    SplitMix64::new(seed).shuffle(&mut v);
    v
}

/// Draws until `n` distinct keys were produced, keeping first-seen order.
fn distinct(n: usize, mut draw: impl FnMut() -> Vec<u8>) -> Vec<Vec<u8>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k = draw();
        if seen.insert(k.clone()) {
            out.push(k);
        }
    }
    out
}

/// Short lowercase words, length 1 to 12, letters skewed towards the front of the alphabet.
pub fn random_words(n: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut g = SplitMix64::new(seed);
    distinct(n, || {
        let len = 1 + g.below(6) + g.below(7);
        (0..len)
            .map(|_| b'a' + g.below(26).min(g.below(26)) as u8)
            .collect()
    })
}

/// Fixed-length 12-mers over `ACGT`.
pub fn kmers(n: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut g = SplitMix64::new(seed);
    distinct(n, || (0..12).map(|_| b"ACGT"[g.below(4) as usize]).collect())
}

const SYLLABLES: [&str; 24] = [
    "ka", "ro", "mi", "ta", "ne", "lu", "so", "vi", "da", "pe", "zu", "ho", "ra", "bi", "go", "fe",
    "ni", "ma", "tu", "le", "sa", "ko", "wi", "ye",
];
const TLDS: [&str; 7] = ["com", "org", "net", "jp", "de", "io", "co.uk"];
const SEGMENTS: [&str; 20] = [
    "index", "news", "article", "blog", "wiki", "en", "ja", "category", "tag", "user", "products",
    "search", "about", "archive", "2019", "2020", "static", "img", "docs", "api",
];

/// Web-crawl style URLs: a few thousand hosts, each with many paths.
pub fn urls(n: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut g = SplitMix64::new(seed);
    let host_count = (n / 25).max(4);
    let hosts: Vec<String> = (0..host_count)
        .map(|_| {
            let scheme = if g.below(3) == 0 { "https" } else { "http" };
            let www = if g.below(2) == 0 { "www." } else { "" };
            let name: String = (0..2 + g.below(3)).map(|_| SYLLABLES[g.below(24) as usize]).collect();
            format!("{scheme}://{www}{name}.{}", TLDS[g.below(7) as usize])
        })
        .collect();
    distinct(n, || {
        let mut s = hosts[g.below(host_count as u64).min(g.below(host_count as u64)) as usize].clone();
        for _ in 0..1 + g.below(4) {
            s.push('/');
            s.push_str(SEGMENTS[g.below(20) as usize]);
        }
        match g.below(3) {
            0 => s.push_str(&format!("/{}", g.below(100_000))),
            1 => s.push_str(&format!("?id={}", g.below(10_000))),
            _ => s.push_str(".html"),
        }
        s.into_bytes()
    })
}

/// The three corpora of the shape experiments.
pub fn shape_corpora(n: usize, seed: u64) -> Vec<(&'static str, Vec<Vec<u8>>)> {
    vec![
        ("words", random_words(n, seed)),
        ("kmers", kmers(n, seed ^ 1)),
        ("urls", urls(n, seed ^ 2)),
    ]
}

/// Edge (as decoded branch) into each node paired with the node's payload;
/// the root appears with no edge.
/// Incoming edge as (byte or step, offset), and the node's payload.
pub type NodeShape = (Option<(Option<u8>, u32)>, dynpdt::nlm::OwnedLabel);

pub fn structure(d: &dynpdt::Dictionary) -> BTreeSet<NodeShape> {
    let a = d.trie().alphabet();
    let mut out = BTreeSet::new();
    let root = d.trie().root();
    out.insert((None, d.labels().access(root).unwrap().unwrap().to_owned()));
    d.trie().for_each_node(&mut |id, _, c| {
        let edge = match a.decode(c).unwrap() {
            dynpdt::Branch::Byte(b, i) => (Some(b), i),
            dynpdt::Branch::Step => (None, 0),
        };
        out.insert((Some(edge), d.labels().access(id).unwrap().unwrap().to_owned()));
    });
    out
}
