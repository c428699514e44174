//! Trie-shape statistics and path-decomposition height bounds.

use alloc::vec::Vec;

use crate::dict::Dictionary;
use crate::error::{Error, Result};
use crate::nlm::LabelView;
use crate::symbol::TERMINATOR;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ShapeStats {
    /// Mean depth of labeled nodes, counting only labeled ancestors.
    pub ave_height: f64,
    /// Fraction of all nodes that are step nodes.
    pub steps_pct: f64,
    /// Mean label length over labeled nodes, counting the terminator where
    /// the label has one.
    pub ave_nll: f64,
    pub node_count: u64,
    pub step_count: u64,
}

pub fn shape_stats(dict: &Dictionary) -> Result<ShapeStats> {
    let (mut labeled, mut steps, mut depth_sum, mut nll_sum) = (0u64, 0u64, 0u64, 0u64);
    dict.traverse(&mut |n| match n.payload {
        LabelView::Step => steps += 1,
        LabelView::Node { label, .. } => {
            labeled += 1;
            depth_sum += n.depth as u64;
            nll_sum += label.len() as u64 + u64::from(!n.terminal);
        }
    })?;
    if labeled == 0 {
        return Ok(ShapeStats {
            node_count: dict.node_count(),
            ..ShapeStats::default()
        });
    }
    let node_count = labeled + steps;
    if node_count != dict.node_count() {
        return Err(Error::Corruption("traversal missed trie nodes"));
    }
    Ok(ShapeStats {
        ave_height: depth_sum as f64 / labeled as f64,
        steps_pct: steps as f64 / node_count as f64,
        ave_nll: nll_sum as f64 / labeled as f64,
        node_count,
        step_count: steps,
    })
}

/// Every live keyword with the number of branching edges on its root path,
/// step edges excluded. Each such edge consumes one byte of the terminated
/// keyword, so the count never exceeds its length.
pub fn path_lengths(dict: &Dictionary) -> Result<Vec<(Vec<u8>, u32)>> {
    let mut out = Vec::new();
    dict.traverse(&mut |n| {
        if let LabelView::Node { value, .. } = n.payload {
            if !value.is_deleted() {
                out.push((n.key.to_vec(), n.depth));
            }
        }
    })?;
    Ok(out)
}

#[derive(Clone, Debug, Default)]
struct StaticNode {
    /// Sorted by byte.
    children: Vec<(u8, u32)>,
    leaves: u64,
}

/// Uncompacted byte trie over terminated keywords with per-node leaf counts.
#[derive(Clone, Debug)]
pub struct StaticTrie {
    nodes: Vec<StaticNode>,
}

impl StaticTrie {
    /// Builds the trie of `keys`; duplicates collapse.
    pub fn new<K: AsRef<[u8]>>(keys: &[K]) -> Self {
        let mut nodes = alloc::vec![StaticNode::default()];
        for key in keys {
            let mut u = 0usize;
            for &b in key.as_ref().iter().chain(core::iter::once(&TERMINATOR)) {
                u = match nodes[u].children.binary_search_by_key(&b, |c| c.0) {
                    Ok(i) => nodes[u].children[i].1 as usize,
                    Err(i) => {
                        let v = nodes.len();
                        nodes[u].children.insert(i, (b, v as u32));
                        nodes.push(StaticNode::default());
                        v
                    }
                };
            }
        }
        // children always have larger indices than their parent
        for u in (0..nodes.len()).rev() {
            let leaves = if nodes[u].children.is_empty() {
                1
            } else {
                nodes[u].children.iter().map(|&(_, v)| nodes[v as usize].leaves).sum()
            };
            nodes[u].leaves = leaves;
        }
        if keys.is_empty() {
            nodes[0].leaves = 0;
        }
        StaticTrie { nodes }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> u64 {
        self.nodes[0].leaves
    }

    pub fn leaves(&self, node: usize) -> u64 {
        self.nodes[node].leaves
    }

    pub fn children(&self, node: usize) -> impl Iterator<Item = (u8, usize)> + '_ {
        self.nodes[node].children.iter().map(|&(b, v)| (b, v as usize))
    }

    /// Mean number of light edges on a root-to-leaf path when every node
    /// continues its path into the child chosen by `pick`.
    ///
    /// Each light edge adds one to the depth of every leaf below it, so the
    /// total depth is a sum of independent per-node terms.
    fn average_depth(&self, pick: impl Fn(&[(u8, u32)], &[StaticNode]) -> u64) -> f64 {
        let n = self.leaf_count();
        if n == 0 {
            return 0.0;
        }
        let total: u64 = self
            .nodes
            .iter()
            .filter(|v| !v.children.is_empty())
            .map(|v| v.leaves - pick(&v.children, &self.nodes))
            .sum();
        total as f64 / n as f64
    }
}

/// Leaves under the heaviest child; the first (smallest byte) wins ties.
fn heaviest(children: &[(u8, u32)], nodes: &[StaticNode]) -> u64 {
    children.iter().map(|&(_, v)| nodes[v as usize].leaves).fold(0, u64::max)
}

fn lightest(children: &[(u8, u32)], nodes: &[StaticNode]) -> u64 {
    children
        .iter()
        .map(|&(_, v)| nodes[v as usize].leaves)
        .min()
        .unwrap_or(0)
}

/// Average height of the centroid path decomposition of `keys`: the lowest
/// achievable by any path decomposition, and so by any insertion order.
pub fn centroid_bound<K: AsRef<[u8]>>(keys: &[K]) -> f64 {
    StaticTrie::new(keys).average_depth(heaviest)
}

/// Average height when every path continues into the child with the fewest leaves.
pub fn anticentroid_bound<K: AsRef<[u8]>>(keys: &[K]) -> f64 {
    StaticTrie::new(keys).average_depth(lightest)
}
