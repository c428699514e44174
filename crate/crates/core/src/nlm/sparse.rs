//! Grouped label maps: records of `ell` consecutive ids share one buffer.
//!
//! For m-Bonsai ids, a bitmap marks which ids have a record and the position
//! of a record inside its group is the popcount of the bitmap over the group
//! prefix. For FK-hash ids, which are dense, the position is simply
//! `id % ell` and no bitmap is needed.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::mem::size_of;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::keyword::Value;
use crate::nlm::{record, LabelView, NodeLabelMap};
use crate::trie::{IdRemap, NodeId};

type Group = Option<Box<[u8]>>;

fn group_bytes(group: &Group) -> &[u8] {
    group.as_deref().unwrap_or(&[])
}

/// Rebuilds `group` with the record of `payload` spliced in at byte offset `at`.
fn splice(group: &mut Group, at: usize, payload: LabelView<'_>) {
    let old = group_bytes(group);
    let mut buf = Vec::with_capacity(old.len() + record::encoded_len(payload));
    buf.extend_from_slice(&old[..at]);
    record::encode(payload, &mut buf);
    buf.extend_from_slice(&old[at..]);
    *group = Some(buf.into_boxed_slice());
}

fn overwrite_value(buf: &mut [u8], at: usize, value: Value) -> Result<()> {
    let value_at = record::decode(buf, at)?
        .value_at
        .ok_or(Error::ContractViolation("step nodes carry no value"))?;
    record::write_value(buf, value_at, value);
    Ok(())
}

/// Sparse label map for slot-addressed (m-Bonsai) ids.
#[derive(Clone, Debug)]
pub struct SparseBonsaiLabelMap {
    ell: usize,
    present: BitVec,
    groups: Vec<Group>,
    len: u64,
}

impl SparseBonsaiLabelMap {
    pub fn new(ell: u32) -> Self {
        assert!(matches!(ell, 8 | 16 | 32 | 64));
        SparseBonsaiLabelMap {
            ell: ell as usize,
            present: BitVec::new(0),
            groups: Vec::new(),
            len: 0,
        }
    }

    /// Records stored before `id` within its group.
    #[inline]
    fn rank(&self, id: usize) -> usize {
        let from = id - id % self.ell;
        debug_assert!(BitVec::words_spanned(from, id) <= self.ell.div_ceil(64));
        self.present.count_ones(from, id)
    }

    /// Group index and byte offset of the record slot for `id`.
    fn locate(&self, id: usize) -> Result<(usize, usize)> {
        let g = id / self.ell;
        Ok((g, record::nth(group_bytes(&self.groups[g]), self.rank(id))?))
    }

    fn has(&self, id: NodeId) -> bool {
        (id as usize) < self.present.len() && self.present.get(id as usize)
    }

    fn resize(&mut self, capacity: usize) {
        let mut present = BitVec::new(capacity);
        for i in 0..self.present.len().min(capacity) {
            if self.present.get(i) {
                present.set(i, true);
            }
        }
        self.present = present;
        self.groups.resize(capacity.div_ceil(self.ell), None);
    }

    /// Bytes of the group buffer holding `id`, for inspection.
    pub fn group_of(&self, id: NodeId) -> &[u8] {
        group_bytes(&self.groups[id as usize / self.ell])
    }
}

impl NodeLabelMap for SparseBonsaiLabelMap {
    fn associate(&mut self, id: NodeId, payload: LabelView<'_>) -> Result<()> {
        let i = id as usize;
        if i >= self.present.len() {
            self.resize((i + 1).next_power_of_two());
        }
        if self.present.get(i) {
            return Err(Error::ContractViolation("node already has a label"));
        }
        let (g, at) = self.locate(i)?;
        splice(&mut self.groups[g], at, payload);
        self.present.set(i, true);
        self.len += 1;
        Ok(())
    }

    fn access(&self, id: NodeId) -> Result<Option<LabelView<'_>>> {
        if !self.has(id) {
            return Ok(None);
        }
        let (g, at) = self.locate(id as usize)?;
        Ok(Some(record::decode(group_bytes(&self.groups[g]), at)?.view))
    }

    fn update_value(&mut self, id: NodeId, value: Value) -> Result<()> {
        if !self.has(id) {
            return Err(Error::ContractViolation("node has no label"));
        }
        let (g, at) = self.locate(id as usize)?;
        let buf = self.groups[g].as_mut().ok_or(Error::Corruption("present id in an empty group"))?;
        overwrite_value(buf, at, value)
    }

    fn remap(&mut self, remap: &IdRemap) -> Result<()> {
        let mut moved: Vec<(NodeId, &[u8])> = Vec::with_capacity(self.len as usize);
        for (g, group) in self.groups.iter().enumerate() {
            let buf = group_bytes(group);
            let mut pos = 0;
            let base = g * self.ell;
            for i in base..(base + self.ell).min(self.present.len()) {
                if !self.present.get(i) {
                    continue;
                }
                let end = record::skip(buf, pos)?;
                let new = remap
                    .get(i as NodeId)
                    .ok_or(Error::ContractViolation("remap drops a labeled node"))?;
                if new >= remap.new_capacity() {
                    return Err(Error::ContractViolation("remap target out of range"));
                }
                moved.push((new, &buf[pos..end]));
                pos = end;
            }
        }
        moved.sort_unstable_by_key(|&(id, _)| id);
        if moved.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::ContractViolation("remap is not injective"));
        }

        let capacity = remap.new_capacity() as usize;
        let mut present = BitVec::new(capacity);
        let mut groups: Vec<Group> = Vec::new();
        groups.resize(capacity.div_ceil(self.ell), None);
        let mut start = 0;
        while start < moved.len() {
            let g = moved[start].0 as usize / self.ell;
            let end = start + moved[start..].partition_point(|&(id, _)| id as usize / self.ell == g);
            let mut buf = Vec::with_capacity(moved[start..end].iter().map(|r| r.1.len()).sum());
            for &(id, rec) in &moved[start..end] {
                present.set(id as usize, true);
                buf.extend_from_slice(rec);
            }
            groups[g] = Some(buf.into_boxed_slice());
            start = end;
        }
        self.present = present;
        self.groups = groups;
        Ok(())
    }

    fn reserve_ids(&mut self, capacity: u64) {
        if capacity as usize > self.present.len() {
            self.resize(capacity as usize);
        }
    }

    fn len(&self) -> u64 {
        self.len
    }

    fn memory_bytes(&self) -> usize {
        self.present.memory_bytes()
            + self.groups.capacity() * size_of::<Group>()
            + self.groups.iter().map(|g| group_bytes(g).len()).sum::<usize>()
    }
}

/// Sparse label map for densely assigned (FK-hash) ids; records are appended in id order.
#[derive(Clone, Debug)]
pub struct SparseFkLabelMap {
    ell: usize,
    groups: Vec<Box<[u8]>>,
    len: u64,
}

impl SparseFkLabelMap {
    pub fn new(ell: u32) -> Self {
        assert!(matches!(ell, 8 | 16 | 32 | 64));
        SparseFkLabelMap {
            ell: ell as usize,
            groups: Vec::new(),
            len: 0,
        }
    }

    fn locate(&self, id: NodeId) -> Result<Option<(usize, usize)>> {
        if id >= self.len {
            return Ok(None);
        }
        let g = id as usize / self.ell;
        Ok(Some((g, record::nth(&self.groups[g], id as usize % self.ell)?)))
    }

    /// Records in the group holding `id`.
    pub fn group_len(&self, id: NodeId) -> Result<usize> {
        let buf = &self.groups[id as usize / self.ell];
        let mut pos = 0;
        let mut n = 0;
        while pos < buf.len() {
            pos = record::skip(buf, pos)?;
            n += 1;
        }
        Ok(n)
    }
}

impl NodeLabelMap for SparseFkLabelMap {
    fn associate(&mut self, id: NodeId, payload: LabelView<'_>) -> Result<()> {
        if id < self.len {
            return Err(Error::ContractViolation("node already has a label"));
        }
        if id > self.len {
            return Err(Error::ContractViolation("dense ids must be labeled in creation order"));
        }
        if (id as usize).is_multiple_of(self.ell) {
            let mut buf = Vec::with_capacity(record::encoded_len(payload));
            record::encode(payload, &mut buf);
            self.groups.push(buf.into_boxed_slice());
        } else {
            let last = self.groups.last_mut().expect("group exists for a non-leading id");
            let mut group = Some(core::mem::take(last));
            let at = group_bytes(&group).len();
            splice(&mut group, at, payload);
            *last = group.expect("spliced group");
        }
        self.len += 1;
        Ok(())
    }

    fn access(&self, id: NodeId) -> Result<Option<LabelView<'_>>> {
        match self.locate(id)? {
            Some((g, at)) => Ok(Some(record::decode(&self.groups[g], at)?.view)),
            None => Ok(None),
        }
    }

    fn update_value(&mut self, id: NodeId, value: Value) -> Result<()> {
        let (g, at) = self
            .locate(id)?
            .ok_or(Error::ContractViolation("node has no label"))?;
        overwrite_value(&mut self.groups[g], at, value)
    }

    fn remap(&mut self, remap: &IdRemap) -> Result<()> {
        let identity = (0..self.len).all(|id| remap.get(id) == Some(id));
        if identity {
            Ok(())
        } else {
            Err(Error::ContractViolation("dense ids cannot be remapped"))
        }
    }

    fn reserve_ids(&mut self, _capacity: u64) {}

    fn len(&self) -> u64 {
        self.len
    }

    fn memory_bytes(&self) -> usize {
        self.groups.capacity() * size_of::<Box<[u8]>>()
            + self.groups.iter().map(|g| g.len()).sum::<usize>()
    }
}
