use alloc::boxed::Box;
use alloc::vec::Vec;
use core::mem::size_of;

use crate::error::{Error, Result};
use crate::keyword::Value;
use crate::nlm::{record, LabelView, NodeLabelMap};
use crate::trie::{IdRemap, NodeId};

type Slot = Option<Box<[u8]>>;

/// One heap buffer per node, referenced from an array indexed by id.
#[derive(Clone, Debug, Default)]
pub struct PlainLabelMap {
    slots: Vec<Slot>,
    len: u64,
}

impl PlainLabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    fn buffer_mut(&mut self, id: NodeId) -> Option<&mut Box<[u8]>> {
        self.slots.get_mut(id as usize).and_then(Option::as_mut)
    }
}

impl NodeLabelMap for PlainLabelMap {
    fn associate(&mut self, id: NodeId, payload: LabelView<'_>) -> Result<()> {
        let i = id as usize;
        if i >= self.slots.len() {
            self.slots.resize(i.next_power_of_two().max(i + 1), None);
        }
        if self.slots[i].is_some() {
            return Err(Error::ContractViolation("node already has a label"));
        }
        let mut buf = Vec::with_capacity(record::encoded_len(payload));
        record::encode(payload, &mut buf);
        self.slots[i] = Some(buf.into_boxed_slice());
        self.len += 1;
        Ok(())
    }

    fn access(&self, id: NodeId) -> Result<Option<LabelView<'_>>> {
        match self.slots.get(id as usize) {
            Some(Some(buf)) => Ok(Some(record::decode(buf, 0)?.view)),
            _ => Ok(None),
        }
    }

    fn update_value(&mut self, id: NodeId, value: Value) -> Result<()> {
        let buf = self
            .buffer_mut(id)
            .ok_or(Error::ContractViolation("node has no label"))?;
        let at = record::decode(buf, 0)?
            .value_at
            .ok_or(Error::ContractViolation("step nodes carry no value"))?;
        record::write_value(buf, at, value);
        Ok(())
    }

    fn remap(&mut self, remap: &IdRemap) -> Result<()> {
        let mut slots: Vec<Slot> = Vec::new();
        slots.resize(remap.new_capacity() as usize, None);
        for (old, slot) in self.slots.iter_mut().enumerate() {
            let Some(buf) = slot.take() else { continue };
            let new = remap
                .get(old as NodeId)
                .ok_or(Error::ContractViolation("remap drops a labeled node"))?;
            let target = slots
                .get_mut(new as usize)
                .ok_or(Error::ContractViolation("remap target out of range"))?;
            if target.is_some() {
                return Err(Error::ContractViolation("remap is not injective"));
            }
            *target = Some(buf);
        }
        self.slots = slots;
        Ok(())
    }

    fn reserve_ids(&mut self, capacity: u64) {
        if capacity as usize > self.slots.len() {
            self.slots.resize(capacity as usize, None);
        }
    }

    fn len(&self) -> u64 {
        self.len
    }

    fn memory_bytes(&self) -> usize {
        self.slots.capacity() * size_of::<Slot>()
            + self.slots.iter().flatten().map(|b| b.len()).sum::<usize>()
    }
}
