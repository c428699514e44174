mod common;

use common::OracleDictionary;
use dynpdt::{DeleteOutcome, Dictionary, InsertOutcome};
use proptest::prelude::*;

/// Association list scanned linearly; the model the oracle is checked against.
#[derive(Default)]
struct ListModel(Vec<(Vec<u8>, u32)>);

impl ListModel {
    fn insert(&mut self, k: &[u8], v: u32) -> InsertOutcome {
        if self.0.iter().any(|e| e.0 == k) {
            return InsertOutcome::AlreadyPresent;
        }
        self.0.push((k.to_vec(), v));
        InsertOutcome::Inserted
    }

    fn lookup(&self, k: &[u8]) -> Option<u32> {
        self.0.iter().find(|e| e.0 == k).map(|e| e.1)
    }

    fn delete(&mut self, k: &[u8]) -> DeleteOutcome {
        match self.0.iter().position(|e| e.0 == k) {
            Some(i) => {
                self.0.swap_remove(i);
                DeleteOutcome::Deleted
            }
            None => DeleteOutcome::NotFound,
        }
    }
}

proptest! {
    #[test]
    fn oracle_matches_list_scan(ops in prop::collection::vec((0u8..3, prop::collection::vec(0u8..4, 1..4), any::<u32>()), 1..1000)) {
        let mut o = OracleDictionary::new();
        let mut l = ListModel::default();
        for (kind, key, v) in &ops {
            match kind {
                0 => prop_assert_eq!(o.insert(key, *v), l.insert(key, *v)),
                1 => prop_assert_eq!(o.lookup(key), l.lookup(key)),
                _ => prop_assert_eq!(o.delete(key), l.delete(key)),
            }
            prop_assert_eq!(o.len(), l.0.len());
        }
    }
}

#[test]
fn three_op_trace_agrees() {
    let mut d = Dictionary::new(Default::default()).unwrap();
    let mut o = OracleDictionary::new();
    assert_eq!(d.insert(b"key", 1).unwrap(), o.insert(b"key", 1));
    assert_eq!(d.lookup(b"key").unwrap(), o.lookup(b"key"));
    assert_eq!(d.delete(b"key").unwrap(), o.delete(b"key"));
    assert_eq!(d.insert(b"key", 2).unwrap(), o.insert(b"key", 2));
    assert_eq!(o.lookup(b"key"), Some(2));
    assert_eq!(d.lookup(b"key").unwrap(), Some(2));
}
