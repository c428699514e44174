use thiserror::Error;

/// Errors raised by the dictionary and its building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid keyword: {0}")]
    InvalidKeyword(&'static str),
    #[error("value {0:#x} is reserved for deleted entries")]
    ReservedValue(u32),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("contract violation: {0}")]
    ContractViolation(&'static str),
    #[error("corrupted structure: {0}")]
    Corruption(&'static str),
    #[error("capacity exhausted: cannot grow beyond {max_capacity} slots")]
    ResourceExhausted { max_capacity: u64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
