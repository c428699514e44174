use crate::error::{Error, Result};
use crate::symbol::Alphabet;

/// Trie topology backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Repr {
    /// Plain m-Bonsai trie.
    Pbt,
    /// Compact m-Bonsai trie.
    Cbt,
    /// Plain FK-hash trie.
    Pfkt,
    /// Compact FK-hash trie.
    Cfkt,
}

impl Repr {
    pub const ALL: [Repr; 4] = [Repr::Pbt, Repr::Cbt, Repr::Pfkt, Repr::Cfkt];

    /// Whether node ids are slot positions that move on growth.
    pub fn is_bonsai(self) -> bool {
        matches!(self, Repr::Pbt | Repr::Cbt)
    }

    pub fn name(self) -> &'static str {
        match self {
            Repr::Pbt => "pbt",
            Repr::Cbt => "cbt",
            Repr::Pfkt => "pfkt",
            Repr::Cfkt => "cfkt",
        }
    }
}

/// Node-label map strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelMapKind {
    Plm,
    Slm,
}

impl LabelMapKind {
    pub const ALL: [LabelMapKind; 2] = [LabelMapKind::Plm, LabelMapKind::Slm];

    pub fn name(self) -> &'static str {
        match self {
            LabelMapKind::Plm => "plm",
            LabelMapKind::Slm => "slm",
        }
    }
}

/// Maximum load factor of every hash table, as the fraction `9 / 10`.
pub const MAX_LOAD_NUM: u64 = 9;
pub const MAX_LOAD_DEN: u64 = 10;

/// True when a table of `capacity` slots would exceed the maximum load holding `len` entries.
#[inline]
pub fn exceeds_max_load(len: u64, capacity: u64) -> bool {
    len * MAX_LOAD_DEN > capacity * MAX_LOAD_NUM
}

pub const MIN_CAPACITY: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub lambda: u32,
    pub ell: u32,
    pub initial_capacity: u64,
    pub repr: Repr,
    pub nlm: LabelMapKind,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            lambda: 64,
            ell: 16,
            initial_capacity: 1 << 16,
            repr: Repr::Cbt,
            nlm: LabelMapKind::Slm,
        }
    }
}

impl Config {
    pub fn new(repr: Repr, nlm: LabelMapKind) -> Self {
        Config {
            repr,
            nlm,
            ..Config::default()
        }
    }

    pub fn with_lambda(mut self, lambda: u32) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_ell(mut self, ell: u32) -> Self {
        self.ell = ell;
        self
    }

    pub fn with_initial_capacity(mut self, capacity: u64) -> Self {
        self.initial_capacity = capacity;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let alphabet = Alphabet::new(self.lambda)?;
        if !matches!(self.ell, 8 | 16 | 32 | 64) {
            return Err(Error::InvalidConfig("ell must be one of 8, 16, 32, 64"));
        }
        if !self.initial_capacity.is_power_of_two() || self.initial_capacity < MIN_CAPACITY {
            return Err(Error::InvalidConfig("initial capacity must be a power of two >= 16"));
        }
        if self.initial_capacity > self.max_capacity_for(&alphabet) {
            return Err(Error::InvalidConfig("initial capacity exceeds the maximum capacity"));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.lambda)
    }

    /// Largest table size: `2^48`, lowered so that packed keys `parent * sigma + symbol` fit 64 bits.
    pub fn max_capacity(&self) -> u64 {
        match Alphabet::new(self.lambda) {
            Ok(a) => self.max_capacity_for(&a),
            Err(_) => 0,
        }
    }

    fn max_capacity_for(&self, alphabet: &Alphabet) -> u64 {
        1u64 << 48u32.min(64 - alphabet.sigma_bits())
    }
}
