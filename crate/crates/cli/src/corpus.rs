//! Newline-delimited keyword files.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use dynpdt::hashing::SplitMix64;
use dynpdt::keyword;
use serde::Serialize;

use crate::error::{CliError, Result};

/// Summary columns of a keyword set.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CorpusStats {
    /// Total keyword bytes, terminators excluded.
    pub size_bytes: u64,
    pub count: u64,
    pub min_len: u64,
    pub max_len: u64,
    pub avg_len: f64,
    /// Distinct byte values used.
    pub alphabet_size: u32,
    /// Blank lines and lines holding a 0x00 byte.
    pub skipped_lines: u64,
    pub duplicates_removed: u64,
}

impl CorpusStats {
    fn of(keys: &[Vec<u8>], skipped_lines: u64, duplicates_removed: u64) -> Self {
        let mut used = [false; 256];
        let (mut size, mut min, mut max) = (0u64, u64::MAX, 0u64);
        for k in keys {
            let len = k.len() as u64;
            size += len;
            min = min.min(len);
            max = max.max(len);
            k.iter().for_each(|&b| used[b as usize] = true);
        }
        CorpusStats {
            size_bytes: size,
            count: keys.len() as u64,
            min_len: if keys.is_empty() { 0 } else { min },
            max_len: max,
            avg_len: if keys.is_empty() { 0.0 } else { size as f64 / keys.len() as f64 },
            alphabet_size: used.iter().filter(|&&u| u).count() as u32,
            skipped_lines,
            duplicates_removed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub keys: Vec<Vec<u8>>,
    pub source: PathBuf,
    pub stats: CorpusStats,
}

impl Corpus {
    /// Splits `bytes` on LF, dropping one trailing CR per line, blank lines
    /// and lines with a 0x00 byte.
    pub fn parse(bytes: &[u8], source: impl Into<PathBuf>, dedupe: bool) -> Self {
        let mut skipped = 0;
        let mut keys = Vec::new();
        let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
        for line in body.split(|&b| b == b'\n') {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            match keyword::validate(line) {
                Ok(()) => keys.push(line.to_vec()),
                Err(_) => skipped += 1,
            }
        }
        if bytes.is_empty() {
            skipped = 0;
        }
        let before = keys.len();
        if dedupe {
            let mut seen = HashSet::with_capacity(keys.len());
            keys.retain(|k| seen.insert(k.clone()));
        }
        let stats = CorpusStats::of(&keys, skipped, (before - keys.len()) as u64);
        Corpus {
            keys,
            source: source.into(),
            stats,
        }
    }

    /// Permutes the keys with a Fisher-Yates shuffle driven by SplitMix64(`seed`).
    pub fn shuffle(&mut self, seed: u64) {
        SplitMix64::new(seed).shuffle(&mut self.keys);
    }
}

pub fn load_corpus(path: &Path, dedupe: bool) -> Result<Corpus> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let corpus = Corpus::parse(&bytes, path, dedupe);
    if corpus.keys.is_empty() {
        return Err(CliError::EmptyCorpus(path.to_path_buf()));
    }
    Ok(corpus)
}
