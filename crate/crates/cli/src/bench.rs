//! Timed construction and lookup runs.

use std::time::Instant;

use dynpdt::analysis::{anticentroid_bound, centroid_bound, shape_stats, ShapeStats};
use dynpdt::hashing::SplitMix64;
use dynpdt::{Config, Dictionary};
use serde::Serialize;

use crate::corpus::{Corpus, CorpusStats};
use crate::error::{CliError, Result};

/// Upper bound on sampled lookup queries.
pub const MAX_QUERIES: usize = 1_000_000;
pub const QUERY_REPEATS: u32 = 10;

/// One flat record per run. Fields a subcommand does not measure are omitted.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub command: String,
    pub repr: String,
    pub nlm: String,
    pub lambda: u32,
    pub ell: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub corpus: CorpusStats,
    pub inserted: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build_ns: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub insert_ns_per_op: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lookup_ns_per_op: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_ns_per_op: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub queries: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hit_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_rate: Option<f64>,
    pub memory_bytes: u64,
    pub trie_bytes: u64,
    pub label_bytes: u64,
    pub capacity: u64,
    pub growth_events: u64,
    pub node_count: u64,
    pub step_count: u64,
    pub ave_height: f64,
    pub steps_pct: f64,
    pub ave_nll: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ave_height_lb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ave_height_ub: Option<f64>,
}

impl BenchReport {
    fn new(command: &str, cfg: &Config, corpus: &Corpus, dict: &Dictionary, shape: ShapeStats) -> Self {
        let trie = dict.trie().memory_bytes() as u64;
        let labels = dict.labels().memory_bytes() as u64;
        BenchReport {
            command: command.into(),
            repr: cfg.repr.name().into(),
            nlm: cfg.nlm.name().into(),
            lambda: cfg.lambda,
            ell: cfg.ell,
            corpus: corpus.stats.clone(),
            inserted: dict.len(),
            memory_bytes: trie + labels,
            trie_bytes: trie,
            label_bytes: labels,
            capacity: dict.trie().capacity(),
            growth_events: dict.growth_count(),
            node_count: shape.node_count,
            step_count: shape.step_count,
            ave_height: shape.ave_height,
            steps_pct: shape.steps_pct,
            ave_nll: shape.ave_nll,
            ..Default::default()
        }
    }
}

fn ns_per_op(ns: u128, ops: u64) -> f64 {
    if ops == 0 {
        0.0
    } else {
        ns as f64 / ops as f64
    }
}

/// Inserts the corpus in order, verifies every keyword and reports.
pub fn run_build(corpus: &Corpus, cfg: Config) -> Result<(Dictionary, BenchReport)> {
    if corpus.keys.len() >= u32::MAX as usize {
        return Err(CliError::CorpusTooLarge(corpus.keys.len()));
    }
    let mut dict = Dictionary::new(cfg)?;
    let start = Instant::now();
    for (i, k) in corpus.keys.iter().enumerate() {
        dict.insert(k, i as u32)?;
    }
    let build_ns = start.elapsed().as_nanos();

    let mut missing = 0;
    for k in &corpus.keys {
        if dict.lookup(k)?.is_none() {
            missing += 1;
        }
    }
    if missing > 0 {
        return Err(CliError::Verification(missing));
    }

    let mut report = BenchReport::new("build", &cfg, corpus, &dict, shape_stats(&dict)?);
    report.build_ns = Some(build_ns as u64);
    report.insert_ns_per_op = Some(ns_per_op(build_ns, corpus.keys.len() as u64));
    Ok((dict, report))
}

/// `min(MAX_QUERIES, n)` keywords drawn without replacement.
pub fn sample_queries(corpus: &Corpus, seed: u64) -> Vec<Vec<u8>> {
    let mut keys = corpus.keys.clone();
    SplitMix64::new(seed ^ 0x5EED).shuffle(&mut keys);
    keys.truncate(MAX_QUERIES);
    keys
}

/// Replaces the last byte with the smallest byte value absent from every
/// keyword, so the result cannot be a corpus keyword when such a byte exists.
pub fn mutate(queries: &[Vec<u8>], corpus: &Corpus) -> Vec<Vec<u8>> {
    let mut used = [false; 256];
    used[0] = true;
    corpus.keys.iter().flatten().for_each(|&b| used[b as usize] = true);
    let fresh = used.iter().position(|&u| !u).map(|b| b as u8);
    queries
        .iter()
        .map(|k| {
            let mut k = k.clone();
            match fresh {
                Some(b) => *k.last_mut().expect("keywords are nonempty") = b,
                None => k.push(0xFF),
            }
            k
        })
        .collect()
}

/// Average lookup time over `repeats` passes, with the fraction of queries found.
pub fn run_query(dict: &Dictionary, queries: &[Vec<u8>], repeats: u32) -> Result<(f64, f64)> {
    let mut found = 0u64;
    let start = Instant::now();
    for _ in 0..repeats {
        found = 0;
        for q in queries {
            found += u64::from(std::hint::black_box(dict.lookup(q)?).is_some());
        }
    }
    let ns = start.elapsed().as_nanos();
    let ops = queries.len() as u64 * repeats as u64;
    let rate = if queries.is_empty() { 0.0 } else { found as f64 / queries.len() as f64 };
    Ok((ns_per_op(ns, ops), rate))
}

/// Build followed by hit and miss lookup runs.
pub fn run_bench(corpus: &Corpus, cfg: Config, seed: u64, repeats: u32) -> Result<BenchReport> {
    let (dict, mut report) = run_build(corpus, cfg)?;
    let hits = sample_queries(corpus, seed);
    let misses = mutate(&hits, corpus);
    let (hit_ns, hit_rate) = run_query(&dict, &hits, repeats)?;
    let (miss_ns, found) = run_query(&dict, &misses, repeats)?;
    report.command = "bench".into();
    report.queries = Some(hits.len() as u64);
    report.lookup_ns_per_op = Some(hit_ns);
    report.miss_ns_per_op = Some(miss_ns);
    report.hit_rate = Some(hit_rate);
    report.miss_rate = Some(1.0 - found);
    Ok(report)
}

/// Shape statistics only; no timing fields.
pub fn run_stats(corpus: &Corpus, cfg: Config) -> Result<BenchReport> {
    let (_, mut report) = run_build(corpus, cfg)?;
    report.command = "stats".into();
    report.build_ns = None;
    report.insert_ns_per_op = None;
    Ok(report)
}

/// Shape statistics together with the centroid and anticentroid height bounds.
pub fn run_bounds(corpus: &Corpus, cfg: Config) -> Result<BenchReport> {
    let mut report = run_stats(corpus, cfg)?;
    report.command = "bounds".into();
    report.ave_height_lb = Some(centroid_bound(&corpus.keys));
    report.ave_height_ub = Some(anticentroid_bound(&corpus.keys));
    Ok(report)
}
