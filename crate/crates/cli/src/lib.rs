//! Harness around the `dynpdt` dictionary: keyword-file ingestion, seeded
//! shuffling, timed builds and lookups, and JSON or TSV reports.

pub mod bench;
pub mod corpus;
pub mod error;
pub mod report;

pub use bench::{run_bench, run_bounds, run_build, run_query, run_stats, BenchReport};
pub use corpus::{load_corpus, Corpus, CorpusStats};
pub use error::{CliError, Result};
pub use report::{emit_report, Format};
