use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write report: {0}")]
    Output(#[source] std::io::Error),
    #[error("{0} contains no valid keywords")]
    EmptyCorpus(PathBuf),
    #[error("corpus has {0} keywords; values are 32-bit ordinals")]
    CorpusTooLarge(usize),
    #[error(transparent)]
    Dictionary(#[from] dynpdt::Error),
    #[error("build verification failed: {0} keywords not found")]
    Verification(usize),
    #[error("report serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
