use std::path::PathBuf;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("voter count must be at least 1 (got {0})")]
    InvalidVoterCount(usize),
    #[error("candidate count must be at least {min} (got {got})")]
    InvalidCandidateCount { min: usize, got: usize },
    #[error("study type must be 1, 2, 3, or 4 (got {0})")]
    InvalidStudyType(u8),
    #[error("margin is undefined for a candidate against itself")]
    SameCandidate,
    #[error("eligible candidate set is empty")]
    EmptyEligibleSet,
    #[error("candidate index {index} out of range for {count} candidates")]
    CandidateOutOfRange { index: usize, count: usize },
    #[error("sample size must be at least 1")]
    ZeroSampleSize,
    #[error("target kept trials must be at least 1")]
    ZeroTargetTrials,
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("majority judgment could not resolve a winner: {0}")]
    UnresolvedTie(&'static str),
    #[error("dropout strategy cannot separate the remaining pair: {0}")]
    StrategyTie(&'static str),
    #[error("ballot file {path}: {reason}")]
    BallotFormat { path: PathBuf, reason: String },
    #[error("config file {path}: {reason}")]
    ConfigFormat { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
