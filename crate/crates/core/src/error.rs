use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("modulus {0} is below the supported minimum of 2")]
    ModulusTooSmall(u64),

    #[error("{a} has no inverse modulo {n}")]
    NotInvertible { a: i64, n: u64 },

    #[error("{value} is not a unit modulo {n}")]
    NotAUnit { value: u64, n: u64 },

    #[error("entry {entry} is outside [1, {max}]")]
    EntryOutOfRange { entry: u64, max: u64 },

    #[error("a sequence needs at least {min} entries, got {got}")]
    SequenceTooShort { min: usize, got: usize },

    #[error("expected a sequence of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("sequence does not sum to zero modulo {n}")]
    NotZeroSum { n: u64 },

    #[error("{value} is not coprime to {n}")]
    NotCoprime { value: i64, n: u64 },

    #[error("modulus {0} must be odd for this operation")]
    EvenModulus(u64),

    #[error("modulus {0} must be coprime to 6 for this operation")]
    NotCoprimeToSix(u64),

    #[error("parameter H = {h} is outside the valid range ({reason})")]
    ParameterOutOfRange { h: u64, reason: &'static str },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("invalid range [{min}, {max}]")]
    InvalidRange { min: u64, max: u64 },

    #[error("checkpoint file {path}: {source}")]
    Checkpoint {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("checkpoint file {path}, line {line}: malformed record {record:?}")]
    MalformedCheckpoint {
        path: PathBuf,
        line: usize,
        record: String,
    },

    #[error("worker pool: {0}")]
    WorkerPool(String),
}
