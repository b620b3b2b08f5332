use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("standard form obstruction: {remaining} Z-only generator(s) have no support outside the first {s} qubits")]
    StandardFormObstruction { s: usize, remaining: usize },

    #[error("no column-switch/column-addition sequence of depth <= {depth} gives r >= 1")]
    SearchExhausted { depth: usize },

    #[error("no encoded qubits (k = 0), no classical code")]
    NoEncodedQubits,

    #[error("{what} = {value} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("{what} = {value} outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("generator matrix rows are dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("state construction collapsed to the zero vector")]
    ZeroState,
}
