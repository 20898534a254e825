use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{what} exceeds the enumeration guard ({got} > {limit})")]
    GuardExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("matrix is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("representation is rank deficient: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("set is not admissible: {0}")]
    NotAdmissible(String),

    #[error("operation requires a Lagrangian system (rank {rank} < n = {n})")]
    NotLagrangian { rank: usize, n: usize },

    #[error("empty basis collection")]
    EmptyBasisSystem,

    #[error("maximality property fails for ordering {witness}")]
    MaximalityFails { witness: String },

    #[error("{0} is not a basis")]
    NotABasis(String),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("matroid is not even")]
    NotEven,

    #[error("operation is not available over {0}")]
    UnsupportedField(&'static str),

    #[error("sign propagation contradiction around cycle {0}")]
    Contradiction(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io { .. } => 2,
            _ => 1,
        }
    }
}
