use thiserror::Error;

use crate::geom::Solution;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("instance has {n} rectangles, oracle limit is {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("no feasible solution with at most {k} segments")]
    SegmentLimit { k: usize },

    /// Search budget ran out. `best` is the best feasible solution seen so
    /// far; it carries no approximation certificate.
    #[error("node budget of {budget} exhausted")]
    Budget { budget: u64, best: Option<Box<Solution>> },

    #[error("corrupt transform or solution: {0}")]
    Corruption(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } => 3,
            Error::Parameter(_)
            | Error::Precondition(_)
            | Error::InvalidInstance(_)
            | Error::OracleLimit { .. }
            | Error::Parse(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 2,
            Error::SegmentLimit { .. } | Error::Corruption(_) => 1,
        }
    }
}
