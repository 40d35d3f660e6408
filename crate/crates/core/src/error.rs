use thiserror::Error;

use crate::coord::Coord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse coordinate {0:?}")]
    ParseCoord(String),

    /// Inserting would create a clique larger than `k`; `coords` are the begin
    /// coordinates of `k + 1` pairwise intersecting intervals.
    #[error("clique of size {} exceeds k = {k}: begins {coords:?}", coords.len())]
    CliqueViolation { k: usize, coords: Vec<Coord> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("interval with arrival {0} has no color")]
    MissingColor(i64),

    #[error("no interval with arrival {0}")]
    UnknownInterval(i64),

    #[error("oracle input of size {size} exceeds limit {limit}")]
    OracleLimit { size: usize, limit: usize },

    #[error("insufficient slack: needed {needed} disjoint arcs, found {found}")]
    InsufficientSlack { needed: usize, found: usize },

    #[error("jump position {pos} out of range 1..={max}")]
    InvalidJump { pos: usize, max: usize },

    /// A colorer under test handed back an improper coloring.
    #[error("improper coloring: {0}")]
    ImproperColoring(String),

    #[error("empty input")]
    EmptyInput,

    /// A constructive step produced something that contradicts its own
    /// guarantees. Always a bug.
    #[error("internal invariant failure: {0}")]
    Internal(String),
}
