use thiserror::Error;

use crate::game::Violation;
use crate::nash::IterationTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid game: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("threshold undefined for player {player}")]
    ThresholdUndefined { player: usize },

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("iteration limit of {limit} exceeded")]
    IterationLimit {
        limit: usize,
        trace: Vec<IterationTrace>,
    },

    #[error("numeric degeneracy: {message}")]
    NumericDegeneracy {
        message: String,
        trace: Vec<IterationTrace>,
    },

    #[error("negative cycle reachable from node {0}")]
    NegativeCycle(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}
