use thiserror::Error;

use crate::fock::Species;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode configuration d_a={d_a}, d_b={d_b}: need d_a, d_b >= 1 and d_a + d_b <= 16")]
    InvalidConfig { d_a: usize, d_b: usize },

    #[error("{species:?}-mode {mode} out of range (width {width})")]
    ModeOutOfRange {
        species: Species,
        mode: usize,
        width: usize,
    },

    #[error("mode configuration mismatch")]
    ConfigMismatch,

    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("chain of total degree {degree} exceeds max chain length {max}")]
    ChainTooLong { degree: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty solution set: k*m > min(d_a,d_b) (k={k}, m={m}, d_a={d_a}, d_b={d_b})")]
    Infeasible {
        k: usize,
        m: usize,
        d_a: usize,
        d_b: usize,
    },

    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
