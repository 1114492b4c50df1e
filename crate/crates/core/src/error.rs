use thiserror::Error;

use crate::automaton::{Order, State};

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid degree {k} for {len} values")]
    InvalidDegree { k: usize, len: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    /// No transition rule matches; the original program fails here too.
    #[error("no transition for state {state:?}, n = {n}, order {order:?}")]
    NoTransition { state: State, n: u32, order: Order },

    #[error("negative exponent {exponent} while resolving a leaf")]
    NegativeExponent { exponent: i64 },

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
