use thiserror::Error;

use crate::ope::FieldId;

/// Errors surfaced by the exact-arithmetic and module layers.
///
/// Inconclusive outcomes (window too small to certify a dimension, no
/// highest-weight vector found in a truncated search) are not errors; they are
/// reported as statuses by the operations that can produce them.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("division by zero in Q(k)")]
    DivisionByZero,

    #[error("pole at k = {0}: denominator vanishes")]
    PoleAtLevel(String),

    #[error("cannot parse {kind} from {input:?}: {reason}")]
    Parse {
        kind: &'static str,
        input: String,
        reason: String,
    },

    #[error("no OPE stored for the pair ({0:?}, {1:?})")]
    MissingOpePair(FieldId, FieldId),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("result leaves the truncation window at block (charge {charge}, depth {depth})")]
    Truncation { charge: i64, depth: i64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
