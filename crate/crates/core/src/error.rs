use thiserror::Error;

use crate::logic::Sign;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("malformed spec document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid logic: {0}")]
    InvalidLogic(String),

    #[error("unknown connective `{0}`")]
    UnknownConnective(String),

    #[error("connective `{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("valuation does not assign atom `{0}`")]
    MissingAtom(String),

    #[error("invalid separator pattern `{pattern}`: {reason}")]
    BadPattern { pattern: String, reason: String },

    #[error("separators do not distinguish values `{0}` and `{1}`")]
    NotSeparable(String, String),

    #[error("descent violated: daughter {daughter} (complexity {daughter_complexity}) of {head} (complexity {head_complexity})")]
    DescentViolation {
        head: String,
        head_complexity: usize,
        daughter: String,
        daughter_complexity: usize,
    },

    #[error("node {0} has already been expanded on this branch")]
    AlreadyExpanded(String),

    #[error("node {0} has no applicable expansion rule")]
    NotExpandable(String),

    #[error(
        "open branch leaves no candidate value for atom `{atom}` (constraints {constraints:?})"
    )]
    EmptyCandidates {
        atom: String,
        constraints: Vec<(usize, Sign)>,
    },

    #[error("extracted valuation {0} does not falsify the sequent")]
    BogusCountermodel(String),
}
