use thiserror::Error;

use crate::axioms::SystemClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate action `{0}`")]
    DuplicateAction(String),
    #[error("undeclared state `{0}`")]
    UnknownState(String),
    #[error("undeclared action `{0}`")]
    UnknownAction(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("action index {0} out of range")]
    ActionOutOfRange(usize),
    #[error("a transition needs at least one action")]
    EmptyTransition,
    #[error("action `{action}` is labelled `{source_label}` but its image `{image}` is labelled `{image_label}`")]
    LabelMismatch {
        action: String,
        source_label: String,
        image: String,
        image_label: String,
    },
    #[error("actions `{0}` and `{1}` carry different labels and cannot be identified")]
    MixedLabelBlock(String, String),
    #[error("the image of transition {0} is not a transition of the codomain")]
    TransitionNotPreserved(String),
    #[error("{what} map has {found} entries, expected {expected}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{what} map is not onto: `{missing}` has no preimage")]
    NotSurjective { what: &'static str, missing: String },
    #[error("{operation} requires a {required} system, got {found}")]
    WrongClass {
        operation: &'static str,
        required: SystemClass,
        found: SystemClass,
    },
    #[error("{0} requires a star-shaped system")]
    NotStarShaped(&'static str),
    #[error("state `{0}` is not reachable from the base state")]
    Unreachable(String),
    #[error("base state is not preserved: `{0}` is sent to `{1}`")]
    BaseNotPreserved(String, String),
    #[error("the maps do not share their domain")]
    MismatchedDomains,
    #[error("the maps do not share their domain and codomain")]
    MismatchedMaps,
    #[error("{0} requires a nonempty list")]
    EmptyInput(&'static str),
    #[error("the target of {0} is not fibrant")]
    NotFibrant(&'static str),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("no block named `{0}`")]
    UnknownBlock(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
