use thiserror::Error;

use crate::ast::{CaptureError, ParseError};
use crate::hierarchy::ClassId;

/// Domain errors raised by the library operations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Capture(#[from] CaptureError),
    #[error("input already contains the placeholder `$`")]
    PlaceholderPresent,
    #[error("formula is not prenex: {0}")]
    NotPrenex(String),
    #[error("formula `{formula}` is not in {class}")]
    NotInClass { formula: String, class: ClassId },
    #[error("cannot pad `{formula}` into {class}")]
    PadDoesNotFit { formula: String, class: ClassId },
    #[error("{0} is not a prenex class")]
    NotPrenexClass(ClassId),
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("CNF expansion exceeds {limit} nodes")]
    CnfTooLarge { limit: usize },
    #[error("leaf `{0}` fails the atom test")]
    NotAnAtom(String),
    #[error("free variables differ: {left:?} vs {right:?}")]
    FreeVarMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("no table assigned to predicate {name}/{arity}")]
    UnassignedPredicate { name: String, arity: usize },
    #[error("free variable `{0}` has no value")]
    UnassignedVariable(String),
    #[error("term value overflowed")]
    Overflow,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
