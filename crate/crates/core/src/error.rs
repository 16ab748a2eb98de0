use thiserror::Error;

use crate::tableau::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("anchors {0} and {1} differ by an integer")]
    Anchor(String, String),
    #[error("unknown anchor {0}")]
    UnknownAnchor(String),
    #[error("standard tableaux with this top row cannot be enumerated: {0}")]
    InfiniteEnumeration(String),
    #[error("relation set is not satisfiable")]
    UnsatisfiableSet,
    #[error("relation set is critical")]
    CriticalSet,
    #[error("order of row {row} is not determined")]
    OrderUndetermined { row: usize },
    #[error("no elimination case applies to the cross")]
    NoCaseApplies,
    #[error("position {0} is bounded from both sides")]
    NotReleasable(Position),
    #[error("tableau is critical")]
    CriticalTableau,
    #[error("tableau is not in the basis")]
    NotInBasis,
    #[error("row {0} has repeated entries")]
    SingularRow(usize),
    #[error("tableau is not a realization of the relation set")]
    NotRealization,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid relation set: {0}")]
    InvalidSet(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
