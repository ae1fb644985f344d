use alloc::string::String;

use crate::algebra::Weight;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("boundary composition b_out * b_in is not zero")]
    CompositionNonzero,
    #[error("map does not send cycles to cycles modulo boundaries")]
    NotAChainMap,
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("product or action needed at weight {0} lies outside the declared window")]
    OutOfWindow(Weight),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("algebra is not finite-dimensional inside its window")]
    NotFiniteDimensional,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bimodule map does not intertwine the actions: {0}")]
    IntertwinerCheckFailed(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("bidegree ({0}, {1}) is outside the built window")]
    BidegreeOutOfRange(usize, Weight),
    #[error("automorphism order does not divide {0}")]
    SigmaOrderMismatch(usize),
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
