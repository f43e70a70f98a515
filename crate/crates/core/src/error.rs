use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group presentation: {0}")]
    InvalidGroup(String),
    #[error("operation requires a finite group")]
    InfiniteGroup,
    #[error("size bound exceeded: {what} is {size}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        bound: u128,
    },
    #[error("invalid phase: {0}")]
    InvalidPhase(String),
    #[error("form is not well defined: {0}")]
    IllDefinedForm(String),
    #[error("descent undefined: {0}")]
    DescentUndefined(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no commutative structure: {0}")]
    NoCommutativeStructure(String),
    #[error("criterion requires a commutative algebra: {0}")]
    NotCommutative(String),
    #[error("invalid spectrum table: {0}")]
    InvalidSpectrum(String),
    #[error("singular Cartan matrix")]
    SingularCartan,
    #[error("weight not in the invertible lattice: {0}")]
    NotInvertibleWeight(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}
