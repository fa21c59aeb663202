use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("division by zero in F_p")]
    DivisionByZero,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("element belongs to a different algebra")]
    ParentMismatch,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("no grading present")]
    Ungraded,
    #[error("unsupported cochain degree {0}")]
    UnsupportedDegree(usize),
    #[error("cochain is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("wrong family: expected {expected}, found {found}")]
    WrongFamily { expected: String, found: String },
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
}
