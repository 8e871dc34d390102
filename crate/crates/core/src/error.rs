use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("unknown builtin presentation `{0}`")]
    UnknownBuiltin(String),

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("coefficient denominator divisible by {p}: cannot reduce mod {p}")]
    NotPIntegral { p: u64 },

    #[error("Pfaffian vanishes mod {p}: prime outside scope")]
    PfZeroModP { p: u64 },

    #[error("division by zero rational function")]
    DivisionByZero,

    #[error("series expansion: denominator has zero constant term at X={p}")]
    NonExpandable { p: u64 },

    #[error("operation requires dprime = {expected}, presentation has dprime = {got}")]
    WrongDPrime { expected: usize, got: usize },

    #[error("lattice enumeration budget exceeded: need ~{needed} lattices, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, ZetaError>;
