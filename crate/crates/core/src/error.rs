use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown field descriptor `{0}` (expected `Q` or `Fp:<prime>`)")]
    UnknownField(String),
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("cannot parse `{literal}` as an element of {field}")]
    ParseLiteral { literal: String, field: String },
    #[error("the parameter q must be non-zero")]
    ZeroParameter,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("operation requires a finite field")]
    NotFiniteField,
    #[error("exhaustive scan needs {needed} candidates but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("the zero triple is not a point of the projective plane")]
    ZeroPoint,
    #[error("point {0} lies outside the affine chart a = 1")]
    OutsideChart(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("independent computations disagree: {0}")]
    RouteMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
