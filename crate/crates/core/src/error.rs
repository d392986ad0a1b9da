use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero raised to non-positive power {0}")]
    ZeroToNonpositivePower(i64),
    #[error("zero has no roots")]
    ZeroHasNoRoots,
    #[error("invalid root-of-unity exponent {num}/{den}")]
    InvalidExponent { num: i64, den: i64 },

    #[error("element {element} does not belong to {group}")]
    ForeignElement { element: String, group: String },
    #[error("group of order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: String, by: String },
    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,
    #[error("generator values do not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("group {0} is not abelian")]
    NotAbelian(String),

    #[error("cochain arity {0} is out of range")]
    ArityTooHigh(usize),
    #[error("cochain is not normalized at {0}")]
    NotNormalized(String),
    #[error("cochain table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("coefficient group {0} is infinite and cannot be enumerated")]
    NotEnumerable(String),
    #[error("value {0} is not in the coefficient group")]
    ForeignValue(String),

    #[error("support is not normal: {0}")]
    NotNormalSupport(String),
    #[error("action is not diagonal")]
    NotDiagonal,
    #[error("element {element} does not act by a determined scalar on x_{index}")]
    NonDiagonalAction { element: String, index: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element {0} is not in Γ₀")]
    NotInGamma0(String),
    #[error("q^{n} = {got}, but ⟨γ(ν), ν⟩ = {expected}")]
    RootMismatch {
        n: usize,
        got: String,
        expected: String,
    },
    #[error("grading group {0} is not cyclic")]
    NotCyclic(String),
    #[error("datum failed verification")]
    InvalidDatum(Box<VerificationReport>),

    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.to_string(),
        }
    }
}
