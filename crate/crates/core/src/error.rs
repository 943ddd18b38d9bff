use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{k} exceeds the configured bound {bound}")]
    FieldTooLarge { p: u64, k: u32, bound: u64 },
    #[error("no embedded Conway polynomial for p={p}, k={k}")]
    MissingConway { p: u64, k: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("cannot parse field element {text:?}: {reason}")]
    ParseElement { text: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("multiplicative order of zero is undefined")]
    OrderOfZero,
    #[error("b must be nonzero (the recurrence needs x^2 - a x - b with b != 0)")]
    ZeroB,
    #[error("initial state (0, 0) gives the zero sequence")]
    ZeroState,
    #[error("operation requires an irreducible characteristic polynomial")]
    NotIrreducible,
    #[error("brute-force cost {cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u64, budget: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no such table: {0} (expected 1, 2 or 3)")]
    UnknownTable(u32),
    #[error("{0}")]
    Usage(String),
    #[error("malformed record: {0}")]
    Record(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of a mathematical invariant rather than of the input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

macro_rules! ensure_invariant {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::Error::Invariant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure_invariant;
