use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported factorization at level {level}: {reason}")]
    UnsupportedFactorization { level: usize, reason: String },

    #[error("factors do not multiply to the denominator")]
    InconsistentFactorization,

    #[error("generator `{name}` is not an indefinite-sum monomial: its difference is summable")]
    NotSigmaMonomial { name: String },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer size limit exceeded: {bits} bits (limit {limit})")]
    SizeLimit { bits: u64, limit: u64 },
}
