use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("generator index {index} out of range (allowed 1..={max})")]
    IndexOutOfRange { index: i64, max: i64 },

    #[error("letter s{index} not allowed in the {group} group (allowed s1..s{max})")]
    LetterOutsideGroup { index: u32, max: u32, group: &'static str },

    #[error("oracle budget exceeded: {letters} letters > {budget}")]
    BudgetExceeded { letters: usize, budget: usize },

    #[error("permutation is not in W (parity class `neither`)")]
    NotInW,

    #[error("curve does not lift: monodromy {residue} mod {k}")]
    DoesNotLift { residue: i64, k: u32 },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
