use thiserror::Error;

/// Errors produced by automaton construction, the translations and the parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet contains duplicate letter '{0}'")]
    DuplicateLetter(char),

    #[error("letter '{0}' is not part of the alphabet")]
    UnknownLetter(char),

    #[error("duplicate state name '{0}'")]
    DuplicateState(String),

    #[error("unknown state '{0}'")]
    UnknownState(String),

    #[error("automaton is not a well-formed po2 automaton: {0}")]
    NotWellFormed(String),

    #[error("automaton is not deterministic")]
    NotDeterministic,

    #[error("automaton is not complete")]
    NotComplete,

    #[error("operands are over different alphabets")]
    AlphabetMismatch,

    #[error("word must be nonempty")]
    EmptyWord,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("monomial is not restricted")]
    NotRestricted,

    #[error("monomial is ambiguous: {0}")]
    Ambiguous(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("file format error: {0}")]
    Format(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search budget of {0} exceeded")]
    BudgetExceeded(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
