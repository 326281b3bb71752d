use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied something outside an operation's domain.
    Usage,
    /// A size or work budget would be exceeded.
    Resource,
    /// A constructed object failed its own post-condition check.
    Verification,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("alphabet size {0} is outside the supported range 1..=36")]
    AlphabetSize(usize),

    #[error("letter {letter} at position {position} is not below alphabet size {alphabet}")]
    LetterOutOfRange { letter: u8, position: usize, alphabet: usize },

    #[error("character {found:?} at position {position} is not a letter of the digits-then-lowercase alphabet")]
    InvalidSymbol { found: char, position: usize },

    #[error("factor [{start}, {start}+{len}) does not fit in a word of length {word_len}")]
    FactorRange { start: usize, len: usize, word_len: usize },

    #[error("invalid exponent {0:?}: expected p/q with positive integers, optionally followed by '+'")]
    InvalidExponent(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(u8),

    #[error("morphism has no center decomposition around letter {0}")]
    NotCenterPreserving(u8),

    #[error("{0}")]
    Usage(String),

    #[error("result of {needed} letters exceeds the cap of {cap}")]
    LengthCap { needed: u128, cap: usize },

    #[error("search space of {needed} words exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::LengthCap { .. } | Error::Budget { .. } => ErrorKind::Resource,
            Error::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::Usage,
        }
    }
}
