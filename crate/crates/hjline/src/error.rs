use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} outside alphabet [1, {m}]")]
    LetterOutOfRange { letter: u8, m: u8 },

    #[error("position {pos} out of range for length {n}")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("index {index} out of range [0, {space})")]
    IndexOutOfRange { index: u64, space: u64 },

    #[error("{base}^{exp} does not fit in 64 bits")]
    SpaceTooLarge { base: u64, exp: usize },

    #[error("alphabet mismatch: expected m={expected}, found m={found}")]
    AlphabetMismatch { expected: u8, found: u8 },

    #[error("length mismatch: expected n={expected}, found n={found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid alphabet size m={m}")]
    InvalidAlphabet { m: u8 },

    #[error("modulus {r} is not an odd number >= 3")]
    NotOddModulus { r: u32 },

    #[error("modulus {r} is not an even number >= 4")]
    NotEvenModulus { r: u32 },

    #[error("weight vector has {found} entries, alphabet needs {expected}")]
    WeightCount { expected: usize, found: usize },

    #[error("template has no wildcard position")]
    EmptyWildcardSet,

    #[error("cannot parse symbol {ch:?}")]
    BadSymbol { ch: char },

    #[error("scan needs {required} template indices, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("no two of the {count} threshold words share a color")]
    NoRepeatedColor { count: usize },

    #[error("color {color} out of range [0, {r})")]
    ColorOutOfRange { color: u32, r: u32 },

    #[error("invalid coloring file: {0}")]
    ColoringFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
