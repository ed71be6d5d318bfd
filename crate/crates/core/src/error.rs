use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeded {limit} elements")]
    ClosureExceedsLimit { limit: usize },

    #[error("coset decomposition needs two generators, got {0}")]
    TooFewGenerators(usize),

    #[error("element {word} lies in {matches} of the three cosets, expected exactly one")]
    DecompositionFailure { word: String, matches: usize },

    #[error("no rewrite rule for {word}: the conjugate by T leaves the group")]
    RuleDerivationFailure { word: String },

    #[error("parse error at position {position}: unexpected character {character:?}")]
    Parse { position: usize, character: char },

    #[error("conjugated Z is not a signed Pauli for {word}")]
    NotSignedPauli { word: String },

    #[error("normal form contains no T gates")]
    NoTGates,

    #[error("T budget {requested} exceeds the oracle limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("fixture line {line}: {message}")]
    Fixture { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
