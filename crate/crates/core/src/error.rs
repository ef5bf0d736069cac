use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("degree {0} outside supported range 1..=64")]
    UnsupportedDegree(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("symbol {symbol} outside alphabet 1..={alphabet}")]
    SymbolOutOfRange { symbol: usize, alphabet: usize },

    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group enumeration exceeded the budget of {budget} elements")]
    EnumerationBudget { budget: usize },

    #[error("strength check needs {subsets} subsets, over the budget of {budget}; use sampling mode")]
    StrengthBudget { subsets: u128, budget: u128 },

    #[error("{0:?} is not a base")]
    NotBase(Vec<usize>),

    #[error("complement of cover block {block:?} is not a base")]
    CoverBlockNotBase { block: Vec<usize> },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("generator images do not extend to a homomorphism")]
    NotHomomorphism,

    #[error("homomorphism is not injective")]
    NotFaithful,

    #[error("duplicate image tuple {0:?} while indexing a base")]
    DuplicateImageTuple(Vec<usize>),

    #[error("group has base size {0}, expected 2")]
    BaseSizeNotTwo(usize),

    #[error("maximum matching has size {found}, fewer than the required {required}")]
    MatchingTooSmall { found: usize, required: usize },

    #[error("graph is disconnected ({} components)", .0.len())]
    Disconnected(Vec<Vec<usize>>),

    #[error("UBB strength is insufficient: need {required}")]
    InsufficientStrength { required: usize },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("no representation tuple reaches distance {target}; best found {best}")]
    TupleSearchExhausted { target: usize, best: usize },

    #[error("decoding guarantee breached at trial {trial} (seed {seed}): {transcript}")]
    GuaranteeBreach { trial: u64, seed: u64, transcript: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
