use crate::lattice::SetWord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ground size {0} outside supported range 1..=20")]
    GroundSize(usize),

    #[error("{what} index {index} out of range for n = {n}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        n: usize,
    },

    #[error("set with bits {bits:#b} is not a subset of [{n}]")]
    SetOutOfRange { bits: u32, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("family is not induced-2C2-saturated: {0}")]
    NotSaturated(String),

    #[error("open downsets of {first} and {second} are not nested")]
    Trichotomy { first: SetWord, second: SetWord },

    #[error("gap interval [{lower}, {upper}) is not contained in the family (missing {missing})")]
    Extraction {
        lower: SetWord,
        upper: SetWord,
        missing: SetWord,
    },

    #[error("related pair {below} ⊊ {above} has chain gap {gap} (j_A = {j_above}, j_B = {j_below}); the family contains an induced 2C2")]
    Contradiction {
        below: SetWord,
        above: SetWord,
        j_above: usize,
        j_below: usize,
        gap: usize,
    },

    #[error("catalog integrity: {0}")]
    Integrity(String),

    #[error("search at n = {n} refused: about {estimate} candidate families; an explicit override is required")]
    Refused { n: usize, estimate: u128 },

    #[error("line {line}: {source}")]
    Golden {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
