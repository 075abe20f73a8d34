use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("site {site} out of range for a {n}-site system")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("empty site set")]
    EmptySites,
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("polynomial is reducible over Z_{0}")]
    Reducible(usize),
    #[error("unsupported ring order {0}")]
    UnsupportedOrder(usize),
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("generator matrix is not injective: duplicate rows")]
    DuplicateRows,
    #[error("k = {k} exceeds the verified strength {strength}")]
    StrengthExceeded { k: usize, strength: usize },
    #[error("hypergraph is not uniform")]
    NonUniform,
    #[error("regularity assumption violated: {0}")]
    NotRegular(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order would exceed the cap of {0}")]
    GroupTooLarge(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("procedure inapplicable: {0}")]
    Inapplicable(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
