use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: expected {expected}, found `{found}`")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration of {0} requires an explicit truncation depth")]
    Unenumerable(String),
    #[error("malformed reflection space: {0}")]
    MalformedReflectionSpace(String),
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("isotropic vector where an anisotropic one is required")]
    Isotropic,
    #[error("non-integral Cartan integer {0}")]
    NonIntegral(String),
    #[error("triple does not match type: {0}")]
    TripleMismatch(String),
    #[error("triple fails validation: {0}")]
    InvalidTriple(String),
    #[error("reflectable base search failed: {0}")]
    BaseSearch(String),
    #[error("decomposition failed: {0}")]
    Decompose(String),
    #[error("similarity search undefined: {0}")]
    SearchUndefined(String),
    #[error("loop algebra construction failed: {0}")]
    Construction(String),
    #[error("invariant form fails on ({0})")]
    FormNotInvariant(String),
    #[error("basis vector {0} is not homogeneous for the Cartan subalgebra")]
    NotHomogeneous(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
    #[error("cocycle undefined at ({0})")]
    CocycleDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
