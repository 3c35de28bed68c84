use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors across the field / graph / hecke / aut layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is too small, need p > 3")]
    PTooSmall(u64),
    #[error("p = {0} exceeds the 2^31 modulus bound of the arithmetic backend")]
    Overflow(u64),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("modular polynomial has X-degree {got}, expected {want}")]
    WrongLevel { want: usize, got: usize },
    #[error("modular polynomial data conflicts under (i,k) <-> (k,i) at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("Phi_{l}(X, j) has {found} roots in F_p^2, expected {want}: non-supersingular j or corrupted data")]
    IncompleteSplitting { l: u64, found: u32, want: u32 },
    #[error("l = p = {0} is not allowed")]
    LEqualsP(u64),
    #[error("isogeny-class closure found {got} vertices, mass formula predicts {want}")]
    VertexCountMismatch { want: usize, got: usize },
    #[error("characteristic polynomial is not divisible by X - (l+1): corrupted adjacency")]
    InexactDivision,
    #[error("root isolation inconclusive: could not separate a root from the spectral bound")]
    Inconclusive,
    #[error("permutation acts on {got} points, graph has {want} vertices")]
    DimensionMismatch { want: usize, got: usize },
    #[error("graph with {0} vertices exceeds the brute-force limit of {1}")]
    TooLarge(usize, usize),
    #[error("element list is not closed under composition")]
    NotClosed,
    #[error("mismatched inputs: {0}")]
    MismatchedInputs(String),
    #[error("exhausted search without finding a supersingular j-invariant")]
    NotFound,
    #[error("start vertex {0} is not a supersingular j-invariant mod p")]
    StartNotSupersingular(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input or malformed data files,
    /// as opposed to violations of internal mathematical invariants.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::PTooSmall(_)
                | Error::Overflow(_)
                | Error::Parse(_)
                | Error::WrongLevel { .. }
                | Error::NotSymmetric(..)
                | Error::LEqualsP(_)
                | Error::TooLarge(..)
                | Error::StartNotSupersingular(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}
