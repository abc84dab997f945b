use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: found terms of degree {0} and {1}")]
    NonHomogeneous(u32, u32),
    #[error("total degree {0} is odd; a symbol must have degree 2m")]
    OddDegree(u32),
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("the zero polynomial is not a valid symbol")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("symbol is not elliptic (min of H on the unit sphere = {0:e})")]
    NotElliptic(f64),
    #[error("symbol is negative at the requested point")]
    NegativeSymbol,
    #[error("convergence budget exceeded in {0}")]
    Convergence(&'static str),
    #[error("invalid box: lo > hi on axis {0}")]
    InvalidBox(usize),
    #[error("point is outside the domain or on its boundary")]
    OutsideDomain,
    #[error("domain has empty interior")]
    EmptyInterior,
    #[error("norm table was built for a different symbol")]
    StaleTable,
    #[error("unsupported dimension {got}: {context}")]
    UnsupportedDimension { got: usize, context: &'static str },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
