use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a jet with near-zero constant term ({0:e})")]
    ZeroConstantTerm(f64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("arity error: {0}")]
    ArityError(String),
    #[error("singular matrix (pivot {0:e})")]
    SingularMatrix(f64),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not indefinite")]
    NotIndefinite,
    #[error("surface is not immersed at this point")]
    NotImmersed,
    #[error("position vector is not transversal to the tangent plane")]
    NotTransversal,
    #[error("h0, h3, h4 are linearly dependent")]
    Degenerate,
    #[error("h3 and h4 are linearly dependent")]
    IndependenceFailure,
    #[error("null-type surface point is not supported")]
    NullTypeUnsupported,
    #[error("trace part of h0 vanishes")]
    DegenerateTraceComponent,
    #[error("off-diagonal part of h0 vanishes")]
    DegenerateOffdiagComponent,
    #[error("coframe degenerates at this point")]
    DegenerateCoframe,
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("jet degree {have} is too low, need at least {need}")]
    DegreeTooLow { have: usize, need: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Short stable tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroConstantTerm(_) => "ZeroConstantTerm",
            Error::DomainError(_) => "DomainError",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownIdentifier(_) => "UnknownIdentifier",
            Error::ArityError(_) => "ArityError",
            Error::SingularMatrix(_) => "SingularMatrix",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotIndefinite => "NotIndefinite",
            Error::NotImmersed => "NotImmersed",
            Error::NotTransversal => "NotTransversal",
            Error::Degenerate => "Degenerate",
            Error::IndependenceFailure => "IndependenceFailure",
            Error::NullTypeUnsupported => "NullTypeUnsupported",
            Error::DegenerateTraceComponent => "DegenerateTraceComponent",
            Error::DegenerateOffdiagComponent => "DegenerateOffdiagComponent",
            Error::DegenerateCoframe => "DegenerateCoframe",
            Error::CaseMismatch(_) => "CaseMismatch",
            Error::UnknownModel(_) => "UnknownModel",
            Error::DegreeTooLow { .. } => "DegreeTooLow",
            Error::Config(_) => "Config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
