use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("subspace is not contained in the ambient span")]
    NotASubspace,

    #[error("unsupported dimension d={d}: {reason}")]
    UnsupportedDimension { d: usize, reason: String },

    #[error("repeated gamma index {0}")]
    RepeatedIndex(usize),

    #[error("index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("model error: {0}")]
    Model(String),

    #[error("truncation overflow: weight {weight} exceeds truncation {limit}")]
    TruncationOverflow { weight: u32, limit: u32 },

    #[error("differential does not square to zero on generator `{generator}`: d² = {residual}")]
    NotADifferential { generator: String, residual: String },

    #[error("form is not closed: d(form) = {residual}")]
    NotClosed { residual: String },

    #[error("mixed degree element: {0}")]
    MixedDegree(String),

    #[error("not a Hamiltonian pair: {0}")]
    NotHamiltonian(String),

    #[error("bracket leaves the finite model: {0}")]
    NotClosedUnderBracket(String),

    #[error("missing potential θ with dθ = ω")]
    MissingPotential,

    #[error("ill-defined quotient bracket: {0}")]
    IllDefinedBracket(String),

    #[error("not a section: {0}")]
    NotASection(String),

    #[error("ring error: {0}")]
    Ring(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal a violated mathematical precondition
    /// rather than bad input plumbing.
    pub fn is_mathematical(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::Dimension(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
