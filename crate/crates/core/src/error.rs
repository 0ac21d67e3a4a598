use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("quaternion is zero and has no inverse")]
    ZeroQuaternion,

    #[error("singular system in {context}: pivot magnitude {pivot:e}")]
    Singular { context: &'static str, pivot: f64 },

    #[error("resolvent bound violated: norm {norm:e} exceeds 1/eps = {bound:e}")]
    ResolventBound { norm: f64, bound: f64 },

    #[error("result breaks the quaternion block pattern (deviation {deviation:e})")]
    Structure { deviation: f64 },

    #[error("linear solve residual {residual:e} exceeds {limit:e}")]
    Residual { residual: f64, limit: f64 },

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("{what} did not converge after {iterations} iterations (last residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("solver failed at eps = {eps:e}: {source}")]
    AtEps {
        eps: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("normalization t.G~ is singular (|t.G~| = {0:e})")]
    SingularNormalization(f64),

    #[error("quadrature reached error {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("matrix B stayed ill-conditioned after {0} consecutive redraws")]
    RedrawLimit(usize),

    #[error("degenerate support: {0}")]
    DegenerateSupport(String),

    #[error("density formula is singular on |y^2 - mu^2| < 1e-12 (y = {y}, mu = {mu})")]
    SingularLine { y: f64, mu: f64 },

    #[error("density is infinite at lambda = 0")]
    InfiniteDensity,

    #[error("no samples")]
    EmptySamples,

    #[error("grid specs differ")]
    GridMismatch,

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("report schema version {found} is not supported (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Wraps an error with the continuation step at which it happened.
    pub fn at_eps(self, eps: f64) -> Self {
        match self {
            Error::AtEps { .. } => self,
            other => Error::AtEps {
                eps,
                source: Box::new(other),
            },
        }
    }

    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::ZeroQuaternion
            | Error::Singular { .. }
            | Error::ResolventBound { .. }
            | Error::Structure { .. }
            | Error::Residual { .. }
            | Error::Eigen(_)
            | Error::NonConvergence { .. }
            | Error::SingularNormalization(_)
            | Error::Quadrature { .. }
            | Error::RedrawLimit(_)
            | Error::InfiniteDensity => true,
            Error::AtEps { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
