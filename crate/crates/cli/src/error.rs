use fbg_algebra::AlgebraError;
use fbg_bundle::BundleError;
use fbg_forms::FormError;
use fbg_frobenius::FrobeniusError;
use fbg_geometry::GeometryError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("unknown scenario `{0}` (see `fbg scenarios`)")]
    UnknownScenario(String),
    #[error("cannot sample scenario `{scenario}`: {reason}")]
    Unsampleable { scenario: String, reason: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Every error that prevents a report from being produced exits with 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
