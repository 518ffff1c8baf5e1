use fbg_algebra::{AlgebraError, SignatureKind};
use fbg_forms::FormError;
use fbg_geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BundleError {
    #[error("algebra tables are {tables:?} but the configuration is {config:?}")]
    SignatureMismatch { tables: SignatureKind, config: SignatureKind },
    #[error("lifted coframe is rank deficient (det = {det:e})")]
    RankDeficient { det: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
