use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("Gram matrix of the generators is singular (det = {det:e})")]
    SingularGram { det: f64 },
    #[error("basis transform is singular (det = {det:e})")]
    SingularBasisTransform { det: f64 },
    #[error("matrix is not an isometry: |g^T h g - h| = {metric_residual:e}, det = {det}")]
    NotInGroup { metric_residual: f64, det: f64 },
    #[error("matrix is not invertible")]
    NotInvertible,
}
