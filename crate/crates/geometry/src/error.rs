use fbg_forms::FormError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("vierbein is singular at x = {x:?} (det = {det:e})")]
    SingularVierbein { x: [f64; 4], det: f64 },
    #[error("point {0:?} is outside the domain of the configuration")]
    OutOfDomain([f64; 4]),
    #[error("torsion-free connection system is singular")]
    SingularLeviCivita,
    #[error(transparent)]
    Form(#[from] FormError),
}
