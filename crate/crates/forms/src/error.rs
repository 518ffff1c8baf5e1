use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("degree overflow: {0} + {1} > 10")]
    DegreeOverflow(usize, usize),
    #[error("cannot contract a 0-form")]
    ContractScalar,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("finite-difference step underflows at coordinate {coord} (step {step:e})")]
    StepUnderflow { coord: usize, step: f64 },
    #[error("analytic mode requested but the field supplies no partials")]
    MissingPartials,
    #[error("coframe is singular: |det| = {det:e} below tolerance {tol:e}")]
    SingularCoframe { det: f64, tol: f64 },
    #[error("fiber point outside the exponential chart: |y.u| = {norm} >= {radius}")]
    OutsideChart { norm: f64, radius: f64 },
    #[error("dexp series did not converge after {0} terms")]
    SeriesNonConvergence(usize),
    #[error("ill-conditioned coframe solve: residual {residual:e} > {bound:e}")]
    IllConditioned { residual: f64, bound: f64 },
    #[error("field evaluation failed: {0}")]
    Field(String),
}
