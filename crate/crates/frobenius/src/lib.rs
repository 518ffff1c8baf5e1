//! Hypotheses and local conclusions of the spontaneous-fibration lemma for a coframe
//! `(alpha, omega)` on the 10-dimensional chart: rank, horizontality of the structure
//! equations, integrability of the fiber distribution and the equivariance equivalence.
//!
//! Fiber directions `rho_i` are the last six columns of the inverse coframe matrix.

mod corrupted;
mod diagnostics;
mod equivariance;

pub use corrupted::CorruptedCoframe;
pub use diagnostics::{check_fibration_hypotheses, coframe_differentials, fiber_frame, FibrationDiagnostics};
pub use equivariance::{equivariance_equivalence_check, EquivarianceCheck, NORMALIZATION_TOL};

use fbg_bundle::BundleError;
use fbg_forms::FormError;

#[derive(Debug, thiserror::Error)]
pub enum FrobeniusError {
    #[error("normalization rho_i -| (alpha, omega) = (0, u_i) violated by {deviation:e}")]
    Normalization { deviation: f64 },
    #[error("coframe is rank deficient (det = {det:e})")]
    RankDeficient { det: f64 },
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Form(#[from] FormError),
}
