//! Pointwise exterior calculus on the 10-dimensional chart `R^4 x R^6`: dense form
//! values, wedge and interior products, exterior derivatives (closed form or finite
//! differences), coframes and the Maurer-Cartan form of the exponential chart.
//!
//! Chart slots `0..4` are the base coordinates `x`, slots `4..10` the fiber
//! coordinates `y`.

mod coframe;
mod derivative;
mod error;
pub mod form;
mod maurer_cartan;
pub mod notation;

pub use coframe::{coframe_derivatives, CoframeValue, RANK_TOL};
pub use derivative::{
    d_from_partials, exterior_derivative, fd_form_partials, gradient, jacobian, partial, ChartFunction,
    DiffConfig, DiffMode, FdOrder, FnForm, FormField,
};
pub use error::FormError;
pub use form::FormValue;
pub use maurer_cartan::{
    chart_norm, check_chart, dexp_series, dgamma_identities, gamma_forms, gamma_jet, gamma_matrix,
    gamma_minor, maurer_cartan, maurer_cartan_with_radius, ChartPoint, MaurerCartan,
    MaurerCartanResiduals, StructureConstants, DEFAULT_CHART_RADIUS,
};

pub const DIM: usize = 10;

pub type Mat6 = fbg_algebra::Mat6;
pub type Mat10 = fbg_algebra::Mat10;
