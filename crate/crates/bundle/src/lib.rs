//! Fields lifted to the frame bundle: the coframe `(alpha, omega)`, the momentum 8-form
//! in its `varpi` and `p` descriptions, the covariant derivative of `p`, the
//! Poincaré-Cartan density, the Legendre map, the field-equation residuals and gauge
//! transformations.
//!
//! Chart points are `z = (x, y)`; coframe rows and frame indices `I` run over `0..10`
//! with translations `a` first and rotations `4 + i` after.

mod context;
mod density;
mod error;
mod gauge;
mod hvdw;
mod lemmas;
mod lift;
mod momentum;
mod nabla;
mod shift;
mod structure;
mod varpi;

pub use context::{point_context, PointContext};
pub use density::{
    constraint_heads, density_at, legendre_gradient, legendre_w, stationarity_residual, theta_density, HeadBlock,
};
pub use error::BundleError;
pub use gauge::{
    gauge_compare, gauge_transform, GaugeComparison, GaugeMap, GaugedConfig, GaugedMomentum, PolynomialGauge, Quadratic4,
};
pub use hvdw::{
    hvdw_residuals, hvdw_rhs, hvdw_rhs_from_varpi, momentum_derivatives, residuals_from_parts, solve_torsion,
    ResidualFamily, ResidualSet, FAMILY_NAMES,
};
pub use lemmas::{
    base_one_forms, coadjoint_derivative_residual, coadjoint_wedge, covariant_transfer_residual, lifted_curvature_forms,
    lifted_one_forms, shift_identity, FormFieldFn, PolynomialFormField, PolynomialGroupField, ShiftIdentity,
};
pub use lift::{lift, CoframeField, LiftedCoframe, LiftedFields};
pub use momentum::{
    momentum_jet, MomentumComponents, MomentumDerivatives, MomentumField, MomentumJet, Poly, PolynomialMomentum,
};
pub use nabla::{eg_matrix, nabla_hp_closed, nabla_hp_fd, torsion_block, NineFormCoeffs};
pub use shift::{momentum_shift_check, ShiftCheck, ShiftPotential};
pub use structure::{coframe_partials, lifted_structure, structure_decomposition, StructureDecomposition, Tensor10};
pub use varpi::{momentum_from_varpi, varpi_from_momentum, varpi_identification, VarpiComponents};
