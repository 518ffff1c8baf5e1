//! Space-time field configurations `(e, A)`: vierbein and metric connection on a
//! coordinate chart, with torsion, curvature and their traces.

mod config;
mod curvature;
mod error;
mod levi_civita;
pub mod oracles;
mod scenarios;

pub use config::{connection_antisymmetry_residual, field_jet, FieldConfig, FieldJet};
pub use curvature::{
    christoffel_from_jet, christoffel_y, curvature_data, divergence_weight, ricci_scalar_einstein, torsion_curvature,
    torsion_curvature_from_jet, CurvatureData, Tensor3, Tensor4,
};
pub use error::GeometryError;
pub use levi_civita::{levi_civita_connection, solve_torsion_free};
pub use scenarios::{Flat, Perturbed, Schwarzschild, Sphere4};
