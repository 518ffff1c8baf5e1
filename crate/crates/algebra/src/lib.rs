//! Constant Lie-theoretic data for the isometry algebra of a flat 4-dimensional
//! metric space and its affine extension, in Euclidean or Lorentzian signature.
//!
//! Index conventions: translation indices `a, b, c, d` run over `0..4`, rotation
//! indices `i, j, k` run over `0..6` (the generators `u_4..u_9`), and affine
//! indices `A` run over `0..10` with translations first.

mod actions;
mod elements;
mod error;
mod signature;
mod tables;

pub use elements::{GroupElement, PCovector, PVector};
pub use error::AlgebraError;
pub use signature::{Signature, SignatureKind};
pub use tables::{levi_civita, AlgebraTables, BasisConvention, INDEX_PAIRS};

/// 4×4 real matrix with `m[(row, col)]` read as `m^row_col`.
pub type Mat4 = nalgebra::Matrix4<f64>;
pub type Vec4 = nalgebra::Vector4<f64>;
pub type Mat6 = nalgebra::Matrix6<f64>;
pub type Mat10 = nalgebra::SMatrix<f64, 10, 10>;

pub const T_DIM: usize = 4;
pub const G_DIM: usize = 6;
pub const P_DIM: usize = 10;
