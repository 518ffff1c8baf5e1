use crate::diagnostics::{coframe_differentials, fiber_curvature, fiber_frame};
use crate::FrobeniusError;
use fbg_algebra::{AlgebraTables, G_DIM, T_DIM};
use fbg_bundle::CoframeField;
use fbg_forms::{jacobian, CoframeValue, DiffConfig, DiffMode, FormValue, DIM};

/// Allowed deviation of `rho_i -| (alpha, omega)` from `(0, u_i)`.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// Both sides of `L_{rho_i} omega + [u_i, omega] = rho_i -| (d omega + omega ^ omega)`,
/// as max-abs over `i`, `k` and the coframe components of the 1-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivarianceCheck {
    pub normalization_residual: f64,
    pub lie_residual: f64,
    pub curvature_residual: f64,
    pub difference: f64,
}

pub fn equivariance_equivalence_check(
    tables: &AlgebraTables,
    field: &dyn CoframeField,
    z: &[f64; DIM],
    diff: &DiffConfig,
) -> Result<EquivarianceCheck, FrobeniusError> {
    let cf = CoframeValue::new(field.coframe(z)?);
    let inv = *cf.inverse().map_err(|_| FrobeniusError::RankDeficient { det: cf.det() })?;
    let rho = fiber_frame(&inv);
    let e = cf.matrix();
    let mut normalization_residual: f64 = 0.0;
    for (i, r) in rho.iter().enumerate() {
        for row in 0..DIM {
            let v: f64 = (0..DIM).map(|mu| e[(row, mu)] * r[mu]).sum();
            let want = if row == T_DIM + i { 1.0 } else { 0.0 };
            normalization_residual = normalization_residual.max((v - want).abs());
        }
    }
    if normalization_residual > NORMALIZATION_TOL {
        return Err(FrobeniusError::Normalization { deviation: normalization_residual });
    }

    // Lie derivative L_rho = d iota_rho + iota_rho d, the first term by finite differences
    let fd = DiffConfig { mode: DiffMode::FiniteDifference, ..*diff };
    let contracted = |p: &[f64; DIM]| -> Result<Vec<f64>, FrobeniusError> {
        let m = field.coframe(p)?;
        let inv = m.try_inverse().ok_or(FrobeniusError::RankDeficient { det: m.determinant() })?;
        let mut out = Vec::with_capacity(G_DIM * G_DIM);
        for i in 0..G_DIM {
            for k in 0..G_DIM {
                out.push((0..DIM).map(|mu| m[(T_DIM + k, mu)] * inv[(mu, T_DIM + i)]).sum());
            }
        }
        Ok(out)
    };
    let grad = jacobian(&contracted, z, &fd)?;
    let d = coframe_differentials(field, z, diff)?;
    let curv = fiber_curvature(tables, &cf, &d)?;
    let omega: Vec<FormValue> = (0..G_DIM).map(|k| cf.theta(T_DIM + k)).collect();

    let (mut lie_residual, mut curvature_residual, mut difference) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..G_DIM {
        for k in 0..G_DIM {
            let mut lie = FormValue::one_form(&std::array::from_fn(|mu| grad[mu][i * G_DIM + k]));
            lie.axpy(1.0, &d[T_DIM + k].contract(&rho[i])?);
            for (j, w) in omega.iter().enumerate() {
                let c = tables.c_g(k, i, j);
                if c != 0.0 {
                    lie.axpy(c, w);
                }
            }
            let side = curv[k].contract(&rho[i])?;
            let lc = cf.coeffs1(&lie)?;
            let sc = cf.coeffs1(&side)?;
            for (a, b) in lc.iter().zip(&sc) {
                lie_residual = lie_residual.max(a.abs());
                curvature_residual = curvature_residual.max(b.abs());
                difference = difference.max((a - b).abs());
            }
        }
    }
    Ok(EquivarianceCheck { normalization_residual, lie_residual, curvature_residual, difference })
}
