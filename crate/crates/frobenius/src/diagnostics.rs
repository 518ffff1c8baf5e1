use crate::FrobeniusError;
use fbg_algebra::{AlgebraTables, Mat10, G_DIM, T_DIM};
use fbg_bundle::{coframe_partials, structure_decomposition, CoframeField};
use fbg_forms::{d_from_partials, CoframeValue, DiffConfig, FormValue, DIM};

#[derive(Clone, Debug, PartialEq)]
pub struct FibrationDiagnostics {
    /// Numerical rank from the singular values.
    pub rank: usize,
    pub det_coframe: f64,
    /// `|det| > RANK_TOL`; the residuals below are only filled in when this holds.
    pub full_rank: bool,
    /// `max |A^a_{ck}|, |A^a_{jk}|`.
    pub horizontal_residual_alpha: Option<f64>,
    /// `max |A^i_{ck}|, |A^i_{jk}|`.
    pub horizontal_residual_omega: Option<f64>,
    /// `max |d alpha^a(rho_i, rho_j)|`.
    pub pfaff1_residual: Option<f64>,
    /// `max |(d omega + 1/2 [omega ^ omega])^k(rho_i, rho_j)|`.
    pub pfaff3_residual: Option<f64>,
}

impl FibrationDiagnostics {
    pub fn max_residual(&self) -> Option<f64> {
        let all = [self.horizontal_residual_alpha, self.horizontal_residual_omega, self.pfaff1_residual, self.pfaff3_residual];
        all.iter().try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))
    }
}

/// `rho_i`, the chart components of the dual vectors to the `omega` rows.
pub fn fiber_frame(inv: &Mat10) -> [[f64; DIM]; G_DIM] {
    std::array::from_fn(|i| std::array::from_fn(|mu| inv[(mu, T_DIM + i)]))
}

/// `d theta^I` for every coframe row, as chart 2-forms.
pub fn coframe_differentials(
    field: &dyn CoframeField,
    z: &[f64; DIM],
    diff: &DiffConfig,
) -> Result<Vec<FormValue>, FrobeniusError> {
    let de = coframe_partials(field, z, diff)?;
    (0..DIM)
        .map(|r| {
            let partials: Vec<FormValue> =
                de.iter().map(|m| FormValue::one_form(&std::array::from_fn(|mu| m[(r, mu)]))).collect();
            Ok(d_from_partials(&partials)?)
        })
        .collect()
}

fn evaluate(f: &FormValue, v: &[f64; DIM], w: &[f64; DIM]) -> Result<f64, FrobeniusError> {
    Ok(f.contract(v)?.contract(w)?.coeffs()[0])
}

/// `d omega^k + 1/2 c^k_{lm} omega^l ^ omega^m` for the rotation rows.
pub(crate) fn fiber_curvature(
    tables: &AlgebraTables,
    cf: &CoframeValue,
    d: &[FormValue],
) -> Result<Vec<FormValue>, FrobeniusError> {
    let omega: Vec<FormValue> = (0..G_DIM).map(|i| cf.theta(T_DIM + i)).collect();
    (0..G_DIM)
        .map(|k| {
            let mut f = d[T_DIM + k].clone();
            for l in 0..G_DIM {
                for m in 0..G_DIM {
                    let c = tables.c_g(k, l, m);
                    if c != 0.0 {
                        f.axpy(0.5 * c, &omega[l].wedge(&omega[m])?);
                    }
                }
            }
            Ok(f)
        })
        .collect()
}

pub fn check_fibration_hypotheses(
    tables: &AlgebraTables,
    field: &dyn CoframeField,
    z: &[f64; DIM],
    diff: &DiffConfig,
) -> Result<FibrationDiagnostics, FrobeniusError> {
    let cf = CoframeValue::new(field.coframe(z)?);
    let mut out = FibrationDiagnostics {
        rank: cf.rank(),
        det_coframe: cf.det(),
        full_rank: cf.is_regular(),
        horizontal_residual_alpha: None,
        horizontal_residual_omega: None,
        pfaff1_residual: None,
        pfaff3_residual: None,
    };
    if !out.full_rank {
        return Ok(out);
    }
    let q = structure_decomposition(tables, field, z, diff)?;
    out.horizontal_residual_alpha = Some(q.horizontal_residual(0..T_DIM));
    out.horizontal_residual_omega = Some(q.horizontal_residual(T_DIM..DIM));

    let rho = fiber_frame(cf.inverse()?);
    let d = coframe_differentials(field, z, diff)?;
    let curv = fiber_curvature(tables, &cf, &d)?;
    let (mut p1, mut p3) = (0.0f64, 0.0f64);
    for i in 0..G_DIM {
        for j in (i + 1)..G_DIM {
            for da in &d[..T_DIM] {
                p1 = p1.max(evaluate(da, &rho[i], &rho[j])?.abs());
            }
            for ck in &curv {
                p3 = p3.max(evaluate(ck, &rho[i], &rho[j])?.abs());
            }
        }
    }
    out.pfaff1_residual = Some(p1);
    out.pfaff3_residual = Some(p3);
    Ok(out)
}
