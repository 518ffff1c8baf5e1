use crate::context::{point_context, PointContext};
use crate::momentum::{MomentumComponents, MomentumField};
use crate::varpi::varpi_from_momentum;
use crate::BundleError;
use fbg_algebra::{AlgebraTables, G_DIM, P_DIM, T_DIM};
use fbg_forms::{ChartPoint, DiffConfig};
use fbg_geometry::FieldConfig;

/// `lambda` with `varpi ^ Omega = lambda eta^(10)` at a prepared point.
pub fn density_at(tables: &AlgebraTables, ctx: &PointContext, p: &MomentumComponents) -> Result<f64, BundleError> {
    Ok(varpi_from_momentum(tables, &ctx.lift, p)?.density(&ctx.structure))
}

pub fn theta_density(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<f64, BundleError> {
    let ctx = point_context(tables, cfg, pt, diff)?;
    density_at(tables, &ctx, &mom.components(&pt.z()))
}

/// `[A][c][d]` arrays over the head block.
pub type HeadBlock = [[[f64; T_DIM]; T_DIM]; P_DIM];

/// `W = h + 1/2 psi_a^{cd} A^a_{cd} + (1/2 psi_i^{cd} - u_i^{cd}) A^i_{cd}`, summed over all
/// `c, d`.
pub fn legendre_w(tables: &AlgebraTables, h: f64, a: &HeadBlock, psi: &HeadBlock) -> f64 {
    let mut w = h;
    for c in 0..T_DIM {
        for d in 0..T_DIM {
            for t in 0..T_DIM {
                w += 0.5 * psi[t][c][d] * a[t][c][d];
            }
            for i in 0..G_DIM {
                w += (0.5 * psi[T_DIM + i][c][d] - tables.generator_upper(i)[(c, d)]) * a[T_DIM + i][c][d];
            }
        }
    }
    w
}

/// `dW/dA^A_{bc}` on the independent components `b < c`, in closed form:
/// `psi_a^{bc}` and `psi_i^{bc} - 2 u_i^{bc}` (for antisymmetric `psi`).
pub fn legendre_gradient(tables: &AlgebraTables, psi: &HeadBlock) -> HeadBlock {
    let mut g = [[[0.0; T_DIM]; T_DIM]; P_DIM];
    for b in 0..T_DIM {
        for c in (b + 1)..T_DIM {
            for t in 0..T_DIM {
                g[t][b][c] = 0.5 * (psi[t][b][c] - psi[t][c][b]);
            }
            for i in 0..G_DIM {
                let u = tables.generator_upper(i);
                g[T_DIM + i][b][c] =
                    0.5 * (psi[T_DIM + i][b][c] - psi[T_DIM + i][c][b]) - (u[(b, c)] - u[(c, b)]);
            }
        }
    }
    g
}

/// `max |dW/dA|` over the independent components, zero exactly at the constraint heads.
pub fn stationarity_residual(tables: &AlgebraTables, psi: &HeadBlock) -> f64 {
    legendre_gradient(tables, psi).iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

/// Constraint heads `psi_A^{cd} = kappa_A^{cd}`.
pub fn constraint_heads(tables: &AlgebraTables) -> HeadBlock {
    std::array::from_fn(|a| std::array::from_fn(|c| std::array::from_fn(|d| tables.kappa(a, c, d))))
}
