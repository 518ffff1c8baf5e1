use crate::context::{point_context, PointContext};
use crate::momentum::{momentum_jet, MomentumComponents, MomentumDerivatives, MomentumField};
use crate::nabla::{nabla_hp_closed, NineFormCoeffs};
use crate::varpi::{varpi_from_momentum, VarpiComponents};
use crate::BundleError;
use fbg_algebra::{AlgebraTables, Mat10, PCovector, G_DIM, P_DIM};
use fbg_forms::{ChartPoint, DiffConfig, DIM};
use fbg_geometry::{FieldConfig, Tensor3};

/// One named family of residual components with its max-abs value.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualFamily {
    pub name: &'static str,
    pub values: Vec<f64>,
    pub max_abs: f64,
    /// Index into `values` of the largest entry.
    pub argmax: usize,
}

impl ResidualFamily {
    pub fn new(name: &'static str, values: Vec<f64>) -> Self {
        let (argmax, max_abs) = values
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |(i, m), (j, v)| if v.abs() > m || v.is_nan() { (j, v.abs()) } else { (i, m) });
        ResidualFamily { name, values, max_abs, argmax }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSet {
    pub families: Vec<ResidualFamily>,
}

/// Names of the residual families, in report order.
pub const FAMILY_NAMES: [&str; 8] = [
    "einstein",
    "translation_fiber",
    "torsion",
    "torsion_solved",
    "rotation_fiber",
    "horizontal_ck",
    "horizontal_jk",
    "constraint",
];

impl ResidualSet {
    pub fn get(&self, name: &str) -> Option<&ResidualFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    pub fn max_abs(&self) -> f64 {
        self.families.iter().fold(0.0, |m, f| m.max(f.max_abs))
    }

    pub fn all_finite(&self) -> bool {
        self.families.iter().all(|f| f.is_finite())
    }

    /// Families of the first system: Einstein tensor and torsion.
    pub fn first_system(&self) -> Vec<&ResidualFamily> {
        ["einstein", "torsion_solved"].iter().filter_map(|n| self.get(n)).collect()
    }

    /// Families of the second system: the two fiber-direction equations.
    pub fn second_system(&self) -> Vec<&ResidualFamily> {
        ["translation_fiber", "rotation_fiber"].iter().filter_map(|n| self.get(n)).collect()
    }
}

/// `(Ad*_{g^{-1}} u^j)_a^b`, indexed `[j][(a, b)]`.
fn coadjoint_duals(tables: &AlgebraTables, ctx: &PointContext) -> Result<[fbg_algebra::Mat4; G_DIM], BundleError> {
    let ginv = ctx.lift.g.inverse()?;
    let mut out = [fbg_algebra::Mat4::zeros(); G_DIM];
    for (j, o) in out.iter_mut().enumerate() {
        let lam = tables.coadjoint_group(&ginv, &PCovector::basis(4 + j))?;
        *o = tables.covector_tensor(&lam).0;
    }
    Ok(out)
}

/// Right-hand sides of the field equations in the `p` description, on
/// `(e3_b ^ gamma6, e4 ^ gamma5_j)`:
/// `(nabla^H p)_a = 2 E^b_a e3_b ^ gamma6 + (S (Ad_{g^{-1}} A_a)^j + 1/2 p_d^{bcj} R^d_{bca}
/// + p_d^{cj} T^d_{ca}) e4 ^ gamma5_j` and `(nabla^H p)_a^b = -S (Ad*_{g^{-1}} u^j)_a^b e4 ^ gamma5_j`.
pub fn hvdw_rhs(tables: &AlgebraTables, ctx: &PointContext, p: &MomentumComponents) -> Result<NineFormCoeffs, BundleError> {
    let c = &ctx.curvature;
    let s = c.scalar;
    let mut out = NineFormCoeffs::zero();
    let duals = coadjoint_duals(tables, ctx)?;
    for a in 0..4 {
        for b in 0..4 {
            out.a_b[a][b] = 2.0 * c.einstein[(b, a)];
        }
        for j in 0..G_DIM {
            let mut v = s * ctx.lift.ad_ginv_a[a][j];
            for d in 0..4 {
                for cc in 0..4 {
                    v += p.ck[d][cc][j] * c.torsion[d][cc][a];
                    for b in 0..4 {
                        v += 0.5 * p.pab_ck(tables, d, b, cc, j) * c.riemann[d][b][cc][a];
                    }
                }
            }
            out.a_j[a][j] = v;
        }
        for b in 0..4 {
            for j in 0..G_DIM {
                out.ab_j[a][b][j] = -s * duals[j][(a, b)];
            }
        }
    }
    Ok(out)
}

/// Right-hand sides in the `varpi` description on the `(alpha, omega)` coframe,
/// `(nabla^eta varpi)_a = (kappa^{bc}_A Q^A_{ac} - S delta^b_a) alpha3_b ^ omega6
/// - varpi_A^{cj} Q^A_{ac} alpha4 ^ omega5_j`, `(nabla^eta varpi)_j = -S alpha4 ^ omega5_j`,
/// then carried to the `p` description by `Ad*_{g^{-1}}` and re-read on `(e, gamma)`.
pub fn hvdw_rhs_from_varpi(
    tables: &AlgebraTables,
    ctx: &PointContext,
    varpi: &VarpiComponents,
) -> Result<NineFormCoeffs, BundleError> {
    let q = &ctx.structure;
    let s = q.scalar(tables);
    let kq = q.kappa_trace(tables);
    let mut gv = [[0.0; DIM]; P_DIM];
    for a in 0..4 {
        for b in 0..4 {
            gv[a][b] = kq[(b, a)] - if a == b { s } else { 0.0 };
        }
        for j in 0..G_DIM {
            let mut v = 0.0;
            for aa in 0..P_DIM {
                for c in 0..4 {
                    v += varpi.ck(aa, c, j) * q.q_cd(aa, a, c);
                }
            }
            gv[a][4 + j] = -v;
        }
    }
    for j in 0..G_DIM {
        gv[4 + j][4 + j] = -s;
    }
    // 9-form coefficients: F = G^I iota_I vol, with vol shared by both coframes.
    let from_inv = ctx.lift.coframe.inverse()?;
    let to = ctx.lift.eg_coframe.matrix();
    let t: Mat10 = to * from_inv;
    let n = tables.coadjoint_group_matrix(&ctx.lift.g.inverse()?)?;
    let mut gp = [[0.0; DIM]; P_DIM];
    for a in 0..P_DIM {
        for b in 0..P_DIM {
            let nab = n[(a, b)];
            if nab == 0.0 {
                continue;
            }
            for i in 0..DIM {
                gp[a][i] += nab * (0..DIM).map(|k| t[(i, k)] * gv[b][k]).sum::<f64>();
            }
        }
    }
    Ok(NineFormCoeffs::from_components(tables, &gp))
}

/// `T^a_{cd}` solved from `B(T) + P = 0`:
/// `T^a_{cd} = -(h_{de} P_c^{ea} + 1/2 (delta^a_d h_{ce} - delta^a_c h_{de}) P_{a'}^{ea'})`,
/// with `P[a][b][c] = P_a^{bc}`.
pub fn solve_torsion(tables: &AlgebraTables, p: &Tensor3) -> Tensor3 {
    let h = tables.h();
    let trace: [f64; 4] = std::array::from_fn(|e| (0..4).map(|ap| p[ap][e][ap]).sum());
    let mut t = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for c in 0..4 {
            for d in 0..4 {
                let mut v: f64 = (0..4).map(|e| h[(d, e)] * p[c][e][a]).sum();
                for e in 0..4 {
                    let da_d = if a == d { 1.0 } else { 0.0 };
                    let da_c = if a == c { 1.0 } else { 0.0 };
                    v += 0.5 * (da_d * h[(c, e)] - da_c * h[(d, e)]) * trace[e];
                }
                t[a][c][d] = -v;
            }
        }
    }
    t
}

/// Residuals of every field equation at one point, given the prepared context and
/// the momentum derivatives on the `(e, gamma)` coframe.
pub fn residuals_from_parts(
    tables: &AlgebraTables,
    ctx: &PointContext,
    d: &MomentumDerivatives,
) -> Result<ResidualSet, BundleError> {
    let lhs = nabla_hp_closed(tables, ctx, d);
    let rhs = hvdw_rhs(tables, ctx, &d.value)?;
    let flat2 = |a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]| -> Vec<f64> {
        a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| x - y).collect()
    };
    let einstein = flat2(&lhs.a_b, &rhs.a_b);
    let translation: Vec<f64> =
        lhs.a_j.iter().flatten().zip(rhs.a_j.iter().flatten()).map(|(x, y)| x - y).collect();
    let torsion: Vec<f64> = lhs.ab_c.iter().flatten().flatten().copied().collect();
    let half_div: Tensor3 = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| 0.5 * (0..G_DIM).map(|k| d.d_pab_ck(tables, a, b, c, k, 4 + k)).sum::<f64>())
        })
    });
    let solved = solve_torsion(tables, &half_div);
    let t = &ctx.curvature.torsion;
    let torsion_solved: Vec<f64> = (0..4)
        .flat_map(|a| (0..4).flat_map(move |c| (0..4).map(move |e| (a, c, e))))
        .map(|(a, c, e)| t[a][c][e] - solved[a][c][e])
        .collect();
    let rotation: Vec<f64> =
        lhs.ab_j.iter().flatten().flatten().zip(rhs.ab_j.iter().flatten().flatten()).map(|(x, y)| x - y).collect();
    let q = &ctx.structure;
    let mut ck = Vec::with_capacity(P_DIM * 4 * G_DIM);
    let mut jk = Vec::with_capacity(P_DIM * G_DIM * G_DIM);
    for a in 0..P_DIM {
        for c in 0..4 {
            for k in 0..G_DIM {
                ck.push(q.a_ck(a, c, k));
            }
        }
        for j in 0..G_DIM {
            for k in 0..G_DIM {
                jk.push(q.a_jk(a, j, k));
            }
        }
    }
    let varpi = varpi_from_momentum(tables, &ctx.lift, &d.value)?;
    let mut constraint = Vec::with_capacity(P_DIM * 16);
    for a in 0..P_DIM {
        for c in 0..4 {
            for e in 0..4 {
                constraint.push(varpi.head(a, c, e) - tables.kappa(a, c, e));
            }
        }
    }
    let values = [einstein, translation, torsion, torsion_solved, rotation, ck, jk, constraint];
    Ok(ResidualSet {
        families: FAMILY_NAMES.iter().zip(values).map(|(n, v)| ResidualFamily::new(n, v)).collect(),
    })
}

/// Momentum derivatives on the `(e, gamma)` coframe of a prepared point.
pub fn momentum_derivatives(
    ctx: &PointContext,
    mom: &dyn MomentumField,
    diff: &DiffConfig,
) -> Result<MomentumDerivatives, BundleError> {
    let jet = momentum_jet(mom, &ctx.lift.point.z(), diff)?;
    Ok(MomentumDerivatives::from_jet(&jet, ctx.lift.eg_coframe.inverse()?))
}

pub fn hvdw_residuals(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<ResidualSet, BundleError> {
    let ctx = point_context(tables, cfg, pt, diff)?;
    let d = momentum_derivatives(&ctx, mom, diff)?;
    residuals_from_parts(tables, &ctx, &d)
}
