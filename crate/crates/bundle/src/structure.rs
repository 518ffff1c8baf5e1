use crate::lift::{CoframeField, LiftedFields};
use crate::BundleError;
use fbg_algebra::{AlgebraTables, Mat10, Mat4, G_DIM, P_DIM};
use fbg_forms::{jacobian, DiffConfig, FormError, DIM};
use fbg_geometry::CurvatureData;

/// `Q[A][J][K]` with `Omega^A = dEta^A + 1/2 [eta ^ eta]^A = 1/2 Q^A_{JK} eta^J ^ eta^K`.
pub type Tensor10 = [[[f64; DIM]; DIM]; DIM];

#[derive(Clone, Debug, PartialEq)]
pub struct StructureDecomposition {
    pub q: Tensor10,
}

impl StructureDecomposition {
    pub fn zero() -> Self {
        StructureDecomposition { q: [[[0.0; DIM]; DIM]; DIM] }
    }

    /// `Q^A_{cd}`.
    pub fn q_cd(&self, a: usize, c: usize, d: usize) -> f64 {
        self.q[a][c][d]
    }

    /// Off-block coefficient `A^A_{ck}`.
    pub fn a_ck(&self, a: usize, c: usize, k: usize) -> f64 {
        self.q[a][c][4 + k]
    }

    /// Off-block coefficient `A^A_{jk}`.
    pub fn a_jk(&self, a: usize, j: usize, k: usize) -> f64 {
        self.q[a][4 + j][4 + k]
    }

    /// `max |A^A_{ck}|, |A^A_{jk}|` restricted to rows `rows`.
    pub fn horizontal_residual(&self, rows: std::ops::Range<usize>) -> f64 {
        let mut m: f64 = 0.0;
        for a in rows {
            for j in 0..DIM {
                for k in 4..DIM {
                    m = m.max(self.q[a][j][k].abs());
                }
            }
        }
        m
    }

    /// `1/2 kappa_A^{cd} Q^A_{cd}`.
    pub fn scalar(&self, tables: &AlgebraTables) -> f64 {
        let mut s = 0.0;
        for a in 4..P_DIM {
            for c in 0..4 {
                for d in 0..4 {
                    s += 0.5 * tables.kappa(a, c, d) * self.q[a][c][d];
                }
            }
        }
        s
    }

    /// `kappa^{bc}_A Q^A_{ac}`, stored `[(b, a)]`.
    pub fn kappa_trace(&self, tables: &AlgebraTables) -> Mat4 {
        Mat4::from_fn(|b, a| {
            let mut s = 0.0;
            for aa in 4..P_DIM {
                for c in 0..4 {
                    s += tables.kappa(aa, b, c) * self.q[aa][a][c];
                }
            }
            s
        })
    }
}

fn flatten(m: &Mat10) -> Vec<f64> {
    m.as_slice().to_vec()
}

/// Coframe partials `[nu] -> d_nu E`, analytic or finite-difference per `diff`.
pub fn coframe_partials(
    field: &dyn CoframeField,
    z: &[f64; DIM],
    diff: &DiffConfig,
) -> Result<[Mat10; DIM], BundleError> {
    if diff.is_analytic() {
        return field.coframe_partials(z).ok_or(BundleError::Form(FormError::MissingPartials))?;
    }
    let f = |p: &[f64; DIM]| field.coframe(p).map(|m| flatten(&m));
    let jac = jacobian(&f, z, diff)?;
    Ok(std::array::from_fn(|nu| Mat10::from_column_slice(&jac[nu])))
}

/// Decomposition of `d eta + 1/2 [eta ^ eta]` on the coframe itself.
pub fn structure_decomposition(
    tables: &AlgebraTables,
    field: &dyn CoframeField,
    z: &[f64; DIM],
    diff: &DiffConfig,
) -> Result<StructureDecomposition, BundleError> {
    let e = field.coframe(z)?;
    let det = e.determinant();
    let inv = match e.try_inverse() {
        Some(v) if det.abs() > fbg_forms::RANK_TOL => v,
        _ => return Err(BundleError::RankDeficient { det }),
    };
    let de = coframe_partials(field, z, diff)?;
    let mut out = StructureDecomposition::zero();
    for a in 0..DIM {
        // D_{nu mu} = d_nu E^A_mu - d_mu E^A_nu
        let d = Mat10::from_fn(|nu, mu| de[nu][(a, mu)] - de[mu][(a, nu)]);
        let k = inv.transpose() * d * inv;
        for j in 0..DIM {
            for l in 0..DIM {
                out.q[a][j][l] = k[(j, l)] + tables.c_p(a, j, l);
            }
        }
    }
    Ok(out)
}

/// The decomposition of a lifted configuration predicted from torsion and curvature:
/// `Q^a_{cd} = (g^{-1})^a_{a'} g^{c'}_c g^{d'}_d T^{a'}_{c'd'}`, the same conjugation for
/// the curvature, and vanishing off-block coefficients.
pub fn lifted_structure(tables: &AlgebraTables, lift: &LiftedFields, curv: &CurvatureData) -> StructureDecomposition {
    let g = &lift.g.matrix;
    let gi = &lift.g_inv;
    let mut out = StructureDecomposition::zero();
    for c in 0..4 {
        for d in 0..4 {
            let mut t = [0.0; 4];
            let mut r = Mat4::zeros();
            for cp in 0..4 {
                for dp in 0..4 {
                    let w = g[(cp, c)] * g[(dp, d)];
                    if w == 0.0 {
                        continue;
                    }
                    for (ap, tv) in t.iter_mut().enumerate() {
                        *tv += w * curv.torsion[ap][cp][dp];
                    }
                    r += Mat4::from_fn(|a, b| curv.riemann[a][b][cp][dp]) * w;
                }
            }
            for a in 0..4 {
                out.q[a][c][d] = (0..4).map(|ap| gi[(a, ap)] * t[ap]).sum();
            }
            let coords = tables.g_coords(&(gi * r * g));
            for i in 0..G_DIM {
                out.q[4 + i][c][d] = coords[i];
            }
        }
    }
    out
}
