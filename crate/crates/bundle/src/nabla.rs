use crate::context::PointContext;
use crate::momentum::{MomentumComponents, MomentumDerivatives, MomentumField};
use crate::BundleError;
use fbg_algebra::{AlgebraTables, Mat10, G_DIM, P_DIM};
use fbg_forms::{d_from_partials, jacobian, maurer_cartan, ChartPoint, CoframeValue, DiffConfig, FormValue, DIM};
use fbg_geometry::{FieldConfig, Tensor3};

/// Coefficients of a `p*`-valued 9-form `F_A` on `(e3_b ^ gamma6, e4 ^ gamma5_j)`, the
/// rotation part read in mixed form `F_a^b = u^{ib}_a F_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NineFormCoeffs {
    /// `[a][b]`: `F_a` on `e3_b ^ gamma6`.
    pub a_b: [[f64; 4]; 4],
    /// `[a][j]`: `F_a` on `e4 ^ gamma5_j`.
    pub a_j: [[f64; G_DIM]; 4],
    /// `[a][b][c]`: `F_a^b` on `e3_c ^ gamma6`.
    pub ab_c: Tensor3,
    /// `[a][b][j]`: `F_a^b` on `e4 ^ gamma5_j`.
    pub ab_j: [[[f64; G_DIM]; 4]; 4],
}

impl NineFormCoeffs {
    pub fn zero() -> Self {
        NineFormCoeffs {
            a_b: [[0.0; 4]; 4],
            a_j: [[0.0; G_DIM]; 4],
            ab_c: [[[0.0; 4]; 4]; 4],
            ab_j: [[[0.0; G_DIM]; 4]; 4],
        }
    }

    /// From `g[A][I]`, `F_A = g[A][I] iota_I vol` on the `(e, gamma)` coframe.
    pub fn from_components(tables: &AlgebraTables, g: &[[f64; DIM]; P_DIM]) -> Self {
        let mut out = Self::zero();
        for a in 0..4 {
            for b in 0..4 {
                out.a_b[a][b] = g[a][b];
            }
            for j in 0..G_DIM {
                out.a_j[a][j] = g[a][4 + j];
            }
            for b in 0..4 {
                let u: [f64; G_DIM] = std::array::from_fn(|i| tables.dual_mixed(i)[(a, b)]);
                for c in 0..4 {
                    out.ab_c[a][b][c] = (0..G_DIM).map(|i| u[i] * g[4 + i][c]).sum();
                }
                for j in 0..G_DIM {
                    out.ab_j[a][b][j] = (0..G_DIM).map(|i| u[i] * g[4 + i][4 + j]).sum();
                }
            }
        }
        out
    }

    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.a_b
            .iter()
            .flatten()
            .chain(self.a_j.iter().flatten())
            .chain(self.ab_c.iter().flatten().flatten())
            .chain(self.ab_j.iter().flatten().flatten())
            .copied()
    }

    pub fn max_abs(&self) -> f64 {
        self.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.values().zip(other.values()).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `B_a^{bc} = h^{bd} T^c_{ad} - h^{bc} T^d_{ad} + h^{be} T^d_{ed} delta^c_a`.
pub fn torsion_block(tables: &AlgebraTables, t: &Tensor3) -> Tensor3 {
    let hi = tables.h_inv();
    let mut out = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        let trace_a: f64 = (0..4).map(|d| t[d][a][d]).sum();
        for b in 0..4 {
            let trace_b: f64 = (0..4).map(|e| hi[(b, e)] * (0..4).map(|d| t[d][e][d]).sum::<f64>()).sum();
            for c in 0..4 {
                let mut v: f64 = (0..4).map(|d| hi[(b, d)] * t[c][a][d]).sum();
                v -= hi[(b, c)] * trace_a;
                if a == c {
                    v += trace_b;
                }
                out[a][b][c] = v;
            }
        }
    }
    out
}

/// Mixed-form free components `p_a^{bck}` and `p_a^{bjk}`.
struct Mixed {
    ck: [[[[f64; G_DIM]; 4]; 4]; 4],
    jk: [[[[f64; G_DIM]; G_DIM]; 4]; 4],
}

fn mixed(tables: &AlgebraTables, p: &MomentumComponents) -> Mixed {
    let mut m = Mixed { ck: [[[[0.0; G_DIM]; 4]; 4]; 4], jk: [[[[0.0; G_DIM]; G_DIM]; 4]; 4] };
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for k in 0..G_DIM {
                    m.ck[a][b][c][k] = p.pab_ck(tables, a, b, c, k);
                }
            }
            for j in 0..G_DIM {
                for k in 0..G_DIM {
                    m.jk[a][b][j][k] = p.pab_jk(tables, a, b, j, k);
                }
            }
        }
    }
    m
}

/// `nabla^H p` from the closed coefficient formulas. `d` holds the coframe derivatives
/// on the `(e, gamma)` coframe.
pub fn nabla_hp_closed(tables: &AlgebraTables, ctx: &PointContext, d: &MomentumDerivatives) -> NineFormCoeffs {
    let p = &d.value;
    let gam = &ctx.christoffel;
    let y = &ctx.y_weight;
    let mx = mixed(tables, p);
    let b_t = torsion_block(tables, &ctx.curvature.torsion);
    // -2 p_a^{bj} enters through its projection onto the rotation algebra
    let proj: [fbg_algebra::Mat4; G_DIM] = std::array::from_fn(|j| {
        let m = fbg_algebra::Mat4::from_fn(|a, b| p.ck[a][b][j]);
        let lam = tables.covector_from_tensor(&m, &fbg_algebra::Vec4::zeros());
        tables.covector_tensor(&lam).0
    });
    let mut out = NineFormCoeffs::zero();
    for a in 0..4 {
        for b in 0..4 {
            out.a_b[a][b] = (0..G_DIM).map(|k| d.d_ck(a, b, k, 4 + k)).sum();
        }
        for j in 0..G_DIM {
            let mut v = 0.0;
            for c in 0..4 {
                v -= d.d_ck(a, c, j, c);
                v -= p.ck[a][c][j] * y[c];
                for b in 0..4 {
                    v += p.ck[b][c][j] * gam[b][c][a];
                }
            }
            for k in 0..G_DIM {
                v += d.d_jk(a, j, k, 4 + k);
                for l in 0..G_DIM {
                    v -= 0.5 * p.jk[a][k][l] * tables.c_g(j, k, l);
                }
            }
            out.a_j[a][j] = v;
        }
        for b in 0..4 {
            for c in 0..4 {
                out.ab_c[a][b][c] =
                    2.0 * b_t[a][b][c] + (0..G_DIM).map(|k| d.d_pab_ck(tables, a, b, c, k, 4 + k)).sum::<f64>();
            }
            for j in 0..G_DIM {
                let mut v = 0.0;
                for c in 0..4 {
                    v -= d.d_pab_ck(tables, a, b, c, j, c);
                    v -= mx.ck[a][b][c][j] * y[c];
                    for e in 0..4 {
                        v -= gam[b][c][e] * mx.ck[a][e][c][j];
                        v += gam[e][c][a] * mx.ck[e][b][c][j];
                    }
                }
                v -= 2.0 * proj[j][(a, b)];
                for k in 0..G_DIM {
                    v += d.d_pab_jk(tables, a, b, j, k, 4 + k);
                    for l in 0..G_DIM {
                        v -= 0.5 * mx.jk[a][b][k][l] * tables.c_g(j, k, l);
                    }
                }
                out.ab_j[a][b][j] = v;
            }
        }
    }
    out
}

/// The `(e, gamma)` coframe matrix at a chart point.
pub fn eg_matrix(tables: &AlgebraTables, cfg: &dyn FieldConfig, z: &[f64; DIM]) -> Result<Mat10, BundleError> {
    let pt = ChartPoint::from_z(z);
    let mc = maurer_cartan(tables, &pt.y)?;
    let e = cfg.vierbein(&pt.x);
    let mut m = Mat10::zeros();
    for r in 0..4 {
        for mu in 0..4 {
            m[(r, mu)] = e[(r, mu)];
        }
    }
    for i in 0..G_DIM {
        for j in 0..G_DIM {
            m[(4 + i, 4 + j)] = mc.gamma[(i, j)];
        }
    }
    Ok(m)
}

fn momentum_forms(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    z: &[f64; DIM],
) -> Result<Vec<FormValue>, BundleError> {
    let cf = CoframeValue::new(eg_matrix(tables, cfg, z)?);
    let p = mom.components(z);
    (0..P_DIM).map(|a| Ok(cf.eight_form(&p.frame_matrix(tables, a))?)).collect()
}

/// `nabla^H p = dp - ad*_H ^ p` by finite differences of the chart 8-forms, with
/// `H = (e, A)` and `(ad*_H ^ p)_B = c^A_{CB} H^C ^ p_A`.
pub fn nabla_hp_fd(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<NineFormCoeffs, BundleError> {
    let z = pt.z();
    let flat = |q: &[f64; DIM]| -> Result<Vec<f64>, BundleError> {
        Ok(momentum_forms(tables, cfg, mom, q)?.iter().flat_map(|f| f.coeffs().to_vec()).collect())
    };
    let jac = jacobian(&flat, &z, diff)?;
    let forms = momentum_forms(tables, cfg, mom, &z)?;
    let n8 = forms[0].coeffs().len();
    let e = cfg.vierbein(&pt.x);
    let a = cfg.connection(&pt.x);
    let h: Vec<FormValue> = (0..P_DIM)
        .map(|c| {
            let mut v = [0.0; DIM];
            for mu in 0..4 {
                v[mu] = if c < 4 { e[(c, mu)] } else { tables.g_coords(&a[mu])[c - 4] };
            }
            FormValue::one_form(&v)
        })
        .collect();
    let cf = CoframeValue::new(eg_matrix(tables, cfg, &z)?);
    let mut g = [[0.0; DIM]; P_DIM];
    for b in 0..P_DIM {
        let partials: Vec<FormValue> = (0..DIM)
            .map(|mu| FormValue::from_coeffs(8, jac[mu][b * n8..(b + 1) * n8].to_vec()))
            .collect::<Result<_, _>>()?;
        let mut nab = d_from_partials(&partials)?;
        for (c, hc) in h.iter().enumerate() {
            for (aa, pa) in forms.iter().enumerate() {
                let s = tables.c_p(aa, c, b);
                if s != 0.0 {
                    nab.axpy(-s, &hc.wedge(pa)?);
                }
            }
        }
        g[b] = cf.coeffs9(&nab)?;
    }
    Ok(NineFormCoeffs::from_components(tables, &g))
}
