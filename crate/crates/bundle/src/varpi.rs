use crate::lift::LiftedFields;
use crate::momentum::MomentumComponents;
use crate::structure::StructureDecomposition;
use crate::BundleError;
use fbg_algebra::{AlgebraTables, Mat10, G_DIM, P_DIM};
use fbg_forms::DIM;

/// `w[A][I][J] = varpi_A^{IJ}` with `varpi_A = 1/2 varpi_A^{IJ} iota_J iota_I eta^(10)`
/// on the `(alpha, omega)` coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct VarpiComponents {
    pub w: [[[f64; DIM]; DIM]; P_DIM],
}

impl VarpiComponents {
    pub fn zero() -> Self {
        VarpiComponents { w: [[[0.0; DIM]; DIM]; P_DIM] }
    }

    /// Constrained head only, every free component zero.
    pub fn from_heads(tables: &AlgebraTables) -> Self {
        let mut v = Self::zero();
        for a in 0..P_DIM {
            for c in 0..4 {
                for d in 0..4 {
                    v.w[a][c][d] = tables.kappa(a, c, d);
                }
            }
        }
        v
    }

    pub fn head(&self, a: usize, c: usize, d: usize) -> f64 {
        self.w[a][c][d]
    }

    pub fn ck(&self, a: usize, c: usize, k: usize) -> f64 {
        self.w[a][c][4 + k]
    }

    pub fn jk(&self, a: usize, j: usize, k: usize) -> f64 {
        self.w[a][4 + j][4 + k]
    }

    /// `max |varpi_A^{cd} - kappa_A^{cd}|`.
    pub fn constraint_residual(&self, tables: &AlgebraTables) -> f64 {
        let mut r: f64 = 0.0;
        for a in 0..P_DIM {
            for c in 0..4 {
                for d in 0..4 {
                    r = r.max((self.w[a][c][d] - tables.kappa(a, c, d)).abs());
                }
            }
        }
        r
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for m in &self.w {
            for i in 0..DIM {
                for j in 0..DIM {
                    r = r.max((m[i][j] + m[j][i]).abs());
                }
            }
        }
        r
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for a in 0..P_DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    out.w[a][i][j] += other.w[a][i][j];
                }
            }
        }
        out
    }

    /// `1/2 varpi_A^{IJ} Q^A_{IJ}`, the density of `varpi ^ Omega` against `eta^(10)`.
    pub fn density(&self, q: &StructureDecomposition) -> f64 {
        let mut s = 0.0;
        for a in 0..P_DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    s += 0.5 * self.w[a][i][j] * q.q[a][i][j];
                }
            }
        }
        s
    }
}

fn to_mat(m: &[[f64; DIM]; DIM]) -> Mat10 {
    Mat10::from_fn(|i, j| m[i][j])
}

fn from_mat(m: &Mat10) -> [[f64; DIM]; DIM] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

/// Re-expresses the bivector coefficients `F^{IJ}` of an 8-form from coframe `from`
/// to coframe `to`: `F' = E_to E_from^{-1} F E_from^{-T} E_to^T`.
fn rebase(f: &Mat10, from_inv: &Mat10, to: &Mat10) -> Mat10 {
    let t = to * from_inv;
    t * f * t.transpose()
}

/// `varpi = Ad*_g p` by linear algebra on the coefficient matrices.
pub fn varpi_from_momentum(
    tables: &AlgebraTables,
    lift: &LiftedFields,
    p: &MomentumComponents,
) -> Result<VarpiComponents, BundleError> {
    let n = tables.coadjoint_group_matrix(&lift.g)?;
    let eg_inv = lift.eg_coframe.inverse()?;
    let to = lift.coframe.matrix();
    let rebased: Vec<Mat10> =
        (0..P_DIM).map(|b| rebase(&to_mat(&p.frame_matrix(tables, b)), eg_inv, to)).collect();
    let mut out = VarpiComponents::zero();
    for a in 0..P_DIM {
        let m = (0..P_DIM).fold(Mat10::zeros(), |acc, b| acc + rebased[b] * n[(a, b)]);
        out.w[a] = from_mat(&m);
    }
    Ok(out)
}

/// Inverse of [`varpi_from_momentum`]: `p = Ad*_{g^{-1}} varpi`, read on the `(e, gamma)`
/// coframe. The head of the result is discarded (it is structural).
pub fn momentum_from_varpi(
    tables: &AlgebraTables,
    lift: &LiftedFields,
    v: &VarpiComponents,
) -> Result<(MomentumComponents, f64), BundleError> {
    let n = tables.coadjoint_group_matrix(&lift.g.inverse()?)?;
    let from_inv = lift.coframe.inverse()?;
    let to = lift.eg_coframe.matrix();
    let rebased: Vec<Mat10> = (0..P_DIM).map(|b| rebase(&to_mat(&v.w[b]), from_inv, to)).collect();
    let mut out = MomentumComponents::zero();
    let mut head_residual: f64 = 0.0;
    for a in 0..P_DIM {
        let m = (0..P_DIM).fold(Mat10::zeros(), |acc, b| acc + rebased[b] * n[(a, b)]);
        for c in 0..4 {
            for d in 0..4 {
                head_residual = head_residual.max((m[(c, d)] - tables.kappa(a, c, d)).abs());
            }
            for k in 0..G_DIM {
                out.ck[a][c][k] = m[(c, 4 + k)];
            }
        }
        for j in 0..G_DIM {
            for k in 0..G_DIM {
                out.jk[a][j][k] = m[(4 + j, 4 + k)];
            }
        }
    }
    Ok((out, head_residual))
}

/// The same map through the closed identification formulas:
/// `varpi_A^{c'd'} = (g^{-1})^{c'}_c (g^{-1})^{d'}_d (Ad*_g p)_A^{cd}`,
/// `varpi_A^{c'j} = (g^{-1})^{c'}_c [(Ad*_g p)_A^{cj} + (Ad*_g p)_A^{cd} (Ad_{g^{-1}} A_d)^j]`,
/// `varpi_A^{jk} = (Ad*_g p)_A^{jk} - X^{jk} - (Y^{jk} - Y^{kj})` with
/// `X^{jk} = varpi^{cd} g^{c'}_c g^{d'}_d (Ad A_{c'})^j (Ad A_{d'})^k` and
/// `Y^{jk} = varpi^{cj} g^{c'}_c (Ad A_{c'})^k`.
pub fn varpi_identification(
    tables: &AlgebraTables,
    lift: &LiftedFields,
    p: &MomentumComponents,
) -> Result<VarpiComponents, BundleError> {
    let n = tables.coadjoint_group_matrix(&lift.g)?;
    let g = &lift.g.matrix;
    let gi = &lift.g_inv;
    let ad = &lift.ad_ginv_a;
    let mut out = VarpiComponents::zero();
    for a in 0..P_DIM {
        // Ad*_g p, block by block
        let mut pg = [[0.0; DIM]; DIM];
        for b in 0..P_DIM {
            let nab = n[(a, b)];
            if nab == 0.0 {
                continue;
            }
            let pb = p.frame_matrix(tables, b);
            for i in 0..DIM {
                for j in 0..DIM {
                    pg[i][j] += nab * pb[i][j];
                }
            }
        }
        let w = &mut out.w[a];
        for cp in 0..4 {
            for dp in 0..4 {
                let mut s = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        s += gi[(cp, c)] * gi[(dp, d)] * pg[c][d];
                    }
                }
                w[cp][dp] = s;
            }
        }
        for cp in 0..4 {
            for j in 0..G_DIM {
                let mut s = 0.0;
                for c in 0..4 {
                    let inner = pg[c][4 + j] + (0..4).map(|d| pg[c][d] * ad[d][j]).sum::<f64>();
                    s += gi[(cp, c)] * inner;
                }
                w[cp][4 + j] = s;
                w[4 + j][cp] = -s;
            }
        }
        // g-rotated adjoint components, (Ad A)_{c}^j pulled back: sum_{c'} g^{c'}_c (Ad A_{c'})^j
        let rot: [[f64; G_DIM]; 4] =
            std::array::from_fn(|c| std::array::from_fn(|j| (0..4).map(|cp| g[(cp, c)] * ad[cp][j]).sum()));
        for j in 0..G_DIM {
            for k in 0..G_DIM {
                let mut x = 0.0;
                let mut yjk = 0.0;
                let mut ykj = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        x += w[c][d] * rot[c][j] * rot[d][k];
                    }
                    yjk += w[c][4 + j] * rot[c][k];
                    ykj += w[c][4 + k] * rot[c][j];
                }
                w[4 + j][4 + k] = pg[4 + j][4 + k] - x - (yjk - ykj);
            }
        }
    }
    Ok(out)
}
