use crate::config::{field_jet, FieldConfig, FieldJet};
use crate::GeometryError;
use fbg_algebra::{Mat4, Signature};
use fbg_forms::DiffConfig;

pub type Tensor3 = [[[f64; 4]; 4]; 4];
pub type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];

/// Torsion `T[a][c][d] = T^a_{cd}`, curvature `R[a][b][c][d] = R^a_{bcd}`, and the
/// traces `Ric[(b, a)] = Ric^b_a`, `S`, `E[(b, a)] = E^b_a` at a base point.
#[derive(Clone, Debug)]
pub struct CurvatureData {
    pub torsion: Tensor3,
    pub riemann: Tensor4,
    pub ricci: Mat4,
    pub scalar: f64,
    pub einstein: Mat4,
}

/// Frame components of the 2-form `1/2 F_{nu mu} dx^nu ^ dx^mu`, i.e.
/// `F_{nu mu} E^nu_c E^mu_d`.
fn to_frame(f: &Mat4, e_inv: &Mat4) -> Mat4 {
    e_inv.transpose() * f * e_inv
}

pub fn torsion_curvature_from_jet(jet: &FieldJet) -> (Tensor3, Tensor4) {
    let mut torsion = [[[0.0; 4]; 4]; 4];
    let mut riemann = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        // (de + A^e)^a_{nu mu}
        let theta = Mat4::from_fn(|nu, mu| {
            let mut v = jet.de[nu][(a, mu)] - jet.de[mu][(a, nu)];
            for b in 0..4 {
                v += jet.a[nu][(a, b)] * jet.e[(b, mu)] - jet.a[mu][(a, b)] * jet.e[(b, nu)];
            }
            v
        });
        let tf = to_frame(&theta, &jet.e_inv);
        for c in 0..4 {
            for d in 0..4 {
                torsion[a][c][d] = tf[(c, d)];
            }
        }
        for b in 0..4 {
            let omega = Mat4::from_fn(|nu, mu| {
                let mut v = jet.da[nu][mu][(a, b)] - jet.da[mu][nu][(a, b)];
                for c in 0..4 {
                    v += jet.a[nu][(a, c)] * jet.a[mu][(c, b)] - jet.a[mu][(a, c)] * jet.a[nu][(c, b)];
                }
                v
            });
            let rf = to_frame(&omega, &jet.e_inv);
            for c in 0..4 {
                for d in 0..4 {
                    riemann[a][b][c][d] = rf[(c, d)];
                }
            }
        }
    }
    (torsion, riemann)
}

/// `Ric^b_a = h^{dd'} R^b_{d'ad}`, `S = Ric^a_a`, `E^b_a = Ric^b_a - S/2 delta^b_a`.
pub fn ricci_scalar_einstein(riemann: &Tensor4, signature: &Signature) -> (Mat4, f64, Mat4) {
    let ricci = Mat4::from_fn(|b, a| (0..4).map(|d| signature.diag(d) * riemann[b][d][a][d]).sum());
    let scalar = ricci.trace();
    let einstein = ricci - Mat4::identity() * (0.5 * scalar);
    (ricci, scalar, einstein)
}

impl CurvatureData {
    pub fn from_parts(torsion: Tensor3, riemann: Tensor4, signature: &Signature) -> Self {
        let (ricci, scalar, einstein) = ricci_scalar_einstein(&riemann, signature);
        CurvatureData { torsion, riemann, ricci, scalar, einstein }
    }

    pub fn max_torsion(&self) -> f64 {
        self.torsion.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest violation of the antisymmetries of `T` and `R`.
    pub fn antisymmetry_residual(&self, signature: &Signature) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    worst = worst.max((self.torsion[a][c][d] + self.torsion[a][d][c]).abs());
                    for b in 0..4 {
                        let r = &self.riemann;
                        worst = worst.max((r[a][b][c][d] + r[a][b][d][c]).abs());
                        let up = r[a][b][c][d] * signature.diag(b) + r[b][a][c][d] * signature.diag(a);
                        worst = worst.max(up.abs());
                    }
                }
            }
        }
        worst
    }

    /// `max |R^a_{bcd} + R^a_{cdb} + R^a_{dbc}|`.
    pub fn bianchi_residual(&self) -> f64 {
        let r = &self.riemann;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        worst = worst.max((r[a][b][c][d] + r[a][c][d][b] + r[a][d][b][c]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Torsion and curvature only; the traces are filled by [`CurvatureData::from_parts`].
pub fn torsion_curvature(
    cfg: &dyn FieldConfig,
    x: &[f64; 4],
    diff: &DiffConfig,
) -> Result<(Tensor3, Tensor4), GeometryError> {
    Ok(torsion_curvature_from_jet(&field_jet(cfg, x, diff)?))
}

pub fn curvature_data(cfg: &dyn FieldConfig, x: &[f64; 4], diff: &DiffConfig) -> Result<CurvatureData, GeometryError> {
    let (t, r) = torsion_curvature(cfg, x, diff)?;
    Ok(CurvatureData::from_parts(t, r, &cfg.signature()))
}

/// `Gamma[a][b][c] = Gamma^a_{bc}` with `A^a_c = Gamma^a_{bc} e^b`.
pub fn christoffel_from_jet(jet: &FieldJet) -> Tensor3 {
    let mut g = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                g[a][b][c] = (0..4).map(|mu| jet.a[mu][(a, c)] * jet.e_inv[(mu, b)]).sum();
            }
        }
    }
    g
}

/// `Y_c = T^d_{cd} - Gamma^d_{cd} + Gamma^d_{dc}`.
pub fn divergence_weight(torsion: &Tensor3, gamma: &Tensor3) -> [f64; 4] {
    std::array::from_fn(|c| (0..4).map(|d| torsion[d][c][d] - gamma[d][c][d] + gamma[d][d][c]).sum())
}

pub fn christoffel_y(
    cfg: &dyn FieldConfig,
    x: &[f64; 4],
    diff: &DiffConfig,
) -> Result<(Tensor3, [f64; 4]), GeometryError> {
    let jet = field_jet(cfg, x, diff)?;
    let (t, _) = torsion_curvature_from_jet(&jet);
    let g = christoffel_from_jet(&jet);
    let y = divergence_weight(&t, &g);
    Ok((g, y))
}
