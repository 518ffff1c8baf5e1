use crate::config::{field_jet, FieldConfig};
use crate::curvature::Tensor3;
use crate::GeometryError;
use fbg_algebra::{Mat4, Signature, INDEX_PAIRS};
use fbg_forms::DiffConfig;
use nalgebra::{SMatrix, SVector};

type Mat24 = SMatrix<f64, 24, 24>;
type Vec24 = SVector<f64, 24>;

/// Frame components `C^a_{cd}` of `de^a`.
fn frame_de(e_inv: &Mat4, de: &[Mat4; 4]) -> Tensor3 {
    let mut out = [[[0.0; 4]; 4]; 4];
    for (a, row) in out.iter_mut().enumerate() {
        let theta = Mat4::from_fn(|nu, mu| de[nu][(a, mu)] - de[mu][(a, nu)]);
        let f = e_inv.transpose() * theta * e_inv;
        for c in 0..4 {
            for d in 0..4 {
                row[c][d] = f[(c, d)];
            }
        }
    }
    out
}

/// `omega^a_{bk}` from the 24 unknowns `omega_{abk}`, `a < b`.
fn omega_from(u: &Vec24, sig: &Signature) -> Tensor3 {
    let mut w = [[[0.0; 4]; 4]; 4];
    for (p, &(a0, b0)) in INDEX_PAIRS.iter().enumerate() {
        for k in 0..4 {
            let v = u[4 * p + k];
            w[a0][b0][k] = sig.diag(a0) * v;
            w[b0][a0][k] = -sig.diag(b0) * v;
        }
    }
    w
}

/// Torsion `C^a_{cd} + omega^a_{dc} - omega^a_{cd}` packed as 24 numbers (`c < d`).
fn torsion_vec(c: &Tensor3, w: &Tensor3) -> Vec24 {
    let mut out = Vec24::zeros();
    let mut n = 0;
    for a in 0..4 {
        for cc in 0..4 {
            for d in (cc + 1)..4 {
                out[n] = c[a][cc][d] + w[a][d][cc] - w[a][cc][d];
                n += 1;
            }
        }
    }
    out
}

/// Solves `de + A ^ e = 0` for the `h`-antisymmetric connection, given the vierbein
/// and its first partials. Returns `A_mu` in the layout of [`FieldConfig::connection`].
pub fn solve_torsion_free(sig: &Signature, e: &Mat4, e_inv: &Mat4, de: &[Mat4; 4]) -> Result<[Mat4; 4], GeometryError> {
    let c = frame_de(e_inv, de);
    let zero = [[[0.0; 4]; 4]; 4];
    let base = torsion_vec(&c, &zero);
    let mut m = Mat24::zeros();
    for col in 0..24 {
        let mut u = Vec24::zeros();
        u[col] = 1.0;
        let t = torsion_vec(&zero, &omega_from(&u, sig));
        m.set_column(col, &t);
    }
    let u = m.lu().solve(&(-base)).ok_or(GeometryError::SingularLeviCivita)?;
    let w = omega_from(&u, sig);
    Ok(std::array::from_fn(|mu| {
        Mat4::from_fn(|a, b| (0..4).map(|k| w[a][b][k] * e[(k, mu)]).sum())
    }))
}

/// Torsion-free connection for the vierbein of `cfg` at `x`.
pub fn levi_civita_connection(cfg: &dyn FieldConfig, x: &[f64; 4], diff: &DiffConfig) -> Result<[Mat4; 4], GeometryError> {
    let jet = field_jet(cfg, x, diff)?;
    solve_torsion_free(&cfg.signature(), &jet.e, &jet.e_inv, &jet.de)
}
