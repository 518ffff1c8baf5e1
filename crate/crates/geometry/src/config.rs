use crate::GeometryError;
use fbg_algebra::{Mat4, Signature};
use fbg_forms::{jacobian, DiffConfig, DiffMode, FormError};

/// A moving coframe `e^a = e^a_mu dx^mu` and a connection `A^a_b = A^a_{b mu} dx^mu`
/// on a chart of space-time.
///
/// `vierbein(x)[(a, mu)] = e^a_mu`, `connection(x)[mu][(a, b)] = A^a_{b mu}`.
pub trait FieldConfig: Send + Sync {
    fn name(&self) -> String;
    fn signature(&self) -> Signature;
    fn vierbein(&self, x: &[f64; 4]) -> Mat4;
    fn connection(&self, x: &[f64; 4]) -> [Mat4; 4];

    /// `[nu] -> d_nu e`.
    fn vierbein_partials(&self, _x: &[f64; 4]) -> Option<[Mat4; 4]> {
        None
    }

    /// `[nu][mu] -> d_nu A_mu`.
    fn connection_partials(&self, _x: &[f64; 4]) -> Option<[[Mat4; 4]; 4]> {
        None
    }

    fn in_domain(&self, _x: &[f64; 4]) -> bool {
        true
    }

    fn has_analytic_partials(&self) -> bool {
        false
    }

    /// Maps a point of the unit cube `[0, 1)^4` into a well-conditioned part of the domain.
    fn sample(&self, u: &[f64; 4]) -> [f64; 4] {
        u.map(|v| 2.0 * v - 1.0)
    }
}

/// Values and first partials of `(e, A)` at a base point.
#[derive(Clone, Debug)]
pub struct FieldJet {
    pub x: [f64; 4],
    pub e: Mat4,
    pub e_inv: Mat4,
    /// `[nu] -> d_nu e`.
    pub de: [Mat4; 4],
    pub a: [Mat4; 4],
    /// `[nu][mu] -> d_nu A_mu`.
    pub da: [[Mat4; 4]; 4],
}

fn flatten(e: &Mat4, a: &[Mat4; 4]) -> Vec<f64> {
    let mut v = Vec::with_capacity(80);
    v.extend_from_slice(e.as_slice());
    for m in a {
        v.extend_from_slice(m.as_slice());
    }
    v
}

fn unflatten(v: &[f64]) -> (Mat4, [Mat4; 4]) {
    let e = Mat4::from_column_slice(&v[..16]);
    let a = std::array::from_fn(|mu| Mat4::from_column_slice(&v[16 * (mu + 1)..16 * (mu + 2)]));
    (e, a)
}

pub fn field_jet(cfg: &dyn FieldConfig, x: &[f64; 4], diff: &DiffConfig) -> Result<FieldJet, GeometryError> {
    if !cfg.in_domain(x) {
        return Err(GeometryError::OutOfDomain(*x));
    }
    let e = cfg.vierbein(x);
    let det = e.determinant();
    let e_inv = match e.try_inverse() {
        Some(inv) if det.abs() > 1e-12 => inv,
        _ => return Err(GeometryError::SingularVierbein { x: *x, det }),
    };
    let a = cfg.connection(x);
    let (de, da) = match diff.mode {
        DiffMode::Analytic => {
            let de = cfg.vierbein_partials(x).ok_or(FormError::MissingPartials)?;
            let da = cfg.connection_partials(x).ok_or(FormError::MissingPartials)?;
            (de, da)
        }
        DiffMode::FiniteDifference => {
            let f = |p: &[f64; 4]| Ok::<_, GeometryError>(flatten(&cfg.vierbein(p), &cfg.connection(p)));
            let jac = jacobian(&f, x, diff)?;
            let mut de = [Mat4::zeros(); 4];
            let mut da = [[Mat4::zeros(); 4]; 4];
            for nu in 0..4 {
                let (e_nu, a_nu) = unflatten(&jac[nu]);
                de[nu] = e_nu;
                da[nu] = a_nu;
            }
            (de, da)
        }
    };
    Ok(FieldJet { x: *x, e, e_inv, de, a, da })
}

/// Largest `|A^{ab}_mu + A^{ba}_mu|` with the index raised by `h`.
pub fn connection_antisymmetry_residual(cfg: &dyn FieldConfig, x: &[f64; 4]) -> f64 {
    let h_inv = cfg.signature().h_inv();
    cfg.connection(x)
        .iter()
        .map(|am| {
            let up = am * h_inv;
            (up + up.transpose()).amax()
        })
        .fold(0.0, f64::max)
}
