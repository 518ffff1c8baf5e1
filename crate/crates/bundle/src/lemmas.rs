//! Finite-difference checks of the coadjoint identities behind the field equations.

use crate::lift::lift;
use crate::momentum::Poly;
use crate::BundleError;
use fbg_algebra::{AlgebraTables, GroupElement, Mat10, Mat4, G_DIM, P_DIM};
use fbg_forms::{d_from_partials, form, jacobian, ChartPoint, DiffConfig, FormValue, DIM};
use fbg_geometry::FieldConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A `p*`-valued `k`-form on the chart with polynomial components.
#[derive(Clone, Debug)]
pub struct PolynomialFormField {
    degree: usize,
    /// `[A][slot]` in the chart basis.
    coeffs: Vec<Vec<Poly>>,
}

impl PolynomialFormField {
    pub fn random(seed: u64, degree: usize, amplitude: f64, poly_degree: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = form::masks(degree).len();
        let coeffs = (0..P_DIM).map(|_| (0..n).map(|_| Poly::random(&mut rng, amplitude, poly_degree)).collect()).collect();
        PolynomialFormField { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, z: &[f64; DIM]) -> Vec<FormValue> {
        self.coeffs
            .iter()
            .map(|row| {
                FormValue::from_coeffs(self.degree, row.iter().map(|p| p.value(z)).collect())
                    .expect("slot count matches the degree")
            })
            .collect()
    }
}

/// `g(z) = exp(phi(z)^i u_i)` with polynomial `phi`.
#[derive(Clone, Debug)]
pub struct PolynomialGroupField {
    tables: AlgebraTables,
    phi: [Poly; G_DIM],
}

impl PolynomialGroupField {
    pub fn random(tables: &AlgebraTables, seed: u64, amplitude: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        PolynomialGroupField { tables: tables.clone(), phi: std::array::from_fn(|_| Poly::random(&mut rng, amplitude, 2)) }
    }

    pub fn value(&self, z: &[f64; DIM]) -> Mat4 {
        let v: [f64; G_DIM] = std::array::from_fn(|i| self.phi[i].value(z));
        self.tables.exp_chart(&v).matrix
    }
}

pub(crate) fn coadjoint(tables: &AlgebraTables, g: &Mat4, forms: &[FormValue]) -> Result<Vec<FormValue>, BundleError> {
    let n = tables.coadjoint_group_matrix(&GroupElement::from_matrix(*g))?;
    Ok((0..P_DIM)
        .map(|a| {
            let mut out = FormValue::zero(forms[0].degree());
            for (b, f) in forms.iter().enumerate() {
                if n[(a, b)] != 0.0 {
                    out.axpy(n[(a, b)], f);
                }
            }
            out
        })
        .collect())
}

fn inverse(g: &Mat4) -> Mat4 {
    g.try_inverse().expect("group elements are invertible")
}

/// `d` of a list of forms by finite differences of all components at once.
pub(crate) fn d_all(f: &dyn Fn(&[f64; DIM]) -> Result<Vec<FormValue>, BundleError>, z: &[f64; DIM], diff: &DiffConfig) -> Result<Vec<FormValue>, BundleError> {
    let base = f(z)?;
    let sizes: Vec<usize> = base.iter().map(|v| v.coeffs().len()).collect();
    let flat = |q: &[f64; DIM]| -> Result<Vec<f64>, BundleError> { Ok(f(q)?.iter().flat_map(|v| v.coeffs().to_vec()).collect()) };
    let jac = jacobian(&flat, z, diff)?;
    let mut out = Vec::with_capacity(base.len());
    let mut off = 0;
    for (k, v) in base.iter().enumerate() {
        let partials: Vec<FormValue> = (0..DIM)
            .map(|mu| FormValue::from_coeffs(v.degree(), jac[mu][off..off + sizes[k]].to_vec()))
            .collect::<Result<_, _>>()?;
        out.push(d_from_partials(&partials)?);
        off += sizes[k];
    }
    Ok(out)
}

/// `(ad*_xi ^ psi)_B = c^A_{CB} xi^C ^ psi_A` for `p`-valued 1-forms `xi`.
pub fn coadjoint_wedge(tables: &AlgebraTables, xi: &[FormValue], psi: &[FormValue]) -> Result<Vec<FormValue>, BundleError> {
    let mut out = vec![FormValue::zero(psi[0].degree() + 1); P_DIM];
    for (b, o) in out.iter_mut().enumerate() {
        for (c, xc) in xi.iter().enumerate() {
            for (a, pa) in psi.iter().enumerate() {
                let s = tables.c_p(a, c, b);
                if s != 0.0 {
                    o.axpy(s, &xc.wedge(pa)?);
                }
            }
        }
    }
    Ok(out)
}

fn max_diff(a: &[FormValue], b: &[FormValue]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.sub(y).max_abs()).fold(0.0, f64::max)
}

/// `max |d(Ad*_{g^{-1}} varpi) - Ad*_{g^{-1}}(d varpi - ad*_{g^{-1} dg} ^ varpi)|`.
pub fn coadjoint_derivative_residual(
    tables: &AlgebraTables,
    g: &PolynomialGroupField,
    varpi: &PolynomialFormField,
    z: &[f64; DIM],
    diff: &DiffConfig,
) -> Result<f64, BundleError> {
    let lhs = d_all(&|q| coadjoint(tables, &inverse(&g.value(q)), &varpi.value(q)), z, diff)?;
    // g^{-1} dg from finite differences of the group element itself
    let gz = g.value(z);
    let flat = |q: &[f64; DIM]| Ok::<_, BundleError>(g.value(q).as_slice().to_vec());
    let jac = jacobian(&flat, z, diff)?;
    let mut xi = vec![FormValue::zero(1); P_DIM];
    let gi = inverse(&gz);
    for (mu, col) in jac.iter().enumerate() {
        let coords = tables.g_coords(&(gi * Mat4::from_column_slice(col)));
        for i in 0..G_DIM {
            xi[4 + i].add_component(&[mu], coords[i]);
        }
    }
    let dv = d_all(&|q| Ok(varpi.value(q)), z, diff)?;
    let adw = coadjoint_wedge(tables, &xi, &varpi.value(z))?;
    let inner: Vec<FormValue> = dv.iter().zip(&adw).map(|(a, b)| a.sub(b)).collect();
    let rhs = coadjoint(tables, &gi, &inner)?;
    Ok(max_diff(&lhs, &rhs))
}

/// Lifted coframe `(alpha, omega)` as ten chart 1-forms.
pub fn lifted_one_forms(tables: &AlgebraTables, cfg: &dyn FieldConfig, z: &[f64; DIM]) -> Result<Vec<FormValue>, BundleError> {
    let m = *lift(tables, cfg, &ChartPoint::from_z(z))?.coframe.matrix();
    Ok(rows(&m))
}

fn rows(m: &Mat10) -> Vec<FormValue> {
    (0..DIM).map(|r| FormValue::one_form(&std::array::from_fn(|mu| m[(r, mu)]))).collect()
}

/// `H = (e, A)` as ten chart 1-forms supported on the base.
pub fn base_one_forms(tables: &AlgebraTables, cfg: &dyn FieldConfig, x: &[f64; 4]) -> Vec<FormValue> {
    let e = cfg.vierbein(x);
    let a = cfg.connection(x);
    let coords: [[f64; G_DIM]; 4] = std::array::from_fn(|mu| tables.g_coords(&a[mu]));
    (0..P_DIM)
        .map(|c| {
            let mut v = [0.0; DIM];
            for mu in 0..4 {
                v[mu] = if c < 4 { e[(c, mu)] } else { coords[mu][c - 4] };
            }
            FormValue::one_form(&v)
        })
        .collect()
}

/// `max |(dp - ad*_H ^ p) - Ad*_{g^{-1}}(d varpi - ad*_eta ^ varpi)|` for `p = Ad*_{g^{-1}} varpi`,
/// with `g = exp(y^i u_i)` and `eta` the lifted coframe.
pub fn covariant_transfer_residual(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    varpi: &PolynomialFormField,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<f64, BundleError> {
    let z = pt.z();
    let g_of = |q: &[f64; DIM]| tables.exp_chart(&std::array::from_fn(|i| q[4 + i])).matrix;
    let p_of = |q: &[f64; DIM]| coadjoint(tables, &inverse(&g_of(q)), &varpi.value(q));
    let dp = d_all(&p_of, &z, diff)?;
    let h = base_one_forms(tables, cfg, &pt.x);
    let adh = coadjoint_wedge(tables, &h, &p_of(&z)?)?;
    let lhs: Vec<FormValue> = dp.iter().zip(&adh).map(|(a, b)| a.sub(b)).collect();
    let dv = d_all(&|q| Ok(varpi.value(q)), &z, diff)?;
    let eta = lifted_one_forms(tables, cfg, &z)?;
    let ade = coadjoint_wedge(tables, &eta, &varpi.value(&z))?;
    let inner: Vec<FormValue> = dv.iter().zip(&ade).map(|(a, b)| a.sub(b)).collect();
    let rhs = coadjoint(tables, &inverse(&g_of(&z)), &inner)?;
    Ok(max_diff(&lhs, &rhs))
}

/// `Omega = d eta + 1/2 [eta ^ eta]` of the lifted coframe.
pub fn lifted_curvature_forms(tables: &AlgebraTables, cfg: &dyn FieldConfig, z: &[f64; DIM], diff: &DiffConfig) -> Result<Vec<FormValue>, BundleError> {
    let deta = d_all(&|q| lifted_one_forms(tables, cfg, q), z, diff)?;
    let eta = lifted_one_forms(tables, cfg, z)?;
    bracket_half(tables, &eta).map(|br| deta.iter().zip(&br).map(|(a, b)| a.add(b)).collect())
}

/// `1/2 c^A_{BC} eta^B ^ eta^C`.
pub(crate) fn bracket_half(tables: &AlgebraTables, eta: &[FormValue]) -> Result<Vec<FormValue>, BundleError> {
    let mut out = vec![FormValue::zero(2); P_DIM];
    for (a, o) in out.iter_mut().enumerate() {
        for b in 0..P_DIM {
            for c in 0..P_DIM {
                let s = tables.c_p(a, b, c);
                if s != 0.0 {
                    o.axpy(0.5 * s, &eta[b].wedge(&eta[c])?);
                }
            }
        }
    }
    Ok(out)
}

/// Top-form pairing `sum_A psi_A ^ f^A` divided by the lifted volume.
pub(crate) fn pair_top(psi: &[FormValue], f: &[FormValue], det: f64) -> Result<f64, BundleError> {
    let mut s = 0.0;
    for (p, q) in psi.iter().zip(f) {
        s += p.wedge(q)?.top();
    }
    Ok(s / det)
}

/// The three sides of `psi ^ Omega = -(d psi - s ad*_eta ^ psi) ^ eta + d(psi ^ eta)`,
/// in units of the lifted volume.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftIdentity {
    /// `psi ^ Omega`.
    pub lhs: f64,
    /// Right-hand side with `s = 1/2`.
    pub rhs_half: f64,
    /// Right-hand side with `s = 1`.
    pub rhs_full: f64,
    /// `psi_A ^ [eta ^ eta]^A`, the gap between the two.
    pub bracket: f64,
}

pub type FormFieldFn<'a> = &'a dyn Fn(&[f64; DIM]) -> Result<Vec<FormValue>, BundleError>;

pub fn shift_identity(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    psi: FormFieldFn,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<ShiftIdentity, BundleError> {
    let z = pt.z();
    let det = lift(tables, cfg, pt)?.coframe.det();
    let eta = lifted_one_forms(tables, cfg, &z)?;
    let omega = lifted_curvature_forms(tables, cfg, &z, diff)?;
    let psi_z = psi(&z)?;
    let lhs = pair_top(&psi_z, &omega, det)?;
    let dpsi = d_all(psi, &z, diff)?;
    let adw = coadjoint_wedge(tables, &eta, &psi_z)?;
    let psi_eta = |q: &[f64; DIM]| -> Result<Vec<FormValue>, BundleError> {
        let e = lifted_one_forms(tables, cfg, q)?;
        let p = psi(q)?;
        let mut s = FormValue::zero(DIM - 1);
        for (a, b) in p.iter().zip(&e) {
            s.axpy(1.0, &a.wedge(b)?);
        }
        Ok(vec![s])
    };
    let exact = d_all(&psi_eta, &z, diff)?[0].top() / det;
    let wedge_eta = |s: f64| -> Result<f64, BundleError> {
        let v: Vec<FormValue> = dpsi.iter().zip(&adw).map(|(d, a)| d.sub(&a.scale(s))).collect();
        Ok(-pair_top(&v, &eta, det)? + exact)
    };
    let rhs_half = wedge_eta(0.5)?;
    let rhs_full = wedge_eta(1.0)?;
    let br: Vec<FormValue> = bracket_half(tables, &eta)?.iter().map(|f| f.scale(2.0)).collect();
    Ok(ShiftIdentity { lhs, rhs_half, rhs_full, bracket: pair_top(&psi_z, &br, det)? })
}
