use crate::derivative::{gradient, ChartFunction, DiffConfig};
use crate::{FormError, FormValue, Mat10, DIM};

/// Default threshold on `|det E|` for the rank-10 hypothesis.
pub const RANK_TOL: f64 = 1e-8;

/// Ten 1-forms at a point, `E[(I, mu)]` being the `dz^mu` component of `theta^I`.
#[derive(Clone, Debug)]
pub struct CoframeValue {
    e: Mat10,
    det: f64,
    inv: Option<Mat10>,
}

impl CoframeValue {
    pub fn new(e: Mat10) -> Self {
        Self::with_tolerance(e, RANK_TOL)
    }

    pub fn with_tolerance(e: Mat10, tol: f64) -> Self {
        let det = e.determinant();
        let inv = if det.abs() > tol { e.try_inverse() } else { None };
        CoframeValue { e, det, inv }
    }

    pub fn identity() -> Self {
        Self::new(Mat10::identity())
    }

    pub fn matrix(&self) -> &Mat10 {
        &self.e
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// Numerical rank from the singular values.
    pub fn rank(&self) -> usize {
        let sv = self.e.singular_values();
        let top = sv.max();
        sv.iter().filter(|s| **s > 1e-12 * top.max(1e-300)).count()
    }

    pub fn is_regular(&self) -> bool {
        self.inv.is_some()
    }

    pub fn require_regular(&self) -> Result<&Mat10, FormError> {
        self.inv.as_ref().ok_or(FormError::SingularCoframe { det: self.det, tol: RANK_TOL })
    }

    pub fn inverse(&self) -> Result<&Mat10, FormError> {
        self.require_regular()
    }

    /// `theta^I` in the chart basis.
    pub fn theta(&self, i: usize) -> FormValue {
        FormValue::one_form(&std::array::from_fn(|mu| self.e[(i, mu)]))
    }

    /// Chart components of the dual vector `d/d theta^I`.
    pub fn dual_vector(&self, i: usize) -> Result<[f64; DIM], FormError> {
        let inv = self.require_regular()?;
        Ok(std::array::from_fn(|mu| inv[(mu, i)]))
    }

    /// Interior product with `d/d theta^I`.
    pub fn contract_dual(&self, i: usize, f: &FormValue) -> Result<FormValue, FormError> {
        f.contract(&self.dual_vector(i)?)
    }

    /// `theta^0 ^ ... ^ theta^9 = det E dz^(10)`.
    pub fn volume(&self) -> FormValue {
        FormValue::basis(&(0..DIM).collect::<Vec<_>>()).scale(self.det)
    }

    /// `iota_{I_k} ... iota_{I_1} vol`, contracting the first listed index first.
    pub fn volume_contracted(&self, idx: &[usize]) -> Result<FormValue, FormError> {
        let mut f = self.volume();
        for &i in idx {
            f = self.contract_dual(i, &f)?;
        }
        Ok(f)
    }

    /// Wedge of coframe elements `theta^{I1} ^ ... ^ theta^{Ik}`.
    pub fn theta_wedge(&self, idx: &[usize]) -> Result<FormValue, FormError> {
        let mut f = FormValue::scalar(1.0);
        for &i in idx {
            f = f.wedge(&self.theta(i))?;
        }
        Ok(f)
    }

    /// Re-expresses a form given on the `theta` basis in the chart basis.
    pub fn from_coframe_basis(&self, f: &FormValue) -> Result<FormValue, FormError> {
        let mut out = FormValue::zero(f.degree());
        for (m, c) in f.iter() {
            if c != 0.0 {
                out.axpy(c, &self.theta_wedge(&crate::form::indices_of(m))?);
            }
        }
        Ok(out)
    }

    /// Components of a chart-basis form on the `theta` basis.
    pub fn to_coframe_basis(&self, f: &FormValue) -> Result<FormValue, FormError> {
        let k = f.degree();
        let mut out = FormValue::zero(k);
        let vectors: Vec<[f64; DIM]> = (0..DIM).map(|i| self.dual_vector(i)).collect::<Result<_, _>>()?;
        for (slot, &m) in crate::form::masks(k).iter().enumerate() {
            let mut g = f.clone();
            for &i in crate::form::indices_of(m).iter() {
                g = g.contract(&vectors[i])?;
            }
            out.coeffs_mut()[slot] = g.coeffs()[0];
        }
        Ok(out)
    }

    fn top_ratio(&self, f: &FormValue) -> Result<f64, FormError> {
        self.require_regular()?;
        Ok(f.top() / self.det)
    }

    /// `G^I` with `F = G^I iota_I vol` for a 9-form.
    pub fn coeffs9(&self, f: &FormValue) -> Result<[f64; DIM], FormError> {
        check_degree(f, DIM - 1)?;
        let mut out = [0.0; DIM];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.top_ratio(&self.theta(i).wedge(f)?)?;
        }
        Ok(out)
    }

    /// Antisymmetric `F^{IJ}` with `F = 1/2 F^{IJ} iota_J iota_I vol` for an 8-form.
    pub fn coeffs8(&self, f: &FormValue) -> Result<[[f64; DIM]; DIM], FormError> {
        check_degree(f, DIM - 2)?;
        let mut out = [[0.0; DIM]; DIM];
        for i in 0..DIM {
            let ti = self.theta(i).wedge(f)?;
            for j in (i + 1)..DIM {
                let v = self.top_ratio(&self.theta(j).wedge(&ti)?)?;
                // theta^J ^ theta^I ^ F = F^{JI} vol
                out[i][j] = -v;
                out[j][i] = v;
            }
        }
        Ok(out)
    }

    /// `K_{IJ}` with `Omega = 1/2 K_{IJ} theta^I ^ theta^J` for a 2-form.
    pub fn coeffs2(&self, f: &FormValue) -> Result<[[f64; DIM]; DIM], FormError> {
        check_degree(f, 2)?;
        let vectors: Vec<[f64; DIM]> = (0..DIM).map(|i| self.dual_vector(i)).collect::<Result<_, _>>()?;
        let mut out = [[0.0; DIM]; DIM];
        for i in 0..DIM {
            let fi = f.contract(&vectors[i])?;
            for j in 0..DIM {
                out[i][j] = fi.contract(&vectors[j])?.coeffs()[0];
            }
        }
        Ok(out)
    }

    /// The 8-form `1/2 F^{IJ} iota_J iota_I vol` in the chart basis, for antisymmetric `F`.
    pub fn eight_form(&self, f: &[[f64; DIM]; DIM]) -> Result<FormValue, FormError> {
        let inv = self.require_regular()?;
        let fm = Mat10::from_fn(|i, j| f[i][j]);
        // bivector components W^{mu nu} = V_I^mu F^{IJ} V_J^nu
        let w = inv * fm * inv.transpose();
        let mut out = FormValue::zero(DIM - 2);
        let all: Vec<usize> = (0..DIM).collect();
        for mu in 0..DIM {
            for nu in (mu + 1)..DIM {
                let v = w[(mu, nu)];
                if v == 0.0 {
                    continue;
                }
                // iota_nu iota_mu dz^(10) = (-1)^(mu + nu - 1) dz^(rest)
                let sign = if (mu + nu - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let rest: Vec<usize> = all.iter().copied().filter(|&k| k != mu && k != nu).collect();
                out.add_component(&rest, sign * self.det * v);
            }
        }
        Ok(out)
    }

    /// The 9-form `G^I iota_I vol` in the chart basis.
    pub fn nine_form(&self, g: &[f64; DIM]) -> Result<FormValue, FormError> {
        let inv = self.require_regular()?;
        let mut out = FormValue::zero(DIM - 1);
        let all: Vec<usize> = (0..DIM).collect();
        for mu in 0..DIM {
            let v: f64 = (0..DIM).map(|i| inv[(mu, i)] * g[i]).sum();
            if v == 0.0 {
                continue;
            }
            let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
            let rest: Vec<usize> = all.iter().copied().filter(|&k| k != mu).collect();
            out.add_component(&rest, sign * self.det * v);
        }
        Ok(out)
    }

    /// Components `f^I` of a 1-form on the `theta` basis.
    pub fn coeffs1(&self, f: &FormValue) -> Result<[f64; DIM], FormError> {
        check_degree(f, 1)?;
        let inv = self.require_regular()?;
        Ok(std::array::from_fn(|i| (0..DIM).map(|mu| inv[(mu, i)] * f.coeffs()[mu]).sum()))
    }

    /// Solves `E^T f_; = grad f`, checking the reconstruction residual.
    pub fn solve_derivatives(&self, grad: &[f64; DIM]) -> Result<[f64; DIM], FormError> {
        let inv = self.require_regular()?;
        let out: [f64; DIM] = std::array::from_fn(|i| (0..DIM).map(|mu| inv[(mu, i)] * grad[mu]).sum());
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let mut residual: f64 = 0.0;
        for mu in 0..DIM {
            let r: f64 = (0..DIM).map(|i| self.e[(i, mu)] * out[i]).sum::<f64>() - grad[mu];
            residual = residual.max(r.abs());
        }
        let bound = 1e-10 * norm.max(f64::MIN_POSITIVE);
        if residual > bound && residual > 1e-300 {
            return Err(FormError::IllConditioned { residual, bound });
        }
        Ok(out)
    }
}

fn check_degree(f: &FormValue, k: usize) -> Result<(), FormError> {
    if f.degree() != k {
        return Err(FormError::DegreeMismatch { expected: k, got: f.degree() });
    }
    Ok(())
}

/// `df = f_{;a} theta^a + f_{;i} theta^i`, split into base and fiber parts.
pub fn coframe_derivatives(
    f: &dyn ChartFunction,
    z: &[f64; DIM],
    coframe: &CoframeValue,
    cfg: &DiffConfig,
) -> Result<([f64; 4], [f64; 6]), FormError> {
    coframe.require_regular()?;
    let all = coframe.solve_derivatives(&gradient(f, z, cfg)?)?;
    Ok((std::array::from_fn(|a| all[a]), std::array::from_fn(|i| all[4 + i])))
}
