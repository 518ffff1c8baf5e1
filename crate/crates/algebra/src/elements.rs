use crate::{AlgebraError, AlgebraTables, Mat4, Signature, Vec4, G_DIM, P_DIM, T_DIM};

/// Element of the affine algebra in components `(xi^a, xi^i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PVector {
    pub comps: [f64; P_DIM],
}

/// Element of the dual of the affine algebra in components `(lambda_a, lambda_i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PCovector {
    pub comps: [f64; P_DIM],
}

impl PVector {
    pub fn new(comps: [f64; P_DIM]) -> Self {
        PVector { comps }
    }

    pub fn zero() -> Self {
        PVector { comps: [0.0; P_DIM] }
    }

    pub fn basis(a: usize) -> Self {
        let mut comps = [0.0; P_DIM];
        comps[a] = 1.0;
        PVector { comps }
    }

    pub fn translation(&self) -> Vec4 {
        Vec4::new(self.comps[0], self.comps[1], self.comps[2], self.comps[3])
    }

    pub fn rotation(&self) -> [f64; G_DIM] {
        std::array::from_fn(|i| self.comps[T_DIM + i])
    }

    pub fn from_parts(t: &Vec4, r: &[f64; G_DIM]) -> Self {
        let mut comps = [0.0; P_DIM];
        comps[..T_DIM].copy_from_slice(t.as_slice());
        comps[T_DIM..].copy_from_slice(r);
        PVector { comps }
    }
}

impl PCovector {
    pub fn new(comps: [f64; P_DIM]) -> Self {
        PCovector { comps }
    }

    pub fn zero() -> Self {
        PCovector { comps: [0.0; P_DIM] }
    }

    pub fn basis(a: usize) -> Self {
        let mut comps = [0.0; P_DIM];
        comps[a] = 1.0;
        PCovector { comps }
    }

    pub fn pair(&self, xi: &PVector) -> f64 {
        self.comps.iter().zip(xi.comps.iter()).map(|(l, x)| l * x).sum()
    }
}

impl AlgebraTables {
    /// Tensor view `(xi^a_b, xi^a)`.
    pub fn vector_tensor(&self, xi: &PVector) -> (Mat4, Vec4) {
        (self.g_element(&xi.rotation()), xi.translation())
    }

    /// Components of `(m, t)`, projecting `m` onto the rotation algebra.
    pub fn vector_from_tensor(&self, m: &Mat4, t: &Vec4) -> PVector {
        PVector::from_parts(t, &self.g_coords(m))
    }

    /// Tensor view `(lambda_a^b, lambda_a)`, with `lambda_a^b` stored as `m[(a, b)]`.
    pub fn covector_tensor(&self, lam: &PCovector) -> (Mat4, Vec4) {
        let m = (0..G_DIM).fold(Mat4::zeros(), |acc, i| acc + self.dual_mixed[i] * lam.comps[T_DIM + i]);
        (m, Vec4::new(lam.comps[0], lam.comps[1], lam.comps[2], lam.comps[3]))
    }

    /// Components of a tensor-view covector; only the part of `m` seen by the
    /// pairing survives.
    pub fn covector_from_tensor(&self, m: &Mat4, t: &Vec4) -> PCovector {
        let mut comps = [0.0; P_DIM];
        comps[..T_DIM].copy_from_slice(t.as_slice());
        for i in 0..G_DIM {
            comps[T_DIM + i] = 0.5 * m.component_mul(&self.gens[i]).sum();
        }
        PCovector { comps }
    }

    /// `1/2 lambda_a^b xi^a_b + lambda_a xi^a`.
    pub fn pair_tensor(&self, lam: (&Mat4, &Vec4), xi: (&Mat4, &Vec4)) -> f64 {
        0.5 * lam.0.component_mul(xi.0).sum() + lam.1.dot(xi.1)
    }
}

/// Element of the isometry group in the vector representation.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub matrix: Mat4,
    pub chart_y: Option<[f64; G_DIM]>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { matrix: Mat4::identity(), chart_y: Some([0.0; G_DIM]) }
    }

    pub fn from_matrix(matrix: Mat4) -> Self {
        GroupElement { matrix, chart_y: None }
    }

    /// Checks `g^T h g = h` and `det g = 1` to `tol`.
    pub fn validated(matrix: Mat4, signature: &Signature, tol: f64) -> Result<Self, AlgebraError> {
        let g = GroupElement::from_matrix(matrix);
        let (metric_residual, det) = g.invariant_residuals(signature);
        if metric_residual > tol || (det - 1.0).abs() > tol {
            return Err(AlgebraError::NotInGroup { metric_residual, det });
        }
        Ok(g)
    }

    /// `(max |g^T h g - h|, det g)`.
    pub fn invariant_residuals(&self, signature: &Signature) -> (f64, f64) {
        let h = signature.h();
        let r = self.matrix.transpose() * h * self.matrix - h;
        (r.amax(), self.matrix.determinant())
    }

    pub fn inverse(&self) -> Result<GroupElement, AlgebraError> {
        let inv = self.matrix.try_inverse().ok_or(AlgebraError::NotInvertible)?;
        Ok(GroupElement { matrix: inv, chart_y: self.chart_y.map(|y| y.map(|v| -v)) })
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement::from_matrix(self.matrix * other.matrix)
    }
}

impl AlgebraTables {
    /// `exp(y^i u_i)`.
    pub fn exp_chart(&self, y: &[f64; G_DIM]) -> GroupElement {
        GroupElement { matrix: self.g_element(y).exp(), chart_y: Some(*y) }
    }
}
