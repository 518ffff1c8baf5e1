use crate::{AlgebraError, AlgebraTables, GroupElement, Mat10, Mat4, PCovector, PVector, Vec4, P_DIM};

impl AlgebraTables {
    /// Bracket of the affine algebra computed from the tensor views:
    /// `([xi, zeta], xi zeta_t - zeta xi_t)`.
    pub fn bracket(&self, xi: &PVector, zeta: &PVector) -> PVector {
        let (xm, xt) = self.vector_tensor(xi);
        let (zm, zt) = self.vector_tensor(zeta);
        self.vector_from_tensor(&(xm * zm - zm * xm), &(xm * zt - zm * xt))
    }

    /// Same bracket read from the structure constants.
    pub fn bracket_components(&self, xi: &PVector, zeta: &PVector) -> PVector {
        let mut out = [0.0; P_DIM];
        for (a, o) in out.iter_mut().enumerate() {
            for b in 0..P_DIM {
                if xi.comps[b] == 0.0 {
                    continue;
                }
                for c in 0..P_DIM {
                    *o += self.c_p(a, b, c) * xi.comps[b] * zeta.comps[c];
                }
            }
        }
        PVector::new(out)
    }

    /// `Ad_g xi = (g xi g^{-1}, g xi_t)`.
    pub fn adjoint(&self, g: &GroupElement, xi: &PVector) -> Result<PVector, AlgebraError> {
        let ginv = g.matrix.try_inverse().ok_or(AlgebraError::NotInvertible)?;
        let (m, t) = self.vector_tensor(xi);
        Ok(self.vector_from_tensor(&(g.matrix * m * ginv), &(g.matrix * t)))
    }

    /// `Ad*_g lambda = (g^{a'}_a lambda_{a'}^{b'} (g^{-1})^b_{b'}, g^{a'}_a lambda_{a'})`.
    pub fn coadjoint_group(&self, g: &GroupElement, lam: &PCovector) -> Result<PCovector, AlgebraError> {
        let ginv = g.matrix.try_inverse().ok_or(AlgebraError::NotInvertible)?;
        let (m, t) = self.covector_tensor(lam);
        let gt = g.matrix.transpose();
        Ok(self.covector_from_tensor(&(gt * m * ginv.transpose()), &(gt * t)))
    }

    /// Tensor-view output of `ad*_xi lambda` before projection:
    /// `(xi^c_a lambda_c^b - lambda_a^c xi^b_c - 2 lambda_a xi^b, xi^a_b lambda_a)`.
    pub fn coadjoint_algebra_tensor(&self, xi: &PVector, lam: &PCovector) -> (Mat4, Vec4) {
        let (xm, xt) = self.vector_tensor(xi);
        let (lm, lt) = self.covector_tensor(lam);
        let xmt = xm.transpose();
        let m = xmt * lm - lm * xmt - 2.0 * lt * xt.transpose();
        (m, xmt * lt)
    }

    /// `ad*_xi lambda` from the tensor formula.
    pub fn coadjoint_algebra(&self, xi: &PVector, lam: &PCovector) -> PCovector {
        let (m, t) = self.coadjoint_algebra_tensor(xi, lam);
        self.covector_from_tensor(&m, &t)
    }

    /// `ad*_xi lambda` in components: `(lambda_B c^B_{CA} xi^C)`.
    pub fn coadjoint_algebra_components(&self, xi: &PVector, lam: &PCovector) -> PCovector {
        let mut out = [0.0; P_DIM];
        for (a, o) in out.iter_mut().enumerate() {
            for b in 0..P_DIM {
                if lam.comps[b] == 0.0 {
                    continue;
                }
                for c in 0..P_DIM {
                    *o += lam.comps[b] * self.c_p(b, c, a) * xi.comps[c];
                }
            }
        }
        PCovector::new(out)
    }

    /// Matrix `M` with `Ad_g l_B = l_A M[(A, B)]`.
    pub fn adjoint_matrix(&self, g: &GroupElement) -> Result<Mat10, AlgebraError> {
        let mut m = Mat10::zeros();
        for b in 0..P_DIM {
            let col = self.adjoint(g, &PVector::basis(b))?;
            for a in 0..P_DIM {
                m[(a, b)] = col.comps[a];
            }
        }
        Ok(m)
    }

    /// Matrix `N` with `(Ad*_g lambda)_A = N[(A, B)] lambda_B`.
    pub fn coadjoint_group_matrix(&self, g: &GroupElement) -> Result<Mat10, AlgebraError> {
        let mut n = Mat10::zeros();
        for b in 0..P_DIM {
            let col = self.coadjoint_group(g, &PCovector::basis(b))?;
            for a in 0..P_DIM {
                n[(a, b)] = col.comps[a];
            }
        }
        Ok(n)
    }
}
