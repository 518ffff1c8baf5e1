use crate::{AlgebraError, Mat4, Mat6, Signature, G_DIM, P_DIM, T_DIM};

/// Index pairs `(a, b)` of the generators `M_ab`, rotations first then boosts.
pub const INDEX_PAIRS: [(usize, usize); 6] = [(2, 3), (3, 1), (1, 2), (0, 1), (0, 2), (0, 3)];

#[derive(Clone, Debug)]
pub enum BasisConvention {
    /// `u_i = M_ab` for the pairs in [`INDEX_PAIRS`].
    Canonical,
    /// `u'_i = sum_j T[(j, i)] u_j` for an invertible `T`.
    Transformed(Mat6),
}

/// Sign of the permutation `(a, b, c, d)` of `(0, 1, 2, 3)`, zero on repeats.
pub fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let idx = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
        }
    }
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn generator(a: usize, b: usize, h: &Mat4) -> Mat4 {
    let mut m = Mat4::zeros();
    for c in 0..4 {
        for d in 0..4 {
            let da = if c == a { 1.0 } else { 0.0 };
            let db = if c == b { 1.0 } else { 0.0 };
            m[(c, d)] = da * h[(b, d)] - db * h[(a, d)];
        }
    }
    m
}

/// Immutable tables for the chosen signature and basis.
#[derive(Clone, Debug)]
pub struct AlgebraTables {
    pub(crate) signature: Signature,
    pub(crate) h: Mat4,
    pub(crate) h_inv: Mat4,
    pub(crate) gens: [Mat4; G_DIM],
    pub(crate) gens_upper: [Mat4; G_DIM],
    pub(crate) dual_lower: [Mat4; G_DIM],
    pub(crate) dual_mixed: [Mat4; G_DIM],
    pub(crate) struct_g: [[[f64; G_DIM]; G_DIM]; G_DIM],
    pub(crate) struct_p: Vec<f64>,
    pub(crate) kappa: [[[f64; T_DIM]; T_DIM]; P_DIM],
}

impl AlgebraTables {
    pub fn build(signature: Signature, basis: BasisConvention) -> Result<Self, AlgebraError> {
        let h = signature.h();
        let canonical: [Mat4; G_DIM] =
            std::array::from_fn(|i| generator(INDEX_PAIRS[i].0, INDEX_PAIRS[i].1, &h));
        let gens = match &basis {
            BasisConvention::Canonical => canonical,
            BasisConvention::Transformed(t) => {
                let det = t.determinant();
                if det.abs() < 1e-12 {
                    return Err(AlgebraError::SingularBasisTransform { det });
                }
                std::array::from_fn(|i| {
                    (0..G_DIM).fold(Mat4::zeros(), |acc, j| acc + canonical[j] * t[(j, i)])
                })
            }
        };
        Self::from_generators(signature, gens)
    }

    /// Tables for an arbitrary family of generators; fails when the family is not a
    /// basis of the rotation algebra (singular Gram matrix).
    pub fn from_generators(signature: Signature, gens: [Mat4; G_DIM]) -> Result<Self, AlgebraError> {
        let h = signature.h();
        let h_inv = signature.h_inv();
        let gens_upper: [Mat4; G_DIM] = std::array::from_fn(|i| gens[i] * h_inv);
        let lowered: [Mat4; G_DIM] = std::array::from_fn(|i| h * gens[i]);

        let mut gram = Mat6::zeros();
        for k in 0..G_DIM {
            for j in 0..G_DIM {
                gram[(k, j)] = 0.5 * lowered[k].component_mul(&gens_upper[j]).sum();
            }
        }
        let det = gram.determinant();
        let gram_inv = match gram.try_inverse() {
            Some(g) if det.abs() > 1e-12 => g,
            _ => return Err(AlgebraError::SingularGram { det }),
        };
        let dual_lower: [Mat4; G_DIM] = std::array::from_fn(|i| {
            (0..G_DIM).fold(Mat4::zeros(), |acc, k| acc + lowered[k] * gram_inv[(i, k)])
        });
        let dual_mixed: [Mat4; G_DIM] = std::array::from_fn(|i| dual_lower[i] * h_inv);

        let mut tables = AlgebraTables {
            signature,
            h,
            h_inv,
            gens,
            gens_upper,
            dual_lower,
            dual_mixed,
            struct_g: [[[0.0; G_DIM]; G_DIM]; G_DIM],
            struct_p: vec![0.0; P_DIM * P_DIM * P_DIM],
            kappa: [[[0.0; T_DIM]; T_DIM]; P_DIM],
        };

        for i in 0..G_DIM {
            for j in 0..G_DIM {
                let comm = gens[i] * gens[j] - gens[j] * gens[i];
                let coords = tables.g_coords(&comm);
                for k in 0..G_DIM {
                    tables.struct_g[k][i][j] = coords[k];
                }
            }
        }

        for b in 0..P_DIM {
            for c in 0..P_DIM {
                let xi = crate::PVector::basis(b);
                let zeta = crate::PVector::basis(c);
                let br = tables.bracket(&xi, &zeta);
                for a in 0..P_DIM {
                    tables.struct_p[(a * P_DIM + b) * P_DIM + c] = br.comps[a];
                }
            }
        }

        for i in 0..G_DIM {
            for c in 0..T_DIM {
                for d in 0..T_DIM {
                    tables.kappa[T_DIM + i][c][d] = 2.0 * gens_upper[i][(c, d)];
                }
            }
        }
        Ok(tables)
    }

    pub fn canonical(signature: Signature) -> Self {
        Self::build(signature, BasisConvention::Canonical)
            .expect("canonical generators have a regular Gram matrix")
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn h(&self) -> &Mat4 {
        &self.h
    }

    pub fn h_inv(&self) -> &Mat4 {
        &self.h_inv
    }

    /// `(u_i)^a_b`.
    pub fn generator(&self, i: usize) -> &Mat4 {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[Mat4; G_DIM] {
        &self.gens
    }

    /// `u_i^{ab} = (u_i)^a_{b'} h^{b'b}`.
    pub fn generator_upper(&self, i: usize) -> &Mat4 {
        &self.gens_upper[i]
    }

    /// `u^i_{ab}`.
    pub fn dual_lower(&self, i: usize) -> &Mat4 {
        &self.dual_lower[i]
    }

    /// `u^{ib}_a`, stored as `m[(a, b)]`.
    pub fn dual_mixed(&self, i: usize) -> &Mat4 {
        &self.dual_mixed[i]
    }

    /// `c^k_{ij}`.
    pub fn c_g(&self, k: usize, i: usize, j: usize) -> f64 {
        self.struct_g[k][i][j]
    }

    /// `c^A_{BC}`, with `[l_B, l_C] = c^A_{BC} l_A`.
    pub fn c_p(&self, a: usize, b: usize, c: usize) -> f64 {
        self.struct_p[(a * P_DIM + b) * P_DIM + c]
    }

    /// `kappa^{cd}_A`.
    pub fn kappa(&self, a: usize, c: usize, d: usize) -> f64 {
        self.kappa[a][c][d]
    }

    /// Mixed form `kappa_a^{bcd} = u^{ib}_a kappa_i^{cd}`. With duals normalized by the
    /// half-trace pairing this equals `2 (delta^c_a h^{bd} - delta^d_a h^{bc})`.
    pub fn kappa_mixed(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        (0..G_DIM)
            .map(|i| self.dual_mixed[i][(a, b)] * self.kappa[T_DIM + i][c][d])
            .sum()
    }

    pub fn epsilon(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        levi_civita(a, b, c, d)
    }

    /// Matrix `sum_i y^i u_i`.
    pub fn g_element(&self, y: &[f64; G_DIM]) -> Mat4 {
        (0..G_DIM).fold(Mat4::zeros(), |acc, i| acc + self.gens[i] * y[i])
    }

    /// Coordinates `u^i(xi) = 1/2 u^{ib}_a xi^a_b` of a matrix in the rotation algebra.
    pub fn g_coords(&self, m: &Mat4) -> [f64; G_DIM] {
        std::array::from_fn(|i| 0.5 * self.dual_mixed[i].component_mul(m).sum())
    }

    /// Matrix of `ad_y` on the rotation algebra: `(ad_y)^k_j = c^k_{ij} y^i`.
    pub fn ad_matrix(&self, y: &[f64; G_DIM]) -> Mat6 {
        let mut m = Mat6::zeros();
        for k in 0..G_DIM {
            for j in 0..G_DIM {
                m[(k, j)] = (0..G_DIM).map(|i| self.struct_g[k][i][j] * y[i]).sum();
            }
        }
        m
    }
}
