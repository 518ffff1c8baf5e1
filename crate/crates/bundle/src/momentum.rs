use crate::BundleError;
use fbg_algebra::{AlgebraTables, Mat10, G_DIM, P_DIM};
use fbg_forms::{jacobian, DiffConfig, FormError, DIM};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CK_LEN: usize = P_DIM * 4 * G_DIM;
const JK_LEN: usize = P_DIM * G_DIM * G_DIM;

/// Free components of the momentum 8-form
/// `p_A = 1/2 kappa_A^{cd} e2_{cd} ^ gamma6 - p_A^{ck} e3_c ^ gamma5_k + 1/2 p_A^{jk} e4 ^ gamma4_{jk}`.
///
/// `ck[A][c][k] = p_A^{ck}`, `jk[A][j][k] = p_A^{jk}` (antisymmetric in `j, k`). The
/// mixed forms `p_a^{bck}` and `p_a^{bjk}` are read through [`MomentumComponents::pab_ck`]
/// and [`MomentumComponents::pab_jk`].
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumComponents {
    pub ck: [[[f64; G_DIM]; 4]; P_DIM],
    pub jk: [[[f64; G_DIM]; G_DIM]; P_DIM],
}

impl Default for MomentumComponents {
    fn default() -> Self {
        Self::zero()
    }
}

impl MomentumComponents {
    pub fn zero() -> Self {
        MomentumComponents { ck: [[[0.0; G_DIM]; 4]; P_DIM], jk: [[[0.0; G_DIM]; G_DIM]; P_DIM] }
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(CK_LEN + JK_LEN);
        for a in &self.ck {
            for c in a {
                v.extend_from_slice(c);
            }
        }
        for a in &self.jk {
            for j in a {
                v.extend_from_slice(j);
            }
        }
        v
    }

    pub fn from_flat(v: &[f64]) -> Self {
        let mut out = Self::zero();
        let mut it = v.iter().copied();
        for a in out.ck.iter_mut() {
            for c in a.iter_mut() {
                for x in c.iter_mut() {
                    *x = it.next().unwrap_or(0.0);
                }
            }
        }
        for a in out.jk.iter_mut() {
            for j in a.iter_mut() {
                for x in j.iter_mut() {
                    *x = it.next().unwrap_or(0.0);
                }
            }
        }
        out
    }

    /// `p_a^{ck}` for a translation index.
    pub fn pa_ck(&self, a: usize, c: usize, k: usize) -> f64 {
        self.ck[a][c][k]
    }

    pub fn pa_jk(&self, a: usize, j: usize, k: usize) -> f64 {
        self.jk[a][j][k]
    }

    /// `p_a^{bck} = u^{ib}_a p_i^{ck}`.
    pub fn pab_ck(&self, tables: &AlgebraTables, a: usize, b: usize, c: usize, k: usize) -> f64 {
        (0..G_DIM).map(|i| tables.dual_mixed(i)[(a, b)] * self.ck[4 + i][c][k]).sum()
    }

    /// `p_a^{bjk} = u^{ib}_a p_i^{jk}`.
    pub fn pab_jk(&self, tables: &AlgebraTables, a: usize, b: usize, j: usize, k: usize) -> f64 {
        (0..G_DIM).map(|i| tables.dual_mixed(i)[(a, b)] * self.jk[4 + i][j][k]).sum()
    }

    /// Full antisymmetric `P^{IJ}` of `p_A` on the `(e, gamma)` coframe, head included.
    pub fn frame_matrix(&self, tables: &AlgebraTables, a: usize) -> [[f64; DIM]; DIM] {
        let mut m = [[0.0; DIM]; DIM];
        for c in 0..4 {
            for d in 0..4 {
                m[c][d] = tables.kappa(a, c, d);
            }
            for k in 0..G_DIM {
                m[c][4 + k] = self.ck[a][c][k];
                m[4 + k][c] = -self.ck[a][c][k];
            }
        }
        for j in 0..G_DIM {
            for k in 0..G_DIM {
                m[4 + j][4 + k] = self.jk[a][j][k];
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.flatten().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for a in &self.jk {
            for j in 0..G_DIM {
                for k in 0..G_DIM {
                    r = r.max((a[j][k] + a[k][j]).abs());
                }
            }
        }
        r
    }
}

/// Free momentum components as functions of the chart point `z = (x, y)`.
/// Implementations must be reentrant.
pub trait MomentumField: Sync {
    fn name(&self) -> String;
    fn components(&self, z: &[f64; DIM]) -> MomentumComponents;

    /// `[mu] -> d_mu` of every component, when known in closed form.
    fn partials(&self, _z: &[f64; DIM]) -> Option<[MomentumComponents; DIM]> {
        None
    }
}

/// `c0 + c1.z + z.c2.z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub c0: f64,
    pub c1: [f64; DIM],
    pub c2: [[f64; DIM]; DIM],
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c0: 0.0, c1: [0.0; DIM], c2: [[0.0; DIM]; DIM] }
    }

    pub fn constant(c0: f64) -> Self {
        Poly { c0, ..Self::zero() }
    }

    pub fn linear(c1: [f64; DIM]) -> Self {
        Poly { c1, ..Self::zero() }
    }

    pub fn random(rng: &mut ChaCha8Rng, amplitude: f64, degree: usize) -> Self {
        let mut p = Poly::constant(amplitude * rng.random_range(-1.0..1.0));
        if degree >= 1 {
            p.c1 = std::array::from_fn(|_| amplitude * rng.random_range(-1.0..1.0));
        }
        if degree >= 2 {
            p.c2 = std::array::from_fn(|_| std::array::from_fn(|_| 0.5 * amplitude * rng.random_range(-1.0..1.0)));
        }
        p
    }

    pub fn value(&self, z: &[f64; DIM]) -> f64 {
        let mut v = self.c0;
        for mu in 0..DIM {
            v += self.c1[mu] * z[mu];
            for nu in 0..DIM {
                v += self.c2[mu][nu] * z[mu] * z[nu];
            }
        }
        v
    }

    pub fn gradient(&self, z: &[f64; DIM]) -> [f64; DIM] {
        std::array::from_fn(|mu| self.c1[mu] + (0..DIM).map(|nu| (self.c2[mu][nu] + self.c2[nu][mu]) * z[nu]).sum::<f64>())
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0.0 && self.c1.iter().all(|c| *c == 0.0) && self.c2.iter().flatten().all(|c| *c == 0.0)
    }
}

/// Every free component a polynomial of degree at most two in `(x, y)`.
#[derive(Clone, Debug)]
pub struct PolynomialMomentum {
    name: String,
    ck: Vec<Poly>,
    /// Indexed by `(A, j < k)`.
    jk: Vec<Poly>,
}

fn jk_slot(a: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k);
    let pair = j * G_DIM - j * (j + 1) / 2 + (k - j - 1);
    a * 15 + pair
}

impl PolynomialMomentum {
    /// The vacuum profile: all free components vanish.
    pub fn zero() -> Self {
        PolynomialMomentum { name: "zero".into(), ck: vec![Poly::zero(); CK_LEN], jk: vec![Poly::zero(); P_DIM * 15] }
    }

    /// Random coefficients of the given degree in every free component.
    pub fn random(seed: u64, amplitude: f64, degree: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ck = (0..CK_LEN).map(|_| Poly::random(&mut rng, amplitude, degree)).collect();
        let jk = (0..P_DIM * 15).map(|_| Poly::random(&mut rng, amplitude, degree)).collect();
        PolynomialMomentum { name: format!("random(seed={seed})"), ck, jk }
    }

    /// `p_a^{bk} = w_a^{bk}_j y^j`, all other free components zero, with `w[a][b][k][j]`.
    pub fn y_linear(w: &[[[[f64; G_DIM]; G_DIM]; 4]; 4]) -> Self {
        let mut p = Self::zero();
        p.name = "y_linear".into();
        for a in 0..4 {
            for b in 0..4 {
                for k in 0..G_DIM {
                    let mut c1 = [0.0; DIM];
                    c1[4..].copy_from_slice(&w[a][b][k]);
                    p.set_ck(a, b, k, Poly::linear(c1));
                }
            }
        }
        p
    }

    /// Random `w` for [`PolynomialMomentum::y_linear`].
    pub fn random_y_linear(seed: u64, amplitude: f64) -> (Self, [[[[f64; G_DIM]; G_DIM]; 4]; 4]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| amplitude * rng.random_range(-1.0..1.0))))
        });
        (Self::y_linear(&w), w)
    }

    pub fn set_ck(&mut self, a: usize, c: usize, k: usize, p: Poly) {
        self.ck[(a * 4 + c) * G_DIM + k] = p;
    }

    /// Sets `p_A^{jk}` and, implicitly, `p_A^{kj} = -p_A^{jk}`.
    pub fn set_jk(&mut self, a: usize, j: usize, k: usize, p: Poly) {
        assert_ne!(j, k, "diagonal jk components vanish");
        if j < k {
            self.jk[jk_slot(a, j, k)] = p;
        } else {
            let neg = Poly { c0: -p.c0, c1: p.c1.map(|v| -v), c2: p.c2.map(|r| r.map(|v| -v)) };
            self.jk[jk_slot(a, k, j)] = neg;
        }
    }

    /// Keeps only the components for which `keep` returns true.
    pub fn restrict(mut self, keep_ck: impl Fn(usize) -> bool, keep_jk: impl Fn(usize) -> bool) -> Self {
        for a in 0..P_DIM {
            if !keep_ck(a) {
                for s in &mut self.ck[a * 4 * G_DIM..(a + 1) * 4 * G_DIM] {
                    *s = Poly::zero();
                }
            }
            if !keep_jk(a) {
                for s in &mut self.jk[a * 15..(a + 1) * 15] {
                    *s = Poly::zero();
                }
            }
        }
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn eval(&self, f: impl Fn(&Poly) -> f64) -> MomentumComponents {
        let mut out = MomentumComponents::zero();
        for a in 0..P_DIM {
            for c in 0..4 {
                for k in 0..G_DIM {
                    out.ck[a][c][k] = f(&self.ck[(a * 4 + c) * G_DIM + k]);
                }
            }
            for j in 0..G_DIM {
                for k in (j + 1)..G_DIM {
                    let v = f(&self.jk[jk_slot(a, j, k)]);
                    out.jk[a][j][k] = v;
                    out.jk[a][k][j] = -v;
                }
            }
        }
        out
    }
}

impl MomentumField for PolynomialMomentum {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn components(&self, z: &[f64; DIM]) -> MomentumComponents {
        self.eval(|p| p.value(z))
    }

    fn partials(&self, z: &[f64; DIM]) -> Option<[MomentumComponents; DIM]> {
        Some(std::array::from_fn(|mu| self.eval(|p| if p.is_zero() { 0.0 } else { p.gradient(z)[mu] })))
    }
}

/// Momentum components and their chart partials at a point.
#[derive(Clone, Debug)]
pub struct MomentumJet {
    pub value: MomentumComponents,
    pub partials: [MomentumComponents; DIM],
}

pub fn momentum_jet(field: &dyn MomentumField, z: &[f64; DIM], diff: &DiffConfig) -> Result<MomentumJet, BundleError> {
    let value = field.components(z);
    let partials = if diff.is_analytic() {
        field.partials(z).ok_or(BundleError::Form(FormError::MissingPartials))?
    } else {
        let f = |p: &[f64; DIM]| Ok::<_, FormError>(field.components(p).flatten());
        let jac = jacobian(&f, z, diff)?;
        std::array::from_fn(|mu| MomentumComponents::from_flat(&jac[mu]))
    };
    Ok(MomentumJet { value, partials })
}

/// Coframe derivatives `f_{;I}` of the momentum components along the frame dual to a
/// coframe: `df = f_{;I} theta^I`. `ck[A][c][k][I]`, `jk[A][j][k][I]`.
#[derive(Clone, Debug)]
pub struct MomentumDerivatives {
    pub value: MomentumComponents,
    ck: Vec<[f64; DIM]>,
    jk: Vec<[f64; DIM]>,
}

impl MomentumDerivatives {
    /// `inv` is the inverse coframe matrix, `dz^mu = inv[(mu, I)] theta^I`.
    pub fn from_jet(jet: &MomentumJet, inv: &Mat10) -> Self {
        let flat: Vec<Vec<f64>> = jet.partials.iter().map(|p| p.flatten()).collect();
        let n = flat[0].len();
        let frame: Vec<[f64; DIM]> =
            (0..n).map(|s| std::array::from_fn(|i| (0..DIM).map(|mu| inv[(mu, i)] * flat[mu][s]).sum())).collect();
        let (ck, jk) = frame.split_at(CK_LEN);
        MomentumDerivatives { value: jet.value.clone(), ck: ck.to_vec(), jk: jk.to_vec() }
    }

    /// `(p_A^{ck})_{;I}`.
    pub fn d_ck(&self, a: usize, c: usize, k: usize, i: usize) -> f64 {
        self.ck[(a * 4 + c) * G_DIM + k][i]
    }

    /// `(p_A^{jk})_{;I}`.
    pub fn d_jk(&self, a: usize, j: usize, k: usize, i: usize) -> f64 {
        self.jk[(a * G_DIM + j) * G_DIM + k][i]
    }

    /// `(p_a^{bck})_{;I}`.
    pub fn d_pab_ck(&self, tables: &AlgebraTables, a: usize, b: usize, c: usize, k: usize, i: usize) -> f64 {
        (0..G_DIM).map(|n| tables.dual_mixed(n)[(a, b)] * self.d_ck(4 + n, c, k, i)).sum()
    }

    /// `(p_a^{bjk})_{;I}`.
    pub fn d_pab_jk(&self, tables: &AlgebraTables, a: usize, b: usize, j: usize, k: usize, i: usize) -> f64 {
        (0..G_DIM).map(|n| tables.dual_mixed(n)[(a, b)] * self.d_jk(4 + n, j, k, i)).sum()
    }
}
