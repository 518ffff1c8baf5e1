use crate::context::point_context;
use crate::density::density_at;
use crate::momentum::{MomentumComponents, MomentumField};
use crate::nabla::eg_matrix;
use crate::varpi::varpi_from_momentum;
use crate::BundleError;
use fbg_algebra::{AlgebraTables, GroupElement, Mat10, Mat4, Signature, G_DIM, P_DIM};
use fbg_forms::{gamma_jet, gamma_matrix, ChartPoint, DiffConfig, StructureConstants, DIM};
use fbg_geometry::FieldConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A map `f: x -> G` with its pulled-back Maurer-Cartan form.
pub trait GaugeMap: Send + Sync {
    fn value(&self, x: &[f64; 4]) -> Mat4;
    /// `[nu] -> f^{-1} d_nu f`.
    fn pullback(&self, x: &[f64; 4]) -> [Mat4; 4];
    /// `[nu][mu] -> d_nu (f^{-1} d_mu f)`.
    fn pullback_partials(&self, x: &[f64; 4]) -> [[Mat4; 4]; 4];
}

/// Quadratic polynomial in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic4 {
    pub c0: f64,
    pub c1: [f64; 4],
    pub c2: [[f64; 4]; 4],
}

impl Quadratic4 {
    pub fn value(&self, x: &[f64; 4]) -> f64 {
        let mut v = self.c0;
        for m in 0..4 {
            v += self.c1[m] * x[m];
            for n in 0..4 {
                v += self.c2[m][n] * x[m] * x[n];
            }
        }
        v
    }

    pub fn gradient(&self, x: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|m| self.c1[m] + (0..4).map(|n| (self.c2[m][n] + self.c2[n][m]) * x[n]).sum::<f64>())
    }

    pub fn hessian(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|m| std::array::from_fn(|n| self.c2[m][n] + self.c2[n][m]))
    }
}

/// `f(x) = exp(phi(x)^i u_i)` with quadratic `phi`.
#[derive(Clone, Debug)]
pub struct PolynomialGauge {
    tables: AlgebraTables,
    sc: StructureConstants,
    pub phi: [Quadratic4; G_DIM],
    /// `phi` is evaluated at `x - center`.
    pub center: [f64; 4],
}

impl PolynomialGauge {
    pub fn new(tables: &AlgebraTables, phi: [Quadratic4; G_DIM]) -> Self {
        PolynomialGauge { tables: tables.clone(), sc: StructureConstants::from_tables(tables), phi, center: [0.0; 4] }
    }

    pub fn identity(tables: &AlgebraTables) -> Self {
        Self::constant(tables, &[0.0; G_DIM])
    }

    pub fn constant(tables: &AlgebraTables, phi0: &[f64; G_DIM]) -> Self {
        Self::new(tables, std::array::from_fn(|i| Quadratic4 { c0: phi0[i], c1: [0.0; 4], c2: [[0.0; 4]; 4] }))
    }

    /// Coefficients uniform in `[-amplitude, amplitude]`, quadratic terms halved. Keep
    /// `|phi|` of order one where the map is used (see [`Self::with_center`]).
    pub fn random(tables: &AlgebraTables, seed: u64, amplitude: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = |s: f64| s * amplitude * rng.random_range(-1.0..1.0);
        let phi = std::array::from_fn(|_| Quadratic4 {
            c0: r(1.0),
            c1: std::array::from_fn(|_| r(1.0)),
            c2: std::array::from_fn(|_| std::array::from_fn(|_| r(0.5))),
        });
        Self::new(tables, phi)
    }

    pub fn with_center(mut self, center: [f64; 4]) -> Self {
        self.center = center;
        self
    }

    fn local(&self, x: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|m| x[m] - self.center[m])
    }

    pub fn coordinates(&self, x: &[f64; 4]) -> [f64; G_DIM] {
        let v = self.local(x);
        std::array::from_fn(|i| self.phi[i].value(&v))
    }

    fn from_coords(&self, v: &[f64; G_DIM]) -> Mat4 {
        self.tables.g_element(v)
    }
}

impl GaugeMap for PolynomialGauge {
    fn value(&self, x: &[f64; 4]) -> Mat4 {
        self.tables.exp_chart(&self.coordinates(x)).matrix
    }

    fn pullback(&self, x: &[f64; 4]) -> [Mat4; 4] {
        let phi = self.coordinates(x);
        let gam = gamma_matrix(&self.sc, &phi).expect("gauge coordinates inside the dexp series range");
        let grads: [[f64; 4]; G_DIM] = std::array::from_fn(|j| self.phi[j].gradient(&self.local(x)));
        std::array::from_fn(|nu| {
            let v: [f64; G_DIM] = std::array::from_fn(|i| (0..G_DIM).map(|j| gam[(i, j)] * grads[j][nu]).sum());
            self.from_coords(&v)
        })
    }

    fn pullback_partials(&self, x: &[f64; 4]) -> [[Mat4; 4]; 4] {
        let phi = self.coordinates(x);
        let gam = gamma_matrix(&self.sc, &phi).expect("gauge coordinates inside the dexp series range");
        let jet = gamma_jet(&self.sc, &phi).expect("gauge coordinates inside the dexp series range");
        let grads: [[f64; 4]; G_DIM] = std::array::from_fn(|j| self.phi[j].gradient(&self.local(x)));
        let hess: [[[f64; 4]; 4]; G_DIM] = std::array::from_fn(|j| self.phi[j].hessian());
        std::array::from_fn(|nu| {
            std::array::from_fn(|mu| {
                let v: [f64; G_DIM] = std::array::from_fn(|i| {
                    let mut s = 0.0;
                    for j in 0..G_DIM {
                        let dgam: f64 = (0..G_DIM).map(|l| jet[l][(i, j)] * grads[l][nu]).sum();
                        s += dgam * grads[j][mu] + gam[(i, j)] * hess[j][nu][mu];
                    }
                    s
                });
                self.from_coords(&v)
            })
        })
    }
}

/// `(e, A)` gauged by `f`: `e' = f^{-1} e`, `A' = f^{-1} A f + f^{-1} df`.
pub struct GaugedConfig<'a> {
    pub base: &'a dyn FieldConfig,
    pub gauge: &'a dyn GaugeMap,
}

impl<'a> GaugedConfig<'a> {
    pub fn new(base: &'a dyn FieldConfig, gauge: &'a dyn GaugeMap) -> Self {
        GaugedConfig { base, gauge }
    }

    fn f_inv(&self, x: &[f64; 4]) -> Mat4 {
        self.gauge.value(x).try_inverse().expect("group elements are invertible")
    }
}

impl FieldConfig for GaugedConfig<'_> {
    fn name(&self) -> String {
        format!("gauged({})", self.base.name())
    }

    fn signature(&self) -> Signature {
        self.base.signature()
    }

    fn vierbein(&self, x: &[f64; 4]) -> Mat4 {
        self.f_inv(x) * self.base.vierbein(x)
    }

    fn connection(&self, x: &[f64; 4]) -> [Mat4; 4] {
        let f = self.gauge.value(x);
        let fi = self.f_inv(x);
        let a = self.base.connection(x);
        let pb = self.gauge.pullback(x);
        std::array::from_fn(|mu| fi * a[mu] * f + pb[mu])
    }

    fn vierbein_partials(&self, x: &[f64; 4]) -> Option<[Mat4; 4]> {
        let de = self.base.vierbein_partials(x)?;
        let fi = self.f_inv(x);
        let e = self.base.vierbein(x);
        let pb = self.gauge.pullback(x);
        Some(std::array::from_fn(|nu| -(pb[nu] * fi * e) + fi * de[nu]))
    }

    fn connection_partials(&self, x: &[f64; 4]) -> Option<[[Mat4; 4]; 4]> {
        let da = self.base.connection_partials(x)?;
        let f = self.gauge.value(x);
        let fi = self.f_inv(x);
        let a = self.base.connection(x);
        let pb = self.gauge.pullback(x);
        let dpb = self.gauge.pullback_partials(x);
        Some(std::array::from_fn(|nu| {
            std::array::from_fn(|mu| {
                let conj = fi * a[mu] * f;
                conj * pb[nu] - pb[nu] * conj + fi * da[nu][mu] * f + dpb[nu][mu]
            })
        }))
    }

    fn in_domain(&self, x: &[f64; 4]) -> bool {
        self.base.in_domain(x)
    }

    fn has_analytic_partials(&self) -> bool {
        self.base.has_analytic_partials()
    }

    fn sample(&self, u: &[f64; 4]) -> [f64; 4] {
        self.base.sample(u)
    }
}

/// `p' = Ad*_{f(x)} p` as forms, re-read on the gauged `(e', gamma)` coframe.
pub struct GaugedMomentum<'a> {
    pub tables: &'a AlgebraTables,
    pub base: &'a dyn FieldConfig,
    pub gauge: &'a dyn GaugeMap,
    pub momentum: &'a dyn MomentumField,
}

impl GaugedMomentum<'_> {
    /// Free components and the deviation of the re-read head from `kappa`.
    pub fn transform(&self, z: &[f64; DIM]) -> Result<(MomentumComponents, f64), BundleError> {
        let t = self.tables;
        let x: [f64; 4] = std::array::from_fn(|m| z[m]);
        let n = t.coadjoint_group_matrix(&GroupElement::from_matrix(self.gauge.value(&x)))?;
        let gauged = GaugedConfig::new(self.base, self.gauge);
        let from = eg_matrix(t, self.base, z)?;
        let to = eg_matrix(t, &gauged, z)?;
        let det = from.determinant();
        let from_inv = from.try_inverse().ok_or(BundleError::RankDeficient { det })?;
        let tr: Mat10 = to * from_inv;
        let p = self.momentum.components(z);
        let rebased: Vec<Mat10> = (0..P_DIM)
            .map(|b| {
                let m = Mat10::from_fn(|i, j| p.frame_matrix(t, b)[i][j]);
                tr * m * tr.transpose()
            })
            .collect();
        let mut out = MomentumComponents::zero();
        let mut head: f64 = 0.0;
        for a in 0..P_DIM {
            let m = (0..P_DIM).fold(Mat10::zeros(), |acc, b| acc + rebased[b] * n[(a, b)]);
            for c in 0..4 {
                for d in 0..4 {
                    head = head.max((m[(c, d)] - t.kappa(a, c, d)).abs());
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
        Ok((out, head))
    }
}

impl MomentumField for GaugedMomentum<'_> {
    fn name(&self) -> String {
        format!("gauged({})", self.momentum.name())
    }

    fn components(&self, z: &[f64; DIM]) -> MomentumComponents {
        self.transform(z).map(|(p, _)| p).unwrap_or_default()
    }
}

pub fn gauge_transform<'a>(
    tables: &'a AlgebraTables,
    cfg: &'a dyn FieldConfig,
    mom: &'a dyn MomentumField,
    gauge: &'a dyn GaugeMap,
) -> (GaugedConfig<'a>, GaugedMomentum<'a>) {
    (GaugedConfig::new(cfg, gauge), GaugedMomentum { tables, base: cfg, gauge, momentum: mom })
}

/// Comparison of one chart point before and after a gauge transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeComparison {
    pub density_before: f64,
    pub density_after: f64,
    /// `max |p'_A^{cd} - kappa_A^{cd}|` on the gauged `(e', gamma)` coframe.
    pub p_head_residual: f64,
    /// `max |varpi'_A^{cd} - kappa_A^{cd}|` on the gauged `(alpha', omega')` coframe.
    pub varpi_head_residual: f64,
    /// `max |varpi' - Ad*_gamma varpi|` over chart-form components, `gamma = g^{-1} f g`.
    pub covariance_residual: f64,
}

pub fn gauge_compare(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    gauge: &dyn GaugeMap,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<GaugeComparison, BundleError> {
    let z = pt.z();
    let (gcfg, gmom) = gauge_transform(tables, cfg, mom, gauge);
    let ctx = point_context(tables, cfg, pt, diff)?;
    let gctx = point_context(tables, &gcfg, pt, diff)?;
    let p = mom.components(&z);
    let (gp, p_head_residual) = gmom.transform(&z)?;
    let varpi = varpi_from_momentum(tables, &ctx.lift, &p)?;
    let gvarpi = varpi_from_momentum(tables, &gctx.lift, &gp)?;
    let f = gauge.value(&pt.x);
    let g = &ctx.lift.g.matrix;
    let gam = GroupElement::from_matrix(ctx.lift.g_inv * f * g);
    let n = tables.coadjoint_group_matrix(&gam)?;
    let mut covariance_residual: f64 = 0.0;
    let forms: Vec<_> = (0..P_DIM).map(|b| ctx.lift.coframe.eight_form(&varpi.w[b])).collect::<Result<_, _>>()?;
    for a in 0..P_DIM {
        let mut want = fbg_forms::FormValue::zero(8);
        for b in 0..P_DIM {
            want.axpy(n[(a, b)], &forms[b]);
        }
        let got = gctx.lift.coframe.eight_form(&gvarpi.w[a])?;
        covariance_residual = covariance_residual.max(got.sub(&want).max_abs());
    }
    Ok(GaugeComparison {
        density_before: density_at(tables, &ctx, &p)?,
        density_after: density_at(tables, &gctx, &gp)?,
        p_head_residual,
        varpi_head_residual: gvarpi.constraint_residual(tables),
        covariance_residual,
    })
}
