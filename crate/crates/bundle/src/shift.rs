use crate::context::point_context;
use crate::lemmas::{bracket_half, coadjoint, coadjoint_wedge, d_all, lifted_curvature_forms, lifted_one_forms, pair_top};
use crate::momentum::{MomentumField, Poly};
use crate::varpi::{varpi_from_momentum, VarpiComponents};
use crate::BundleError;
use fbg_algebra::{AlgebraTables, G_DIM, P_DIM};
use fbg_forms::{d_from_partials, ChartPoint, DiffConfig, FormValue, DIM};
use fbg_geometry::FieldConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shifts `chi = Ad*_g xi` built from potentials, `xi_A = e4 ^ d zeta_A` with `zeta_A` a fiber
/// 3-form with polynomial components.
///
/// Every such `chi` is covariantly closed and vanishes against `alpha ^ alpha`. It also vanishes
/// against `[eta ^ eta]` when only the translation potentials are switched on.
#[derive(Clone, Debug)]
pub struct ShiftPotential {
    /// `[A][triple]`, triples of fiber directions in increasing order.
    zeta: Vec<Vec<Poly>>,
}

fn fiber_triples() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..G_DIM {
        for j in (i + 1)..G_DIM {
            for k in (j + 1)..G_DIM {
                out.push([4 + i, 4 + j, 4 + k]);
            }
        }
    }
    out
}

impl ShiftPotential {
    pub fn zero() -> Self {
        ShiftPotential { zeta: vec![vec![Poly::zero(); fiber_triples().len()]; P_DIM] }
    }

    /// All ten potentials random.
    pub fn random(seed: u64, amplitude: f64, degree: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = fiber_triples().len();
        ShiftPotential {
            zeta: (0..P_DIM).map(|_| (0..n).map(|_| Poly::random(&mut rng, amplitude, degree)).collect()).collect(),
        }
    }

    /// Translation potentials only.
    pub fn translational(seed: u64, amplitude: f64, degree: usize) -> Self {
        let mut p = Self::random(seed, amplitude, degree);
        for row in p.zeta.iter_mut().skip(4) {
            row.fill(Poly::zero());
        }
        p
    }

    /// Translation potentials linear in `y`, so `d zeta_a` has constant components.
    pub fn constant_coefficients(seed: u64, amplitude: f64) -> Self {
        let mut p = Self::translational(seed, amplitude, 1);
        for row in p.zeta.iter_mut() {
            for q in row.iter_mut() {
                q.c0 = 0.0;
                q.c1[..4].fill(0.0);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.zeta.iter().flatten().all(Poly::is_zero)
    }

    /// `xi_A` as chart 8-forms at `z`.
    pub fn xi(&self, cfg: &dyn FieldConfig, z: &[f64; DIM]) -> Result<Vec<FormValue>, BundleError> {
        let x: [f64; 4] = std::array::from_fn(|m| z[m]);
        let e = cfg.vierbein(&x);
        let mut e4 = FormValue::scalar(1.0);
        for a in 0..4 {
            let mut c = [0.0; DIM];
            for mu in 0..4 {
                c[mu] = e[(a, mu)];
            }
            e4 = e4.wedge(&FormValue::one_form(&c))?;
        }
        let triples = fiber_triples();
        let mut out = vec![FormValue::zero(DIM - 2); P_DIM];
        for (a, o) in out.iter_mut().enumerate() {
            if self.zeta[a].iter().all(Poly::is_zero) {
                continue;
            }
            let grads: Vec<[f64; DIM]> = self.zeta[a].iter().map(|p| p.gradient(z)).collect();
            let partials: Vec<FormValue> = (0..DIM)
                .map(|mu| {
                    let mut f = FormValue::zero(3);
                    for (t, g) in triples.iter().zip(&grads) {
                        f.add_component(t, g[mu]);
                    }
                    f
                })
                .collect();
            *o = e4.wedge(&d_from_partials(&partials)?)?;
        }
        Ok(out)
    }

    /// `chi_A = (Ad*_g xi)_A` at `z`, with `g = exp(y^i u_i)`.
    pub fn chi(&self, tables: &AlgebraTables, cfg: &dyn FieldConfig, z: &[f64; DIM]) -> Result<Vec<FormValue>, BundleError> {
        let g = tables.exp_chart(&std::array::from_fn(|i| z[4 + i])).matrix;
        coadjoint(tables, &g, &self.xi(cfg, z)?)
    }
}

/// The momentum shift `varpi -> varpi + chi` at one chart point.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftCheck {
    pub density_before: f64,
    pub density_after: f64,
    /// `d(chi ^ eta)` over the lifted volume, by finite differences.
    pub exact_term: f64,
    /// `chi ^ Omega` over the lifted volume, from chart forms.
    pub direct_term: f64,
    /// `max |d chi - ad*_eta ^ chi|` over the 9-form components on the lifted coframe.
    pub closedness_residual: f64,
    /// `max |chi_A ^ alpha^a ^ alpha^b|` over the lifted volume.
    pub alpha_residual: f64,
    /// `chi_A ^ [eta ^ eta]^A` over the lifted volume.
    pub bracket_term: f64,
}

impl ShiftCheck {
    pub fn density_shift(&self) -> f64 {
        self.density_after - self.density_before
    }

    /// Residuals of the two required conditions on `chi`.
    pub fn preconditions_max(&self) -> f64 {
        self.closedness_residual.max(self.alpha_residual)
    }

    /// `|lambda(varpi + chi) - lambda(varpi) - d(chi ^ eta) + 1/2 chi ^ [eta ^ eta]|`.
    pub fn identity_residual(&self) -> f64 {
        (self.density_shift() - self.exact_term + 0.5 * self.bracket_term).abs()
    }

    /// `|lambda(varpi + chi) - lambda(varpi) - d(chi ^ eta)|`, which needs `chi ^ [eta ^ eta] = 0`.
    pub fn exact_only_residual(&self) -> f64 {
        (self.density_shift() - self.exact_term).abs()
    }
}

pub fn momentum_shift_check(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    shift: &ShiftPotential,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<ShiftCheck, BundleError> {
    let z = pt.z();
    let ctx = point_context(tables, cfg, pt, diff)?;
    let cf = &ctx.lift.coframe;
    let det = cf.det();
    let varpi = varpi_from_momentum(tables, &ctx.lift, &mom.components(&z))?;
    let chi = shift.chi(tables, cfg, &z)?;
    let mut w = VarpiComponents::zero();
    for (a, c) in chi.iter().enumerate() {
        w.w[a] = cf.coeffs8(c)?;
    }
    let density_before = varpi.density(&ctx.structure);
    let density_after = varpi.add(&w).density(&ctx.structure);

    let chi_eta = |q: &[f64; DIM]| -> Result<Vec<FormValue>, BundleError> {
        let eta = lifted_one_forms(tables, cfg, q)?;
        let mut s = FormValue::zero(DIM - 1);
        for (c, e) in shift.chi(tables, cfg, q)?.iter().zip(&eta) {
            s.axpy(1.0, &c.wedge(e)?);
        }
        Ok(vec![s])
    };
    let exact_term = d_all(&chi_eta, &z, diff)?[0].top() / det;
    let omega = lifted_curvature_forms(tables, cfg, &z, diff)?;
    let direct_term = pair_top(&chi, &omega, det)?;

    let eta = lifted_one_forms(tables, cfg, &z)?;
    let dchi = d_all(&|q| shift.chi(tables, cfg, q), &z, diff)?;
    let adw = coadjoint_wedge(tables, &eta, &chi)?;
    let mut closedness_residual: f64 = 0.0;
    for (d, a) in dchi.iter().zip(&adw) {
        let c = cf.coeffs9(&d.sub(a))?;
        closedness_residual = c.iter().fold(closedness_residual, |m, v| m.max(v.abs()));
    }
    let mut alpha_residual: f64 = 0.0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            let aa = eta[a].wedge(&eta[b])?;
            for c in &chi {
                alpha_residual = alpha_residual.max((c.wedge(&aa)?.top() / det).abs());
            }
        }
    }
    let br: Vec<FormValue> = bracket_half(tables, &eta)?.iter().map(|f| f.scale(2.0)).collect();
    let bracket_term = pair_top(&chi, &br, det)?;
    Ok(ShiftCheck {
        density_before,
        density_after,
        exact_term,
        direct_term,
        closedness_residual,
        alpha_residual,
        bracket_term,
    })
}
