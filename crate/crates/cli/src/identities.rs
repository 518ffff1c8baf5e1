//! Algebra and exterior-calculus identity suites. Each suite is its own oracle: a
//! residual is the gap between two independently computed sides of an identity.

use crate::report::{Report, SuiteReport};
use crate::sampling::points_digest;
use crate::CliError;
use fbg_algebra::{levi_civita, AlgebraTables, GroupElement, Mat10, PCovector, PVector, Signature, G_DIM, P_DIM};
use fbg_bundle::{
    coadjoint_derivative_residual, covariant_transfer_residual, shift_identity, PolynomialFormField, PolynomialGroupField,
};
use fbg_forms::{dgamma_identities, ChartPoint, CoframeValue, DiffConfig, FormValue, StructureConstants};
use fbg_geometry::{FieldConfig, Perturbed, Schwarzschild};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

pub const ALGEBRA_TOL: f64 = 1e-13;
pub const ACTION_TOL: f64 = 1e-12;
pub const CONTRACTION_TOL: f64 = 1e-12;
pub const MAURER_CARTAN_TOL: f64 = 1e-8;
pub const DERIVATIVE_TOL: f64 = 1e-6;

pub const ACTION_DRAWS: usize = 1000;
pub const MAURER_CARTAN_POINTS: usize = 100;
pub const LEMMA_DRAWS: usize = 50;

fn both_tables() -> [AlgebraTables; 2] {
    [AlgebraTables::canonical(Signature::euclidean()), AlgebraTables::canonical(Signature::lorentzian())]
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn rng_for(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn max_diff(a: &[f64; P_DIM], b: &[f64; P_DIM]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// `1/2 u^i_ab u_j^ab = delta^i_j`.
pub fn dual_pairing_residual(t: &AlgebraTables) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..G_DIM {
        for j in 0..G_DIM {
            let s = 0.5 * t.dual_lower(i).component_mul(t.generator_upper(j)).sum();
            worst = worst.max((s - delta(i, j)).abs());
        }
    }
    worst
}

/// `u^i_ab u_i^a'b' = delta^a'_a delta^b'_b - delta^a'_b delta^b'_a`.
pub fn dual_completeness_residual(t: &AlgebraTables) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for ap in 0..4 {
                for bp in 0..4 {
                    let s: f64 = (0..G_DIM).map(|i| t.dual_lower(i)[(a, b)] * t.generator_upper(i)[(ap, bp)]).sum();
                    let want = delta(ap, a) * delta(bp, b) - delta(ap, b) * delta(bp, a);
                    worst = worst.max((s - want).abs());
                }
            }
        }
    }
    worst
}

/// `u^{ib}_a (u_i)^a'_b' = delta^a'_a delta^b_b' - h_ab' h^a'b`.
pub fn dual_mixed_residual(t: &AlgebraTables) -> f64 {
    let (h, hi) = (t.h(), t.h_inv());
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for ap in 0..4 {
                for bp in 0..4 {
                    let s: f64 = (0..G_DIM).map(|i| t.dual_mixed(i)[(a, b)] * t.generator(i)[(ap, bp)]).sum();
                    let want = delta(ap, a) * delta(b, bp) - h[(a, bp)] * hi[(ap, b)];
                    worst = worst.max((s - want).abs());
                }
            }
        }
    }
    worst
}

pub fn jacobi_residual(t: &AlgebraTables) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..P_DIM {
        for b in 0..P_DIM {
            for c in 0..P_DIM {
                for d in 0..P_DIM {
                    let s: f64 = (0..P_DIM)
                        .map(|e| {
                            t.c_p(e, b, c) * t.c_p(a, d, e) + t.c_p(e, c, d) * t.c_p(a, b, e) + t.c_p(e, d, b) * t.c_p(a, c, e)
                        })
                        .sum();
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    worst
}

/// `h u_i + u_i^T h = 0` and antisymmetry of the structure constants.
pub fn antisymmetry_residual(t: &AlgebraTables) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..G_DIM {
        let u = t.generator(i);
        worst = worst.max((t.h() * u + u.transpose() * t.h()).amax());
    }
    for a in 0..P_DIM {
        for b in 0..P_DIM {
            for c in 0..P_DIM {
                worst = worst.max((t.c_p(a, b, c) + t.c_p(a, c, b)).abs());
            }
        }
    }
    worst
}

fn rvec(rng: &mut ChaCha8Rng) -> PVector {
    PVector::new(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

fn rcov(rng: &mut ChaCha8Rng) -> PCovector {
    PCovector::new(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

fn rgroup(t: &AlgebraTables, rng: &mut ChaCha8Rng) -> GroupElement {
    let y: [f64; G_DIM] = std::array::from_fn(|_| rng.random_range(-0.8..0.8));
    t.exp_chart(&y)
}

/// `(ad*_xi lambda)(zeta) = lambda([xi, zeta])`, with the closed tensor formula checked
/// against the structure-constant form.
pub fn coadjoint_algebra_residuals(t: &AlgebraTables, rng: &mut ChaCha8Rng, draws: usize) -> Vec<f64> {
    (0..draws)
        .map(|_| {
            let (xi, lam, zeta) = (rvec(rng), rcov(rng), rvec(rng));
            let a = t.coadjoint_algebra(&xi, &lam);
            let b = t.coadjoint_algebra_components(&xi, &lam);
            let pairing = (a.pair(&zeta) - lam.pair(&t.bracket_components(&xi, &zeta))).abs();
            pairing.max(max_diff(&a.comps, &b.comps))
        })
        .collect()
}

/// `(Ad*_g lambda)(xi) = lambda(Ad_g xi)`.
pub fn coadjoint_group_residuals(t: &AlgebraTables, rng: &mut ChaCha8Rng, draws: usize) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::with_capacity(draws);
    for _ in 0..draws {
        let g = rgroup(t, rng);
        let (xi, lam) = (rvec(rng), rcov(rng));
        let lhs = t.coadjoint_group(&g, &lam)?.pair(&xi);
        let rhs = lam.pair(&t.adjoint(&g, &xi)?);
        out.push((lhs - rhs).abs());
    }
    Ok(out)
}

/// `Ad*_{g^-1}(ad*_{Ad_{g^-1} xi} lambda) = ad*_xi(Ad*_{g^-1} lambda)`.
pub fn adjoint_coadjoint_residuals(t: &AlgebraTables, rng: &mut ChaCha8Rng, draws: usize) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::with_capacity(draws);
    for _ in 0..draws {
        let g = rgroup(t, rng);
        let (xi, lam) = (rvec(rng), rcov(rng));
        let run = || -> Result<f64, fbg_algebra::AlgebraError> {
            let ginv = g.inverse()?;
            let inner = t.coadjoint_algebra(&t.adjoint(&ginv, &xi)?, &lam);
            let lhs = t.coadjoint_group(&ginv, &inner)?;
            let rhs = t.coadjoint_algebra(&xi, &t.coadjoint_group(&ginv, &lam)?);
            Ok(max_diff(&lhs.comps, &rhs.comps))
        };
        out.push(run()?);
    }
    Ok(out)
}

fn random_coframe(rng: &mut ChaCha8Rng) -> CoframeValue {
    CoframeValue::new(Mat10::from_fn(|r, c| rng.random_range(-1.0..1.0) + if r == c { 3.0 } else { 0.0 }))
}

fn form_gap(a: &FormValue, b: &FormValue, scale: f64) -> f64 {
    a.sub(b).max_abs() / scale.max(1.0)
}

/// `alpha^a ^ alpha^(4)_a' = delta alpha^(4)`, its two-index version, and the same for
/// `omega` with `omega^(6)`.
pub fn contraction_residual(cf: &CoframeValue) -> Result<f64, CliError> {
    let mut worst: f64 = 0.0;
    for block in [0..4usize, 4..10usize] {
        let idx: Vec<usize> = block.clone().collect();
        let top = cf.theta_wedge(&idx)?;
        let scale = top.max_abs();
        for &a in &idx {
            for &ap in &idx {
                let c = cf.contract_dual(ap, &top)?;
                let lhs = cf.theta(a).wedge(&c)?;
                worst = worst.max(form_gap(&lhs, &top.scale(delta(a, ap)), scale));
                for &b in &idx {
                    for &bp in &idx {
                        let cc = cf.contract_dual(bp, &c)?;
                        let lhs = cf.theta_wedge(&[a, b]).and_then(|ab| ab.wedge(&cc))?;
                        let d = delta(a, ap) * delta(b, bp) - delta(a, bp) * delta(b, ap);
                        worst = worst.max(form_gap(&lhs, &top.scale(d), scale));
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// `iota_b iota_a e^(4) = 1/2 epsilon_abcd e^c ^ e^d`.
pub fn epsilon_two_form_residual(cf: &CoframeValue) -> Result<f64, CliError> {
    let e4 = cf.theta_wedge(&[0, 1, 2, 3])?;
    let scale = e4.max_abs();
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let lhs = cf
                .contract_dual(a, &e4)
                .and_then(|f| cf.contract_dual(b, &f))
                ?;
            let mut rhs = FormValue::zero(2);
            for c in 0..4 {
                for d in 0..4 {
                    let eps = levi_civita(a, b, c, d);
                    if eps != 0.0 {
                        rhs.axpy(0.5 * eps, &cf.theta_wedge(&[c, d])?);
                    }
                }
            }
            worst = worst.max(form_gap(&lhs, &rhs, scale));
        }
    }
    Ok(worst)
}

fn collect<T: Send>(items: Vec<Result<T, CliError>>) -> Result<Vec<T>, CliError> {
    items.into_iter().collect()
}

/// Algebra suites only; cheap enough to attach to every residual report.
pub fn algebra_suites(seed: u64) -> Result<Vec<SuiteReport>, CliError> {
    let tables = both_tables();
    let fixed = |name: &str, f: fn(&AlgebraTables) -> f64| {
        let r: Vec<f64> = tables.iter().map(f).collect();
        SuiteReport::from_residuals(name, &r, ALGEBRA_TOL)
    };
    let mut out = vec![
        fixed("dual_pairing", dual_pairing_residual),
        fixed("dual_completeness", dual_completeness_residual),
        fixed("dual_mixed", dual_mixed_residual),
        fixed("jacobi", jacobi_residual),
        fixed("antisymmetry", antisymmetry_residual),
    ];
    let runs: Vec<Result<[Vec<f64>; 3], CliError>> = tables
        .par_iter()
        .enumerate()
        .map(|(k, t)| {
            let mut rng = rng_for(seed, 1 + k as u64);
            let a = coadjoint_algebra_residuals(t, &mut rng, ACTION_DRAWS);
            let b = coadjoint_group_residuals(t, &mut rng, ACTION_DRAWS)?;
            let c = adjoint_coadjoint_residuals(t, &mut rng, ACTION_DRAWS)?;
            Ok([a, b, c])
        })
        .collect();
    let runs = collect(runs)?;
    for (slot, name) in ["coadjoint_algebra_pairing", "coadjoint_group_pairing", "adjoint_coadjoint"].iter().enumerate() {
        let all: Vec<f64> = runs.iter().flat_map(|r| r[slot].iter().copied()).collect();
        out.push(SuiteReport::from_residuals(name, &all, ACTION_TOL));
    }
    Ok(out)
}

/// Fiber points for the Maurer-Cartan suite, `|y_i| < 0.5`.
pub fn maurer_cartan_points(seed: u64, n: usize) -> Vec<[f64; G_DIM]> {
    let mut rng = rng_for(seed, 11);
    (0..n).map(|_| std::array::from_fn(|_| rng.random_range(-0.5..0.5))).collect()
}

pub fn maurer_cartan_residuals(points: &[[f64; G_DIM]], diff: &DiffConfig) -> Result<Vec<f64>, CliError> {
    let tables = both_tables();
    let jobs: Vec<(usize, &[f64; G_DIM])> = (0..2).flat_map(|k| points.iter().map(move |y| (k, y))).collect();
    collect(
        jobs.par_iter()
            .map(|(k, y)| {
                let sc = StructureConstants::from_tables(&tables[*k]);
                Ok(dgamma_identities(&sc, y, diff)?.max())
            })
            .collect(),
    )
}

fn small_z(rng: &mut ChaCha8Rng) -> [f64; 10] {
    std::array::from_fn(|_| rng.random_range(-0.3..0.3))
}

/// `d(Ad*_{g^-1} varpi) = Ad*_{g^-1}(d varpi - ad*_{g^-1 dg} ^ varpi)` on random polynomial
/// fields, alternating signatures and form degrees.
pub fn coadjoint_derivative_residuals(seed: u64, draws: usize, diff: &DiffConfig) -> Result<(Vec<f64>, Vec<[f64; 10]>), CliError> {
    let mut rng = rng_for(seed, 21);
    let zs: Vec<[f64; 10]> = (0..draws).map(|_| small_z(&mut rng)).collect();
    let tables = both_tables();
    let r = collect(
        zs.par_iter()
            .enumerate()
            .map(|(n, z)| {
                let t = &tables[n % 2];
                let s = seed.wrapping_add(1000 * n as u64);
                let g = PolynomialGroupField::random(t, s, 0.4);
                let varpi = PolynomialFormField::random(s + 1, [8, 1, 3][n % 3], 0.5, 2);
                Ok(coadjoint_derivative_residual(t, &g, &varpi, z, diff)?)
            })
            .collect(),
    )?;
    Ok((r, zs))
}

fn draw_configs() -> Vec<Box<dyn FieldConfig>> {
    vec![
        Box::new(Perturbed::new(fbg_algebra::SignatureKind::Euclidean, 3, 0.05)),
        Box::new(Perturbed::new(fbg_algebra::SignatureKind::Lorentzian, 4, 0.05)),
        Box::new(Schwarzschild::new(1.0)),
    ]
}

fn draw_points(cfgs: &[Box<dyn FieldConfig>], seed: u64, tag: u64, draws: usize) -> Vec<(usize, ChartPoint)> {
    let mut rng = rng_for(seed, tag);
    (0..draws)
        .map(|n| {
            let k = n % cfgs.len();
            let x = cfgs[k].sample(&std::array::from_fn(|_| rng.random::<f64>()));
            let y = std::array::from_fn(|_| rng.random_range(-0.2..0.2));
            (k, ChartPoint::new(x, y))
        })
        .collect()
}

/// The covariant derivative of `p = Ad*_{g^-1} varpi` read in both descriptions.
pub fn covariant_transfer_residuals(seed: u64, draws: usize, diff: &DiffConfig) -> Result<(Vec<f64>, Vec<ChartPoint>), CliError> {
    let cfgs = draw_configs();
    let pts = draw_points(&cfgs, seed, 31, draws);
    let r = collect(
        pts.par_iter()
            .enumerate()
            .map(|(n, (k, pt))| {
                let cfg = cfgs[*k].as_ref();
                let t = AlgebraTables::canonical(cfg.signature());
                let varpi = PolynomialFormField::random(seed.wrapping_add(300 + n as u64), 8, 0.5, 2);
                Ok(covariant_transfer_residual(&t, cfg, &varpi, pt, diff)?)
            })
            .collect(),
    )?;
    Ok((r, pts.into_iter().map(|(_, p)| p).collect()))
}

/// `psi ^ Omega = -(d psi - 1/2 ad*_eta ^ psi) ^ eta + d(psi ^ eta)`, relative to `|psi ^ Omega|`.
pub fn shift_identity_residuals(seed: u64, draws: usize, diff: &DiffConfig) -> Result<(Vec<f64>, Vec<ChartPoint>), CliError> {
    let cfgs = draw_configs();
    let pts = draw_points(&cfgs, seed, 41, draws);
    let r = collect(
        pts.par_iter()
            .enumerate()
            .map(|(n, (k, pt))| {
                let cfg = cfgs[*k].as_ref();
                let t = AlgebraTables::canonical(cfg.signature());
                let psi = PolynomialFormField::random(seed.wrapping_add(400 + n as u64), 8, 0.5, 2);
                let f = |q: &[f64; 10]| Ok(psi.value(q));
                let s = shift_identity(&t, cfg, &f, pt, diff)?;
                Ok((s.lhs - s.rhs_half).abs() / s.lhs.abs().max(1.0))
            })
            .collect(),
    )?;
    Ok((r, pts.into_iter().map(|(_, p)| p).collect()))
}

/// Every identity suite. Derivative-based suites always use finite differences, so
/// each check compares two independent evaluations.
pub fn run_identities(seed: u64) -> Result<Report, CliError> {
    let start = Instant::now();
    let fd = DiffConfig::finite_difference();
    let mut suites = algebra_suites(seed)?;

    let mut rng = rng_for(seed, 5);
    let coframes: Vec<CoframeValue> = (0..20).map(|_| random_coframe(&mut rng)).collect();
    let contraction = collect(coframes.iter().map(contraction_residual).collect())?;
    suites.push(SuiteReport::from_residuals("contraction", &contraction, CONTRACTION_TOL));
    let eps = collect(coframes.iter().map(epsilon_two_form_residual).collect())?;
    suites.push(SuiteReport::from_residuals("epsilon_two_form", &eps, CONTRACTION_TOL));

    let mc_points = maurer_cartan_points(seed, MAURER_CARTAN_POINTS);
    let mc = maurer_cartan_residuals(&mc_points, &fd)?;
    suites.push(SuiteReport::from_residuals("maurer_cartan", &mc, MAURER_CARTAN_TOL));

    let (cd, cd_z) = coadjoint_derivative_residuals(seed, LEMMA_DRAWS, &fd)?;
    suites.push(SuiteReport::from_residuals("coadjoint_derivative", &cd, DERIVATIVE_TOL));
    let (ct, ct_pts) = covariant_transfer_residuals(seed, LEMMA_DRAWS, &fd)?;
    suites.push(SuiteReport::from_residuals("covariant_transfer", &ct, DERIVATIVE_TOL));
    let (si, si_pts) = shift_identity_residuals(seed, 12, &fd)?;
    suites.push(SuiteReport::from_residuals("shift_identity", &si, DERIVATIVE_TOL));

    let mut pts: Vec<ChartPoint> = mc_points.iter().map(|y| ChartPoint::new([0.0; 4], *y)).collect();
    pts.extend(cd_z.iter().map(ChartPoint::from_z));
    pts.extend(ct_pts);
    pts.extend(si_pts);
    let mut config = BTreeMap::new();
    config.insert("seed".to_string(), seed.to_string());
    Ok(Report::new(
        "identities",
        config,
        pts.len(),
        points_digest(&pts),
        Vec::new(),
        suites,
        None,
        start.elapsed().as_secs_f64(),
    ))
}
