//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use fbg_algebra::{AlgebraTables, Signature, SignatureKind, G_DIM, P_DIM, T_DIM};
use fbg_bundle::{
    constraint_heads, legendre_gradient, legendre_w, momentum_derivatives, nabla_hp_closed, nabla_hp_fd,
    point_context, stationarity_residual, theta_density, HeadBlock, LiftedCoframe, PolynomialMomentum, FAMILY_NAMES,
};
use fbg_cli::identities::{
    algebra_suites, coadjoint_derivative_residuals, covariant_transfer_residuals, maurer_cartan_points,
    maurer_cartan_residuals,
};
use fbg_cli::sampling::sample_points;
use fbg_cli::{run_gauge_check, run_residuals, RunConfig, Settings};
use fbg_forms::{ChartPoint, DiffConfig};
use fbg_frobenius::{check_fibration_hypotheses, CorruptedCoframe};
use fbg_geometry::oracles::schwarzschild_riemann;
use fbg_geometry::{curvature_data, FieldConfig, Flat, Perturbed, Schwarzschild, Sphere4, Tensor4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

struct Outcome {
    passed: bool,
    /// The figure compared against the criterion's tolerance.
    measure: f64,
    detail: String,
}

impl Outcome {
    fn below(measure: f64, tol: f64, detail: impl Into<String>) -> Self {
        Outcome { passed: measure < tol, measure, detail: detail.into() }
    }

    fn and(self, other: Outcome) -> Outcome {
        Outcome {
            passed: self.passed && other.passed,
            measure: self.measure.max(other.measure),
            detail: format!("{}; {}", self.detail, other.detail),
        }
    }
}

type Check = fn() -> Result<Outcome, String>;

fn config(text: &str) -> Result<RunConfig, String> {
    let mut s = Settings::new();
    s.merge_text(text, "acceptance").map_err(|e| e.to_string())?;
    RunConfig::from_settings(&s).map_err(|e| e.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| if x.is_nan() { f64::NAN } else { m.max(*x) })
}

fn algebra_identities() -> Result<Outcome, String> {
    let suites = algebra_suites(1).map_err(err)?;
    let mut out = Outcome { passed: true, measure: 0.0, detail: String::new() };
    for s in &suites {
        out.passed &= s.passed && s.tolerance <= 1e-12;
        out.measure = out.measure.max(s.max_residual);
    }
    out.detail = format!("{} suites, both signatures, 1000 draws for the actions", suites.len());
    Ok(out)
}

fn maurer_cartan_structure() -> Result<Outcome, String> {
    let pts = maurer_cartan_points(2, 100);
    let r = maurer_cartan_residuals(&pts, &DiffConfig::finite_difference()).map_err(err)?;
    Ok(Outcome::below(max_of(&r), 1e-8, format!("{} points over both algebras", r.len())))
}

fn coadjoint_derivative_lemma() -> Result<Outcome, String> {
    let fd = DiffConfig::finite_difference();
    let (a, _) = coadjoint_derivative_residuals(3, 50, &fd).map_err(err)?;
    let (b, _) = covariant_transfer_residuals(3, 50, &fd).map_err(err)?;
    Ok(Outcome::below(max_of(&a), 1e-6, "lemma over 50 draws").and(Outcome::below(max_of(&b), 1e-6, "corollary over 50 draws")))
}

fn field_equation_max(report: &fbg_cli::Report) -> f64 {
    FAMILY_NAMES.iter().map(|n| report.family(n).map_or(f64::NAN, |f| f.max_abs)).fold(0.0, f64::max)
}

fn flat_vacuum() -> Result<Outcome, String> {
    let mut out: Option<Outcome> = None;
    for scenario in ["flat_lorentzian", "flat_euclidean"] {
        let r = run_residuals(&config(&format!("scenario = {scenario}\npoints = 20\ndiff.mode = analytic"))?).map_err(err)?;
        let o = Outcome::below(field_equation_max(&r), 1e-10, scenario);
        out = Some(match out {
            None => o,
            Some(p) => p.and(o),
        });
    }
    Ok(out.unwrap())
}

fn max_diff4(a: &Tensor4, b: &Tensor4) -> f64 {
    a.iter().flatten().flatten().flatten().zip(b.iter().flatten().flatten().flatten()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn schwarzschild_vacuum() -> Result<Outcome, String> {
    let fd = run_residuals(&config("scenario = schwarzschild:M=1\npoints = 50\ndiff.mode = fd\nseed = 5")?).map_err(err)?;
    let an = run_residuals(&config("scenario = schwarzschild:M=1\npoints = 50\ndiff.mode = analytic\nseed = 5")?).map_err(err)?;
    let cfg = Schwarzschild::new(1.0);
    let pts = sample_points(&cfg, 50, 5, 0.3).map_err(err)?;
    let mut oracle: f64 = 0.0;
    let mut radii_ok = true;
    for pt in &pts {
        radii_ok &= (3.0..=10.0).contains(&pt.x[1]);
        let cd = curvature_data(&cfg, &pt.x, &DiffConfig::analytic()).map_err(err)?;
        oracle = oracle.max(max_diff4(&cd.riemann, &schwarzschild_riemann(1.0, pt.x[1])));
    }
    let mut out = Outcome::below(field_equation_max(&fd), 1e-6, "finite differences")
        .and(Outcome::below(field_equation_max(&an), 1e-9, "analytic partials"))
        .and(Outcome::below(oracle, 1e-9, "closed-form curvature"));
    out.passed &= radii_ok;
    Ok(out)
}

fn sphere() -> Result<Outcome, String> {
    let cfg = Sphere4::new(1.0);
    let t = AlgebraTables::canonical(cfg.signature());
    let zero = PolynomialMomentum::zero();
    let pts = sample_points(&cfg, 10, 6, 0.5).map_err(err)?;
    let (mut ricci, mut density): (f64, f64) = (0.0, 0.0);
    for pt in &pts {
        let cd = curvature_data(&cfg, &pt.x, &DiffConfig::analytic()).map_err(err)?;
        ricci = ricci.max((cd.ricci - fbg_algebra::Mat4::identity() * 3.0).amax());
        density = density.max((theta_density(&t, &cfg, &zero, pt, &DiffConfig::analytic()).map_err(err)? - 12.0).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = pts[0].x;
    let l0 = theta_density(&t, &cfg, &zero, &ChartPoint::new(x, [0.0; G_DIM]), &DiffConfig::analytic()).map_err(err)?;
    let mut spread: f64 = 0.0;
    for _ in 0..20 {
        let y = std::array::from_fn(|_| rng.random_range(-0.5..0.5));
        let l = theta_density(&t, &cfg, &zero, &ChartPoint::new(x, y), &DiffConfig::analytic()).map_err(err)?;
        spread = spread.max((l - l0).abs());
    }
    Ok(Outcome::below(ricci, 1e-8, "Ric = 3 delta")
        .and(Outcome::below(density, 1e-8, "lambda = 12"))
        .and(Outcome::below(spread, 1e-8, "20 fiber points")))
}

fn horizontality() -> Result<Outcome, String> {
    let fd = DiffConfig::finite_difference();
    let cfgs: Vec<Box<dyn FieldConfig>> = vec![
        Box::new(Flat::new(SignatureKind::Lorentzian)),
        Box::new(Schwarzschild::new(1.0)),
        Box::new(Perturbed::new(SignatureKind::Euclidean, 3, 0.05)),
    ];
    let mut lifted: f64 = 0.0;
    for (k, cfg) in cfgs.iter().enumerate() {
        let t = AlgebraTables::canonical(cfg.signature());
        let field = LiftedCoframe::new(&t, cfg.as_ref());
        for pt in sample_points(cfg.as_ref(), 10, 8 + k as u64, 0.3).map_err(err)? {
            let d = check_fibration_hypotheses(&t, &field, &pt.z(), &fd).map_err(err)?;
            let h = d.horizontal_residual_alpha.zip(d.horizontal_residual_omega).map(|(a, o)| a.max(o));
            lifted = lifted.max(h.unwrap_or(f64::NAN));
        }
    }
    let cfg = Schwarzschild::new(1.0);
    let t = AlgebraTables::canonical(cfg.signature());
    let inner = LiftedCoframe::new(&t, &cfg);
    let bad = CorruptedCoframe::new(&t, &inner, 0.1);
    let mut detected = f64::INFINITY;
    for mut pt in sample_points(&cfg, 10, 9, 0.3).map_err(err)? {
        // the corruption is proportional to x^0
        pt.x[0] = if pt.x[0] >= 0.0 { 0.5 + 0.5 * pt.x[0] } else { -0.5 + 0.5 * pt.x[0] };
        let d = check_fibration_hypotheses(&t, &bad, &pt.z(), &fd).map_err(err)?;
        detected = detected.min(d.horizontal_residual_omega.unwrap_or(f64::NAN));
    }
    let mut out = Outcome::below(lifted, 1e-7, format!("lifted; corrupted minimum {detected:.3e}"));
    out.passed &= detected > 1e-3;
    Ok(out)
}

fn covariant_derivative_formulas() -> Result<Outcome, String> {
    let an = DiffConfig::analytic();
    let fd = DiffConfig::finite_difference();
    let cfgs: Vec<Box<dyn FieldConfig>> = vec![
        Box::new(Flat::new(SignatureKind::Lorentzian)),
        Box::new(Flat::new(SignatureKind::Euclidean)),
        Box::new(Schwarzschild::new(1.0)),
    ];
    let mut worst: f64 = 0.0;
    for n in 0..50u64 {
        let cfg = cfgs[(n % 3) as usize].as_ref();
        let t = AlgebraTables::canonical(cfg.signature());
        let mom = PolynomialMomentum::random(100 + n, 0.5, 2);
        let pt = sample_points(cfg, 1, 200 + n, 0.3).map_err(err)?[0];
        let ctx = point_context(&t, cfg, &pt, &an).map_err(err)?;
        let d = momentum_derivatives(&ctx, &mom, &an).map_err(err)?;
        let closed = nabla_hp_closed(&t, &ctx, &d);
        let direct = nabla_hp_fd(&t, cfg, &mom, &pt, &fd).map_err(err)?;
        worst = worst.max(closed.max_diff(&direct));
    }
    Ok(Outcome::below(worst, 1e-6, "50 momentum fields over flat and Schwarzschild"))
}

fn gauge_suite() -> Result<Outcome, String> {
    let mut out: Option<Outcome> = None;
    for scenario in ["perturbed:signature=lorentzian,seed=3", "perturbed:signature=euclidean,seed=4", "schwarzschild:M=1"] {
        let cfg = config(&format!("scenario = {scenario}\npoints = 5\ngauge.maps = 20\nmomentum.profile = random\nseed = 11"))?;
        let r = run_gauge_check(&cfg).map_err(err)?;
        let fam = |n: &str| r.family(n).map_or(f64::NAN, |f| f.max_abs);
        let heads = fam("gauge_p_heads").max(fam("gauge_varpi_heads"));
        let o = Outcome::below(heads, 1e-10, format!("{scenario} heads"))
            .and(Outcome::below(fam("gauge_density"), 1e-7, "density"))
            .and(Outcome::below(fam("shift_identity").max(fam("shift_exact")), 1e-6, "shift"));
        let mut o = o;
        o.passed &= r.passed();
        out = Some(match out {
            None => o,
            Some(p) => p.and(o),
        });
    }
    Ok(out.unwrap())
}

fn random_block(rng: &mut ChaCha8Rng) -> HeadBlock {
    let mut b = [[[0.0; T_DIM]; T_DIM]; P_DIM];
    for blk in b.iter_mut() {
        for c in 0..T_DIM {
            for d in (c + 1)..T_DIM {
                let v = rng.random_range(-1.0..1.0);
                blk[c][d] = v;
                blk[d][c] = -v;
            }
        }
    }
    b
}

/// `W` is affine in `A`, so a unit central difference is exact up to rounding.
fn brute_gradient(t: &AlgebraTables, h: f64, a: &HeadBlock, psi: &HeadBlock) -> HeadBlock {
    let mut g = [[[0.0; T_DIM]; T_DIM]; P_DIM];
    for k in 0..P_DIM {
        for b in 0..T_DIM {
            for c in (b + 1)..T_DIM {
                let (mut plus, mut minus) = (*a, *a);
                plus[k][b][c] += 1.0;
                plus[k][c][b] -= 1.0;
                minus[k][b][c] -= 1.0;
                minus[k][c][b] += 1.0;
                g[k][b][c] = 0.5 * (legendre_w(t, h, &plus, psi) - legendre_w(t, h, &minus, psi));
            }
        }
    }
    g
}

fn legendre() -> Result<Outcome, String> {
    let mut exact = true;
    let mut worst: f64 = 0.0;
    for sig in [Signature::euclidean(), Signature::lorentzian()] {
        let t = AlgebraTables::canonical(sig);
        let heads = constraint_heads(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let a = random_block(&mut rng);
            let h = rng.random_range(-1.0..1.0);
            exact &= legendre_w(&t, h, &a, &heads) == h;
            exact &= stationarity_residual(&t, &heads) == 0.0;
            for psi in [heads, random_block(&mut rng)] {
                let closed = legendre_gradient(&t, &psi);
                let brute = brute_gradient(&t, h, &a, &psi);
                for k in 0..P_DIM {
                    for b in 0..T_DIM {
                        for c in (b + 1)..T_DIM {
                            worst = worst.max((closed[k][b][c] - brute[k][b][c]).abs());
                        }
                    }
                }
            }
        }
    }
    let mut out = Outcome::below(worst, 1e-13, format!("W = h at the heads: {exact}"));
    out.passed &= exact;
    Ok(out)
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("algebra identity suite", algebra_identities),
        ("Maurer-Cartan structure equations", maurer_cartan_structure),
        ("coadjoint derivative lemma and corollary", coadjoint_derivative_lemma),
        ("flat vacuum", flat_vacuum),
        ("Schwarzschild vacuum", schwarzschild_vacuum),
        ("round 4-sphere", sphere),
        ("horizontality", horizontality),
        ("closed covariant derivative formulas", covariant_derivative_formulas),
        ("gauge suite", gauge_suite),
        ("Legendre map", legendre),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, line) = match check() {
            Ok(o) => (o.passed, format!("max {:.3e} ({})", o.measure, o.detail)),
            Err(e) => (false, format!("error: {e}")),
        };
        if !status {
            failures += 1;
        }
        println!(
            "{} {:>2}. {name}: {line} [{:.1}s]",
            if status { "PASS" } else { "FAIL" },
            n + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
