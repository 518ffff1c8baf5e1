use fbg_algebra::{Mat4, Signature, SignatureKind};
use fbg_forms::{exterior_derivative, DiffConfig, FnForm, FormError, FormValue, DIM};
use fbg_geometry::oracles::{schwarzschild_riemann, sphere_riemann, sphere_scalar};
use fbg_geometry::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn max_diff4(a: &Tensor4, b: &Tensor4) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    m = m.max((a[i][j][k][l] - b[i][j][k][l]).abs());
                }
            }
        }
    }
    m
}

fn points(cfg: &dyn FieldConfig, n: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| cfg.sample(&std::array::from_fn(|_| rng.random::<f64>()))).collect()
}

#[test]
fn schwarzschild_matches_closed_form_curvature() {
    for mass in [0.5, 1.0, 2.0] {
        let cfg = Schwarzschild::new(mass);
        for x in points(&cfg, 25, 1) {
            let exact = schwarzschild_riemann(mass, x[1]);
            let an = curvature_data(&cfg, &x, &DiffConfig::analytic()).unwrap();
            assert!(max_diff4(&an.riemann, &exact) < 1e-12, "analytic at {x:?}");
            assert!(an.max_torsion() < 1e-12);
            assert!(an.ricci.amax() < 1e-12);
            let fd = curvature_data(&cfg, &x, &DiffConfig::finite_difference()).unwrap();
            assert!(max_diff4(&fd.riemann, &exact) < 1e-9, "fd at {x:?}");
            assert!(fd.max_torsion() < 1e-9);
        }
    }
}

#[test]
fn sphere_has_constant_curvature() {
    for radius in [0.7, 1.0, 3.0] {
        let cfg = Sphere4::new(radius);
        for x in points(&cfg, 25, 2) {
            for diff in [DiffConfig::analytic(), DiffConfig::finite_difference()] {
                let cd = curvature_data(&cfg, &x, &diff).unwrap();
                assert!(max_diff4(&cd.riemann, &sphere_riemann(radius)) < 1e-9);
                assert!(cd.max_torsion() < 1e-9);
                let k = 1.0 / (radius * radius);
                assert!((cd.ricci - Mat4::identity() * (3.0 * k)).amax() < 1e-9);
                assert!((cd.scalar - sphere_scalar(radius)).abs() < 1e-8);
                assert!((cd.einstein + Mat4::identity() * (3.0 * k)).amax() < 1e-8);
            }
        }
    }
}

#[test]
fn flat_configuration_is_flat() {
    for kind in [SignatureKind::Euclidean, SignatureKind::Lorentzian] {
        let cfg = Flat::new(kind);
        let x = [0.1, -0.2, 0.3, 0.4];
        let cd = curvature_data(&cfg, &x, &DiffConfig::finite_difference()).unwrap();
        assert_eq!(cd.max_torsion(), 0.0);
        assert_eq!(cd.scalar, 0.0);
        let (g, y) = christoffel_y(&cfg, &x, &DiffConfig::analytic()).unwrap();
        assert!(g.iter().flatten().flatten().all(|v| *v == 0.0));
        assert_eq!(y, [0.0; 4]);
    }
}

#[test]
fn analytic_partials_agree_with_finite_differences() {
    let cfgs: Vec<Box<dyn FieldConfig>> = vec![
        Box::new(Schwarzschild::new(1.0)),
        Box::new(Sphere4::new(1.3)),
        Box::new(Perturbed::new(SignatureKind::Lorentzian, 7, 0.2)),
        Box::new(Perturbed::new(SignatureKind::Euclidean, 8, 0.2)),
    ];
    for cfg in &cfgs {
        for x in points(cfg.as_ref(), 10, 3) {
            let an = field_jet(cfg.as_ref(), &x, &DiffConfig::analytic()).unwrap();
            let fd = field_jet(cfg.as_ref(), &x, &DiffConfig::finite_difference()).unwrap();
            for nu in 0..4 {
                assert!((an.de[nu] - fd.de[nu]).amax() < 1e-9, "{} de", cfg.name());
                for mu in 0..4 {
                    assert!((an.da[nu][mu] - fd.da[nu][mu]).amax() < 1e-9, "{} dA", cfg.name());
                }
            }
        }
    }
}

#[test]
fn connections_are_metric() {
    let cfgs: Vec<Box<dyn FieldConfig>> = vec![
        Box::new(Schwarzschild::new(1.0)),
        Box::new(Sphere4::new(1.3)),
        Box::new(Perturbed::new(SignatureKind::Lorentzian, 7, 0.2)),
    ];
    for cfg in &cfgs {
        for x in points(cfg.as_ref(), 10, 4) {
            assert!(connection_antisymmetry_residual(cfg.as_ref(), &x) < 1e-14);
            let cd = curvature_data(cfg.as_ref(), &x, &DiffConfig::analytic()).unwrap();
            assert!(cd.antisymmetry_residual(&cfg.signature()) < 1e-12);
        }
    }
}

#[test]
fn first_bianchi_identity_without_torsion() {
    for x in points(&Schwarzschild::new(1.0), 10, 5) {
        let cd = curvature_data(&Schwarzschild::new(1.0), &x, &DiffConfig::analytic()).unwrap();
        assert!(cd.bianchi_residual() < 1e-12);
    }
    let cd = curvature_data(&Perturbed::new(SignatureKind::Euclidean, 1, 0.3), &[0.1; 4], &DiffConfig::analytic()).unwrap();
    assert!(cd.max_torsion() > 1e-3, "generic configuration carries torsion");
}

#[test]
fn trace_identities() {
    let cfg = Perturbed::new(SignatureKind::Lorentzian, 11, 0.3);
    let cd = curvature_data(&cfg, &[0.2, -0.1, 0.4, 0.3], &DiffConfig::analytic()).unwrap();
    assert!((cd.ricci.trace() - cd.scalar).abs() < 1e-14);
    assert!((cd.einstein.trace() + cd.scalar).abs() < 1e-13);
}

#[test]
fn solver_recovers_the_torsion_free_connection() {
    let cfgs: Vec<Box<dyn FieldConfig>> = vec![Box::new(Schwarzschild::new(1.5)), Box::new(Sphere4::new(2.0))];
    for cfg in &cfgs {
        for x in points(cfg.as_ref(), 10, 6) {
            let solved = levi_civita_connection(cfg.as_ref(), &x, &DiffConfig::analytic()).unwrap();
            let given = cfg.connection(&x);
            for mu in 0..4 {
                assert!((solved[mu] - given[mu]).amax() < 1e-11, "{}", cfg.name());
            }
        }
    }
    // Generic frame: the solved connection is metric and torsion-free.
    for kind in [SignatureKind::Euclidean, SignatureKind::Lorentzian] {
        let cfg = Perturbed::new(kind, 5, 0.25);
        let x = [0.3, 0.1, -0.2, 0.5];
        let jet = field_jet(&cfg, &x, &DiffConfig::analytic()).unwrap();
        let sig = Signature::new(kind);
        let a = solve_torsion_free(&sig, &jet.e, &jet.e_inv, &jet.de).unwrap();
        let mut solved = jet.clone();
        solved.a = a;
        let (t, _) = torsion_curvature_from_jet(&solved);
        assert!(t.iter().flatten().flatten().all(|v| v.abs() < 1e-12));
        for am in &a {
            let up = am * sig.h_inv();
            assert!((up + up.transpose()).amax() < 1e-12);
        }
    }
}

/// `e^(3)_c = iota_{E_c} (e^0 ^ e^1 ^ e^2 ^ e^3)` as a field on the 10-dimensional chart.
fn e3_field(cfg: &dyn FieldConfig, c: usize, z: &[f64; DIM]) -> Result<FormValue, FormError> {
    let x = [z[0], z[1], z[2], z[3]];
    let e = cfg.vierbein(&x);
    let inv = e.try_inverse().unwrap();
    let mut e4 = FormValue::scalar(1.0);
    for a in 0..4 {
        let mut row = [0.0; DIM];
        for mu in 0..4 {
            row[mu] = e[(a, mu)];
        }
        e4 = e4.wedge(&FormValue::one_form(&row))?;
    }
    let mut v = [0.0; DIM];
    for mu in 0..4 {
        v[mu] = inv[(mu, c)];
    }
    e4.contract(&v)
}

#[test]
fn divergence_weight_matches_exterior_derivative() {
    let cfgs: Vec<Box<dyn FieldConfig>> = vec![
        Box::new(Sphere4::new(1.2)),
        Box::new(Schwarzschild::new(1.0)),
        Box::new(Perturbed::new(SignatureKind::Lorentzian, 3, 0.2)),
        Box::new(Perturbed::new(SignatureKind::Euclidean, 4, 0.2)),
    ];
    for cfg in &cfgs {
        for x in points(cfg.as_ref(), 5, 7) {
            let (_, y) = christoffel_y(cfg.as_ref(), &x, &DiffConfig::analytic()).unwrap();
            let mut z = [0.0; DIM];
            z[..4].copy_from_slice(&x);
            let det = cfg.vierbein(&x).determinant();
            for c in 0..4 {
                let field = FnForm { degree: 3, f: |p: &[f64; DIM]| e3_field(cfg.as_ref(), c, p) };
                let d = exterior_derivative(&field, &z, &DiffConfig::finite_difference()).unwrap();
                let got = d.component(&[0, 1, 2, 3]) / det;
                assert!((got - y[c]).abs() < 1e-6, "{} c={c}: {got} vs {}", cfg.name(), y[c]);
            }
        }
    }
}

struct NoPartials;

impl FieldConfig for NoPartials {
    fn name(&self) -> String {
        "no-partials".into()
    }
    fn signature(&self) -> Signature {
        Signature::euclidean()
    }
    fn vierbein(&self, x: &[f64; 4]) -> Mat4 {
        Mat4::identity() * (1.0 + x[0] * x[0])
    }
    fn connection(&self, _x: &[f64; 4]) -> [Mat4; 4] {
        [Mat4::zeros(); 4]
    }
}

struct Degenerate;

impl FieldConfig for Degenerate {
    fn name(&self) -> String {
        "degenerate".into()
    }
    fn signature(&self) -> Signature {
        Signature::euclidean()
    }
    fn vierbein(&self, _x: &[f64; 4]) -> Mat4 {
        let mut m = Mat4::identity();
        m[(3, 3)] = 0.0;
        m
    }
    fn connection(&self, _x: &[f64; 4]) -> [Mat4; 4] {
        [Mat4::zeros(); 4]
    }
}

#[test]
fn error_paths() {
    let x = [0.0; 4];
    assert!(matches!(
        curvature_data(&NoPartials, &x, &DiffConfig::analytic()),
        Err(GeometryError::Form(FormError::MissingPartials))
    ));
    assert!(curvature_data(&NoPartials, &x, &DiffConfig::finite_difference()).is_ok());
    assert!(matches!(
        curvature_data(&Degenerate, &x, &DiffConfig::finite_difference()),
        Err(GeometryError::SingularVierbein { .. })
    ));
    let s = Schwarzschild::new(1.0);
    assert!(matches!(
        curvature_data(&s, &[0.0, 1.5, 1.0, 0.0], &DiffConfig::analytic()),
        Err(GeometryError::OutOfDomain(_))
    ));
    assert!(!s.in_domain(&[0.0, 3.0, 0.0, 0.0]));
    let mut bad = DiffConfig::finite_difference();
    bad.step = 0.0;
    assert!(matches!(
        curvature_data(&s, &[0.0, 3.0, 1.0, 0.0], &bad),
        Err(GeometryError::Form(FormError::InvalidStep(_)))
    ));
}
