mod common;

use common::*;
use fbg_algebra::{SignatureKind, G_DIM};
use fbg_bundle::*;
use fbg_geometry::{curvature_data, field_jet, FieldConfig, Flat, Perturbed, Schwarzschild, Sphere4};

fn perturbed() -> Vec<Perturbed> {
    vec![Perturbed::new(SignatureKind::Euclidean, 11, 0.05), Perturbed::new(SignatureKind::Lorentzian, 12, 0.05)]
}

#[test]
fn identity_gauge_changes_nothing() {
    for cfg in perturbed() {
        let t = tables_for(&cfg);
        let id = PolynomialGauge::identity(&t);
        let mom = PolynomialMomentum::random(3, 0.3, 2);
        let (gcfg, gmom) = gauge_transform(&t, &cfg, &mom, &id);
        for pt in points(&cfg, 5, 1) {
            assert!((gcfg.vierbein(&pt.x) - cfg.vierbein(&pt.x)).amax() < 1e-15);
            for mu in 0..4 {
                assert!((gcfg.connection(&pt.x)[mu] - cfg.connection(&pt.x)[mu]).amax() < 1e-15);
            }
            let (p, head) = gmom.transform(&pt.z()).unwrap();
            assert!(head < 1e-12);
            let orig = mom.components(&pt.z());
            let diff = p.flatten().iter().zip(orig.flatten()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(diff < 1e-12, "{diff}");
            let c = gauge_compare(&t, &cfg, &mom, &id, &pt, &analytic()).unwrap();
            assert!((c.density_after - c.density_before).abs() < 1e-12);
        }
    }
}

#[test]
fn gauged_partials_match_finite_differences() {
    for cfg in perturbed() {
        let t = tables_for(&cfg);
        let f = PolynomialGauge::random(&t, 21, 0.3);
        let gcfg = GaugedConfig::new(&cfg, &f);
        for pt in points(&cfg, 5, 2) {
            let a = field_jet(&gcfg, &pt.x, &analytic()).unwrap();
            let n = field_jet(&gcfg, &pt.x, &fd()).unwrap();
            for nu in 0..4 {
                assert!((a.de[nu] - n.de[nu]).amax() < 1e-8);
                for mu in 0..4 {
                    assert!((a.da[nu][mu] - n.da[nu][mu]).amax() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn constant_gauge_conjugates_curvature() {
    let sch = Schwarzschild::new(1.0);
    let sph = Sphere4::new(1.0);
    let pert = Perturbed::new(SignatureKind::Lorentzian, 7, 0.05);
    let cfgs: [&dyn FieldConfig; 3] = [&sch, &sph, &pert];
    for cfg in cfgs {
        let t = tables_for(cfg);
        let phi0: [f64; G_DIM] = [0.3, -0.2, 0.5, 0.1, -0.4, 0.25];
        let gauge = PolynomialGauge::constant(&t, &phi0);
        let f = gauge.value(&[0.0; 4]);
        let fi = f.try_inverse().unwrap();
        let gcfg = GaugedConfig::new(cfg, &gauge);
        for pt in points(cfg, 5, 3) {
            let c = curvature_data(cfg, &pt.x, &analytic()).unwrap();
            let gc = curvature_data(&gcfg, &pt.x, &analytic()).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    for cc in 0..4 {
                        for d in 0..4 {
                            let mut want = 0.0;
                            let mut want_t = 0.0;
                            for a2 in 0..4 {
                                for c2 in 0..4 {
                                    for d2 in 0..4 {
                                        let w = fi[(a, a2)] * f[(c2, cc)] * f[(d2, d)];
                                        if b == 0 {
                                            want_t += w * c.torsion[a2][c2][d2];
                                        }
                                        for b2 in 0..4 {
                                            want += w * f[(b2, b)] * c.riemann[a2][b2][c2][d2];
                                        }
                                    }
                                }
                            }
                            assert!((gc.riemann[a][b][cc][d] - want).abs() < 1e-9);
                            if b == 0 {
                                assert!((gc.torsion[a][cc][d] - want_t).abs() < 1e-9);
                            }
                        }
                    }
                }
            }
            assert!((gc.scalar - c.scalar).abs() < 1e-9);
        }
    }
}

#[test]
fn random_gauges_preserve_density_and_heads() {
    for cfg in perturbed() {
        let t = tables_for(&cfg);
        let mom = PolynomialMomentum::random(8, 0.4, 2);
        let pts = points(&cfg, 20, 4);
        for (k, pt) in pts.iter().enumerate() {
            let f = PolynomialGauge::random(&t, 100 + k as u64, 0.3);
            let c = gauge_compare(&t, &cfg, &mom, &f, pt, &analytic()).unwrap();
            assert!((c.density_after - c.density_before).abs() < 1e-7, "{c:?}");
            assert!(c.p_head_residual < 1e-10, "{c:?}");
            assert!(c.varpi_head_residual < 1e-10, "{c:?}");
            assert!(c.covariance_residual < 1e-10, "{c:?}");
            let fd_c = gauge_compare(&t, &cfg, &mom, &f, pt, &fd()).unwrap();
            assert!((fd_c.density_after - c.density_before).abs() < 1e-7);
        }
    }
}

#[test]
fn gauged_vacuum_stays_a_vacuum() {
    let cfg = Schwarzschild::new(1.0);
    let t = tables_for(&cfg);
    // r reaches 10 here, so keep phi(x) well inside the dexp series range
    let f = PolynomialGauge::random(&t, 5, 0.01);
    let gcfg = GaugedConfig::new(&cfg, &f);
    for pt in points(&cfg, 5, 6) {
        let r = hvdw_residuals(&t, &gcfg, &PolynomialMomentum::zero(), &pt, &analytic()).unwrap();
        assert!(r.max_abs() < 1e-9, "{:?}", r.families.iter().map(|f| (f.name, f.max_abs)).collect::<Vec<_>>());
    }
    let flat = Flat::new(SignatureKind::Euclidean);
    let gflat = GaugedConfig::new(&flat, &f);
    let pt = points(&flat, 1, 7)[0];
    let c = curvature_data(&gflat, &pt.x, &analytic()).unwrap();
    assert!(c.riemann.iter().flatten().flatten().flatten().all(|v| v.abs() < 1e-12));
}

#[test]
fn centered_gauges_work_far_from_the_origin() {
    let cfg = Schwarzschild::new(1.0);
    let t = tables_for(&cfg);
    let mom = PolynomialMomentum::random(4, 0.2, 1);
    for (k, pt) in points(&cfg, 10, 8).iter().enumerate() {
        let f = PolynomialGauge::random(&t, 200 + k as u64, 0.3).with_center(pt.x);
        let c = gauge_compare(&t, &cfg, &mom, &f, pt, &analytic()).unwrap();
        assert!((c.density_after - c.density_before).abs() < 1e-7, "{c:?}");
        assert!(c.varpi_head_residual < 1e-10 && c.covariance_residual < 1e-10, "{c:?}");
        let g = GaugedConfig::new(&cfg, &f);
        let a = field_jet(&g, &pt.x, &analytic()).unwrap();
        let n = field_jet(&g, &pt.x, &fd()).unwrap();
        for nu in 0..4 {
            assert!((a.de[nu] - n.de[nu]).amax() < 1e-7);
        }
    }
}
