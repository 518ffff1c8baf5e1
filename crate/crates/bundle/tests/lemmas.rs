mod common;

use common::*;
use fbg_algebra::SignatureKind;
use fbg_bundle::*;
use fbg_forms::ChartPoint;
use fbg_geometry::{FieldConfig, Flat, Perturbed, Schwarzschild};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_point(rng: &mut ChaCha8Rng) -> [f64; 10] {
    std::array::from_fn(|_| rng.random_range(-0.3..0.3))
}

#[test]
fn coadjoint_derivative_identity_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for draw in 0..50u64 {
        let kind = if draw % 2 == 0 { SignatureKind::Euclidean } else { SignatureKind::Lorentzian };
        let t = tables(kind);
        let g = PolynomialGroupField::random(&t, 1000 + draw, 0.4);
        let degree = [8, 1, 3][draw as usize % 3];
        let varpi = PolynomialFormField::random(2000 + draw, degree, 0.5, 2);
        let z = small_point(&mut rng);
        let r = coadjoint_derivative_residual(&t, &g, &varpi, &z, &fd()).unwrap();
        assert!(r < 1e-6, "draw {draw}: {r}");
    }
}

#[test]
fn covariant_derivatives_transfer_between_descriptions() {
    let pert_e = Perturbed::new(SignatureKind::Euclidean, 3, 0.05);
    let pert_l = Perturbed::new(SignatureKind::Lorentzian, 4, 0.05);
    let sch = Schwarzschild::new(1.0);
    let cfgs: [&dyn FieldConfig; 3] = [&pert_e, &pert_l, &sch];
    for (k, cfg) in cfgs.into_iter().enumerate() {
        let t = tables_for(cfg);
        for (n, pt) in points(cfg, 4, 10 + k as u64).iter().enumerate() {
            let varpi = PolynomialFormField::random(300 + n as u64, 8, 0.5, 2);
            let r = covariant_transfer_residual(&t, cfg, &varpi, pt, &fd()).unwrap();
            assert!(r < 1e-6, "{} {r}", cfg.name());
        }
    }
}

#[test]
fn shift_identity_needs_the_half() {
    let cfg = Perturbed::new(SignatureKind::Lorentzian, 5, 0.05);
    let t = tables_for(&cfg);
    for (n, pt) in points(&cfg, 4, 20).iter().enumerate() {
        let psi = PolynomialFormField::random(400 + n as u64, 8, 0.5, 2);
        let f = |q: &[f64; 10]| Ok(psi.value(q));
        let s = shift_identity(&t, &cfg, &f, pt, &fd()).unwrap();
        assert!((s.lhs - s.rhs_half).abs() < 1e-6 * s.lhs.abs().max(1.0), "{s:?}");
        // with the full coadjoint term the two sides differ by half the bracket pairing
        assert!((s.rhs_full - s.lhs - 0.5 * s.bracket).abs() < 1e-6 * s.bracket.abs().max(1.0), "{s:?}");
        assert!(s.bracket.abs() > 1e-3, "{s:?}");
    }
}

#[test]
fn vanishing_shift_changes_nothing() {
    let cfg = Perturbed::new(SignatureKind::Euclidean, 6, 0.05);
    let t = tables_for(&cfg);
    let mom = PolynomialMomentum::random(9, 0.3, 2);
    let zero = ShiftPotential::zero();
    assert!(zero.is_zero());
    for pt in points(&cfg, 3, 30) {
        let c = momentum_shift_check(&t, &cfg, &mom, &zero, &pt, &fd()).unwrap();
        assert_eq!(c.density_before, c.density_after);
        assert_eq!(c.exact_term, 0.0);
    }
}

#[test]
fn constant_shift_on_flat_space_is_invisible() {
    for kind in [SignatureKind::Euclidean, SignatureKind::Lorentzian] {
        let cfg = Flat::new(kind);
        let t = tables_for(&cfg);
        let mom = PolynomialMomentum::random(9, 0.3, 2);
        let shift = ShiftPotential::constant_coefficients(4, 0.5);
        for pt in points(&cfg, 3, 31) {
            let c = momentum_shift_check(&t, &cfg, &mom, &shift, &pt, &fd()).unwrap();
            assert!(c.density_shift().abs() < 1e-12, "{c:?}");
            assert!(c.exact_term.abs() < 1e-8, "{c:?}");
            assert!(c.preconditions_max() < 1e-8, "{c:?}");
        }
    }
}

#[test]
fn translational_shift_leaves_density_and_exact_term_at_zero() {
    let pert = Perturbed::new(SignatureKind::Lorentzian, 7, 0.05);
    let pert_e = Perturbed::new(SignatureKind::Euclidean, 8, 0.05);
    let cfgs: [&dyn FieldConfig; 2] = [&pert, &pert_e];
    for cfg in cfgs {
        let t = tables_for(cfg);
        let mom = PolynomialMomentum::random(10, 0.3, 2);
        for (n, pt) in points(cfg, 5, 32).iter().enumerate() {
            let shift = ShiftPotential::translational(500 + n as u64, 0.5, 2);
            let c = momentum_shift_check(&t, cfg, &mom, &shift, pt, &fd()).unwrap();
            assert!(c.preconditions_max() < 1e-8, "{c:?}");
            assert!(c.bracket_term.abs() < 1e-12, "{c:?}");
            assert!(c.exact_only_residual() < 1e-6, "{c:?}");
            assert!(c.direct_term.abs() < 1e-12, "{c:?}");
        }
    }
}

#[test]
fn rotational_shift_keeps_density_but_not_the_exact_term() {
    let pert = Perturbed::new(SignatureKind::Lorentzian, 7, 0.05);
    let sch = Schwarzschild::new(1.0);
    let cfgs: [&dyn FieldConfig; 2] = [&pert, &sch];
    for cfg in cfgs {
        let t = tables_for(cfg);
        let mom = PolynomialMomentum::random(11, 0.3, 2);
        for (n, pt) in points(cfg, 5, 33).iter().enumerate() {
            let shift = ShiftPotential::random(600 + n as u64, 0.5, 2);
            let c = momentum_shift_check(&t, cfg, &mom, &shift, pt, &fd()).unwrap();
            assert!(c.preconditions_max() < 1e-8, "{c:?}");
            assert!(c.density_shift().abs() < 1e-10, "{c:?}");
            assert!(c.identity_residual() < 1e-6, "{c:?}");
            // d(chi ^ eta) picks up half the bracket pairing
            assert!(c.exact_term.abs() > 1e-3, "{c:?}");
        }
    }
}

#[test]
fn lifted_curvature_matches_structure_decomposition() {
    let cfg = Perturbed::new(SignatureKind::Lorentzian, 9, 0.05);
    let t = tables_for(&cfg);
    let pt = ChartPoint::new([0.1, -0.2, 0.3, 0.05], [0.1, 0.0, -0.1, 0.05, 0.02, -0.03]);
    let ctx = point_context(&t, &cfg, &pt, &analytic()).unwrap();
    let omega = lifted_curvature_forms(&t, &cfg, &pt.z(), &fd()).unwrap();
    for (a, f) in omega.iter().enumerate() {
        let k = ctx.lift.coframe.coeffs2(f).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                assert!((k[i][j] - ctx.structure.q[a][i][j]).abs() < 1e-7);
            }
        }
    }
}
