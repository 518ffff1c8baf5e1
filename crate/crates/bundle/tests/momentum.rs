mod common;

use common::*;
use fbg_algebra::SignatureKind;
use fbg_bundle::*;
use fbg_forms::notation::{e2, e3, e4, gamma4, gamma5, gamma6};
use fbg_forms::FormValue;
use fbg_geometry::{FieldConfig, Perturbed, Schwarzschild};

/// `1/2 F^{cd} e2_{cd} ^ gamma6 - F^{ck} e3_c ^ gamma5_k + 1/2 F^{jk} e4 ^ gamma4_{jk}` on the
/// abstract basis.
fn literal(f: &[[f64; 10]; 10]) -> FormValue {
    let mut out = FormValue::zero(8);
    let g6 = gamma6();
    for c in 0..4 {
        for d in 0..4 {
            if c != d {
                out.axpy(0.5 * f[c][d], &e2(c, d).wedge(&g6).unwrap());
            }
        }
        for k in 0..6 {
            out.axpy(-f[c][4 + k], &e3(c).wedge(&gamma5(k)).unwrap());
        }
    }
    for j in 0..6 {
        for k in 0..6 {
            if j != k {
                out.axpy(0.5 * f[4 + j][4 + k], &e4().wedge(&gamma4(j, k)).unwrap());
            }
        }
    }
    out
}

fn cases() -> Vec<(Box<dyn FieldConfig>, PolynomialMomentum)> {
    vec![
        (Box::new(Perturbed::new(SignatureKind::Lorentzian, 1, 0.2)), PolynomialMomentum::random(10, 0.5, 2)),
        (Box::new(Perturbed::new(SignatureKind::Euclidean, 2, 0.2)), PolynomialMomentum::random(11, 0.5, 2)),
        (Box::new(Schwarzschild::new(1.0)), PolynomialMomentum::random(12, 0.5, 1)),
    ]
}

fn max_diff(a: &[[f64; 10]; 10], b: &[[f64; 10]; 10]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

#[test]
fn coefficient_matrices_match_the_written_decomposition() {
    for (cfg, mom) in cases() {
        let t = tables_for(cfg.as_ref());
        for pt in points(cfg.as_ref(), 2, 3) {
            let l = lift(&t, cfg.as_ref(), &pt).unwrap();
            let p = mom.components(&pt.z());
            for a in 0..10 {
                let f = p.frame_matrix(&t, a);
                let from_literal = l.eg_coframe.from_coframe_basis(&literal(&f)).unwrap();
                let dense = l.eg_coframe.eight_form(&f).unwrap();
                assert!(from_literal.sub(&dense).max_abs() < 1e-11);
                let back = l.eg_coframe.coeffs8(&dense).unwrap();
                assert!(max_diff(&back, &f) < 1e-10);
            }
        }
    }
}

#[test]
fn varpi_is_the_coadjoint_image_of_p_as_forms() {
    for (cfg, mom) in cases() {
        let t = tables_for(cfg.as_ref());
        for pt in points(cfg.as_ref(), 2, 5) {
            let l = lift(&t, cfg.as_ref(), &pt).unwrap();
            let p = mom.components(&pt.z());
            let n = t.coadjoint_group_matrix(&l.g).unwrap();
            let forms: Vec<FormValue> =
                (0..10).map(|b| l.eg_coframe.eight_form(&p.frame_matrix(&t, b)).unwrap()).collect();
            let v = varpi_from_momentum(&t, &l, &p).unwrap();
            for a in 0..10 {
                let mut w = FormValue::zero(8);
                for b in 0..10 {
                    w.axpy(n[(a, b)], &forms[b]);
                }
                let coeffs = l.coframe.coeffs8(&w).unwrap();
                assert!(max_diff(&coeffs, &v.w[a]) < 1e-10, "{}", max_diff(&coeffs, &v.w[a]));
                // and the coefficients rebuild the same form on (alpha, omega)
                let lit = l.coframe.from_coframe_basis(&literal(&v.w[a])).unwrap();
                assert!(lit.sub(&w).max_abs() < 1e-10);
            }
        }
    }
}

#[test]
fn identification_formulas_agree_with_the_coadjoint_image() {
    for (cfg, mom) in cases() {
        let t = tables_for(cfg.as_ref());
        for pt in points(cfg.as_ref(), 10, 7) {
            let l = lift(&t, cfg.as_ref(), &pt).unwrap();
            let p = mom.components(&pt.z());
            let v = varpi_from_momentum(&t, &l, &p).unwrap();
            let w = varpi_identification(&t, &l, &p).unwrap();
            for a in 0..10 {
                assert!(max_diff(&v.w[a], &w.w[a]) < 1e-11, "{a}: {}", max_diff(&v.w[a], &w.w[a]));
            }
        }
    }
}

#[test]
fn heads_satisfy_the_legendre_constraint() {
    for (cfg, mom) in cases() {
        let t = tables_for(cfg.as_ref());
        for pt in points(cfg.as_ref(), 10, 9) {
            let l = lift(&t, cfg.as_ref(), &pt).unwrap();
            let v = varpi_from_momentum(&t, &l, &mom.components(&pt.z())).unwrap();
            assert!(v.constraint_residual(&t) < 1e-10);
            assert!(v.antisymmetry_residual() < 1e-12);
        }
    }
}

#[test]
fn constraint_identity_holds_on_forms() {
    for (cfg, mom) in cases() {
        let t = tables_for(cfg.as_ref());
        for pt in points(cfg.as_ref(), 2, 13) {
            let l = lift(&t, cfg.as_ref(), &pt).unwrap();
            let v = varpi_from_momentum(&t, &l, &mom.components(&pt.z())).unwrap();
            let vol = l.coframe.volume().top();
            for a in 0..10 {
                let w = l.coframe.eight_form(&v.w[a]).unwrap();
                for c in 0..4 {
                    for d in 0..4 {
                        let top = l.coframe.theta(c).wedge(&l.coframe.theta(d)).unwrap().wedge(&w).unwrap().top();
                        assert!((top / vol - t.kappa(a, c, d)).abs() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn p_to_varpi_round_trip() {
    for (cfg, mom) in cases() {
        let t = tables_for(cfg.as_ref());
        for pt in points(cfg.as_ref(), 10, 15) {
            let l = lift(&t, cfg.as_ref(), &pt).unwrap();
            let p = mom.components(&pt.z());
            let v = varpi_from_momentum(&t, &l, &p).unwrap();
            let (back, head) = momentum_from_varpi(&t, &l, &v).unwrap();
            assert!(head < 1e-11, "head {head:e}");
            let d = p.flatten().iter().zip(back.flatten()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(d < 1e-11, "{d:e}");
        }
    }
}

#[test]
fn structural_head_of_p_in_mixed_form() {
    for kind in [SignatureKind::Euclidean, SignatureKind::Lorentzian] {
        let t = tables(kind);
        let hi = *t.h_inv();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        assert_eq!(t.kappa(a, c, d), 0.0);
                        let dc = if a == c { 1.0 } else { 0.0 };
                        let dd = if a == d { 1.0 } else { 0.0 };
                        let want = 2.0 * (dc * hi[(b, d)] - dd * hi[(b, c)]);
                        assert!((t.kappa_mixed(a, b, c, d) - want).abs() < 1e-14);
                    }
                }
            }
        }
    }
}

#[test]
fn closed_momentum_partials_match_finite_differences() {
    let mom = PolynomialMomentum::random(3, 1.0, 2);
    let cfg = Perturbed::new(SignatureKind::Lorentzian, 3, 0.2);
    for pt in points(&cfg, 3, 1) {
        let an = momentum_jet(&mom, &pt.z(), &analytic()).unwrap();
        let num = momentum_jet(&mom, &pt.z(), &fd()).unwrap();
        for mu in 0..10 {
            let d = an.partials[mu]
                .flatten()
                .iter()
                .zip(num.partials[mu].flatten())
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(d < 1e-9, "{d:e}");
        }
        assert!(an.value.antisymmetry_residual() == 0.0);
    }
}

#[test]
fn frame_derivatives_reconstruct_the_differential() {
    let mom = PolynomialMomentum::random(4, 1.0, 2);
    let cfg = Schwarzschild::new(1.0);
    let t = tables_for(&cfg);
    for pt in points(&cfg, 3, 2) {
        let l = lift(&t, &cfg, &pt).unwrap();
        let jet = momentum_jet(&mom, &pt.z(), &analytic()).unwrap();
        let d = MomentumDerivatives::from_jet(&jet, l.eg_coframe.inverse().unwrap());
        let m = l.eg_coframe.matrix();
        // d_mu f = sum_I f_{;I} E^I_mu
        for (a, c, k) in [(0, 1, 2), (5, 3, 0), (9, 0, 5)] {
            for mu in 0..10 {
                let s: f64 = (0..10).map(|i| d.d_ck(a, c, k, i) * m[(i, mu)]).sum();
                assert!((s - jet.partials[mu].ck[a][c][k]).abs() < 1e-11);
            }
        }
    }
}

#[test]
fn zero_profile_gives_head_only_varpi() {
    let cfg = Schwarzschild::new(1.0);
    let t = tables_for(&cfg);
    for pt in points(&cfg, 5, 3) {
        let l = lift(&t, &cfg, &pt).unwrap();
        let v = varpi_from_momentum(&t, &l, &PolynomialMomentum::zero().components(&pt.z())).unwrap();
        assert!(v.constraint_residual(&t) < 1e-12);
        let heads = VarpiComponents::from_heads(&t);
        for a in 0..10 {
            for c in 0..4 {
                for d in 0..4 {
                    assert!((v.head(a, c, d) - heads.head(a, c, d)).abs() < 1e-12);
                }
            }
        }
    }
}
