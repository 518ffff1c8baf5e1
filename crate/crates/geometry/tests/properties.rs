use fbg_algebra::SignatureKind;
use fbg_forms::DiffConfig;
use fbg_geometry::{curvature_data, field_jet, solve_torsion_free, torsion_curvature_from_jet, Perturbed};
use proptest::prelude::*;

fn kind(lorentzian: bool) -> SignatureKind {
    if lorentzian {
        SignatureKind::Lorentzian
    } else {
        SignatureKind::Euclidean
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn curvature_keeps_its_symmetries(seed in 0u64..10_000, lor in any::<bool>(), x in prop::array::uniform4(-1.0f64..1.0)) {
        let cfg = Perturbed::new(kind(lor), seed, 0.2);
        let cd = curvature_data(&cfg, &x, &DiffConfig::analytic()).unwrap();
        prop_assert!(cd.antisymmetry_residual(&cfg.signature) < 1e-12);
        prop_assert!((cd.einstein.trace() + cd.scalar).abs() < 1e-12);
    }

    #[test]
    fn torsion_free_solution_has_no_torsion(seed in 0u64..10_000, lor in any::<bool>(), x in prop::array::uniform4(-1.0f64..1.0)) {
        let cfg = Perturbed::new(kind(lor), seed, 0.2);
        let mut jet = field_jet(&cfg, &x, &DiffConfig::analytic()).unwrap();
        jet.a = solve_torsion_free(&cfg.signature, &jet.e, &jet.e_inv, &jet.de).unwrap();
        let (t, _) = torsion_curvature_from_jet(&jet);
        prop_assert!(t.iter().flatten().flatten().all(|v| v.abs() < 1e-12));
    }
}
