use fbg_algebra::{AlgebraTables, Signature, G_DIM};
use fbg_forms::{
    chart_norm, coframe_derivatives, dgamma_identities, gamma_jet, gamma_matrix, maurer_cartan, ChartPoint,
    CoframeValue, DiffConfig, FormError, Mat10, StructureConstants, DIM,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn both() -> [AlgebraTables; 2] {
    [
        AlgebraTables::canonical(Signature::euclidean()),
        AlgebraTables::canonical(Signature::lorentzian()),
    ]
}

fn sample_y(t: &AlgebraTables, rng: &mut ChaCha8Rng) -> [f64; G_DIM] {
    loop {
        let y: [f64; G_DIM] = std::array::from_fn(|_| rng.random_range(-0.5..0.5));
        if chart_norm(t, &y) < 0.9 {
            return y;
        }
    }
}

#[test]
fn origin_gives_identity() {
    for t in both() {
        let mc = maurer_cartan(&t, &[0.0; G_DIM]).unwrap();
        assert_eq!(mc.gamma, fbg_forms::Mat6::identity());
        assert_eq!(mc.g.matrix, fbg_algebra::Mat4::identity());
    }
}

#[test]
fn outside_chart_is_rejected() {
    let t = AlgebraTables::canonical(Signature::lorentzian());
    let y = [0.0, 0.0, 0.0, 2.0, 0.0, 0.0];
    assert!(matches!(maurer_cartan(&t, &y), Err(FormError::OutsideChart { .. })));
}

#[test]
fn gamma_matches_finite_difference_of_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for t in both() {
        for _ in 0..20 {
            let y = sample_y(&t, &mut rng);
            let mc = maurer_cartan(&t, &y).unwrap();
            let ginv = mc.g.matrix.try_inverse().unwrap();
            let h = 1e-4;
            for j in 0..G_DIM {
                let shifted = |s: f64| {
                    let mut yy = y;
                    yy[j] += s;
                    t.g_element(&yy).exp()
                };
                let dg = (-shifted(2.0 * h) + shifted(h) * 8.0 - shifted(-h) * 8.0 + shifted(-2.0 * h)) / (12.0 * h);
                let col = t.g_coords(&(ginv * dg));
                for i in 0..G_DIM {
                    assert!((col[i] - mc.gamma[(i, j)]).abs() < 1e-7, "{} vs {}", col[i], mc.gamma[(i, j)]);
                }
            }
        }
    }
}

#[test]
fn gamma_jet_matches_finite_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let t = AlgebraTables::canonical(Signature::lorentzian());
    let sc = StructureConstants::from_tables(&t);
    let y = sample_y(&t, &mut rng);
    let jet = gamma_jet(&sc, &y).unwrap();
    let h = 1e-5;
    for j in 0..G_DIM {
        let mut yp = y;
        let mut ym = y;
        yp[j] += h;
        ym[j] -= h;
        let fd = (gamma_matrix(&sc, &yp).unwrap() - gamma_matrix(&sc, &ym).unwrap()) / (2.0 * h);
        assert!((fd - jet[j]).amax() < 1e-8);
    }
}

#[test]
fn structure_equations_hold_in_both_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for t in both() {
        let sc = StructureConstants::from_tables(&t);
        let mut worst_fd: f64 = 0.0;
        let mut worst_an: f64 = 0.0;
        for _ in 0..100 {
            let y = sample_y(&t, &mut rng);
            worst_fd = worst_fd.max(dgamma_identities(&sc, &y, &DiffConfig::default()).unwrap().max());
            worst_an = worst_an.max(dgamma_identities(&sc, &y, &DiffConfig::analytic()).unwrap().max());
        }
        assert!(worst_fd < 1e-8, "{worst_fd}");
        assert!(worst_an < 1e-12, "{worst_an}");
    }
}

#[test]
fn abelian_algebra_at_origin_is_exact() {
    let sc = StructureConstants::abelian();
    let r = dgamma_identities(&sc, &[0.0; G_DIM], &DiffConfig::default()).unwrap();
    assert_eq!(r.max(), 0.0);
    let r = dgamma_identities(&sc, &[0.3, -0.2, 0.1, 0.0, 0.4, 0.2], &DiffConfig::analytic()).unwrap();
    assert_eq!(r.max(), 0.0);
}

#[test]
fn wrong_structure_constants_are_detected() {
    // gamma built from one algebra but checked against the sign-flipped constants
    let t = AlgebraTables::canonical(Signature::euclidean());
    let sc = StructureConstants::from_tables(&t);
    let y = [0.3, -0.2, 0.1, 0.0, 0.0, 0.0];
    let good = dgamma_identities(&sc, &y, &DiffConfig::analytic()).unwrap();
    assert!(good.max() < 1e-12);
    let gamma_abelian = gamma_matrix(&StructureConstants::abelian(), &y).unwrap();
    assert_eq!(gamma_abelian, fbg_forms::Mat6::identity());
    let gamma = gamma_matrix(&sc, &y).unwrap();
    assert!((gamma - gamma_abelian).amax() > 1e-3);
}

#[test]
fn coframe_derivatives_of_constant_and_identity() {
    let z = ChartPoint::new([0.1, 0.2, 0.3, 0.4], [0.1, 0.0, -0.1, 0.2, 0.0, 0.05]).z();
    let id = CoframeValue::identity();
    let (fa, fi) = coframe_derivatives(&|_: &[f64; DIM]| 4.2, &z, &id, &DiffConfig::default()).unwrap();
    assert!(fa.iter().chain(fi.iter()).all(|v| v.abs() < 1e-12));

    let f = |p: &[f64; DIM]| p[0] * p[0] + p[1] * p[2] - 3.0 * p[3];
    let (fa, _) = coframe_derivatives(&f, &z, &id, &DiffConfig::default()).unwrap();
    let want = [2.0 * z[0], z[2], z[1], -3.0];
    for a in 0..4 {
        assert!((fa[a] - want[a]).abs() < 1e-10);
    }
}

#[test]
fn base_only_function_has_no_fiber_derivative_in_a_lifted_coframe() {
    // coframe of the form (g^{-1} e dx, Ad-type x-block + gamma dy)
    let t = AlgebraTables::canonical(Signature::lorentzian());
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let y = sample_y(&t, &mut rng);
    let mc = maurer_cartan(&t, &y).unwrap();
    let mut e = Mat10::zeros();
    for r in 0..DIM {
        for c in 0..4 {
            e[(r, c)] = rng.random_range(-1.0..1.0) + if r == c { 3.0 } else { 0.0 };
        }
    }
    for i in 0..G_DIM {
        for j in 0..G_DIM {
            e[(4 + i, 4 + j)] = mc.gamma[(i, j)];
        }
    }
    let frame = CoframeValue::new(e);
    let z = ChartPoint::new([0.2, -0.1, 0.4, 0.3], y).z();
    let f = |p: &[f64; DIM]| (p[0] * p[1]).sin() + p[2] * p[3] * p[3];
    let (_, fi) = coframe_derivatives(&f, &z, &frame, &DiffConfig::default()).unwrap();
    assert!(fi.iter().all(|v| v.abs() < 1e-9), "{fi:?}");
}

#[test]
fn singular_coframe_is_an_error() {
    let mut e = Mat10::identity();
    e[(9, 9)] = 0.0;
    let frame = CoframeValue::new(e);
    assert_eq!(frame.rank(), 9);
    assert!(matches!(
        coframe_derivatives(&|_: &[f64; DIM]| 1.0, &[0.0; DIM], &frame, &DiffConfig::default()),
        Err(FormError::SingularCoframe { .. })
    ));
}
