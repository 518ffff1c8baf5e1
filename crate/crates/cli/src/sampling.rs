use crate::config::{MomentumProfile, MomentumSpec};
use crate::CliError;
use fbg_algebra::G_DIM;
use fbg_bundle::PolynomialMomentum;
use fbg_forms::ChartPoint;
use fbg_geometry::FieldConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// `n` chart points: `x` from the scenario's sampler, `y` uniform in the ball of radius
/// `fiber_radius`.
pub fn sample_points(cfg: &dyn FieldConfig, n: usize, seed: u64, fiber_radius: f64) -> Result<Vec<ChartPoint>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x = cfg.sample(&std::array::from_fn(|_| rng.random::<f64>()));
        if !cfg.in_domain(&x) || x.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Unsampleable { scenario: cfg.name(), reason: format!("sampler left the domain at {x:?}") });
        }
        let y = loop {
            let y: [f64; G_DIM] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            if y.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
                break y.map(|v| v * fiber_radius);
            }
        };
        out.push(ChartPoint::new(x, y));
    }
    Ok(out)
}

/// SHA-256 over the little-endian bytes of every coordinate, as hex.
pub fn points_digest(points: &[ChartPoint]) -> String {
    let mut h = Sha256::new();
    for p in points {
        for v in p.z() {
            h.update(v.to_le_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn build_momentum(spec: &MomentumSpec) -> PolynomialMomentum {
    match spec.profile {
        MomentumProfile::Zero => PolynomialMomentum::zero(),
        MomentumProfile::Random => PolynomialMomentum::random(spec.seed, spec.amplitude, spec.degree),
        MomentumProfile::YLinear if spec.coefficients.is_empty() => {
            PolynomialMomentum::random_y_linear(spec.seed, spec.amplitude).0
        }
        MomentumProfile::YLinear => {
            let mut w = [[[[0.0; G_DIM]; G_DIM]; 4]; 4];
            for &(a, b, k, j, v) in &spec.coefficients {
                w[a][b][k][j] = v;
            }
            PolynomialMomentum::y_linear(&w)
        }
    }
}
