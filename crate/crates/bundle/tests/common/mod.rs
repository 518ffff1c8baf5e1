#![allow(dead_code)]

use fbg_algebra::{AlgebraTables, Signature, SignatureKind};
use fbg_forms::{ChartPoint, DiffConfig};
use fbg_geometry::FieldConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn tables(kind: SignatureKind) -> AlgebraTables {
    AlgebraTables::canonical(Signature::new(kind))
}

pub fn tables_for(cfg: &dyn FieldConfig) -> AlgebraTables {
    AlgebraTables::canonical(cfg.signature())
}

/// Chart points with `x` from the configuration's sampler and `|y_i| <= 0.2`.
pub fn points(cfg: &dyn FieldConfig, n: usize, seed: u64) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = cfg.sample(&std::array::from_fn(|_| rng.random::<f64>()));
            let y = std::array::from_fn(|_| rng.random_range(-0.2..0.2));
            ChartPoint::new(x, y)
        })
        .collect()
}

pub fn fd() -> DiffConfig {
    DiffConfig::finite_difference()
}

pub fn analytic() -> DiffConfig {
    DiffConfig::analytic()
}
