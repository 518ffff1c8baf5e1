use crate::config::{RunConfig, GAUGE_FAMILIES};
use crate::report::{DensitySummary, Report};
use crate::residuals::{aggregate, PointResult};
use crate::sampling::{build_momentum, points_digest, sample_points};
use crate::scenario::build_scenario;
use crate::CliError;
use fbg_algebra::AlgebraTables;
use fbg_bundle::{gauge_compare, momentum_shift_check, MomentumField, PolynomialGauge, ShiftPotential};
use fbg_forms::{ChartPoint, DiffConfig, DiffMode};
use fbg_geometry::FieldConfig;
use rayon::prelude::*;
use std::time::Instant;

/// Gauge maps are centred on the point so that `phi` stays of order `gauge.amplitude`
/// on wide domains.
pub fn gauge_point(
    tables: &AlgebraTables,
    field: &dyn FieldConfig,
    mom: &dyn MomentumField,
    pt: &ChartPoint,
    index: usize,
    cfg: &RunConfig,
) -> Result<PointResult, CliError> {
    let mut density = Vec::with_capacity(cfg.gauge_maps);
    let (mut p_heads, mut varpi_heads, mut covariance) = (Vec::new(), Vec::new(), Vec::new());
    let mut before = 0.0;
    for k in 0..cfg.gauge_maps {
        let seed = cfg.seed.wrapping_add((index * cfg.gauge_maps + k) as u64).wrapping_add(1 << 32);
        let f = PolynomialGauge::random(tables, seed, cfg.gauge_amplitude).with_center(pt.x);
        let c = gauge_compare(tables, field, mom, &f, pt, &cfg.diff)?;
        before = c.density_before;
        density.push(c.density_after - c.density_before);
        p_heads.push(c.p_head_residual);
        varpi_heads.push(c.varpi_head_residual);
        covariance.push(c.covariance_residual);
    }
    // exterior derivatives of the shift forms are always taken by finite differences
    let fd = DiffConfig { mode: DiffMode::FiniteDifference, ..cfg.diff };
    let shift_seed = cfg.seed.wrapping_add(index as u64).wrapping_add(1 << 40);
    let trans = ShiftPotential::translational(shift_seed, cfg.shift_amplitude, 2);
    let t = momentum_shift_check(tables, field, mom, &trans, pt, &fd)?;
    let full = ShiftPotential::random(shift_seed + 1, cfg.shift_amplitude, 2);
    let s = momentum_shift_check(tables, field, mom, &full, pt, &fd)?;
    let families = vec![
        (GAUGE_FAMILIES[0], density),
        (GAUGE_FAMILIES[1], p_heads),
        (GAUGE_FAMILIES[2], varpi_heads),
        (GAUGE_FAMILIES[3], covariance),
        (GAUGE_FAMILIES[4], vec![t.exact_only_residual()]),
        (GAUGE_FAMILIES[5], vec![s.identity_residual()]),
        (GAUGE_FAMILIES[6], vec![t.preconditions_max(), s.preconditions_max()]),
    ];
    Ok(PointResult { families, density: before })
}

pub fn run_gauge_check(cfg: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let field = build_scenario(&cfg.scenario)?;
    let tables = AlgebraTables::canonical(field.signature());
    let mom = build_momentum(&cfg.momentum);
    let points = sample_points(field.as_ref(), cfg.points, cfg.seed, cfg.fiber_radius)?;
    let results: Vec<PointResult> = points
        .par_iter()
        .enumerate()
        .map(|(i, pt)| gauge_point(&tables, field.as_ref(), &mom, pt, i, cfg))
        .collect::<Result<_, _>>()?;
    let families = aggregate(cfg, &GAUGE_FAMILIES, &points, &results);
    let densities: Vec<f64> = results.iter().map(|r| r.density).collect();
    Ok(Report::new(
        "gauge-check",
        cfg.echo(),
        points.len(),
        points_digest(&points),
        families,
        Vec::new(),
        DensitySummary::of(&densities),
        start.elapsed().as_secs_f64(),
    ))
}
