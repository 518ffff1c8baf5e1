use crate::config::{RunConfig, FIBRATION_FAMILIES};
use crate::identities::algebra_suites;
use crate::report::{DensitySummary, FamilyAccumulator, Report};
use crate::sampling::{build_momentum, points_digest, sample_points};
use crate::scenario::build_scenario;
use crate::CliError;
use fbg_algebra::AlgebraTables;
use fbg_bundle::{hvdw_residuals, theta_density, LiftedCoframe, MomentumField, FAMILY_NAMES};
use fbg_forms::{ChartPoint, DiffConfig};
use fbg_frobenius::check_fibration_hypotheses;
use fbg_geometry::FieldConfig;
use rayon::prelude::*;
use std::time::Instant;

/// Everything evaluated at one sampled point, as `(family, values)` pairs plus the density.
#[derive(Clone, Debug)]
pub struct PointResult {
    pub families: Vec<(&'static str, Vec<f64>)>,
    pub density: f64,
}

pub fn evaluate_point(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    mom: &dyn MomentumField,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<PointResult, CliError> {
    let set = hvdw_residuals(tables, cfg, mom, pt, diff)?;
    let mut families: Vec<(&'static str, Vec<f64>)> = set.families.into_iter().map(|f| (f.name, f.values)).collect();
    let diag = check_fibration_hypotheses(tables, &LiftedCoframe::new(tables, cfg), &pt.z(), diff)?;
    // a rank-deficient coframe leaves the diagnostics undefined, which fails the families
    let fib = [
        diag.horizontal_residual_alpha,
        diag.horizontal_residual_omega,
        diag.pfaff1_residual,
        diag.pfaff3_residual,
    ];
    for (name, v) in FIBRATION_FAMILIES.iter().zip(fib) {
        families.push((name, vec![v.unwrap_or(f64::NAN)]));
    }
    let density = theta_density(tables, cfg, mom, pt, diff)?;
    Ok(PointResult { families, density })
}

/// Folds per-point results in point order, so the report does not depend on scheduling.
pub fn aggregate(
    cfg: &RunConfig,
    names: &[&str],
    points: &[ChartPoint],
    results: &[PointResult],
) -> Vec<crate::report::FamilyReport> {
    let mut acc: Vec<FamilyAccumulator> = names.iter().map(|n| FamilyAccumulator::new(n)).collect();
    for (index, (pt, r)) in points.iter().zip(results).enumerate() {
        let z = pt.z();
        for (name, values) in &r.families {
            let Some(slot) = names.iter().position(|n| n == name) else { continue };
            for (component, v) in values.iter().enumerate() {
                acc[slot].push(*v, index, &z, component);
            }
        }
    }
    acc.into_iter().zip(names).map(|(a, n)| a.finish(cfg.tolerance(n))).collect()
}

pub fn run_residuals(cfg: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let field = build_scenario(&cfg.scenario)?;
    let tables = AlgebraTables::canonical(field.signature());
    let mom = build_momentum(&cfg.momentum);
    let points = sample_points(field.as_ref(), cfg.points, cfg.seed, cfg.fiber_radius)?;
    let results: Vec<PointResult> = points
        .par_iter()
        .map(|pt| evaluate_point(&tables, field.as_ref(), &mom, pt, &cfg.diff))
        .collect::<Result<_, _>>()?;
    let names: Vec<&str> = FAMILY_NAMES.iter().chain(FIBRATION_FAMILIES.iter()).copied().collect();
    let families = aggregate(cfg, &names, &points, &results);
    let densities: Vec<f64> = results.iter().map(|r| r.density).collect();
    Ok(Report::new(
        "residuals",
        cfg.echo(),
        points.len(),
        points_digest(&points),
        families,
        algebra_suites(cfg.seed)?,
        DensitySummary::of(&densities),
        start.elapsed().as_secs_f64(),
    ))
}
