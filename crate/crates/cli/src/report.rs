use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Where a family reached its maximum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstPoint {
    pub index: usize,
    pub x: [f64; 4],
    pub y: [f64; 6],
    /// Component of the family at which the maximum sits.
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub name: String,
    pub max_abs: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_point: Option<WorstPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub passed_checks: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteReport {
    pub fn from_residuals(name: &str, residuals: &[f64], tolerance: f64) -> Self {
        let passed_checks = residuals.iter().filter(|r| **r <= tolerance).count();
        let max_residual = residuals.iter().fold(0.0f64, |m, r| if r.is_nan() { f64::NAN } else { m.max(*r) });
        SuiteReport {
            name: name.to_string(),
            checks: residuals.len(),
            passed_checks,
            max_residual,
            tolerance,
            passed: passed_checks == residuals.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensitySummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl DensitySummary {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(DensitySummary { min, max, mean: values.iter().sum::<f64>() / values.len() as f64 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub points: usize,
    pub points_digest: String,
    pub families: Vec<FamilyReport>,
    pub identities: Vec<SuiteReport>,
    pub density: Option<DensitySummary>,
    pub wall_time_s: f64,
    pub verdict: Verdict,
}

impl Report {
    /// Fills in the verdict from the families and suites.
    pub fn new(
        command: &str,
        config: BTreeMap<String, String>,
        points: usize,
        points_digest: String,
        families: Vec<FamilyReport>,
        identities: Vec<SuiteReport>,
        density: Option<DensitySummary>,
        wall_time_s: f64,
    ) -> Self {
        let ok = families.iter().all(|f| f.passed) && identities.iter().all(|s| s.passed);
        Report {
            command: command.to_string(),
            config,
            points,
            points_digest,
            families,
            identities,
            density,
            wall_time_s,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.name == name)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.identities.iter().find(|s| s.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        serde_json::to_string_pretty(self)
    }
}

/// Folds per-point maxima into one family entry. NaN counts as a failure at that point.
#[derive(Clone, Debug)]
pub struct FamilyAccumulator {
    name: String,
    max_abs: f64,
    worst: Option<WorstPoint>,
}

impl FamilyAccumulator {
    pub fn new(name: &str) -> Self {
        FamilyAccumulator { name: name.to_string(), max_abs: 0.0, worst: None }
    }

    pub fn push(&mut self, value: f64, index: usize, z: &[f64; 10], component: usize) {
        let v = value.abs();
        if self.worst.is_none() || v > self.max_abs || (v.is_nan() && !self.max_abs.is_nan()) {
            self.max_abs = v;
            self.worst = Some(WorstPoint {
                index,
                x: std::array::from_fn(|m| z[m]),
                y: std::array::from_fn(|i| z[4 + i]),
                component,
            });
        }
    }

    pub fn finish(self, tolerance: f64) -> FamilyReport {
        FamilyReport {
            passed: self.worst.is_some() && self.max_abs <= tolerance,
            name: self.name,
            max_abs: self.max_abs,
            tolerance,
            worst_point: self.worst,
        }
    }
}
