use crate::CliError;
use fbg_algebra::SignatureKind;
use fbg_geometry::{FieldConfig, Flat, Perturbed, Schwarzschild, Sphere4};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioParam {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub signature: &'static str,
    pub parameters: Vec<ScenarioParam>,
    pub analytic_partials: bool,
}

pub fn list_scenarios() -> Vec<ScenarioInfo> {
    let p = |name, default, doc| ScenarioParam { name, default, doc };
    vec![
        ScenarioInfo {
            name: "flat_lorentzian",
            description: "Minkowski space, trivial tetrad and connection",
            signature: "lorentzian",
            parameters: vec![],
            analytic_partials: true,
        },
        ScenarioInfo {
            name: "flat_euclidean",
            description: "Euclidean R^4, trivial tetrad and connection",
            signature: "euclidean",
            parameters: vec![],
            analytic_partials: true,
        },
        ScenarioInfo {
            name: "schwarzschild",
            description: "Schwarzschild exterior in (t, r, theta, phi), diagonal tetrad, sampled on r in (3M, 10M)",
            signature: "lorentzian",
            parameters: vec![p("M", "1.0", "mass, > 0")],
            analytic_partials: true,
        },
        ScenarioInfo {
            name: "sphere_s4",
            description: "round 4-sphere in hyperspherical angles",
            signature: "euclidean",
            parameters: vec![p("r", "1.0", "radius, > 0")],
            analytic_partials: true,
        },
        ScenarioInfo {
            name: "perturbed",
            description: "polynomially perturbed tetrad with a torsionful connection",
            signature: "either",
            parameters: vec![
                p("signature", "lorentzian", "lorentzian or euclidean"),
                p("seed", "0", "coefficient seed"),
                p("amp", "0.05", "perturbation amplitude"),
            ],
            analytic_partials: true,
        },
    ]
}

/// Splits `name:key=value,key=value`.
fn split_spec(spec: &str) -> Result<(String, BTreeMap<String, String>), CliError> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), r),
        None => (spec.trim(), ""),
    };
    let mut params = BTreeMap::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("scenario parameter `{item}` is not key=value")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((name.to_string(), params))
}

fn take<T: std::str::FromStr>(params: &mut BTreeMap<String, String>, key: &str, default: T) -> Result<T, CliError> {
    match params.remove(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| CliError::config(format!("bad value `{v}` for scenario parameter {key}"))),
    }
}

pub fn build_scenario(spec: &str) -> Result<Box<dyn FieldConfig>, CliError> {
    let (name, mut params) = split_spec(spec)?;
    let cfg: Box<dyn FieldConfig> = match name.as_str() {
        "flat_lorentzian" => Box::new(Flat::new(SignatureKind::Lorentzian)),
        "flat_euclidean" => Box::new(Flat::new(SignatureKind::Euclidean)),
        "schwarzschild" => {
            let m: f64 = take(&mut params, "M", 1.0)?;
            if !(m > 0.0 && m.is_finite()) {
                return Err(CliError::Unsampleable { scenario: spec.into(), reason: format!("mass {m} must be positive") });
            }
            Box::new(Schwarzschild::new(m))
        }
        "sphere_s4" => {
            let r: f64 = take(&mut params, "r", 1.0)?;
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Unsampleable { scenario: spec.into(), reason: format!("radius {r} must be positive") });
            }
            Box::new(Sphere4::new(r))
        }
        "perturbed" => {
            let sig: String = take(&mut params, "signature", "lorentzian".to_string())?;
            let kind = SignatureKind::parse(&sig).ok_or_else(|| CliError::config(format!("unknown signature `{sig}`")))?;
            let seed: u64 = take(&mut params, "seed", 0)?;
            let amp: f64 = take(&mut params, "amp", 0.05)?;
            Box::new(Perturbed::new(kind, seed, amp))
        }
        _ => return Err(CliError::UnknownScenario(name)),
    };
    if let Some(k) = params.keys().next() {
        return Err(CliError::config(format!("scenario `{name}` has no parameter `{k}`")));
    }
    Ok(cfg)
}

pub fn is_flat(spec: &str) -> bool {
    spec.trim().starts_with("flat_")
}
