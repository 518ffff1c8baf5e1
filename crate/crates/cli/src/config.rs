use crate::scenario::{build_scenario, is_flat};
use crate::CliError;
use fbg_bundle::FAMILY_NAMES;
use fbg_forms::{DiffConfig, DiffMode, FdOrder};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Families produced by the fibration diagnostics alongside the field equations.
pub const FIBRATION_FAMILIES: [&str; 4] = ["horizontal_alpha", "horizontal_omega", "pfaff1", "pfaff3"];

/// Families produced by `gauge-check`.
pub const GAUGE_FAMILIES: [&str; 7] = [
    "gauge_density",
    "gauge_p_heads",
    "gauge_varpi_heads",
    "gauge_covariance",
    "shift_exact",
    "shift_identity",
    "shift_preconditions",
];

pub const MAX_FIBER_RADIUS: f64 = 0.5;

fn gauge_default_tolerance(family: &str) -> Option<f64> {
    Some(match family {
        "gauge_density" => 1e-7,
        "gauge_p_heads" | "gauge_varpi_heads" | "gauge_covariance" => 1e-10,
        "shift_exact" | "shift_identity" => 1e-6,
        "shift_preconditions" => 1e-8,
        _ => return None,
    })
}

pub fn known_family(name: &str) -> bool {
    FAMILY_NAMES.contains(&name) || FIBRATION_FAMILIES.contains(&name) || GAUGE_FAMILIES.contains(&name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentumProfile {
    Zero,
    Random,
    YLinear,
}

impl MomentumProfile {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "zero" => Some(MomentumProfile::Zero),
            "random" => Some(MomentumProfile::Random),
            "y_linear" => Some(MomentumProfile::YLinear),
            _ => None,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            MomentumProfile::Zero => "zero",
            MomentumProfile::Random => "random",
            MomentumProfile::YLinear => "y_linear",
        }
    }
}

/// Named momentum profile. For `y_linear`, `coefficients` entries `(a, b, k, j, w)` set
/// `p_a^{bk} = w y^j`; when empty the coefficients are drawn from `seed`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumSpec {
    pub profile: MomentumProfile,
    pub seed: u64,
    pub amplitude: f64,
    pub degree: usize,
    pub coefficients: Vec<(usize, usize, usize, usize, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub scenario: String,
    pub signature: Option<String>,
    pub points: usize,
    pub seed: u64,
    pub diff: DiffConfig,
    pub fiber_radius: f64,
    pub tol_default: Option<f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub momentum: MomentumSpec,
    pub gauge_maps: usize,
    pub gauge_amplitude: f64,
    pub shift_amplitude: f64,
    pub out: Option<PathBuf>,
}

/// Keys accepted in config files, `FBG_` variables and `--set`.
const KEYS: [&str; 20] = [
    "scenario",
    "signature",
    "points",
    "seed",
    "diff.mode",
    "diff.step",
    "diff.order",
    "diff.refine_tol",
    "fiber.radius",
    "tol.default",
    "momentum.profile",
    "momentum.seed",
    "momentum.amplitude",
    "momentum.degree",
    "momentum.coefficients",
    "gauge.maps",
    "gauge.amplitude",
    "shift.amplitude",
    "out",
    "tol.*",
];

fn key_allowed(key: &str) -> bool {
    match key.strip_prefix("tol.") {
        Some(fam) => fam == "default" || known_family(fam),
        None => KEYS.contains(&key),
    }
}

/// Layered `key = value` settings, later layers overriding earlier ones.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim();
        if !key_allowed(key) {
            return Err(CliError::config(format!("unknown key `{key}`")));
        }
        self.values.insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    /// Parses `key = value` lines with `#` comments.
    pub fn merge_text(&mut self, text: &str, origin: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("{origin}:{}: expected `key = value`", n + 1)))?;
            self.set(k, v).map_err(|e| CliError::config(format!("{origin}:{}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        self.merge_text(&text, &path.display().to_string())
    }

    /// `FBG_DIFF_STEP` overrides `diff.step`, `FBG_TOL_TORSION_SOLVED` overrides
    /// `tol.torsion_solved`. Variables that name no key are ignored.
    pub fn merge_env<I: IntoIterator<Item = (String, String)>>(&mut self, vars: I) -> Result<(), CliError> {
        let candidates = env_candidates();
        for (name, value) in vars {
            let Some(rest) = name.strip_prefix("FBG_") else { continue };
            let wanted = rest.to_ascii_lowercase();
            if let Some(key) = candidates.iter().find(|k| k.replace('.', "_") == wanted) {
                self.set(key, &value)?;
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::config(format!("bad value `{v}` for {key}"))),
        }
    }
}

fn env_candidates() -> Vec<String> {
    let mut out: Vec<String> = KEYS.iter().filter(|k| **k != "tol.*").map(|k| k.to_string()).collect();
    for f in FAMILY_NAMES.iter().chain(&FIBRATION_FAMILIES).chain(&GAUGE_FAMILIES) {
        out.push(format!("tol.{f}"));
    }
    out
}

fn parse_coefficients(s: &str) -> Result<Vec<(usize, usize, usize, usize, f64)>, CliError> {
    let mut out = Vec::new();
    for item in s.split(|c| c == ',' || c == ';').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || CliError::config(format!("momentum coefficient `{item}` is not a.b.k.j=value"));
        let (idx, val) = item.split_once('=').ok_or_else(bad)?;
        let parts: Vec<usize> = idx.split('.').map(|p| p.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let v: f64 = val.trim().parse().map_err(|_| bad())?;
        if parts.len() != 4 || parts[0] >= 4 || parts[1] >= 4 || parts[2] >= 6 || parts[3] >= 6 {
            return Err(bad());
        }
        out.push((parts[0], parts[1], parts[2], parts[3], v));
    }
    Ok(out)
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{key} must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn from_settings(s: &Settings) -> Result<Self, CliError> {
        let scenario = s.get("scenario").unwrap_or("flat_lorentzian").to_string();
        let built = build_scenario(&scenario)?;
        let signature = s.get("signature").map(str::to_string);
        if let Some(sig) = &signature {
            let kind = fbg_algebra::SignatureKind::parse(sig)
                .ok_or_else(|| CliError::config(format!("unknown signature `{sig}`")))?;
            if kind != built.signature().kind() {
                return Err(CliError::config(format!("signature `{sig}` does not match scenario `{scenario}`")));
            }
        }
        let points: usize = s.parse("points", 20)?;
        if points == 0 {
            return Err(CliError::config("points must be at least 1"));
        }
        let mode = match s.get("diff.mode").unwrap_or("analytic") {
            "analytic" => DiffMode::Analytic,
            "fd" | "finite_difference" => DiffMode::FiniteDifference,
            m => return Err(CliError::config(format!("unknown diff.mode `{m}`"))),
        };
        if mode == DiffMode::Analytic && !built.has_analytic_partials() {
            return Err(CliError::config(format!("scenario `{scenario}` has no analytic partials")));
        }
        let base = DiffConfig::default();
        let order_n: u32 = s.parse("diff.order", base.order.as_int())?;
        let order = FdOrder::from_int(order_n).ok_or_else(|| CliError::config(format!("diff.order must be 2 or 4, got {order_n}")))?;
        let diff = DiffConfig {
            mode,
            step: positive("diff.step", s.parse("diff.step", base.step)?)?,
            order,
            refine_tol: positive("diff.refine_tol", s.parse("diff.refine_tol", base.refine_tol)?)?,
        };
        let fiber_radius: f64 = s.parse("fiber.radius", 0.3)?;
        if !(fiber_radius >= 0.0 && fiber_radius <= MAX_FIBER_RADIUS) {
            return Err(CliError::config(format!("fiber.radius must lie in [0, {MAX_FIBER_RADIUS}], got {fiber_radius}")));
        }
        let tol_default = match s.get("tol.default") {
            None => None,
            Some(_) => Some(positive("tol.default", s.parse("tol.default", 0.0)?)?),
        };
        let mut tolerances = BTreeMap::new();
        for (k, _) in s.values.iter() {
            if let Some(fam) = k.strip_prefix("tol.") {
                if fam != "default" {
                    tolerances.insert(fam.to_string(), positive(k, s.parse(k, 0.0)?)?);
                }
            }
        }
        let profile_name = s.get("momentum.profile").unwrap_or("zero");
        let profile = MomentumProfile::parse(profile_name)
            .ok_or_else(|| CliError::config(format!("unknown momentum.profile `{profile_name}`")))?;
        let momentum = MomentumSpec {
            profile,
            seed: s.parse("momentum.seed", 0)?,
            amplitude: s.parse("momentum.amplitude", 0.5)?,
            degree: s.parse("momentum.degree", 2)?,
            coefficients: parse_coefficients(s.get("momentum.coefficients").unwrap_or(""))?,
        };
        if !momentum.amplitude.is_finite() {
            return Err(CliError::config("momentum.amplitude must be finite"));
        }
        let gauge_maps: usize = s.parse("gauge.maps", 20)?;
        if gauge_maps == 0 {
            return Err(CliError::config("gauge.maps must be at least 1"));
        }
        Ok(RunConfig {
            scenario,
            signature,
            points,
            seed: s.parse("seed", 0)?,
            diff,
            fiber_radius,
            tol_default,
            tolerances,
            momentum,
            gauge_maps,
            gauge_amplitude: positive("gauge.amplitude", s.parse("gauge.amplitude", 0.3)?)?,
            shift_amplitude: positive("shift.amplitude", s.parse("shift.amplitude", 0.5)?)?,
            out: s.get("out").map(PathBuf::from),
        })
    }

    /// File, then `FBG_` environment, then command-line overrides.
    pub fn load(file: Option<&Path>, env: impl IntoIterator<Item = (String, String)>, overrides: &[(String, String)]) -> Result<Self, CliError> {
        let mut s = Settings::new();
        if let Some(p) = file {
            s.merge_file(p)?;
        }
        s.merge_env(env)?;
        for (k, v) in overrides {
            s.set(k, v)?;
        }
        Self::from_settings(&s)
    }

    /// Tolerance for a family: explicit `tol.<family>`, then `tol.default`, then the
    /// built-in default for the family and derivative mode.
    pub fn tolerance(&self, family: &str) -> f64 {
        if let Some(t) = self.tolerances.get(family) {
            return *t;
        }
        if let Some(t) = gauge_default_tolerance(family) {
            return t;
        }
        if let Some(t) = self.tol_default {
            return t;
        }
        match (self.diff.mode, is_flat(&self.scenario)) {
            (DiffMode::Analytic, true) => 1e-10,
            (DiffMode::Analytic, false) => 1e-9,
            (DiffMode::FiniteDifference, _) => 1e-6,
        }
    }

    /// Every resolved setting, as reported back in the config echo.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("scenario", self.scenario.clone());
        if let Some(s) = &self.signature {
            put("signature", s.clone());
        }
        put("points", self.points.to_string());
        put("seed", self.seed.to_string());
        put("diff.mode", if self.diff.is_analytic() { "analytic" } else { "fd" }.into());
        put("diff.step", format!("{:e}", self.diff.step));
        put("diff.order", self.diff.order.as_int().to_string());
        put("diff.refine_tol", format!("{:e}", self.diff.refine_tol));
        put("fiber.radius", self.fiber_radius.to_string());
        if let Some(t) = self.tol_default {
            put("tol.default", format!("{t:e}"));
        }
        for (k, v) in &self.tolerances {
            put(&format!("tol.{k}"), format!("{v:e}"));
        }
        put("momentum.profile", self.momentum.profile.as_str().into());
        put("momentum.seed", self.momentum.seed.to_string());
        put("momentum.amplitude", self.momentum.amplitude.to_string());
        put("momentum.degree", self.momentum.degree.to_string());
        if !self.momentum.coefficients.is_empty() {
            let list: Vec<String> =
                self.momentum.coefficients.iter().map(|(a, b, k, j, w)| format!("{a}.{b}.{k}.{j}={w}")).collect();
            put("momentum.coefficients", list.join(","));
        }
        put("gauge.maps", self.gauge_maps.to_string());
        put("gauge.amplitude", self.gauge_amplitude.to_string());
        put("shift.amplitude", self.shift_amplitude.to_string());
        if let Some(o) = &self.out {
            put("out", o.display().to_string());
        }
        m
    }
}
