// SPDX-License-Identifier: Apache-2.0

//! JSON run configuration.
//!
//! In `si` mode every frequency-like input (including `eta`, the overrides
//! and sweep values of frequency parameters) is an ordinary frequency in Hz
//! and is multiplied by 2π internally; `mass` is in kg and is divided by ħ so
//! the library can keep ħ = 1. Times are seconds and displacements metres.
//! In `scaled` mode values are used as given.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use optomech::core_model::{effective_coeffs, EffectiveCoeffs, ModeIndex, SystemParams};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    #[default]
    Scaled,
    Si,
}

impl UnitMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            UnitMode::Scaled => "scaled",
            UnitMode::Si => "si",
        }
    }

    /// Factor from input frequency units to angular frequency.
    pub fn freq_scale(&self) -> f64 {
        match self {
            UnitMode::Scaled => 1.0,
            UnitMode::Si => TAU,
        }
    }

    pub fn mass_scale(&self) -> f64 {
        match self {
            UnitMode::Scaled => 1.0,
            UnitMode::Si => 1.0 / HBAR,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    omega_0: f64,
    omega_c: f64,
    omega_m: Option<f64>,
    mass: Option<f64>,
    eta: Option<f64>,
    g_total: Option<f64>,
    n_atoms: Option<u64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum RawBranch {
    Pair([u32; 2]),
    Named { n_a: u32, n_b: u32 },
}

impl From<RawBranch> for ModeIndex {
    fn from(b: RawBranch) -> Self {
        match b {
            RawBranch::Pair([a, b]) => ModeIndex::new(a, b),
            RawBranch::Named { n_a, n_b } => ModeIndex::new(n_a, n_b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Omega0,
    OmegaC,
    OmegaM,
    Mass,
    Eta,
    GTotal,
    /// Mirror displacement, used by `spectrum`.
    X,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Omega0 => "omega_0",
            SweepParameter::OmegaC => "omega_c",
            SweepParameter::OmegaM => "omega_m",
            SweepParameter::Mass => "mass",
            SweepParameter::Eta => "eta",
            SweepParameter::GTotal => "g_total",
            SweepParameter::X => "x",
        }
    }

    fn must_be_positive(&self) -> bool {
        matches!(
            self,
            SweepParameter::Omega0 | SweepParameter::OmegaC | SweepParameter::OmegaM | SweepParameter::Mass
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepScale {
    #[default]
    Lin,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub start: f64,
    pub end: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: SweepScale,
}

/// Directly supplied branch coefficients, in input frequency units.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub spectrum: f64,
    pub ladder: f64,
    pub echo: f64,
    pub variance: f64,
    pub hermitian: f64,
    pub unitarity: f64,
    /// Relative change accepted between cutoff doublings.
    pub convergence: f64,
    /// Population allowed in the top retained level.
    pub tail: f64,
    pub max_cutoff: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            spectrum: 1e-10,
            ladder: 1e-8,
            echo: 1e-6,
            variance: 1e-6,
            hermitian: 1e-12,
            unitarity: 1e-12,
            convergence: 1e-10,
            tail: 1e-8,
            max_cutoff: 512,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    mode: UnitMode,
    params: RawParams,
    #[serde(default)]
    branches: Vec<RawBranch>,
    time_grid: Option<TimeGrid>,
    sweep: Option<Sweep>,
    overrides: Option<Vec<Override>>,
    #[serde(default)]
    oracle: bool,
    #[serde(default)]
    tolerances: Tolerances,
    output: Option<PathBuf>,
}

/// Command-line adjustments applied on top of the JSON document.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub mode: Option<UnitMode>,
    pub oracle: bool,
    /// `dotted.path=value`; the value is parsed as JSON, else taken as a string.
    pub set: Vec<String>,
}

/// Validated configuration with parameters converted to internal units.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: UnitMode,
    pub params: SystemParams,
    pub branches: Vec<ModeIndex>,
    pub time_grid: Option<TimeGrid>,
    pub sweep: Option<Sweep>,
    /// In internal units.
    pub overrides: Option<Vec<Override>>,
    pub oracle: bool,
    pub tolerances: Tolerances,
    pub output: Option<PathBuf>,
    /// SHA-256 of the canonical effective document, output path excluded.
    pub hash: String,
}

impl RunConfig {
    pub fn load(path: &Path, adjust: &ConfigOverrides) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str(&text, adjust)
    }

    pub fn from_str(text: &str, adjust: &ConfigOverrides) -> CliResult<Self> {
        let mut doc: Value = serde_json::from_str(text)?;
        if !doc.is_object() {
            return Err(CliError::Config("config must be a JSON object".into()));
        }
        for assignment in &adjust.set {
            apply_assignment(&mut doc, assignment)?;
        }
        if let Some(mode) = adjust.mode {
            doc["mode"] = Value::String(mode.as_str().into());
        }
        if adjust.oracle {
            doc["oracle"] = Value::Bool(true);
        }
        let hash = canonical_hash(&doc);
        let raw: RawConfig = serde_json::from_value(doc)?;
        Self::resolve(raw, hash)
    }

    fn resolve(raw: RawConfig, hash: String) -> CliResult<Self> {
        let mode = raw.mode;
        let f = mode.freq_scale();
        let p = &raw.params;
        if mode == UnitMode::Si && (p.omega_m.is_none() || p.mass.is_none()) {
            return Err(CliError::Config(
                "si mode requires params.omega_m and params.mass".into(),
            ));
        }
        if raw.overrides.is_some() && (p.eta.is_some() || p.g_total.is_some()) {
            return Err(CliError::Config(
                "overrides replace the derived coefficients; drop params.eta and params.g_total".into(),
            ));
        }
        let params = SystemParams::new(
            p.omega_0 * f,
            p.omega_c * f,
            p.omega_m.unwrap_or(1.0) * f,
            p.mass.unwrap_or(1.0) * mode.mass_scale(),
            p.eta.unwrap_or(0.0) * f,
            p.g_total.unwrap_or(0.0) * f,
            p.n_atoms.unwrap_or(1),
        )?;
        let branches: Vec<ModeIndex> = raw.branches.into_iter().map(Into::into).collect();

        if let Some(g) = &raw.time_grid {
            if g.steps < 2 {
                return Err(CliError::Config(format!(
                    "time_grid.steps must be >= 2, got {}",
                    g.steps
                )));
            }
            if !(g.start.is_finite() && g.end.is_finite() && g.end > g.start) {
                return Err(CliError::Config("time_grid needs finite start < end".into()));
            }
        }
        if let Some(s) = &raw.sweep {
            validate_sweep(s)?;
        }
        let overrides = match raw.overrides {
            Some(list) => {
                if list.len() != branches.len() {
                    return Err(CliError::Config(format!(
                        "{} overrides given for {} branches",
                        list.len(),
                        branches.len()
                    )));
                }
                if list
                    .iter()
                    .any(|o| !(o.alpha.is_finite() && o.beta.is_finite() && o.gamma.is_finite()))
                {
                    return Err(CliError::Config("override coefficients must be finite".into()));
                }
                Some(
                    list.into_iter()
                        .map(|o| Override {
                            alpha: o.alpha * f,
                            beta: o.beta * f,
                            gamma: o.gamma * f,
                        })
                        .collect(),
                )
            }
            None => None,
        };
        let t = &raw.tolerances;
        let tols = [
            t.spectrum,
            t.ladder,
            t.echo,
            t.variance,
            t.hermitian,
            t.unitarity,
            t.convergence,
            t.tail,
        ];
        if tols.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || t.convergence <= 0.0 || t.max_cutoff < 4 {
            return Err(CliError::Config(
                "tolerances must be finite and non-negative, max_cutoff >= 4".into(),
            ));
        }
        Ok(Self {
            mode,
            params,
            branches,
            time_grid: raw.time_grid,
            sweep: raw.sweep,
            overrides,
            oracle: raw.oracle,
            tolerances: raw.tolerances,
            output: raw.output,
            hash,
        })
    }

    pub fn require_branches(&self, count: usize, command: &str) -> CliResult<()> {
        if self.branches.len() == count {
            Ok(())
        } else {
            Err(CliError::Config(format!(
                "{command} needs exactly {count} branch(es), got {}",
                self.branches.len()
            )))
        }
    }

    pub fn require_time_grid(&self, command: &str) -> CliResult<TimeGrid> {
        self.time_grid
            .ok_or_else(|| CliError::Config(format!("{command} needs a time_grid")))
    }

    pub fn require_sweep(&self, command: &str, allowed: &[SweepParameter]) -> CliResult<Sweep> {
        let s = self
            .sweep
            .ok_or_else(|| CliError::Config(format!("{command} needs a sweep")))?;
        if !allowed.is_empty() && !allowed.contains(&s.parameter) {
            let names: Vec<&str> = allowed.iter().map(|p| p.name()).collect();
            return Err(CliError::Config(format!(
                "{command} sweeps one of [{}], got {}",
                names.join(", "),
                s.parameter.name()
            )));
        }
        Ok(s)
    }

    /// Time grid in seconds (or scaled time).
    pub fn times(&self, grid: &TimeGrid) -> Vec<f64> {
        linspace(grid.start, grid.end, grid.steps)
    }

    /// Sweep values in input units.
    pub fn sweep_values(&self, sweep: &Sweep) -> Vec<f64> {
        match sweep.scale {
            SweepScale::Lin => linspace(sweep.start, sweep.end, sweep.points),
            SweepScale::Log => {
                let mut v: Vec<f64> = linspace(sweep.start.ln(), sweep.end.ln(), sweep.points)
                    .into_iter()
                    .map(f64::exp)
                    .collect();
                v[0] = sweep.start;
                *v.last_mut().unwrap() = sweep.end;
                v
            }
        }
    }

    /// Parameters with the swept quantity set to `value` (input units).
    /// Sweeping `x` leaves the parameters untouched.
    pub fn params_at(&self, parameter: SweepParameter, value: f64) -> CliResult<SystemParams> {
        let mut p = self.params;
        let f = self.mode.freq_scale();
        match parameter {
            SweepParameter::Omega0 => p.omega_0 = value * f,
            SweepParameter::OmegaC => p.omega_c = value * f,
            SweepParameter::OmegaM => p.omega_m = value * f,
            SweepParameter::Mass => p.mass = value * self.mode.mass_scale(),
            SweepParameter::Eta => p.eta = value * f,
            SweepParameter::GTotal => p.g_total = value * f,
            SweepParameter::X => {}
        }
        p.validate()?;
        Ok(p)
    }

    /// Angular frequency back to input units.
    pub fn freq_out(&self, omega: f64) -> f64 {
        omega / self.mode.freq_scale()
    }

    /// Branch coefficients for `params`, from the overrides when present.
    pub fn coeffs(&self, params: &SystemParams) -> CliResult<Vec<EffectiveCoeffs>> {
        match &self.overrides {
            Some(list) => Ok(self
                .branches
                .iter()
                .zip(list)
                .map(|(n, o)| EffectiveCoeffs::from_parts(params, o.alpha, o.beta, o.gamma).labelled(*n))
                .collect()),
            None => self
                .branches
                .iter()
                .map(|n| effective_coeffs(params, *n).map_err(CliError::from))
                .collect(),
        }
    }
}

fn validate_sweep(s: &Sweep) -> CliResult<()> {
    if s.points < 2 {
        return Err(CliError::Config(format!("sweep.points must be >= 2, got {}", s.points)));
    }
    if !(s.start.is_finite() && s.end.is_finite()) {
        return Err(CliError::Config("sweep range must be finite".into()));
    }
    let positive = s.start > 0.0 && s.end > 0.0;
    if s.parameter.must_be_positive() && !positive {
        return Err(CliError::Config(format!(
            "sweep range for {} must be positive",
            s.parameter.name()
        )));
    }
    if s.scale == SweepScale::Log && !positive {
        return Err(CliError::Config("log sweep needs a positive range".into()));
    }
    Ok(())
}

pub fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                end
            } else {
                start + (end - start) * (i as f64 / last)
            }
        })
        .collect()
}

fn canonical_hash(doc: &Value) -> String {
    let mut doc = doc.clone();
    if let Some(obj) = doc.as_object_mut() {
        obj.remove("output");
    }
    // serde_json keeps object keys sorted, so this rendering is canonical.
    let text = serde_json::to_string(&doc).expect("JSON value serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn apply_assignment(doc: &mut Value, assignment: &str) -> CliResult<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set expects key=value, got {assignment:?}")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    let mut slot = doc;
    for key in path.split('.') {
        if key.is_empty() {
            return Err(CliError::Config(format!("empty key in --set {assignment:?}")));
        }
        if slot.is_null() {
            *slot = Value::Object(Default::default());
        }
        slot = match slot {
            Value::Object(map) => map.entry(key.to_owned()).or_insert(Value::Null),
            Value::Array(items) => {
                let idx: usize = key
                    .parse()
                    .map_err(|_| CliError::Config(format!("--set {path}: {key} is not an array index")))?;
                items
                    .get_mut(idx)
                    .ok_or_else(|| CliError::Config(format!("--set {path}: index {idx} out of range")))?
            }
            _ => return Err(CliError::Config(format!("--set {path}: {key} is not inside an object"))),
        };
    }
    *slot = value;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"params": {"omega_0": 10, "omega_c": 10, "eta": 0.1, "g_total": 5}, "branches": [[0,1], {"n_a": 1, "n_b": 0}]}"#;

    #[test]
    fn scaled_defaults() {
        let c = RunConfig::from_str(BASE, &ConfigOverrides::default()).unwrap();
        assert_eq!(c.mode, UnitMode::Scaled);
        assert_eq!((c.params.omega_m, c.params.mass), (1.0, 1.0));
        assert_eq!(c.branches, vec![ModeIndex::new(0, 1), ModeIndex::new(1, 0)]);
    }

    #[test]
    fn si_converts_units() {
        let text = r#"{"mode": "si", "params": {"omega_0": 1e9, "omega_c": 1e9, "omega_m": 1e6, "mass": 1e-12}}"#;
        let c = RunConfig::from_str(text, &ConfigOverrides::default()).unwrap();
        assert_eq!(c.params.omega_m, 1e6 * TAU);
        assert_eq!(c.params.mass, 1e-12 / HBAR);
        assert_eq!(c.freq_out(c.params.omega_0), 1e9);
    }

    #[test]
    fn si_requires_mirror_parameters() {
        let text = r#"{"mode": "si", "params": {"omega_0": 1e9, "omega_c": 1e9}}"#;
        assert!(matches!(
            RunConfig::from_str(text, &ConfigOverrides::default()),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn overrides_exclude_microscopic_coupling() {
        let text = r#"{"params": {"omega_0": 1, "omega_c": 1, "eta": 0.1}, "branches": [[0,1]], "overrides": [{"alpha": 0.1, "beta": 0.2}]}"#;
        assert!(RunConfig::from_str(text, &ConfigOverrides::default()).is_err());
    }

    #[test]
    fn set_assignments_and_hash() {
        let a = RunConfig::from_str(BASE, &ConfigOverrides::default()).unwrap();
        let adjust = ConfigOverrides {
            set: vec!["params.omega_m=2".into(), "tolerances.echo=1e-3".into()],
            ..Default::default()
        };
        let b = RunConfig::from_str(BASE, &adjust).unwrap();
        assert_eq!(b.params.omega_m, 2.0);
        assert_eq!(b.tolerances.echo, 1e-3);
        assert_ne!(a.hash, b.hash);
        let with_output = BASE.replacen('{', r#"{"output": "x.csv", "#, 1);
        assert_eq!(
            RunConfig::from_str(&with_output, &ConfigOverrides::default())
                .unwrap()
                .hash,
            a.hash
        );
    }

    #[test]
    fn rejects_bad_grids() {
        let bad = [
            r#"{"params": {"omega_0": 1, "omega_c": 1}, "time_grid": {"start": 0, "end": 1, "steps": 1}}"#,
            r#"{"params": {"omega_0": 1, "omega_c": 1}, "sweep": {"parameter": "omega_m", "start": -1, "end": 1, "points": 3}}"#,
            r#"{"params": {"omega_0": 1, "omega_c": 1}, "sweep": {"parameter": "x", "start": -1, "end": 1, "points": 3, "scale": "log"}}"#,
            r#"{"params": {"omega_0": 1, "omega_c": 1}, "bogus": 1}"#,
            r#"{"params": {"omega_0": -1, "omega_c": 1}}"#,
        ];
        for text in bad {
            assert!(
                matches!(
                    RunConfig::from_str(text, &ConfigOverrides::default()),
                    Err(CliError::Config(_))
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn log_sweep_hits_endpoints() {
        let v = linspace(0.0, 1.0, 5);
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let text = r#"{"params": {"omega_0": 1, "omega_c": 1}, "sweep": {"parameter": "omega_m", "start": 1e5, "end": 1e8, "points": 4, "scale": "log"}}"#;
        let c = RunConfig::from_str(text, &ConfigOverrides::default()).unwrap();
        let s = c.sweep_values(&c.sweep.unwrap());
        assert_eq!(s[3], 1e8);
        assert!((s[1] / 1e6 - 1.0).abs() < 1e-12);
    }
}
