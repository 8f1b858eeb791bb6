//! Line-oriented scenario configuration.
//!
//! ```text
//! # cyclotron motion
//! scenario  = cyclotron
//! uniform_B = 0 0 2
//! u_spatial = 1 0 0
//! dtau      = 1e-3
//! steps     = 10000
//! ```
//!
//! One `key = value` per line, `#` starts a comment, triples are three
//! whitespace-separated reals (optionally quoted). Unknown and repeated keys
//! are rejected.

use std::fmt;
use std::path::PathBuf;

use lorentzgen_core::fields::{Coulomb, EMField, FieldProvider, DEFAULT_R_MIN};
use lorentzgen_core::{
    ChargeRatio, FourVector, FrameBoost, ParticleState, StepperKind, ThreeVector,
};

pub const DEFAULT_K: f64 = 1.0;
pub const DEFAULT_DTAU: f64 = 1e-3;
pub const DEFAULT_STRIDE: usize = 1;
pub const DEFAULT_SCENARIO: &str = "custom";

/// Help text listing every key and its default.
pub const CONFIG_HELP: &str = "\
Config file keys (`key = value`, `#` comments, triples as `x y z`):
  scenario       name used for default output paths      [default: custom]
  uniform_E, E   uniform electric field triple
  uniform_B, B   uniform magnetic field triple
  coulomb_q      point-source strength at unit radius (source at origin)
  coulomb_r_min  minimum radius before a singularity error [default: 1e-6]
  k              charge-to-mass ratio                     [default: 1]
  u_spatial      initial spatial four-velocity            [default: 0 0 0]
  velocity       initial three-velocity, |v| < 1 (alternative to u_spatial)
  position       initial spatial position                 [default: 0 0 0]
  dtau           proper-time step, > 0                    [default: 1e-3]
  steps          number of steps (required)
  stepper        expmap | euler | rk4                     [default: expmap]
  output         CSV path                                 [default: <scenario>.csv]
  stride         write every n-th sample (final always)   [default: 1]
At least one of uniform_E, uniform_B, coulomb_q is required; a uniform field
and a point source together are superposed.";

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: `{}`: {}", self.key, self.message),
            None => write!(f, "`{}`: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Uniform part and optional point source; superposed when both are present.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub uniform: Option<EMField>,
    pub coulomb: Option<Coulomb>,
}

impl FieldSpec {
    pub fn provider(&self) -> FieldProvider {
        match (self.uniform, self.coulomb) {
            (Some(u), Some(c)) => FieldProvider::Superposition(vec![
                FieldProvider::Uniform(u),
                FieldProvider::Coulomb(c),
            ]),
            (None, Some(c)) => FieldProvider::Coulomb(c),
            (Some(u), None) => FieldProvider::Uniform(u),
            (None, None) => FieldProvider::Uniform(EMField::ZERO),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub field: FieldSpec,
    pub k: f64,
    pub u_spatial: ThreeVector,
    pub position: ThreeVector,
    pub dtau: f64,
    pub steps: usize,
    pub stepper: StepperKind,
    pub output: Option<PathBuf>,
    pub stride: usize,
}

impl ScenarioConfig {
    pub fn charge_ratio(&self) -> ChargeRatio {
        ChargeRatio(self.k)
    }

    pub fn initial_state(&self) -> ParticleState {
        ParticleState::new(
            0.0,
            FourVector::from_parts(0.0, self.position),
            FourVector::velocity_from_spatial(self.u_spatial),
        )
    }

    pub fn output_path(&self) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.csv", self.name)))
    }
}

fn canonical_key(key: &str) -> Option<&'static str> {
    Some(match key {
        "scenario" => "scenario",
        "uniform_E" | "E" => "uniform_E",
        "uniform_B" | "B" => "uniform_B",
        "coulomb_q" => "coulomb_q",
        "coulomb_r_min" => "coulomb_r_min",
        "k" => "k",
        "u_spatial" => "u_spatial",
        "velocity" => "velocity",
        "position" => "position",
        "dtau" => "dtau",
        "steps" => "steps",
        "stepper" => "stepper",
        "output" => "output",
        "stride" => "stride",
        _ => return None,
    })
}

struct Entry<'a> {
    line: usize,
    key: &'static str,
    value: &'a str,
}

impl Entry<'_> {
    fn error(&self, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: Some(self.line),
            key: self.key.to_string(),
            message: message.into(),
        }
    }

    fn real(&self) -> Result<f64, ConfigError> {
        let x: f64 = self
            .value
            .parse()
            .map_err(|_| self.error(format!("`{}` is not a real number", self.value)))?;
        if !x.is_finite() {
            return Err(self.error("value must be finite"));
        }
        Ok(x)
    }

    fn triple(&self) -> Result<ThreeVector, ConfigError> {
        let parts: Vec<&str> = self.value.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(self.error(format!("expected three reals, got `{}`", self.value)));
        }
        let mut out = [0.0f64; 3];
        for (slot, p) in out.iter_mut().zip(parts) {
            *slot = p
                .parse()
                .map_err(|_| self.error(format!("`{p}` is not a real number")))?;
            if !slot.is_finite() {
                return Err(self.error("components must be finite"));
            }
        }
        Ok(ThreeVector(out))
    }

    fn count(&self) -> Result<usize, ConfigError> {
        self.value
            .parse()
            .map_err(|_| self.error(format!("`{}` is not a non-negative integer", self.value)))
    }
}

fn strip_quotes(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(v)
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut entries: Vec<Entry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError {
            line: Some(line),
            key: content.to_string(),
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let canonical = canonical_key(key).ok_or_else(|| ConfigError {
            line: Some(line),
            key: key.to_string(),
            message: "unknown key".into(),
        })?;
        if let Some(prev) = entries.iter().find(|e| e.key == canonical) {
            return Err(ConfigError {
                line: Some(line),
                key: key.to_string(),
                message: format!("duplicate of line {}", prev.line),
            });
        }
        entries.push(Entry {
            line,
            key: canonical,
            value: strip_quotes(value.trim()),
        });
    }
    let get = |key: &str| entries.iter().find(|e| e.key == key);

    let name = match get("scenario") {
        Some(e) if e.value.is_empty() || e.value.contains(['/', '\\']) => {
            return Err(e.error("scenario name must be non-empty and contain no path separators"))
        }
        Some(e) => e.value.to_string(),
        None => DEFAULT_SCENARIO.to_string(),
    };

    let e_field = get("uniform_E").map(Entry::triple).transpose()?;
    let b_field = get("uniform_B").map(Entry::triple).transpose()?;
    let uniform = match (e_field, b_field) {
        (None, None) => None,
        (e, b) => Some(EMField::new(e.unwrap_or_default(), b.unwrap_or_default())),
    };
    let coulomb = match get("coulomb_q") {
        Some(e) => {
            let q = e.real()?;
            let r_min = match get("coulomb_r_min") {
                Some(r) => {
                    let v = r.real()?;
                    if v <= 0.0 {
                        return Err(r.error("minimum radius must be positive"));
                    }
                    v
                }
                None => DEFAULT_R_MIN,
            };
            Some(Coulomb { q, r_min })
        }
        None => {
            if let Some(r) = get("coulomb_r_min") {
                return Err(r.error("only meaningful together with `coulomb_q`"));
            }
            None
        }
    };
    if uniform.is_none() && coulomb.is_none() {
        return Err(ConfigError {
            line: None,
            key: "uniform_E".into(),
            message: "a field is required: set uniform_E, uniform_B and/or coulomb_q".into(),
        });
    }

    let k = get("k").map(Entry::real).transpose()?.unwrap_or(DEFAULT_K);

    let u_spatial = match (get("u_spatial"), get("velocity")) {
        (Some(_), Some(v)) => {
            return Err(v.error("give either `u_spatial` or `velocity`, not both"))
        }
        (Some(u), None) => u.triple()?,
        (None, Some(v)) => {
            let vel = v.triple()?;
            let boost = FrameBoost::new(vel)
                .map_err(|_| v.error(format!("superluminal velocity |v| = {}", vel.norm())))?;
            vel.scale(boost.gamma())
        }
        (None, None) => ThreeVector::ZERO,
    };
    let position = get("position")
        .map(Entry::triple)
        .transpose()?
        .unwrap_or_default();

    let dtau = match get("dtau") {
        Some(e) => {
            let v = e.real()?;
            if v <= 0.0 {
                return Err(e.error(format!("must be positive, got {v}")));
            }
            v
        }
        None => DEFAULT_DTAU,
    };
    let steps = match get("steps") {
        Some(e) => e.count()?,
        None => {
            return Err(ConfigError {
                line: None,
                key: "steps".into(),
                message: "required key is missing".into(),
            })
        }
    };
    let stepper = match get("stepper") {
        Some(e) => e
            .value
            .parse::<StepperKind>()
            .map_err(|err| e.error(err.to_string()))?,
        None => StepperKind::ExpMap,
    };
    let output = match get("output") {
        Some(e) if e.value.is_empty() => return Err(e.error("output path must not be empty")),
        Some(e) => Some(PathBuf::from(e.value)),
        None => None,
    };
    let stride = match get("stride") {
        Some(e) => {
            let s = e.count()?;
            if s == 0 {
                return Err(e.error("must be at least 1"));
            }
            s
        }
        None => DEFAULT_STRIDE,
    };

    Ok(ScenarioConfig {
        name,
        field: FieldSpec { uniform, coulomb },
        k,
        u_spatial,
        position,
        dtau,
        steps,
        stepper,
        output,
        stride,
    })
}
