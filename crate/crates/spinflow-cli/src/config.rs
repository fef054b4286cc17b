//! Declarative job configs: JSON documents with CLI overrides. Every field
//! has a default; the fully materialized config is echoed next to the
//! results so a run is reproducible from its own output.

use serde::{Deserialize, Deserializer, Serialize};
use spinflow::stabilizer::BoundaryKind;
use spinflow::{Boundary, PatchPolicy};

/// Grid fields accept either a string ("6:12:2") or a bare number.
fn grid_string<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
        Real(f64),
    }
    Ok(match Raw::deserialize(d)? {
        Raw::Text(s) => s,
        Raw::Int(v) => v.to_string(),
        Raw::Real(v) => format!("{v}"),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// Must match the CLI subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcommand: Option<String>,
    #[serde(default)]
    pub model: ModelSpec,
    /// Size grid "start:stop:step" (inclusive) or a single integer.
    #[serde(default = "default_sizes", deserialize_with = "grid_string")]
    pub sizes: String,
    /// Lambda grid "start:stop:step" (inclusive) or a single value.
    #[serde(default = "default_lambda", deserialize_with = "grid_string")]
    pub lambda: String,
    #[serde(default)]
    pub patch: PatchSpec,
    #[serde(default)]
    pub flow: FlowSpec,
    #[serde(default)]
    pub lr: LrSpec,
    #[serde(default)]
    pub surface: SurfaceSpec,
    /// Symmetry name: "identity", "spin-flip-z", "spin-flip-x".
    #[serde(default = "default_symmetry")]
    pub symmetry: String,
    /// Center site for locality/decompose; defaults to n/2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    /// Finite-difference step for flow-identity.
    #[serde(default = "default_h_step")]
    pub h_step: f64,
    #[serde(default)]
    pub seed: u64,
    /// Output directory.
    #[serde(default = "default_out")]
    pub out: String,
}

fn default_sizes() -> String {
    "8".into()
}
fn default_lambda() -> String {
    "1.5".into()
}
fn default_symmetry() -> String {
    "spin-flip-z".into()
}
fn default_h_step() -> f64 {
    1e-3
}
fn default_out() -> String {
    ".".into()
}

impl Default for JobConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    /// "tfim", "xy", "aklt", or "interpolated".
    #[serde(default = "default_model_name")]
    pub name: String,
    #[serde(default = "default_boundary")]
    pub boundary: String,
    /// XY anisotropy.
    #[serde(default = "default_one")]
    pub anisotropy: f64,
    /// XY field scale (multiplies lambda).
    #[serde(default = "default_one")]
    pub field: f64,
    /// Declared lambda range for tfim.
    #[serde(default = "default_lambda_range")]
    pub lambda_range: (f64, f64),
    /// Endpoints for "interpolated": base model names and frozen lambdas.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base0: Option<(String, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base1: Option<(String, f64)>,
}

fn default_model_name() -> String {
    "tfim".into()
}
fn default_boundary() -> String {
    "open".into()
}
fn default_one() -> f64 {
    1.0
}
fn default_lambda_range() -> (f64, f64) {
    (0.0, 4.0)
}

impl Default for ModelSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatchSpec {
    Cluster { delta: f64 },
    Explicit { m: usize },
}

impl Default for PatchSpec {
    fn default() -> Self {
        PatchSpec::Cluster { delta: 0.1 }
    }
}

impl PatchSpec {
    pub fn policy(&self) -> PatchPolicy {
        match *self {
            PatchSpec::Cluster { delta } => PatchPolicy::Cluster { delta },
            PatchSpec::Explicit { m } => PatchPolicy::Explicit(m),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    #[serde(default = "default_l0")]
    pub lambda0: f64,
    #[serde(default = "default_l1")]
    pub lambda1: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default)]
    pub gamma: GammaSpec,
    /// Cocycle midpoint; defaults to the path midpoint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint: Option<f64>,
}

fn default_l0() -> f64 {
    1.2
}
fn default_l1() -> f64 {
    2.0
}
fn default_steps() -> usize {
    200
}

impl Default for FlowSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSpec {
    Fixed { value: f64 },
    MinGapMargin { margin: f64 },
    EndpointMargin { margin: f64 },
}

impl Default for GammaSpec {
    fn default() -> Self {
        GammaSpec::MinGapMargin { margin: 0.9 }
    }
}

impl GammaSpec {
    pub fn policy(&self) -> spinflow::flow::GammaPolicy {
        match *self {
            GammaSpec::Fixed { value } => spinflow::flow::GammaPolicy::Fixed(value),
            GammaSpec::MinGapMargin { margin } => {
                spinflow::flow::GammaPolicy::MinGapMargin { margin }
            }
            GammaSpec::EndpointMargin { margin } => {
                spinflow::flow::GammaPolicy::EndpointMargin { margin }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrSpec {
    /// Distance grid, e.g. "2:6:1".
    #[serde(default = "default_distances", deserialize_with = "grid_string")]
    pub distances: String,
    /// Time grid, e.g. "0.25:0.75:0.25".
    #[serde(default = "default_times", deserialize_with = "grid_string")]
    pub times: String,
    /// Site carrying the A observable.
    #[serde(default)]
    pub site: usize,
    /// Outside-cone threshold; default 1e-3 * 2 ‖a‖ ‖b‖.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

fn default_distances() -> String {
    "2:5:1".into()
}
fn default_times() -> String {
    "0.25:0.75:0.25".into()
}

impl Default for LrSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceSpec {
    Torus { lx: usize, ly: usize },
    Planar { lx: usize, ly: usize, boundary: String },
    Genus2 { l: usize },
    Json { path: String },
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        SurfaceSpec::Torus { lx: 2, ly: 2 }
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Validation(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Validation(m) => write!(f, "{m}"),
        }
    }
}

/// Parse "start:stop:step" (inclusive) or a single value.
pub fn parse_f64_grid(text: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = |m: &str| ConfigError::Validation(format!("grid '{text}': {m}"));
    match parts.len() {
        1 => {
            let v: f64 = parts[0].trim().parse().map_err(|_| bad("not a number"))?;
            Ok(vec![v])
        }
        3 => {
            let start: f64 = parts[0].trim().parse().map_err(|_| bad("bad start"))?;
            let stop: f64 = parts[1].trim().parse().map_err(|_| bad("bad stop"))?;
            let step: f64 = parts[2].trim().parse().map_err(|_| bad("bad step"))?;
            if step <= 0.0 || stop < start {
                return Err(bad("need stop >= start and step > 0"));
            }
            let n = ((stop - start) / step).round() as usize;
            if ((start + n as f64 * step) - stop).abs() > 1e-9 * step.max(1.0) {
                return Err(bad("step does not divide the interval"));
            }
            Ok((0..=n).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(bad("expected 'value' or 'start:stop:step'")),
    }
}

pub fn parse_usize_grid(text: &str) -> Result<Vec<usize>, ConfigError> {
    parse_f64_grid(text)?
        .into_iter()
        .map(|v| {
            if v.fract().abs() < 1e-9 && v >= 0.0 {
                Ok(v.round() as usize)
            } else {
                Err(ConfigError::Validation(format!(
                    "grid '{text}': {v} is not a non-negative integer"
                )))
            }
        })
        .collect()
}

pub fn parse_boundary(text: &str) -> Result<Boundary, ConfigError> {
    match text {
        "open" => Ok(Boundary::Open),
        "periodic" => Ok(Boundary::Periodic),
        other => Err(ConfigError::Validation(format!(
            "unknown boundary '{other}' (open|periodic)"
        ))),
    }
}

pub fn parse_boundary_kind(text: &str) -> Result<BoundaryKind, ConfigError> {
    match text {
        "smooth" => Ok(BoundaryKind::Smooth),
        "rough" => Ok(BoundaryKind::Rough),
        other => Err(ConfigError::Validation(format!(
            "unknown boundary kind '{other}' (smooth|rough)"
        ))),
    }
}

fn set_path(doc: &mut serde_json::Value, keys: &[&str], value: serde_json::Value) {
    if !doc.is_object() {
        *doc = serde_json::json!({});
    }
    let map = doc.as_object_mut().unwrap();
    if keys.len() == 1 {
        map.insert(keys[0].to_string(), value);
    } else {
        let child = map
            .entry(keys[0].to_string())
            .or_insert(serde_json::json!({}));
        set_path(child, &keys[1..], value);
    }
}

/// Apply `--override key.path=value` entries onto the raw JSON document.
/// Values parse as JSON when possible, else as strings.
pub fn apply_overrides(
    mut doc: serde_json::Value,
    overrides: &[String],
) -> Result<serde_json::Value, ConfigError> {
    for entry in overrides {
        let (path, value) = entry.split_once('=').ok_or_else(|| {
            ConfigError::Validation(format!("override '{entry}' is not key=value"))
        })?;
        let parsed: serde_json::Value = serde_json::from_str(value)
            .unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
        let keys: Vec<&str> = path.split('.').collect();
        set_path(&mut doc, &keys, parsed);
    }
    Ok(doc)
}
