//! Instance files, JSON config files and the values both accept.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use svpfold_core::{EncodingKind, LambdaStrategy};

use crate::angle::parse_angle;
use crate::error::{CliError, CliResult};

/// An angle given as radians or as a `pi/N` style string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Angle(x)),
            Raw::Text(s) => parse_angle(&s).map(Angle).map_err(de::Error::custom),
        }
    }
}

/// Penalty strength: a number or `conservative`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaSetting {
    Fixed(f64),
    Conservative,
}

impl LambdaSetting {
    pub fn strategy(self) -> LambdaStrategy {
        match self {
            LambdaSetting::Fixed(v) => LambdaStrategy::Fixed(v),
            LambdaSetting::Conservative => LambdaStrategy::Conservative,
        }
    }
}

impl Default for LambdaSetting {
    fn default() -> Self {
        LambdaSetting::Fixed(2.5)
    }
}

impl FromStr for LambdaSetting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "conservative" {
            return Ok(LambdaSetting::Conservative);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(LambdaSetting::Fixed(v)),
            _ => Err(format!(
                "lambda must be a positive number or `conservative`, got `{s}`"
            )),
        }
    }
}

impl fmt::Display for LambdaSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSetting::Fixed(v) => write!(f, "{v}"),
            LambdaSetting::Conservative => f.write_str("conservative"),
        }
    }
}

impl Serialize for LambdaSetting {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LambdaSetting::Fixed(v) => s.serialize_f64(*v),
            LambdaSetting::Conservative => s.serialize_str("conservative"),
        }
    }
}

impl<'de> Deserialize<'de> for LambdaSetting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => match n.as_f64() {
                Some(v) if v > 0.0 => Ok(LambdaSetting::Fixed(v)),
                _ => Err(de::Error::custom(format!(
                    "lambda must be positive, got {n}"
                ))),
            },
            serde_json::Value::String(s) => s.parse().map_err(de::Error::custom),
            other => Err(de::Error::custom(format!("invalid lambda {other}"))),
        }
    }
}

/// Where the fold parameter comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaSetting {
    Value(f64),
    /// The brute-force first excited energy.
    Oracle,
    /// The estimate returned by search and bound with exact QITE.
    SearchBound,
}

impl FromStr for OmegaSetting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "oracle" => Ok(OmegaSetting::Oracle),
            "search-bound" => Ok(OmegaSetting::SearchBound),
            _ => match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(OmegaSetting::Value(v)),
                _ => Err(format!(
                    "omega must be a number, `oracle` or `search-bound`, got `{s}`"
                )),
            },
        }
    }
}

impl<'de> Deserialize<'de> for OmegaSetting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => Ok(OmegaSetting::Value(n.as_f64().unwrap_or(f64::NAN))),
            serde_json::Value::String(s) => s.parse().map_err(de::Error::custom),
            other => Err(de::Error::custom(format!("invalid omega {other}"))),
        }
    }
}

impl Serialize for OmegaSetting {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OmegaSetting::Value(v) => s.serialize_f64(*v),
            OmegaSetting::Oracle => s.serialize_str("oracle"),
            OmegaSetting::SearchBound => s.serialize_str("search-bound"),
        }
    }
}

/// `{"basis": [[...], ...], "k": 2}` or `{"theta": "pi/3", "k": 2}`, with
/// optional `scheme` and `lambda`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub basis: Option<Vec<Vec<f64>>>,
    pub theta: Option<Angle>,
    pub k: u32,
    pub scheme: Option<EncodingKind>,
    pub lambda: Option<LambdaSetting>,
}

impl InstanceFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let parsed: InstanceFile = read_json(path)?;
        match (&parsed.basis, &parsed.theta) {
            (Some(_), None) | (None, Some(_)) => Ok(parsed),
            _ => Err(CliError::validation(format!(
                "{}: exactly one of `basis` or `theta` is required",
                path.display()
            ))),
        }
    }
}

/// Every key a config file may set; explicit flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub instance: Option<PathBuf>,
    pub theta: Option<Angle>,
    pub k: Option<u32>,
    pub scheme: Option<EncodingKind>,
    pub lambda: Option<LambdaSetting>,
    pub omega: Option<OmegaSetting>,
    pub m: Option<u32>,
    pub f_th: Option<f64>,
    pub tau_max: Option<f64>,
    pub tau_end: Option<f64>,
    pub points: Option<usize>,
    pub thetas: Option<Vec<Angle>>,
    pub reps: Option<usize>,
    pub dtau: Option<f64>,
    pub seed: Option<u64>,
    pub total_time: Option<f64>,
    pub dt: Option<f64>,
    pub hx: Option<f64>,
    pub omegas: Option<Vec<f64>>,
    pub cooling_rate: Option<f64>,
    pub reads: Option<usize>,
    pub t0: Option<f64>,
    pub sweeps: Option<usize>,
    pub t_min: Option<f64>,
    pub solver: Option<String>,
    pub max_iter: Option<usize>,
    pub x: Option<Vec<i64>>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            Some(p) => read_json(p),
            None => Ok(ConfigFile::default()),
        }
    }
}

/// Parses JSON, reporting the line and column of the first problem.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("{}: cannot read: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::validation(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        ))
    })
}
