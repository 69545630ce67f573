//! `key = value` experiment configuration and curve specifications.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use agdec::curve::CabCurve;
use agdec::decoder::PointPolicy;
use agdec::radius::{half_designed, power_radius};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing key {0:?}")]
    Missing(&'static str),
    #[error("bad value for {key:?}: {msg}")]
    Value { key: String, msg: String },
    #[error("curve: {0}")]
    Curve(String),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Curve given inline or as a file path.
///
/// Inline forms: `hermitian p e` (over `F_{p^{2e}}`), `line p k`, or curve-file lines
/// separated by `;`, e.g. `field 11 1; cab 5 6; term 6 0 1; term 1 0 1; term 0 0 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec(pub String);

impl CurveSpec {
    pub fn load(&self, base: Option<&Path>) -> Result<CabCurve, ConfigError> {
        let s = self.0.trim();
        let toks: Vec<&str> = s.split_whitespace().collect();
        let nums = |toks: &[&str]| -> Result<Vec<u32>, ConfigError> {
            toks.iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| ConfigError::Curve(format!("bad number {t:?}")))
                })
                .collect()
        };
        match toks.first().copied() {
            Some("hermitian") if toks.len() == 3 => {
                let v = nums(&toks[1..])?;
                CabCurve::hermitian(v[0], v[1]).map_err(|e| ConfigError::Curve(e.to_string()))
            }
            Some("line") if toks.len() == 3 => {
                let v = nums(&toks[1..])?;
                let f = agdec::algebra::Field::new(v[0], v[1]).map_err(|e| ConfigError::Curve(e.to_string()))?;
                Ok(CabCurve::line(&f))
            }
            _ if s.contains(';') => {
                CabCurve::parse(&s.replace(';', "\n")).map_err(|e| ConfigError::Curve(e.to_string()))
            }
            _ => {
                let path = match base {
                    Some(b) if Path::new(s).is_relative() => b.join(s),
                    _ => Path::new(s).to_path_buf(),
                };
                let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                CabCurve::parse(&text).map_err(|e| ConfigError::Curve(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TSpec {
    Absolute(usize),
    Radius,
    RadiusPlusOne,
    HalfDesigned,
}

impl TSpec {
    pub fn resolve(&self, n: usize, deg_g: i64, ell: u32) -> Result<usize, ConfigError> {
        let v = match self {
            TSpec::Absolute(t) => return Ok(*t),
            TSpec::Radius => power_radius(n as i64, deg_g, i64::from(ell)),
            TSpec::RadiusPlusOne => power_radius(n as i64, deg_g, i64::from(ell)) + 1,
            TSpec::HalfDesigned => half_designed(n as i64, deg_g),
        };
        usize::try_from(v).map_err(|_| ConfigError::Value {
            key: "t".into(),
            msg: format!("{self} resolves to {v}"),
        })
    }
}

impl FromStr for TSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "radius" => Ok(TSpec::Radius),
            "radius+1" => Ok(TSpec::RadiusPlusOne),
            "half_designed" => Ok(TSpec::HalfDesigned),
            v => v.parse().map(TSpec::Absolute).map_err(|_| format!("unknown t {v:?}")),
        }
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSpec::Absolute(t) => write!(f, "{t}"),
            TSpec::Radius => f.write_str("radius"),
            TSpec::RadiusPlusOne => f.write_str("radius+1"),
            TSpec::HalfDesigned => f.write_str("half_designed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorModel {
    Uniform,
    WorstCase,
}

impl FromStr for ErrorModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uniform" | "uniform-random-support" => Ok(ErrorModel::Uniform),
            "worst-case" | "worst_case" => Ok(ErrorModel::WorstCase),
            other => Err(format!("unknown error model {other:?}")),
        }
    }
}

impl fmt::Display for ErrorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorModel::Uniform => "uniform",
            ErrorModel::WorstCase => "worst-case",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub curve: CurveSpec,
    pub deg_g: i64,
    pub ell: u32,
    pub t: TSpec,
    pub trials: usize,
    pub seed: u64,
    pub error_model: ErrorModel,
    pub point_policy: PointPolicy,
    pub format: Format,
    /// Use only the first `points` rational points of the curve.
    pub points: Option<usize>,
}

fn value<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    v.parse::<T>().map_err(|e| ConfigError::Value {
        key: key.to_string(),
        msg: e.to_string(),
    })
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
        let mut curve = None;
        let mut deg_g = None;
        let mut ell = None;
        let mut t = None;
        let mut trials = None;
        let mut seed = None;
        let mut error_model = ErrorModel::Uniform;
        let mut point_policy = PointPolicy::FirstHit;
        let mut format = Format::Csv;
        let mut points = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax {
                line: i + 1,
                msg: "expected key = value".into(),
            })?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "curve" => curve = Some(CurveSpec(v.to_string())),
                "degG" => deg_g = Some(value(k, v)?),
                "ell" => ell = Some(value(k, v)?),
                "t" => t = Some(value(k, v)?),
                "trials" => trials = Some(value(k, v)?),
                "seed" => seed = Some(value(k, v)?),
                "error_model" => error_model = value(k, v)?,
                "point_policy" => point_policy = value(k, v)?,
                "format" => format = value(k, v)?,
                "points" => points = Some(value(k, v)?),
                other => {
                    return Err(ConfigError::Syntax {
                        line: i + 1,
                        msg: format!("unknown key {other:?}"),
                    })
                }
            }
        }
        let cfg = ExperimentConfig {
            curve: curve.ok_or(ConfigError::Missing("curve"))?,
            deg_g: deg_g.ok_or(ConfigError::Missing("degG"))?,
            ell: ell.ok_or(ConfigError::Missing("ell"))?,
            t: t.ok_or(ConfigError::Missing("t"))?,
            trials: trials.ok_or(ConfigError::Missing("trials"))?,
            seed: seed.ok_or(ConfigError::Missing("seed"))?,
            error_model,
            point_policy,
            format,
            points,
        };
        if cfg.trials == 0 {
            return Err(ConfigError::Value {
                key: "trials".into(),
                msg: "must be at least 1".into(),
            });
        }
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "curve = {}\ndegG = {}\nell = {}\nt = {}\ntrials = {}\nseed = {}\nerror_model = {}\npoint_policy = {}\nformat = {}\n",
            self.curve.0,
            self.deg_g,
            self.ell,
            self.t,
            self.trials,
            self.seed,
            self.error_model,
            self.point_policy,
            match self.format {
                Format::Csv => "csv",
                Format::Json => "json",
                Format::Markdown => "markdown",
            }
        );
        if let Some(p) = self.points {
            s.push_str(&format!("points = {p}\n"));
        }
        s
    }
}
