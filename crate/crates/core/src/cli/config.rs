use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::models::{Family, Model, QuasiParity, StateLabel};

use super::args::{CommandKind, Flags, OutputFormat};
use super::CliError;

pub const DEFAULT_TOL: f64 = crate::pseudonorm::DEFAULT_TOL;
pub const DEFAULT_HALF_WIDTH: f64 = 12.0;
pub const DEFAULT_POINTS: usize = 1537;
pub const DEFAULT_DT: f64 = 1.0 / 1024.0;
pub const DEFAULT_STEPS: usize = 1024;
pub const DEFAULT_SNAPSHOT_EVERY: usize = 128;

/// Config file layout: the flag names as flat keys.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub model: Option<Family>,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub gamma: Option<f64>,
    pub q: Option<i8>,
    pub n: Option<usize>,
    pub labels: Option<String>,
    pub coeffs: Option<String>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub grid_half_width: Option<f64>,
    pub points: Option<usize>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub snapshot_every: Option<usize>,
    pub jobs: Option<usize>,
    pub numeric_only: Option<bool>,
    pub c2: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }
}

/// Potential family with the raw parameter values as given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: Family,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub gamma: Option<f64>,
}

impl ModelSpec {
    /// Validates against the family's parameter inequalities.
    pub fn build(&self) -> Result<Model<f64>, CliError> {
        let name = self.family.name();
        let need =
            |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Validation(format!("{name} model needs --{flag}")));
        let reject = |v: Option<f64>, flag: &str| match v {
            Some(_) => Err(CliError::Validation(format!(
                "--{flag} does not apply to the {name} model"
            ))),
            None => Ok(()),
        };
        let model = match self.family {
            Family::Oscillator => {
                reject(self.a, "A")?;
                reject(self.b, "B")?;
                reject(self.gamma, "gamma")?;
                Model::oscillator(need(self.alpha, "alpha")?, need(self.c, "c")?)
            }
            Family::Gpt => {
                reject(self.alpha, "alpha")?;
                reject(self.c, "c")?;
                Model::gpt(need(self.a, "A")?, need(self.b, "B")?, need(self.gamma, "gamma")?)
            }
            Family::Scarf => {
                reject(self.alpha, "alpha")?;
                reject(self.c, "c")?;
                reject(self.gamma, "gamma")?;
                Model::scarf(need(self.a, "A")?, need(self.b, "B")?)
            }
        };
        model.map_err(CliError::from)
    }
}

/// Fully resolved run description; echoed as `inputs` in every record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub model: ModelSpec,
    pub labels: Vec<StateLabel>,
    pub coeffs: Vec<Complex64>,
    pub tol: f64,
    pub grid_half_width: f64,
    pub points: usize,
    pub dt: f64,
    pub steps: usize,
    pub snapshot_every: usize,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub numeric_only: bool,
    pub c2: Option<f64>,
}

fn parse_q(s: &str) -> Result<QuasiParity, CliError> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(QuasiParity::Plus),
        "-1" | "-" => Ok(QuasiParity::Minus),
        other => Err(CliError::Validation(format!("--q must be +1 or -1, got `{other}`"))),
    }
}

/// `+1:0,-1:2` with `q:n1..n2` ranges (inclusive).
pub fn parse_labels(s: &str) -> Result<Vec<StateLabel>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once("..") {
            Some((head, hi)) => {
                let first: StateLabel = head.parse().map_err(CliError::Validation)?;
                let hi: usize = hi
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Validation(format!("label range `{item}`: bad upper bound")))?;
                if hi < first.n {
                    return Err(CliError::Validation(format!("label range `{item}` is empty")));
                }
                out.extend((first.n..=hi).map(|n| StateLabel::new(first.q, n)));
            }
            None => out.push(item.parse().map_err(CliError::Validation)?),
        }
    }
    if out.is_empty() {
        return Err(CliError::Validation("--labels is empty".into()));
    }
    Ok(out)
}

pub fn parse_coeffs(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Complex64>()
                .map_err(|_| CliError::Validation(format!("coefficient `{t}` is not a complex number")))
        })
        .collect()
}

fn positive(v: f64, what: &str) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Validation(format!("{what} > 0 required, got {v}")))
    }
}

impl RunConfig {
    /// Merges flags over the optional config file over defaults, then checks
    /// everything that can be checked without computing.
    pub fn resolve(command: CommandKind, flags: Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let family = flags
            .model
            .or(file.model)
            .ok_or_else(|| CliError::Validation("--model is required (oscillator, gpt or scarf)".into()))?;
        let model = ModelSpec {
            family,
            alpha: flags.alpha.or(file.alpha),
            c: flags.c.or(file.c),
            a: flags.a.or(file.a),
            b: flags.b.or(file.b),
            gamma: flags.gamma.or(file.gamma),
        };

        let q = match (&flags.q, file.q) {
            (Some(s), _) => Some(parse_q(s)?),
            (None, Some(v)) => Some(
                QuasiParity::from_sign(v)
                    .ok_or_else(|| CliError::Validation(format!("q must be +1 or -1, got {v}")))?,
            ),
            (None, None) => None,
        };
        let n = flags.n.or(file.n);
        let label_text = flags.labels.clone().or(file.labels);
        let labels = match (label_text, q, n) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                return Err(CliError::Validation("give either --labels or --q/--n, not both".into()))
            }
            (Some(t), None, None) => parse_labels(&t)?,
            (None, Some(q), Some(n)) => vec![StateLabel::new(q, n)],
            (None, Some(_), None) => return Err(CliError::Validation("--q needs --n".into())),
            (None, None, Some(_)) => return Err(CliError::Validation("--n needs --q".into())),
            (None, None, None) => {
                return Err(CliError::Validation(
                    "a state is required: --q and --n, or --labels".into(),
                ))
            }
        };

        let coeffs = match flags.coeffs.clone().or(file.coeffs) {
            Some(t) => parse_coeffs(&t)?,
            None => vec![Complex64::new(1.0, 0.0); labels.len()],
        };
        if coeffs.len() != labels.len() {
            return Err(CliError::Validation(format!(
                "{} coefficients for {} labels",
                coeffs.len(),
                labels.len()
            )));
        }
        if command != CommandKind::Evolve && flags.coeffs.is_some() {
            return Err(CliError::Validation("--coeffs only applies to evolve".into()));
        }

        let cfg = RunConfig {
            command,
            model,
            labels,
            coeffs,
            tol: positive(flags.tol.or(file.tol).unwrap_or(DEFAULT_TOL), "tol")?,
            grid_half_width: positive(
                flags
                    .grid_half_width
                    .or(file.grid_half_width)
                    .unwrap_or(DEFAULT_HALF_WIDTH),
                "grid-half-width",
            )?,
            points: flags.points.or(file.points).unwrap_or(DEFAULT_POINTS),
            dt: positive(flags.dt.or(file.dt).unwrap_or(DEFAULT_DT), "dt")?,
            steps: flags.steps.or(file.steps).unwrap_or(DEFAULT_STEPS),
            snapshot_every: flags
                .snapshot_every
                .or(file.snapshot_every)
                .unwrap_or(DEFAULT_SNAPSHOT_EVERY),
            jobs: flags.jobs.or(file.jobs),
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or_default(),
            numeric_only: flags.numeric_only || file.numeric_only.unwrap_or(false),
            c2: flags.c2.or(file.c2),
        };
        if cfg.points < 16 {
            return Err(CliError::Validation(format!(
                "points >= 16 required, got {}",
                cfg.points
            )));
        }
        if cfg.steps < 2 {
            return Err(CliError::Validation(format!("steps >= 2 required, got {}", cfg.steps)));
        }
        if cfg.snapshot_every == 0 {
            return Err(CliError::Validation("snapshot-every >= 1 required".into()));
        }
        if cfg.jobs == Some(0) {
            return Err(CliError::Validation("jobs >= 1 required".into()));
        }
        Ok(cfg)
    }
}
