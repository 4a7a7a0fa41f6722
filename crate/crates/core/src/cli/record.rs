use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::RefinementLevel;
use crate::models::StateLabel;

use super::args::OutputFormat;
use super::config::RunConfig;
use super::CliError;

/// Everything a run reports. `results` is absent when the run failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub inputs: RunConfig,
    pub results: Option<Results>,
    pub errors: Vec<String>,
    pub provenance: Vec<String>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Results {
    Norm(NormResults),
    Gram(GramResults),
    Evolve(EvolveResults),
    Check(CheckResults),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResults {
    pub entries: Vec<NormEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEntry {
    pub label: StateLabel,
    pub energy: f64,
    /// Quadrature pseudo-norm of the unit-coefficient state.
    pub raw_pseudo_norm: Complex64,
    pub raw_abs_err: f64,
    pub measured_sign: i8,
    pub numeric_norm_mag: f64,
    pub numeric_norm_err: f64,
    pub analytic_pseudo_norm: Option<f64>,
    pub analytic_norm_mag: Option<f64>,
    pub rel_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramResults {
    pub labels: Vec<StateLabel>,
    pub values: Vec<Vec<Complex64>>,
    pub abs_err: Vec<Vec<f64>>,
    pub quasi_parities: Vec<i8>,
    /// `max_i |G_ii - q_i|`.
    pub diagonal_deviation: f64,
    pub max_off_diagonal: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub label: StateLabel,
    pub coefficient: Complex64,
    pub norm_mag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveResults {
    pub components: Vec<Component>,
    pub dx: f64,
    pub t_end: f64,
    /// Discrete self pseudo-norm `S(0)`.
    pub s0: Complex64,
    /// `max_t |S(t) - S(0)|` over every step.
    pub drift: f64,
    /// `max_t max|psi(t)| / max|psi(0)|`.
    pub max_growth: f64,
    pub snapshot_files: Vec<String>,
    pub overlap_file: Option<String>,
    pub refinement: Vec<RefinementLevel<f64>>,
    pub orders: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResults {
    pub entries: Vec<CheckEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub label: StateLabel,
    pub analytic_phi: f64,
    pub fitted_phi: f64,
    pub phase_deviation: f64,
    /// `max ||u*(-x)/u(x)| - 1|` on the fit grid.
    pub modulus_deviation: f64,
    pub fit_points: usize,
    pub c2: Option<f64>,
    pub shift_deviation: Option<f64>,
}

// Shortest round-trip float text, as in the snapshot files.
fn num(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

impl Results {
    /// Tabular form for `--format csv`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), CliError> {
        let io = |e: csv::Error| CliError::Io(e.to_string());
        let mut w = csv::Writer::from_writer(w);
        match self {
            Results::Norm(r) => {
                w.write_record([
                    "label",
                    "energy",
                    "re_s",
                    "im_s",
                    "s_abs_err",
                    "measured_sign",
                    "numeric_norm",
                    "numeric_norm_err",
                    "analytic_s",
                    "analytic_norm",
                    "rel_deviation",
                ])
                .map_err(io)?;
                for e in &r.entries {
                    w.write_record([
                        e.label.to_string(),
                        num(e.energy),
                        num(e.raw_pseudo_norm.re),
                        num(e.raw_pseudo_norm.im),
                        num(e.raw_abs_err),
                        e.measured_sign.to_string(),
                        num(e.numeric_norm_mag),
                        num(e.numeric_norm_err),
                        opt(e.analytic_pseudo_norm),
                        opt(e.analytic_norm_mag),
                        opt(e.rel_deviation),
                    ])
                    .map_err(io)?;
                }
            }
            Results::Gram(r) => {
                w.write_record(["row", "col", "label_row", "label_col", "re", "im", "abs_err"])
                    .map_err(io)?;
                for (i, row) in r.values.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        w.write_record([
                            i.to_string(),
                            j.to_string(),
                            r.labels[i].to_string(),
                            r.labels[j].to_string(),
                            num(v.re),
                            num(v.im),
                            num(r.abs_err[i][j]),
                        ])
                        .map_err(io)?;
                    }
                }
            }
            Results::Evolve(r) => {
                w.write_record(["points", "dx", "dt", "steps", "residual", "drift"])
                    .map_err(io)?;
                for l in &r.refinement {
                    w.write_record([
                        l.points.to_string(),
                        num(l.dx),
                        num(l.dt),
                        l.steps.to_string(),
                        num(l.residual),
                        num(l.drift),
                    ])
                    .map_err(io)?;
                }
            }
            Results::Check(r) => {
                w.write_record([
                    "label",
                    "analytic_phi",
                    "fitted_phi",
                    "phase_deviation",
                    "modulus_deviation",
                    "c2",
                    "shift_deviation",
                ])
                .map_err(io)?;
                for e in &r.entries {
                    w.write_record([
                        e.label.to_string(),
                        num(e.analytic_phi),
                        num(e.fitted_phi),
                        num(e.phase_deviation),
                        num(e.modulus_deviation),
                        opt(e.c2),
                        opt(e.shift_deviation),
                    ])
                    .map_err(io)?;
                }
            }
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}

impl ResultRecord {
    pub fn to_json(&self) -> Result<String, CliError> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Io(e.to_string()))
    }

    /// Writes in the configured format; CSV falls back to JSON for failed
    /// runs, which have no table.
    pub fn write<W: Write>(&self, mut w: W, format: OutputFormat) -> Result<(), CliError> {
        match (format, &self.results) {
            (OutputFormat::Csv, Some(r)) => r.write_csv(w),
            _ => {
                let text = self.to_json()?;
                writeln!(w, "{text}").map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}
