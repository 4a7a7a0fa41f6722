use std::path::Path;

use num_complex::Complex64;

use crate::dynamics::{
    measured_orders, pseudo_overlap, refinement_study, write_overlap_csv, write_snapshot_csv, Grid, GridWavefunction,
    OverlapPoint, Propagator, RefinementSetup,
};
use crate::models::{analytic_norm_mag, closed_form_pseudo_norm, Eigenstate, Family, Model, NormMag, Superposition};
use crate::pseudonorm::{
    angle_distance, contour_shift_check, fit_pt_phase, gram, is_non_real, jacobi_weight_integral, normalize,
    refined_pseudo_norm,
};

use super::args::CommandKind;
use super::config::RunConfig;
use super::record::{CheckEntry, CheckResults, Component, EvolveResults, GramResults, NormEntry, NormResults, Results};
use super::CliError;

/// Results plus non-fatal notes for the record's `errors` block.
pub type Outcome = (Results, Vec<String>);

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        CommandKind::Norm => cmd_norm(cfg),
        CommandKind::Gram => cmd_gram(cfg),
        CommandKind::Evolve => cmd_evolve(cfg),
        CommandKind::Check => cmd_check(cfg),
    }
}

/// Which closed forms a run cross-checks, stated by content.
pub fn provenance(cfg: &RunConfig) -> Vec<String> {
    let family = match cfg.model.family {
        Family::Oscillator => {
            "oscillator: pseudo-norm cos(pi(1/2 - q alpha)) Gamma(n + 1 - q alpha) / n!, \
             |N| = [n! / (Gamma(n + 1 - q alpha) cos(pi(1/2 - alpha)))]^(1/2), valid for 0 < alpha < 1"
        }
        Family::Gpt => {
            "gpt: pseudo-norm 2 cos(pi(lambda + 1/2)) I_n with \
             I_0 = 2^(lambda+mu+1) Gamma(-lambda-mu-1) Gamma(lambda+1) / Gamma(-mu) from the substitution s = 1/t; \
             I_n for n >= 1 by quadrature; valid for A + 1/2 < B < A + 3/2"
        }
        Family::Scarf => {
            "scarf: n = 0 pseudo-norms pi Gamma(2A) / (2^(2A-1) Gamma(A-B+1/2) Gamma(A+B+1/2)) for q = +1 and \
             pi Gamma(2B-1) / (2^(2B-2) Gamma(B-A-1/2) Gamma(B+A+1/2)) for q = -1, from tan y = sinh x"
        }
    };
    let command = match cfg.command {
        CommandKind::Norm => "norm: quadrature pseudo-norm along the real line compared with the closed form",
        CommandKind::Gram => {
            "gram: pseudo-inner-products of numerically normalized states; distinct real energies force zeros"
        }
        CommandKind::Evolve => {
            "evolve: conservation of sum psi2*(-x,t) psi1(x,t) dx and the continuity law dP/dt + dJ/dx = 0 \
             with P = psi*(-x,t) psi(x,t)"
        }
        CommandKind::Check => {
            "check: contour-shift invariance of the oscillator pseudo-norm (Cauchy) and the PT phase \
             u*(-x) = e^{i phi} u(x)"
        }
    };
    vec![family.to_string(), command.to_string()]
}

/// Rejects states whose normalization window is violated, unless the run
/// is numeric-only.
fn check_windows(model: &Model<f64>, cfg: &RunConfig) -> Result<(), CliError> {
    for &label in &cfg.labels {
        model.check_label(label)?;
        if !cfg.numeric_only {
            analytic_norm_mag(model, label, None)?;
        }
    }
    Ok(())
}

pub fn cmd_norm(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.model.build()?;
    check_windows(&model, cfg)?;
    let mut notes = Vec::new();
    let mut entries = Vec::with_capacity(cfg.labels.len());
    for &label in &cfg.labels {
        let state = model.state(label)?;
        let r = refined_pseudo_norm(&state, cfg.tol)?;
        let s = r.value;
        let q = label.q.as_i8();
        let measured_sign: i8 = if s.re > 0.0 { 1 } else { -1 };
        if is_non_real(&r, cfg.tol) {
            let msg = format!("{label}: pseudo-norm {s} is not real within the error estimate");
            if !cfg.numeric_only {
                return Err(CliError::Numerical(msg));
            }
            notes.push(msg);
        }
        if measured_sign != q {
            let msg = format!("{label}: measured pseudo-norm sign {measured_sign:+} differs from q = {q:+}");
            if !cfg.numeric_only {
                return Err(CliError::Numerical(msg));
            }
            notes.push(msg);
        }
        let numeric_norm_mag = s.re.abs().powf(-0.5);
        let numeric_norm_err = 0.5 * numeric_norm_mag * r.abs_err / s.re.abs();

        let (mut analytic_pseudo_norm, mut analytic_norm) = (None, None);
        if !cfg.numeric_only {
            let aux = match (&model, label.n) {
                (Model::Gpt(_), n) if n > 0 => {
                    let (lam, mu) = model.jacobi_params(label.q);
                    Some(jacobi_weight_integral(lam, mu, n, cfg.tol)?)
                }
                _ => None,
            };
            analytic_pseudo_norm = closed_form_pseudo_norm(&model, label, aux)?;
            analytic_norm = match analytic_norm_mag(&model, label, aux)? {
                NormMag::Resolved(m) => Some(m),
                NormMag::Unresolved => {
                    notes.push(format!("{label}: no closed-form |N|; numeric value only"));
                    None
                }
            };
        }
        entries.push(NormEntry {
            label,
            energy: state.energy(),
            raw_pseudo_norm: s,
            raw_abs_err: r.abs_err,
            measured_sign,
            numeric_norm_mag,
            numeric_norm_err,
            analytic_pseudo_norm,
            analytic_norm_mag: analytic_norm,
            rel_deviation: analytic_norm.map(|a| (numeric_norm_mag - a).abs() / a),
        });
    }
    Ok((Results::Norm(NormResults { entries }), notes))
}

pub fn cmd_gram(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.model.build()?;
    check_windows(&model, cfg)?;
    let g = gram(&model, &cfg.labels, cfg.tol)?;
    let quasi_parities: Vec<i8> = cfg.labels.iter().map(|l| l.q.as_i8()).collect();
    let diagonal_deviation = g
        .diagonal()
        .iter()
        .zip(&quasi_parities)
        .fold(0.0_f64, |m, (d, &q)| m.max((d - Complex64::new(q as f64, 0.0)).norm()));
    Ok((
        Results::Gram(GramResults {
            max_off_diagonal: g.max_off_diagonal(),
            labels: g.labels,
            values: g.values,
            abs_err: g.abs_err,
            quasi_parities,
            diagonal_deviation,
            tol: cfg.tol,
        }),
        Vec::new(),
    ))
}

fn normalized_state(state: Eigenstate<f64>, tol: f64) -> Result<Eigenstate<f64>, CliError> {
    match state.norm_mag() {
        NormMag::Resolved(_) => Ok(state),
        NormMag::Unresolved => Ok(normalize(&state, tol)?),
    }
}

pub fn cmd_evolve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.model.build()?;
    let mut notes = Vec::new();
    let mut terms = Vec::with_capacity(cfg.labels.len());
    let mut components = Vec::with_capacity(cfg.labels.len());
    for (&label, &coefficient) in cfg.labels.iter().zip(&cfg.coeffs) {
        let state = normalized_state(model.state(label)?, cfg.tol)?;
        components.push(Component {
            label,
            coefficient,
            norm_mag: state.norm_mag().resolved().expect("normalized above"),
        });
        terms.push((coefficient, state));
    }
    let initial = Superposition::new(terms)?;

    let grid = Grid::new(cfg.grid_half_width, cfg.points)?;
    if cfg.dt > 10.0 * grid.dx() * grid.dx() {
        notes.push(format!(
            "dt = {} exceeds 10 dx^2 = {}; stable but with larger phase error",
            cfg.dt,
            10.0 * grid.dx() * grid.dx()
        ));
    }
    let prop = Propagator::new(grid, &model, cfg.dt)?;
    let psi0 = GridWavefunction::sample(grid, &initial)?;
    let s0 = pseudo_overlap(&psi0, &psi0)?;
    let peak0 = psi0.max_abs();

    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let out_dir: Option<&Path> = cfg.out.as_deref();
    let mut series: Vec<OverlapPoint<f64>> = Vec::new();
    let mut snapshot_files = Vec::new();
    let (mut drift, mut max_growth) = (0.0_f64, 1.0_f64);
    let mut k = 0usize;
    prop.run(&psi0, cfg.steps, 1, |s| {
        let st = pseudo_overlap(s, s)?;
        drift = drift.max((st - s0).norm());
        max_growth = max_growth.max(s.max_abs() / peak0);
        if k.is_multiple_of(cfg.snapshot_every) || k == cfg.steps {
            series.push(OverlapPoint { t: s.t(), value: st });
            if let Some(dir) = out_dir {
                let name = format!("snapshot_{k:06}.csv");
                write_snapshot_csv(&dir.join(&name), s)?;
                snapshot_files.push(name);
            }
        }
        k += 1;
        Ok(())
    })?;
    let overlap_file = match out_dir {
        Some(dir) => {
            write_overlap_csv(&dir.join("overlap.csv"), &series)?;
            Some("overlap.csv".to_string())
        }
        None => None,
    };

    // Three levels ending at the requested resolution when it divides
    // evenly, otherwise starting from it.
    let t_end = cfg.dt * cfg.steps as f64;
    let coarsen = (cfg.points - 1).is_multiple_of(4) && cfg.steps.is_multiple_of(4) && (cfg.points - 1) / 4 + 1 >= 16;
    let setup = if coarsen {
        RefinementSetup {
            x_max: cfg.grid_half_width,
            base_points: (cfg.points - 1) / 4 + 1,
            base_dt: cfg.dt * 4.0,
            t_end,
            levels: 3,
        }
    } else {
        notes.push("grid does not coarsen by 4; refinement levels start at the requested grid".into());
        RefinementSetup {
            x_max: cfg.grid_half_width,
            base_points: cfg.points,
            base_dt: cfg.dt,
            t_end,
            levels: 3,
        }
    };
    let refinement = refinement_study(&setup, &model, &initial)?;
    let orders = measured_orders(&refinement);

    Ok((
        Results::Evolve(EvolveResults {
            components,
            dx: grid.dx(),
            t_end,
            s0,
            drift,
            max_growth,
            snapshot_files,
            overlap_file,
            refinement,
            orders,
        }),
        notes,
    ))
}

pub fn cmd_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.model.build()?;
    let mut notes = Vec::new();
    let mut entries = Vec::with_capacity(cfg.labels.len());
    for &label in &cfg.labels {
        let state = model.state(label)?;
        let fit = fit_pt_phase(&state, cfg.grid_half_width, cfg.points)?;
        let analytic_phi = state.pt_phase();
        let (c2, shift_deviation) = match &model {
            Model::Oscillator(p) => {
                let c2 = cfg.c2.unwrap_or(p.c() + 1.0);
                (Some(c2), Some(contour_shift_check(p, label, c2, cfg.tol)?))
            }
            _ => {
                if cfg.c2.is_some() {
                    return Err(CliError::Validation(format!(
                        "--c2 applies to the oscillator model only, not {}",
                        model.family().name()
                    )));
                }
                (None, None)
            }
        };
        if fit.points_used < 3 {
            notes.push(format!("{label}: phase fit used only {} points", fit.points_used));
        }
        entries.push(CheckEntry {
            label,
            analytic_phi,
            fitted_phi: fit.phi,
            phase_deviation: angle_distance(fit.phi, analytic_phi),
            modulus_deviation: fit.modulus_dev,
            fit_points: fit.points_used,
            c2,
            shift_deviation,
        });
    }
    Ok((Results::Check(CheckResults { entries }), notes))
}
