//! Grid time evolution of `i ψ_t = -ψ_xx + V(x) ψ` with a complex potential.
//!
//! The box is symmetric, `x_min = -x_max`, so `ψ(-x_i)` is the sample at the
//! mirrored index and the PT-reflected densities need no interpolation.
//! Evolution uses the trapezoidal (Crank-Nicolson) rule with Dirichlet walls.

mod export;
mod grid;
mod observables;
mod propagator;
mod refine;

pub use export::{write_overlap_csv, write_snapshot_csv, OVERLAP_COLUMNS, SNAPSHOT_COLUMNS};
pub use grid::{Grid, GridWavefunction, BOUNDARY_RATIO};
pub use observables::{
    conserved_overlap, continuity_residual, densities, max_drift, pseudo_overlap, DensityPair, OverlapPoint,
};
pub use propagator::{Propagator, BLOWUP_FACTOR};
pub use refine::{measured_orders, refinement_study, RefinementLevel, RefinementSetup};

use thiserror::Error;

use crate::models::ModelError;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("wavefunction has a non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("box too small: boundary |psi| is {ratio:.3e} of max|psi| (limit {limit:.0e})")]
    BoundaryNotSmall { ratio: f64, limit: f64 },
    #[error("max|psi| grew by {growth:.3e} at step {step}")]
    BlowUp { step: usize, growth: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("snapshot output failed: {0}")]
    Io(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[cfg(test)]
mod tests;
