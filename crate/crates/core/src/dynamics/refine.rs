use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::models::{Potential, Wavefunction};
use crate::scalar::{from_usize, Real};

use super::{continuity_residual, pseudo_overlap, DynamicsError, Grid, GridWavefunction, Propagator};

/// Coarsest level of a simultaneous `(dx, dt) -> (dx/2, dt/2)` study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementSetup<T> {
    pub x_max: T,
    pub base_points: usize,
    pub base_dt: T,
    pub t_end: T,
    pub levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementLevel<T> {
    pub points: usize,
    pub dx: T,
    pub dt: T,
    pub steps: usize,
    /// Continuity residual maximized over all interior points and times.
    pub residual: T,
    /// `max_t |S(t) - S(0)|` of the self pseudo-overlap.
    pub drift: T,
}

fn step_count<T: Real>(t_end: T, dt: T) -> Result<usize, DynamicsError> {
    let ratio = t_end / dt;
    let steps = ratio.round();
    if !(steps >= T::one()) || (ratio - steps).abs() > T::from_f64(1e-9).unwrap() * steps {
        return Err(DynamicsError::Precondition(format!(
            "t_end / dt must be a positive integer, got {ratio}"
        )));
    }
    Ok(steps.to_usize().unwrap())
}

fn run_level<T, V, W>(
    setup: &RefinementSetup<T>,
    k: usize,
    potential: &V,
    initial: &W,
) -> Result<RefinementLevel<T>, DynamicsError>
where
    T: Real,
    V: Potential<T> + ?Sized,
    W: Wavefunction<T> + ?Sized,
{
    let grid = Grid::new(setup.x_max, setup.base_points)?.refined(k as u32)?;
    let dt = setup.base_dt / from_usize::<T>(1usize << k);
    let steps = step_count(setup.t_end, dt)?;
    let prop = Propagator::new(grid, potential, dt)?;
    let psi0 = GridWavefunction::sample(grid, initial)?;
    let s0 = pseudo_overlap(&psi0, &psi0)?;

    let mut window: Vec<GridWavefunction<T>> = Vec::with_capacity(3);
    let mut residual = T::zero();
    let mut drift = T::zero();
    prop.run(&psi0, steps, 1, |s| {
        drift = drift.max((pseudo_overlap(s, s)? - s0).norm());
        if window.len() == 3 {
            window.remove(0);
        }
        window.push(s.clone());
        if window.len() == 3 {
            residual = residual.max(continuity_residual([&window[0], &window[1], &window[2]])?);
        }
        Ok(())
    })?;
    Ok(RefinementLevel {
        points: grid.num_points(),
        dx: grid.dx(),
        dt,
        steps,
        residual,
        drift,
    })
}

/// Evolves the same initial state on `setup.levels` successively halved
/// grids and time steps. Levels run concurrently; output order is fixed.
pub fn refinement_study<T, V, W>(
    setup: &RefinementSetup<T>,
    potential: &V,
    initial: &W,
) -> Result<Vec<RefinementLevel<T>>, DynamicsError>
where
    T: Real,
    V: Potential<T> + ?Sized,
    W: Wavefunction<T> + ?Sized,
{
    if setup.levels < 2 {
        return Err(DynamicsError::Precondition(
            "a refinement study needs at least two levels".into(),
        ));
    }
    (0..setup.levels)
        .into_par_iter()
        .map(|k| run_level(setup, k, potential, initial))
        .collect()
}

/// Observed orders `log2(r_k / r_{k+1})` between consecutive levels.
pub fn measured_orders<T: Real>(levels: &[RefinementLevel<T>]) -> Vec<T> {
    levels
        .windows(2)
        .map(|w| (w[0].residual / w[1].residual).log2())
        .collect()
}
