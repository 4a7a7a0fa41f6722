use num_complex::Complex;

use crate::models::Potential;
use crate::scalar::{from_usize, lit, Real};

use super::{DynamicsError, Grid, GridWavefunction};

/// `max|ψ|` growth beyond this factor aborts the run.
pub const BLOWUP_FACTOR: f64 = 1e6;

/// Crank-Nicolson stepper `(1 + i dt H/2) ψ' = (1 - i dt H/2) ψ` for
/// `H = -d²/dx² + V` with zero Dirichlet walls.
///
/// The tridiagonal left-hand side is constant in time, so its forward
/// elimination is computed once and each step costs two sweeps.
#[derive(Debug, Clone)]
pub struct Propagator<T> {
    grid: Grid<T>,
    dt: T,
    potential: Vec<Complex<T>>,
    // Off-diagonal of the left-hand operator; the right-hand one is `-off`.
    off: Complex<T>,
    rhs_diag: Vec<Complex<T>>,
    c_prime: Vec<Complex<T>>,
    inv_den: Vec<Complex<T>>,
}

impl<T: Real> Propagator<T> {
    pub fn new<V: Potential<T> + ?Sized>(grid: Grid<T>, potential: &V, dt: T) -> Result<Self, DynamicsError> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(DynamicsError::Precondition(format!("dt > 0, got {dt}")));
        }
        let dx2 = grid.dx() * grid.dx();
        if dt > lit::<T>(10.0) * dx2 {
            log::warn!(
                "dt = {dt} exceeds 10 dx^2 = {}; the scheme stays stable but phase errors grow",
                lit::<T>(10.0) * dx2
            );
        }
        let v: Vec<Complex<T>> = (0..grid.num_points()).map(|i| potential.value(grid.x(i))).collect();
        if let Some(i) = v.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(DynamicsError::Precondition(format!(
                "potential is not finite at x = {}",
                grid.x(i)
            )));
        }

        let half = Complex::new(T::zero(), dt / lit(2.0));
        let two_over = lit::<T>(2.0) / dx2;
        let off = -half / dx2;
        let interior = grid.num_points() - 2;
        let mut rhs_diag = Vec::with_capacity(interior);
        let mut c_prime = Vec::with_capacity(interior);
        let mut inv_den = Vec::with_capacity(interior);
        let one = Complex::new(T::one(), T::zero());
        for k in 0..interior {
            let h = v[k + 1] + two_over;
            let a = one + half * h;
            rhs_diag.push(one - half * h);
            let den = if k == 0 { a } else { a - off * c_prime[k - 1] };
            let inv = one / den;
            inv_den.push(inv);
            c_prime.push(off * inv);
        }
        Ok(Self {
            grid,
            dt,
            potential: v,
            off,
            rhs_diag,
            c_prime,
            inv_den,
        })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// Potential sampled at the grid points.
    pub fn potential(&self) -> &[Complex<T>] {
        &self.potential
    }

    /// Advances `psi` by one step in place; `work` is scratch of any length.
    pub fn step(&self, psi: &mut [Complex<T>], work: &mut Vec<Complex<T>>) {
        let n = self.grid.num_points();
        let m = n - 2;
        work.clear();
        work.resize(m, Complex::new(T::zero(), T::zero()));
        let zero = Complex::new(T::zero(), T::zero());
        // Right-hand side with the walls held at zero.
        for k in 0..m {
            let left = if k == 0 { zero } else { psi[k] };
            let right = if k + 1 == m { zero } else { psi[k + 2] };
            work[k] = self.rhs_diag[k] * psi[k + 1] - self.off * (left + right);
        }
        work[0] = work[0] * self.inv_den[0];
        for k in 1..m {
            work[k] = (work[k] - self.off * work[k - 1]) * self.inv_den[k];
        }
        for k in (0..m - 1).rev() {
            work[k] = work[k] - self.c_prime[k] * work[k + 1];
        }
        psi[0] = zero;
        psi[n - 1] = zero;
        psi[1..n - 1].copy_from_slice(work);
    }

    /// Runs `steps` steps from `psi0`, handing every `every`-th snapshot
    /// (including the initial one and the last) to `visit`.
    pub fn run<F>(
        &self,
        psi0: &GridWavefunction<T>,
        steps: usize,
        every: usize,
        mut visit: F,
    ) -> Result<GridWavefunction<T>, DynamicsError>
    where
        F: FnMut(&GridWavefunction<T>) -> Result<(), DynamicsError>,
    {
        if !psi0.grid().same_as(&self.grid) {
            return Err(DynamicsError::GridMismatch(
                "initial state and propagator grids differ".into(),
            ));
        }
        if every == 0 {
            return Err(DynamicsError::Precondition("snapshot stride >= 1".into()));
        }
        visit(psi0)?;
        let limit = psi0.max_abs() * lit(BLOWUP_FACTOR);
        let mut samples = psi0.samples().to_vec();
        let mut work = Vec::new();
        let t0 = psi0.t();
        let mut last = psi0.clone();
        for k in 1..=steps {
            self.step(&mut samples, &mut work);
            let peak = samples.iter().fold(T::zero(), |m, z| m.max(z.norm()));
            if !(peak <= limit) {
                let growth = (peak / psi0.max_abs()).to_f64().unwrap_or(f64::INFINITY);
                return Err(DynamicsError::BlowUp { step: k, growth });
            }
            if k % every == 0 || k == steps {
                last = GridWavefunction::unchecked(self.grid, samples.clone(), t0 + from_usize::<T>(k) * self.dt)?;
                visit(&last)?;
            }
        }
        Ok(last)
    }

    /// All snapshots `t = k dt`, `k = 0..=steps`.
    pub fn evolve(&self, psi0: &GridWavefunction<T>, steps: usize) -> Result<Vec<GridWavefunction<T>>, DynamicsError> {
        self.evolve_every(psi0, steps, 1)
    }

    /// Snapshots at every `every`-th step plus the final one.
    pub fn evolve_every(
        &self,
        psi0: &GridWavefunction<T>,
        steps: usize,
        every: usize,
    ) -> Result<Vec<GridWavefunction<T>>, DynamicsError> {
        let mut out = Vec::with_capacity(steps / every.max(1) + 2);
        self.run(psi0, steps, every, |s| {
            out.push(s.clone());
            Ok(())
        })?;
        Ok(out)
    }
}
