use num_complex::Complex;

use crate::models::Wavefunction;
use crate::scalar::{from_usize, Real};

use super::DynamicsError;

/// Boundary samples must be at most this fraction of `max|ψ|`.
pub const BOUNDARY_RATIO: f64 = 1e-8;

/// Uniform symmetric grid on `[-x_max, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    x_max: T,
    num_points: usize,
    dx: T,
}

impl<T: Real> Grid<T> {
    pub fn new(x_max: T, num_points: usize) -> Result<Self, DynamicsError> {
        if num_points < 16 {
            return Err(DynamicsError::Grid(format!("num_points >= 16, got {num_points}")));
        }
        if !(x_max > T::zero()) || !x_max.is_finite() {
            return Err(DynamicsError::Grid(format!("half-width > 0, got {x_max}")));
        }
        let dx = (x_max + x_max) / from_usize::<T>(num_points - 1);
        Ok(Self { x_max, num_points, dx })
    }

    pub fn x_min(&self) -> T {
        -self.x_max
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn dx(&self) -> T {
        self.dx
    }

    /// Grid abscissa. Computed from the nearer wall so that `x(i) = -x(N-1-i)`
    /// holds exactly in floating point.
    pub fn x(&self, i: usize) -> T {
        let last = self.num_points - 1;
        if 2 * i <= last {
            -self.x_max + from_usize::<T>(i) * self.dx
        } else {
            self.x_max - from_usize::<T>(last - i) * self.dx
        }
    }

    /// Index of the mirror point `-x_i`.
    #[inline]
    pub fn mirror(&self, i: usize) -> usize {
        self.num_points - 1 - i
    }

    pub fn points(&self) -> Vec<T> {
        (0..self.num_points).map(|i| self.x(i)).collect()
    }

    /// Same box sampled `2^k` times more finely.
    pub fn refined(&self, k: u32) -> Result<Self, DynamicsError> {
        Self::new(self.x_max, (self.num_points - 1) * (1usize << k) + 1)
    }

    pub(crate) fn same_as(&self, other: &Self) -> bool {
        self.num_points == other.num_points && self.x_max == other.x_max
    }
}

/// Samples of `ψ(x, t)` on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction<T> {
    grid: Grid<T>,
    samples: Vec<Complex<T>>,
    t: T,
}

impl<T: Real> GridWavefunction<T> {
    /// Validated constructor: samples finite and negligible at both walls.
    pub fn new(grid: Grid<T>, samples: Vec<Complex<T>>, t: T) -> Result<Self, DynamicsError> {
        let psi = Self::unchecked(grid, samples, t)?;
        let peak = psi.max_abs();
        if !(peak > T::zero()) {
            return Err(DynamicsError::Precondition("wavefunction is identically zero".into()));
        }
        let edge = psi.samples[0].norm().max(psi.samples[grid.num_points - 1].norm());
        let ratio = (edge / peak).to_f64().unwrap_or(f64::INFINITY);
        if ratio > BOUNDARY_RATIO {
            return Err(DynamicsError::BoundaryNotSmall {
                ratio,
                limit: BOUNDARY_RATIO,
            });
        }
        Ok(psi)
    }

    /// Length and finiteness checks only; used for propagated snapshots.
    pub(crate) fn unchecked(grid: Grid<T>, samples: Vec<Complex<T>>, t: T) -> Result<Self, DynamicsError> {
        if samples.len() != grid.num_points {
            return Err(DynamicsError::GridMismatch(format!(
                "{} samples for {} grid points",
                samples.len(),
                grid.num_points
            )));
        }
        if let Some(i) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(DynamicsError::NonFinite(i));
        }
        Ok(Self { grid, samples, t })
    }

    /// Samples a wavefunction at `t = 0`.
    pub fn sample<W: Wavefunction<T> + ?Sized>(grid: Grid<T>, psi: &W) -> Result<Self, DynamicsError> {
        let samples = (0..grid.num_points).map(|i| psi.value(grid.x(i))).collect();
        Self::new(grid, samples, T::zero())
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn max_abs(&self) -> T {
        self.samples.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// `ψ*(-x_i)` for every grid point.
    pub fn pt_reflected(&self) -> Vec<Complex<T>> {
        self.samples.iter().rev().map(|z| z.conj()).collect()
    }

    /// Largest pointwise deviation from a reference function at this time.
    pub fn max_error<F: Fn(T) -> Complex<T>>(&self, reference: F) -> T {
        self.samples
            .iter()
            .enumerate()
            .fold(T::zero(), |m, (i, z)| m.max((*z - reference(self.grid.x(i))).norm()))
    }
}
