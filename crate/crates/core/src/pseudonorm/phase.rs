use crate::models::Eigenstate;
use crate::scalar::{from_usize, lit, Real};

use super::PseudoNormError;

/// Least-squares fit of `e^{i phi}` to `u*(-x)/u(x)` over a sample grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFit<T> {
    /// Fitted phase in `[0, 2pi)`.
    pub phi: T,
    /// `max ||u*(-x)/u(x)| - 1|` over the points used.
    pub modulus_dev: T,
    /// `max |u*(-x)/u(x) - e^{i phi}|` over the points used.
    pub residual: T,
    pub points_used: usize,
}

/// Fits the PT phase on `points` samples of `[-half_width, half_width]`,
/// skipping samples where `|u| < 1e-6 max|u|`.
///
/// Weighting each ratio by `|u(x)|^2` makes the minimizer closed-form:
/// `phi = arg Σ u*(-x) u*(x)`.
pub fn fit_pt_phase<T: Real>(
    state: &Eigenstate<T>,
    half_width: T,
    points: usize,
) -> Result<PhaseFit<T>, PseudoNormError> {
    if points < 3 || !(half_width > T::zero()) {
        return Err(PseudoNormError::Precondition(
            "phase fit needs at least 3 points on a positive half-width".into(),
        ));
    }
    let raw = state.raw();
    let step = (half_width + half_width) / from_usize::<T>(points - 1);
    let xs: Vec<T> = (0..points).map(|i| -half_width + from_usize::<T>(i) * step).collect();
    let vals: Vec<_> = xs
        .iter()
        .map(|&x| {
            (
                crate::models::Wavefunction::value(&raw, x),
                crate::models::Wavefunction::value(&raw, -x),
            )
        })
        .collect();
    let peak = vals.iter().fold(T::zero(), |m, (u, _)| m.max(u.norm()));
    let floor = peak * lit(1e-6);
    let used: Vec<_> = vals
        .iter()
        .filter(|(u, _)| u.norm() >= floor && u.norm() > T::zero())
        .collect();
    if used.is_empty() {
        return Err(PseudoNormError::Precondition(
            "wavefunction vanishes on the fit grid".into(),
        ));
    }
    let acc = used
        .iter()
        .fold(num_complex::Complex::new(T::zero(), T::zero()), |a, (u, um)| {
            a + (um * u).conj()
        });
    let phi = crate::models::reduce_angle(acc.arg());
    let unit = num_complex::Complex::from_polar(T::one(), phi);
    let (mut modulus_dev, mut residual) = (T::zero(), T::zero());
    for (u, um) in &used {
        let r = um.conj() / u;
        modulus_dev = modulus_dev.max((r.norm() - T::one()).abs());
        residual = residual.max((r - unit).norm());
    }
    Ok(PhaseFit {
        phi,
        modulus_dev,
        residual,
        points_used: used.len(),
    })
}

/// Distance between two angles on the circle.
pub fn angle_distance<T: Real>(a: T, b: T) -> T {
    let two_pi = T::PI() + T::PI();
    let d = (a - b) % two_pi;
    let d = if d < T::zero() { d + two_pi } else { d };
    d.min(two_pi - d)
}
