use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::{lit, Real};

use super::{DynamicsError, GridWavefunction};

/// PT pseudo-density `P = ψ*(-x) ψ(x)` and its current
/// `J = -i [ψ*(-x) ψ'(x) - ψ(x) ∂_x ψ*(-x)]` at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPair<T> {
    pub p_pt: Vec<Complex<T>>,
    pub j_pt: Vec<Complex<T>>,
    pub t: T,
}

/// One sample of a pseudo-overlap time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapPoint<T> {
    pub t: T,
    pub value: Complex<T>,
}

/// Centered differences inside, second-order one-sided at the two ends.
fn derivative<T: Real>(f: &[Complex<T>], dx: T) -> Vec<Complex<T>> {
    let n = f.len();
    let inv2 = T::one() / (dx + dx);
    let (three, four) = (lit::<T>(3.0), lit::<T>(4.0));
    let mut d = Vec::with_capacity(n);
    d.push((f[0] * (-three) + f[1] * four - f[2]) * inv2);
    for i in 1..n - 1 {
        d.push((f[i + 1] - f[i - 1]) * inv2);
    }
    d.push((f[n - 1] * three - f[n - 2] * four + f[n - 3]) * inv2);
    d
}

pub fn densities<T: Real>(psi: &GridWavefunction<T>) -> DensityPair<T> {
    let dx = psi.grid().dx();
    let s = psi.samples();
    let r = psi.pt_reflected();
    let ds = derivative(s, dx);
    let dr = derivative(&r, dx);
    let minus_i = Complex::new(T::zero(), -T::one());
    let p_pt = r.iter().zip(s).map(|(a, b)| a * b).collect();
    let j_pt = (0..s.len()).map(|i| minus_i * (r[i] * ds[i] - s[i] * dr[i])).collect();
    DensityPair { p_pt, j_pt, t: psi.t() }
}

fn check_same_grid<T: Real>(a: &GridWavefunction<T>, b: &GridWavefunction<T>) -> Result<(), DynamicsError> {
    if a.grid().same_as(b.grid()) {
        Ok(())
    } else {
        Err(DynamicsError::GridMismatch(format!(
            "{} points on |x| <= {} vs {} points on |x| <= {}",
            a.grid().num_points(),
            a.grid().x_max(),
            b.grid().num_points(),
            b.grid().x_max()
        )))
    }
}

/// Max over interior points of `|(P(t+) - P(t-))/(2 dt) + ∂_x J(t)|` for
/// three equally spaced snapshots. Points whose stencil touches a one-sided
/// boundary derivative are excluded.
pub fn continuity_residual<T: Real>(snapshots: [&GridWavefunction<T>; 3]) -> Result<T, DynamicsError> {
    let [a, b, c] = snapshots;
    check_same_grid(a, b)?;
    check_same_grid(b, c)?;
    let (h1, h2) = (b.t() - a.t(), c.t() - b.t());
    if !(h1 > T::zero()) || (h2 - h1).abs() > lit::<T>(1e-9) * h1.max(T::one()) {
        return Err(DynamicsError::Precondition(format!(
            "snapshots equally spaced in time, got steps {h1} and {h2}"
        )));
    }
    let pa = densities(a).p_pt;
    let pc = densities(c).p_pt;
    let j = densities(b).j_pt;
    let dx = b.grid().dx();
    let n = j.len();
    let (inv_t, inv_x) = (T::one() / (h1 + h2), T::one() / (dx + dx));
    let mut worst = T::zero();
    for i in 2..n - 2 {
        let r = (pc[i] - pa[i]) * inv_t + (j[i + 1] - j[i - 1]) * inv_x;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Discrete pseudo-inner-product `Σ ψ2*(-x_i) ψ1(x_i) dx` at one time.
pub fn pseudo_overlap<T: Real>(
    psi1: &GridWavefunction<T>,
    psi2: &GridWavefunction<T>,
) -> Result<Complex<T>, DynamicsError> {
    check_same_grid(psi1, psi2)?;
    let s2 = psi2.samples();
    let last = s2.len() - 1;
    let sum = psi1
        .samples()
        .iter()
        .enumerate()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (i, z)| {
            acc + s2[last - i].conj() * z
        });
    Ok(sum * psi1.grid().dx())
}

/// `S(t) = Σ ψ2*(-x_i, t) ψ1(x_i, t) dx` along two runs with matching stamps.
pub fn conserved_overlap<T: Real>(
    run1: &[GridWavefunction<T>],
    run2: &[GridWavefunction<T>],
) -> Result<Vec<OverlapPoint<T>>, DynamicsError> {
    if run1.len() != run2.len() {
        return Err(DynamicsError::GridMismatch(format!(
            "{} snapshots vs {}",
            run1.len(),
            run2.len()
        )));
    }
    run1.iter()
        .zip(run2)
        .map(|(a, b)| {
            let tol = lit::<T>(1e-12) * a.t().abs().max(T::one());
            if (a.t() - b.t()).abs() > tol {
                return Err(DynamicsError::GridMismatch(format!(
                    "time stamps {} and {}",
                    a.t(),
                    b.t()
                )));
            }
            Ok(OverlapPoint {
                t: a.t(),
                value: pseudo_overlap(a, b)?,
            })
        })
        .collect()
}

/// `max_t |S(t) - S(0)|`.
pub fn max_drift<T: Real>(series: &[OverlapPoint<T>]) -> T {
    match series.first() {
        None => T::zero(),
        Some(first) => series
            .iter()
            .fold(T::zero(), |m, p| m.max((p.value - first.value).norm())),
    }
}
