//! PT pseudo-inner-products `∫ u2*(-x) u1(x) dx`, pseudo-norm normalization,
//! Gram matrices, PT-phase fits and the eigenvalue-pair classification.
//!
//! Integrals over the real line are truncated at `±X_cut`, the point past
//! which the integrand stays below `tol / 100`, inflated by 1.5. The window
//! is found by scanning outward; integrands that never fall below the bound
//! are reported as divergent.

mod classify;
mod gram;
mod phase;
pub mod quad;
mod weight;

pub use classify::{classify_pair, PairClass};
pub use gram::{gram, Gram};
pub use phase::{angle_distance, fit_pt_phase, PhaseFit};
pub use quad::{QuadOptions, QuadResult};
pub use weight::jacobi_weight_integral;

use num_complex::Complex;
use thiserror::Error;

use crate::models::Model;
use crate::models::{Decay, Eigenstate, ModelError, OscillatorParams, StateLabel, Wavefunction};
use crate::scalar::{lit, Real};

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

const SCAN_STEP: f64 = 0.5;
const SCAN_LIMIT: f64 = 600.0;
const CUTOFF_INFLATION: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PseudoNormError {
    #[error(
        "quadrature did not reach the error target: estimated error {abs_err:e} after {evaluations} evaluations{}",
        if *roundoff { " (limited by rounding in the integrand)" } else { "" }
    )]
    NoConvergence {
        evaluations: usize,
        abs_err: f64,
        roundoff: bool,
    },
    #[error("integrand does not decay: {0}")]
    Divergent(String),
    #[error("measured pseudo-norm sign {measured:+} differs from q = {expected:+}")]
    SignMismatch { expected: i8, measured: i8, value: f64 },
    #[error("pseudo-norm is not real: {re:e} {im:+e}i")]
    NonRealNorm { re: f64, im: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("gram entry ({row}, {col}): {source}")]
    GramEntry {
        row: usize,
        col: usize,
        #[source]
        source: Box<PseudoNormError>,
    },
}

fn f64_of<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Truncation half-width for an integrand with the given envelope.
pub fn truncation_half_width<T, F>(integrand: &F, decay: Decay<T>, tol: T) -> Result<T, PseudoNormError>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if !decay.decays() {
        return Err(PseudoNormError::Divergent(format!("envelope {decay:?} does not decay")));
    }
    let bound = tol / lit(100.0);
    let below = |x: T| {
        let a = integrand(x).norm();
        let b = integrand(-x).norm();
        a <= bound && b <= bound
    };
    let step = lit::<T>(SCAN_STEP);
    let limit = lit::<T>(SCAN_LIMIT);
    let mut x = T::one();
    while x <= limit {
        if below(x) && below(x + step) && below(x + step + step) {
            let cut = x * lit(CUTOFF_INFLATION);
            return if below(cut) {
                Ok(cut)
            } else {
                Err(PseudoNormError::Divergent(format!(
                    "integrand exceeds bound at ±{}",
                    f64_of(cut)
                )))
            };
        }
        x = x + step;
    }
    Err(PseudoNormError::Divergent(format!(
        "integrand above {:e} out to |x| = {SCAN_LIMIT}",
        f64_of(bound)
    )))
}

/// Integrates a complex function over the real line, truncated by
/// [`truncation_half_width`].
pub fn integrate_line<T, F>(integrand: F, decay: Decay<T>, tol: T) -> Result<QuadResult<T>, PseudoNormError>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if !(tol > T::zero()) {
        return Err(PseudoNormError::Precondition("tol > 0".into()));
    }
    let cut = truncation_half_width(&integrand, decay, tol)?;
    // tail beyond the cut, bounded by the envelope
    let edge = integrand(cut).norm() + integrand(-cut).norm();
    let tail = match decay {
        Decay::Gaussian => edge / (cut + cut),
        Decay::Exponential(rate) => edge / rate,
    };
    let opts = QuadOptions::with_tol((tol - tail).max(tol * lit(0.5)))
        .panels((cut + cut).ceil().to_usize().unwrap_or(8).max(8));
    match quad::integrate(&integrand, -cut, cut, &opts) {
        Ok(mut r) => {
            r.abs_err = r.abs_err + tail;
            Ok(r)
        }
        Err(fail) => Err(PseudoNormError::NoConvergence {
            evaluations: fail.best.evaluations,
            abs_err: f64_of(fail.best.abs_err),
            roundoff: fail.roundoff,
        }),
    }
}

/// `∫ u2*(-x) u1(x) dx` to absolute error `tol`.
pub fn pseudo_inner<T, W1, W2>(u1: &W1, u2: &W2, tol: T) -> Result<QuadResult<T>, PseudoNormError>
where
    T: Real,
    W1: Wavefunction<T> + ?Sized,
    W2: Wavefunction<T> + ?Sized,
{
    let integrand = |x: T| u2.value(-x).conj() * u1.value(x);
    integrate_line(integrand, u1.decay().product(u2.decay()), tol)
}

/// Outcome of a numeric normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization<T> {
    pub state: Eigenstate<T>,
    /// Pseudo-norm of the unit-coefficient eigenfunction.
    pub raw: QuadResult<T>,
}

/// Sets `|N|` so that the pseudo-norm equals the quasi-parity `q`.
pub fn normalize<T: Real>(state: &Eigenstate<T>, tol: T) -> Result<Eigenstate<T>, PseudoNormError> {
    normalize_detailed(state, tol).map(|n| n.state)
}

/// Pseudo-norm of the unit-coefficient state, re-integrated at a tighter
/// tolerance when `|S| < 1` so that `S / |S|` keeps relative error `tol`.
pub fn refined_pseudo_norm<T: Real>(state: &Eigenstate<T>, tol: T) -> Result<QuadResult<T>, PseudoNormError> {
    let raw = state.raw();
    let r = pseudo_inner(&raw, &raw, tol)?;
    let scale = r.value.re.abs();
    if scale < T::one() && scale > T::zero() {
        pseudo_inner(&raw, &raw, tol * scale * lit(0.5))
    } else {
        Ok(r)
    }
}

/// Whether `Im S` exceeds what quadrature error can explain.
pub fn is_non_real<T: Real>(r: &QuadResult<T>, tol: T) -> bool {
    r.value.im.abs() > lit::<T>(100.0) * tol * r.value.re.abs() + lit::<T>(10.0) * r.abs_err
}

pub fn normalize_detailed<T: Real>(state: &Eigenstate<T>, tol: T) -> Result<Normalization<T>, PseudoNormError> {
    let r = refined_pseudo_norm(state, tol)?;
    let s = r.value;
    if is_non_real(&r, tol) {
        return Err(PseudoNormError::NonRealNorm {
            re: f64_of(s.re),
            im: f64_of(s.im),
        });
    }
    let expected = state.label().q.as_i8();
    let measured: i8 = if s.re > T::zero() { 1 } else { -1 };
    if s.re == T::zero() || measured != expected {
        return Err(PseudoNormError::SignMismatch {
            expected,
            measured,
            value: f64_of(s.re),
        });
    }
    let mag = s.re.abs().powf(lit(-0.5));
    Ok(Normalization {
        state: state.with_norm_mag(mag),
        raw: r,
    })
}

/// Pseudo-norm of the unit-coefficient eigenfunction of `model` at `label`.
pub fn raw_pseudo_norm<T: Real>(model: &Model<T>, label: StateLabel, tol: T) -> Result<QuadResult<T>, PseudoNormError> {
    let state = model.state(label)?;
    let raw = state.raw();
    pseudo_inner(&raw, &raw, tol)
}

/// `|S(c) - S(c2)|` for the unit-coefficient oscillator state at two
/// imaginary shifts; analyticity of the integrand predicts zero.
pub fn contour_shift_check<T: Real>(
    params: &OscillatorParams<T>,
    label: StateLabel,
    c2: T,
    tol: T,
) -> Result<T, PseudoNormError> {
    if !(c2 > T::zero()) {
        return Err(PseudoNormError::Precondition("second shift c2 > 0".into()));
    }
    if c2 == params.c() {
        return Err(PseudoNormError::Precondition("second shift must differ from c".into()));
    }
    let shifted = params.with_shift(c2)?;
    let s1 = raw_pseudo_norm(&Model::Oscillator(*params), label, tol)?;
    let s2 = raw_pseudo_norm(&Model::Oscillator(shifted), label, tol)?;
    Ok((s1.value - s2.value).norm())
}
