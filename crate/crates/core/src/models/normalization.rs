//! Closed-form pseudo-norms and normalization magnitudes.

use crate::scalar::{from_usize, lit, Real};
use crate::specialfn::{gamma, sin_pi};

use super::{Model, ModelError, NormMag, QuasiParity, StateLabel};

fn fmt<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + lit(0.5))
}

fn window_error<T: Real>(model: &Model<T>) -> ModelError {
    match model {
        Model::Oscillator(p) => ModelError::NormInvalid {
            family: "oscillator",
            condition: "0 < alpha < 1",
            detail: format!("alpha = {}", fmt(p.alpha())),
        },
        Model::Gpt(p) => ModelError::NormInvalid {
            family: "gpt",
            condition: "A + 1/2 < B < A + 3/2",
            detail: format!("A = {}, B = {}", fmt(p.a()), fmt(p.b())),
        },
        Model::Scarf(_) => unreachable!("scarf has no parameter window"),
    }
}

/// `I_0 = 2^{lam+mu+1} Γ(-lam-mu-1) Γ(lam+1) / Γ(-mu)` for the weight
/// integral `∫_1^∞ (t-1)^lam (t+1)^mu dt`.
pub fn closed_form_jacobi_integral<T: Real>(lam: T, mu: T) -> Result<T, ModelError> {
    let two = lit::<T>(2.0);
    Ok(two.powf(lam + mu + T::one()) * gamma(-lam - mu - T::one())? * gamma(lam + T::one())? / gamma(-mu)?)
}

/// Pseudo-norm `∫ u*(-x) u(x) dx` of the eigenfunction with unit
/// coefficient, from the closed forms.
///
/// Returns `Ok(None)` where no closed form exists: gpt with `n > 0` and no
/// `weight_integral` supplied, and scarf with `n > 0`.
pub fn closed_form_pseudo_norm<T: Real>(
    model: &Model<T>,
    label: StateLabel,
    weight_integral: Option<T>,
) -> Result<Option<T>, ModelError> {
    model.check_label(label)?;
    let half = lit::<T>(0.5);
    let n = from_usize::<T>(label.n);
    match model {
        Model::Oscillator(p) => {
            if !p.norm_valid() {
                return Err(window_error(model));
            }
            let s = half - label.q.sign::<T>() * p.alpha();
            let value = cos_pi(s) * gamma(s + half + n)? / gamma(n + T::one())?;
            Ok(Some(value))
        }
        Model::Gpt(p) => {
            if !p.norm_valid() {
                return Err(window_error(model));
            }
            let (lam, mu) = model.jacobi_params(label.q);
            let i_n = match (label.n, weight_integral) {
                (0, _) => closed_form_jacobi_integral(lam, mu)?,
                (_, Some(v)) => v,
                (_, None) => return Ok(None),
            };
            Ok(Some(lit::<T>(2.0) * cos_pi(lam + half) * i_n))
        }
        Model::Scarf(p) => {
            if label.n > 0 {
                return Ok(None);
            }
            let (a, b) = (p.a(), p.b());
            let two = lit::<T>(2.0);
            let value = match label.q {
                QuasiParity::Plus => {
                    T::PI() * gamma(two * a)?
                        / (two.powf(two * a - T::one()) * gamma(a - b + half)? * gamma(a + b + half)?)
                }
                QuasiParity::Minus => {
                    T::PI() * gamma(two * b - T::one())?
                        / (two.powf(two * b - two) * gamma(b - a - half)? * gamma(b + a + half)?)
                }
            };
            Ok(Some(value))
        }
    }
}

/// Analytic `|N|` fixing the pseudo-norm to `q`.
///
/// For gpt with `n > 0` the weight integral `I_n` must be supplied in `aux`
/// (see `pseudonorm::jacobi_weight_integral`); without it, and for scarf
/// states with `n > 0`, the result is [`NormMag::Unresolved`].
pub fn analytic_norm_mag<T: Real>(
    model: &Model<T>,
    label: StateLabel,
    aux: Option<T>,
) -> Result<NormMag<T>, ModelError> {
    model.check_label(label)?;
    let half = lit::<T>(0.5);
    let n = from_usize::<T>(label.n);
    match model {
        Model::Oscillator(p) => {
            if !p.norm_valid() {
                return Err(window_error(model));
            }
            let alpha = p.alpha();
            let q = label.q.sign::<T>();
            let factorial = gamma(n + T::one())?;
            let mag = (factorial / (gamma(-q * alpha + n + T::one())? * cos_pi(half - alpha))).sqrt();
            Ok(NormMag::Resolved(mag))
        }
        Model::Gpt(p) => {
            if !p.norm_valid() {
                return Err(window_error(model));
            }
            let (lam, mu) = model.jacobi_params(label.q);
            let i_n = match (label.n, aux) {
                (0, _) => closed_form_jacobi_integral(lam, mu)?,
                (_, Some(v)) => v,
                (_, None) => return Ok(NormMag::Unresolved),
            };
            let c = cos_pi(p.a() - p.b() + T::one());
            Ok(NormMag::Resolved((lit::<T>(2.0) * c * i_n).powf(-half)))
        }
        Model::Scarf(p) => {
            if label.n > 0 {
                return Ok(NormMag::Unresolved);
            }
            let raw = closed_form_pseudo_norm(model, label, None)?.expect("n = 0 has a closed form");
            let q = label.q.sign::<T>();
            if raw * q <= T::zero() {
                return Err(ModelError::SignViolation {
                    q: label.q.as_i8(),
                    measured: if raw > T::zero() { 1 } else { -1 },
                    detail: format!(
                        "scarf q = -1 needs B - 1/2 + 2k < A < B + 1/2 + 2k; A = {}, B = {}",
                        fmt(p.a()),
                        fmt(p.b())
                    ),
                });
            }
            Ok(NormMag::Resolved((raw * q).powf(-half)))
        }
    }
}
