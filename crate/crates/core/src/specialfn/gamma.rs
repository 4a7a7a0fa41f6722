use crate::scalar::{lit, Real};

use super::SpecialFnError;

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi * x)` with the argument reduced exactly before scaling by pi, so
/// that large |x| does not smear the zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = lit::<T>(2.0);
    // r in [-1, 1]; the subtraction is exact in binary floating point
    let r = x - two * (x / two).round();
    if r == T::zero() || r.abs() == T::one() {
        return T::zero();
    }
    (T::PI() * r).sin()
}

/// Real Gamma function.
///
/// Positive arguments use the Lanczos series directly; arguments below one
/// half go through the reflection identity `Γ(x) Γ(1-x) = π / sin(πx)`.
pub fn gamma<T: Real>(x: T) -> Result<T, SpecialFnError> {
    let xf = x.to_f64().unwrap_or(f64::NAN);
    if !x.is_finite() {
        return Err(SpecialFnError::NonFinite(xf));
    }
    if x <= T::zero() && x == x.round() {
        return Err(SpecialFnError::Pole(xf));
    }
    let half = lit::<T>(0.5);
    if x < half {
        let g = lanczos(T::one() - x);
        return Ok(T::PI() / (sin_pi(x) * g));
    }
    Ok(lanczos(x))
}

fn lanczos<T: Real>(x: T) -> T {
    let half = lit::<T>(0.5);
    let xm1 = x - T::one();
    let mut series = lit::<T>(LANCZOS_COEF[0]);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series = series + lit::<T>(*c) / (xm1 + lit::<T>(i as f64));
    }
    let t = xm1 + lit::<T>(LANCZOS_G) + half;
    // t^(x - 1/2) split in two halves to postpone overflow
    let p = t.powf((xm1 + half) * half);
    (lit::<T>(2.0) * T::PI()).sqrt() * p * (p * (-t).exp()) * series
}
