use num_complex::Complex;

use crate::scalar::{from_usize, lit, Real};

use super::SpecialFnError;

/// Highest polynomial degree accepted by the recurrences.
pub const MAX_DEGREE: usize = 64;

/// Generalized Laguerre polynomial `L_n^(a)(z)`.
///
/// Any real `a` is accepted, including negative non-integers: the recurrence
/// `(k+1) L_{k+1} = (2k+1+a-z) L_k - (k+a) L_{k-1}` never divides by
/// anything but `k+1`.
pub fn laguerre<T: Real>(n: usize, a: T, z: Complex<T>) -> Result<Complex<T>, SpecialFnError> {
    if n > MAX_DEGREE {
        return Err(SpecialFnError::DegreeTooLarge(n));
    }
    let one = Complex::new(T::one(), T::zero());
    if n == 0 {
        return Ok(one);
    }
    let mut prev = one;
    let mut cur = one * (T::one() + a) - z;
    for k in 1..n {
        let kf = from_usize::<T>(k);
        let next = (cur * (kf + kf + T::one() + a) - cur * z - prev * (kf + a)) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Jacobi polynomial `P_n^(lam, mu)(z)` by the standard three-term recurrence.
pub fn jacobi<T: Real>(n: usize, lam: T, mu: T, z: Complex<T>) -> Result<Complex<T>, SpecialFnError> {
    if n > MAX_DEGREE {
        return Err(SpecialFnError::DegreeTooLarge(n));
    }
    let one = Complex::new(T::one(), T::zero());
    if n == 0 {
        return Ok(one);
    }
    let two = lit::<T>(2.0);
    let s = lam + mu;
    let mut prev = one;
    let mut cur = one * ((lam - mu) / two) + z * ((s + two) / two);
    for k in 1..n {
        let kf = from_usize::<T>(k);
        let m = two * kf + s;
        let denom = two * (kf + T::one()) * (kf + s + T::one()) * m;
        if denom == T::zero() || !denom.is_finite() {
            return Err(SpecialFnError::DegenerateRecurrence {
                step: k,
                lam: lam.to_f64().unwrap_or(f64::NAN),
                mu: mu.to_f64().unwrap_or(f64::NAN),
            });
        }
        let a1 = (m + T::one()) * (m + two) * m;
        let a0 = (m + T::one()) * (lam * lam - mu * mu);
        let b = two * (kf + lam) * (kf + mu) * (m + two);
        let next = (cur * z * a1 + cur * a0 - prev * b) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
