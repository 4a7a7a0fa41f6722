use num_complex::Complex;

use crate::scalar::{lit, Real};
use crate::specialfn;

use super::quad::{integrate, QuadOptions};
use super::PseudoNormError;

fn f64_of<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `I_n = ∫_1^∞ (t-1)^lam (t+1)^mu [P_n^(lam,mu)(t)]^2 dt`.
///
/// The interval is split at `t = 2`. On `[1, 2]` the substitution
/// `t - 1 = v^{1/(lam+1)}` absorbs the endpoint power; on `[2, ∞)` the
/// substitution `1/t = v^{1/e}` with `e = -(lam + mu + 2n + 1)` maps the
/// algebraic tail onto a finite interval with a bounded integrand.
pub fn jacobi_weight_integral<T: Real>(lam: T, mu: T, n: usize, tol: T) -> Result<T, PseudoNormError> {
    if !(tol > T::zero()) {
        return Err(PseudoNormError::Precondition("tol > 0".into()));
    }
    let one = T::one();
    if !(lam > -one) {
        return Err(PseudoNormError::Divergent(format!(
            "endpoint t = 1 needs lambda > -1, got {}",
            f64_of(lam)
        )));
    }
    let nf = T::from_usize(n).unwrap();
    let tail_exp = -(lam + mu + nf + nf + one);
    if !(tail_exp > T::zero()) {
        return Err(PseudoNormError::Divergent(format!(
            "tail t^(lambda+mu+2n) needs lambda + mu + 2n < -1, got {}",
            f64_of(lam + mu + nf + nf)
        )));
    }
    let poly = |t: T| -> Result<T, PseudoNormError> {
        Ok(specialfn::jacobi(n, lam, mu, Complex::new(t, T::zero()))
            .map_err(crate::models::ModelError::from)?
            .re)
    };
    // validate the recurrence once before integrating
    poly(lit(1.5))?;
    let poly = |t: T| poly(t).unwrap_or_else(|_| T::nan());

    let two = lit::<T>(2.0);
    let near = |v: T| {
        let s = v.powf(one / (lam + one));
        let p = poly(one + s);
        Complex::new((s + two).powf(mu) * p * p / (lam + one), T::zero())
    };
    let far = |v: T| {
        let u = v.powf(one / tail_exp);
        // u^n P_n(1/u) stays bounded as u -> 0
        let p = poly(one / u) * u.powi(n as i32);
        Complex::new((one - u).powf(lam) * (one + u).powf(mu) * p * p / tail_exp, T::zero())
    };
    let half_tol = tol * lit(0.5);
    let opts = QuadOptions::with_tol(half_tol).panels(4);
    let fail = |e: super::quad::QuadFailure<T>| PseudoNormError::NoConvergence {
        evaluations: e.best.evaluations,
        abs_err: f64_of(e.best.abs_err),
        roundoff: e.roundoff,
    };
    let a = integrate(near, T::zero(), one, &opts).map_err(fail)?;
    let b = integrate(far, T::zero(), lit::<T>(0.5).powf(tail_exp), &opts).map_err(fail)?;
    let value = a.value.re + b.value.re;
    if !(value > T::zero()) {
        return Err(PseudoNormError::Divergent(format!(
            "non-positive weight integral {}",
            f64_of(value)
        )));
    }
    Ok(value)
}
