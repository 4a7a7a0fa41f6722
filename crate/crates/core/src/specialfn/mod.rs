//! Scalar kernels: the real Gamma function and the generalized Laguerre and
//! Jacobi polynomials at complex arguments.
//!
//! Everything here is a pure function. Polynomials are evaluated by forward
//! three-term recurrence, which is stable for the modest degrees the bound
//! states admit; degrees above [`MAX_DEGREE`] are rejected.

mod gamma;
mod poly;

pub use gamma::{gamma, sin_pi};
pub use poly::{jacobi, laguerre, MAX_DEGREE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialFnError {
    #[error("gamma has a pole at x = {0}")]
    Pole(f64),
    #[error("non-finite argument {0}")]
    NonFinite(f64),
    #[error("polynomial degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("jacobi recurrence denominator vanishes at step {step} (lambda = {lam}, mu = {mu})")]
    DegenerateRecurrence { step: usize, lam: f64, mu: f64 },
}
