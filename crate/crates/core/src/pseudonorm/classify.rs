use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// What the conservation law implies for a pair of stationary states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    /// The pseudo-inner-product must vanish.
    OrthogonalityForced,
    /// Equal real energies: the integral is a pseudo-norm.
    NormLike,
    /// `E2 = E1*`, both complex: the cross integral plays the role of a norm.
    ConjugatePairNormLike,
}

/// Classifies `(E1, E2)`; an energy counts as real when
/// `|Im E| <= tol (1 + |E|)`.
pub fn classify_pair<T: Real>(e1: Complex<T>, e2: Complex<T>, tol: T) -> PairClass {
    let is_real = |e: Complex<T>| e.im.abs() <= tol * (T::one() + e.norm());
    match (is_real(e1), is_real(e2)) {
        (true, true) => {
            if (e1.re - e2.re).abs() > tol {
                PairClass::OrthogonalityForced
            } else {
                PairClass::NormLike
            }
        }
        (false, false) => {
            if (e2 - e1.conj()).norm() <= tol * (T::one() + e1.norm()) {
                PairClass::ConjugatePairNormLike
            } else {
                PairClass::OrthogonalityForced
            }
        }
        _ => PairClass::OrthogonalityForced,
    }
}
