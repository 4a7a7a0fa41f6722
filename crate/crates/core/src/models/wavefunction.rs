use num_complex::Complex;

use crate::scalar::Real;

use super::{Eigenstate, ModelError};

/// Asymptotic envelope of a wavefunction, used to size truncation windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay<T> {
    Gaussian,
    /// `|psi| ~ exp(-rate |x|)`; a non-positive rate means no decay.
    Exponential(T),
}

impl<T: Real> Decay<T> {
    /// Envelope of a product of two wavefunctions.
    pub fn product(self, other: Decay<T>) -> Decay<T> {
        match (self, other) {
            (Decay::Exponential(a), Decay::Exponential(b)) => Decay::Exponential(a + b),
            _ => Decay::Gaussian,
        }
    }

    /// Slower of two envelopes, for sums.
    pub fn slowest(self, other: Decay<T>) -> Decay<T> {
        match (self, other) {
            (Decay::Gaussian, d) | (d, Decay::Gaussian) => d,
            (Decay::Exponential(a), Decay::Exponential(b)) => Decay::Exponential(a.min(b)),
        }
    }

    pub fn decays(self) -> bool {
        match self {
            Decay::Gaussian => true,
            Decay::Exponential(r) => r > T::zero(),
        }
    }
}

/// Anything that can be sampled as a complex function of real `x`.
pub trait Wavefunction<T: Real>: Sync {
    fn value(&self, x: T) -> Complex<T>;
    fn decay(&self) -> Decay<T>;
}

/// Complex potential sampled on the real line.
pub trait Potential<T: Real>: Sync {
    fn value(&self, x: T) -> Complex<T>;
}

impl<T: Real, F> Potential<T> for F
where
    F: Fn(T) -> Complex<T> + Sync,
{
    fn value(&self, x: T) -> Complex<T> {
        self(x)
    }
}

/// Finite linear combination of normalized eigenstates.
#[derive(Debug, Clone)]
pub struct Superposition<T> {
    terms: Vec<(Complex<T>, Eigenstate<T>)>,
}

impl<T: Real> Superposition<T> {
    /// Every component must carry a resolved `|N|`.
    pub fn new(terms: Vec<(Complex<T>, Eigenstate<T>)>) -> Result<Self, ModelError> {
        for (_, s) in &terms {
            s.coefficient(true)?;
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(Complex<T>, Eigenstate<T>)] {
        &self.terms
    }
}

impl<T: Real> Wavefunction<T> for Superposition<T> {
    fn value(&self, x: T) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (c, s)| {
                acc + *c * s.eval(x, true).expect("checked at construction")
            })
    }

    fn decay(&self) -> Decay<T> {
        self.terms
            .iter()
            .map(|(_, s)| s.decay())
            .reduce(Decay::slowest)
            .unwrap_or(Decay::Gaussian)
    }
}

/// Closure-backed wavefunction with a declared envelope.
#[derive(Debug, Clone, Copy)]
pub struct FnWavefunction<T, F> {
    f: F,
    decay: Decay<T>,
}

impl<T: Real, F: Fn(T) -> Complex<T> + Sync> FnWavefunction<T, F> {
    pub fn new(f: F, decay: Decay<T>) -> Self {
        Self { f, decay }
    }
}

impl<T: Real, F: Fn(T) -> Complex<T> + Sync> Wavefunction<T> for FnWavefunction<T, F> {
    fn value(&self, x: T) -> Complex<T> {
        (self.f)(x)
    }

    fn decay(&self) -> Decay<T> {
        self.decay
    }
}
