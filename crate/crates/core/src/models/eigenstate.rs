use num_complex::Complex;

use crate::scalar::{lit, Real};

use super::normalization::analytic_norm_mag;
use super::{Decay, Model, ModelError, StateLabel, Wavefunction};

/// Magnitude of the normalization coefficient, if known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormMag<T> {
    Resolved(T),
    Unresolved,
}

impl<T: Copy> NormMag<T> {
    pub fn resolved(self) -> Option<T> {
        match self {
            NormMag::Resolved(v) => Some(v),
            NormMag::Unresolved => None,
        }
    }
}

/// One bound state of a model together with its normalization convention.
///
/// The normalization coefficient is `N = |N| e^{i nu}`; `nu` is zero unless
/// the state has been rotated by [`Eigenstate::to_pt_eigenform`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate<T> {
    model: Model<T>,
    label: StateLabel,
    energy: T,
    norm_mag: NormMag<T>,
    lam: T,
    mu: T,
    phase_nu: T,
}

impl<T: Real> Eigenstate<T> {
    pub fn new(model: Model<T>, label: StateLabel) -> Result<Self, ModelError> {
        let energy = model.energy(label)?;
        let norm_mag = match analytic_norm_mag(&model, label, None) {
            Ok(m) => m,
            Err(ModelError::NormInvalid { .. }) | Err(ModelError::SignViolation { .. }) => NormMag::Unresolved,
            Err(e) => return Err(e),
        };
        let (lam, mu) = model.jacobi_params(label.q);
        Ok(Self {
            model,
            label,
            energy,
            norm_mag,
            lam,
            mu,
            phase_nu: T::zero(),
        })
    }

    pub fn model(&self) -> &Model<T> {
        &self.model
    }

    pub fn label(&self) -> StateLabel {
        self.label
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn norm_mag(&self) -> NormMag<T> {
        self.norm_mag
    }

    pub fn lam(&self) -> T {
        self.lam
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn phase_nu(&self) -> T {
        self.phase_nu
    }

    pub fn with_norm_mag(mut self, mag: T) -> Self {
        self.norm_mag = NormMag::Resolved(mag);
        self
    }

    pub fn without_norm_mag(mut self) -> Self {
        self.norm_mag = NormMag::Unresolved;
        self
    }

    pub fn with_phase_nu(mut self, nu: T) -> Self {
        self.phase_nu = nu;
        self
    }

    /// Normalization coefficient: `|N| e^{i nu}`, or `e^{i nu}` alone when
    /// `normalized` is false.
    pub fn coefficient(&self, normalized: bool) -> Result<Complex<T>, ModelError> {
        let mag = if normalized {
            self.norm_mag.resolved().ok_or(ModelError::UnresolvedNorm)?
        } else {
            T::one()
        };
        Ok(Complex::from_polar(mag, self.phase_nu))
    }

    pub fn eval(&self, x: T, normalized: bool) -> Result<Complex<T>, ModelError> {
        Ok(self.coefficient(normalized)? * self.model.raw_wavefunction(self.label, x))
    }

    pub fn decay(&self) -> Decay<T> {
        self.model.decay(self.label)
    }

    /// `phi` in `u*(-x) = e^{i phi} u(x)`, reduced to `[0, 2pi)`.
    pub fn pt_phase(&self) -> T {
        let half = lit::<T>(0.5);
        let pi = T::PI();
        let base = match &self.model {
            Model::Oscillator(p) => pi * (half - self.label.q.sign::<T>() * p.alpha()),
            Model::Gpt(p) => {
                let phi = pi * (self.lam + half);
                if p.gamma() < T::zero() {
                    -phi
                } else {
                    phi
                }
            }
            Model::Scarf(_) => T::zero(),
        };
        reduce_angle(base - lit::<T>(2.0) * self.phase_nu)
    }

    /// Rotates the coefficient phase so that `v*(-x) = q v(x)`, identifying
    /// the PT-parity with the quasi-parity.
    pub fn to_pt_eigenform(&self) -> Self {
        let half = lit::<T>(0.5);
        let half_pi = T::FRAC_PI_2();
        let sigma = self.label.q.sign::<T>();
        let theta = half * (self.pt_phase() - half_pi + sigma * half_pi);
        let mut out = *self;
        out.phase_nu = self.phase_nu + theta;
        out
    }

    /// View evaluating with coefficient `e^{i nu}`.
    pub fn raw(&self) -> Raw<'_, T> {
        Raw(self)
    }

    /// View evaluating with the full coefficient `|N| e^{i nu}`.
    pub fn normalized(&self) -> Result<Normalized<'_, T>, ModelError> {
        self.coefficient(true)?;
        Ok(Normalized(self))
    }
}

pub(crate) fn reduce_angle<T: Real>(phi: T) -> T {
    let two_pi = T::PI() + T::PI();
    let r = phi % two_pi;
    let r = if r < T::zero() { r + two_pi } else { r };
    if r >= two_pi {
        T::zero()
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Raw<'a, T>(&'a Eigenstate<T>);

#[derive(Debug, Clone, Copy)]
pub struct Normalized<'a, T>(&'a Eigenstate<T>);

impl<T: Real> Wavefunction<T> for Raw<'_, T> {
    fn value(&self, x: T) -> Complex<T> {
        self.0.eval(x, false).expect("unnormalized evaluation is total")
    }

    fn decay(&self) -> Decay<T> {
        self.0.decay()
    }
}

impl<T: Real> Wavefunction<T> for Normalized<'_, T> {
    fn value(&self, x: T) -> Complex<T> {
        self.0.eval(x, true).expect("resolved at construction")
    }

    fn decay(&self) -> Decay<T> {
        self.0.decay()
    }
}

impl<T: Real> Wavefunction<T> for Eigenstate<T> {
    /// Normalized when `|N|` is known, unit coefficient otherwise.
    fn value(&self, x: T) -> Complex<T> {
        let normalized = self.norm_mag.resolved().is_some();
        self.eval(x, normalized).expect("normalization checked")
    }

    fn decay(&self) -> Decay<T> {
        Eigenstate::decay(self)
    }
}
