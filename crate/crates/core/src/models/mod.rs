//! Catalog of the three exactly solvable PT-symmetric potentials.
//!
//! A [`Model`] owns validated parameters; [`Model::state`] produces an
//! [`Eigenstate`] carrying the closed-form energy, the Jacobi parameters and,
//! where a closed form exists, the normalization magnitude `|N|`. The phase of
//! the normalization coefficient defaults to zero (`N` real and positive).
//!
//! Units are fixed to `hbar = 2m = 1`. All complex powers use the principal
//! logarithm; the imaginary shifts keep the real line away from its cut.

mod eigenstate;
mod normalization;
mod params;
mod wavefunction;

pub(crate) use eigenstate::reduce_angle;
pub use eigenstate::{Eigenstate, NormMag, Normalized, Raw};
pub use normalization::{analytic_norm_mag, closed_form_jacobi_integral, closed_form_pseudo_norm};
pub use params::{GptParams, OscillatorParams, ScarfParams};
pub use wavefunction::{Decay, FnWavefunction, Potential, Superposition, Wavefunction};

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{lit, Real};
use crate::specialfn::{self, SpecialFnError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{family} parameters violate `{condition}`: {detail}")]
    Invalid {
        family: &'static str,
        condition: &'static str,
        detail: String,
    },
    #[error("label (q = {q:+}, n = {n}) out of range for {family}: {detail}")]
    LabelOutOfRange {
        family: &'static str,
        q: i8,
        n: usize,
        detail: String,
    },
    #[error("closed-form normalization needs `{condition}` for {family}: {detail}")]
    NormInvalid {
        family: &'static str,
        condition: &'static str,
        detail: String,
    },
    #[error("pseudo-norm sign {measured:+} contradicts q = {q:+}: {detail}")]
    SignViolation { q: i8, measured: i8, detail: String },
    #[error("normalization magnitude is unresolved for this state")]
    UnresolvedNorm,
    #[error(transparent)]
    SpecialFn(#[from] SpecialFnError),
}

/// Potential family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Oscillator,
    Gpt,
    Scarf,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Oscillator => "oscillator",
            Family::Gpt => "gpt",
            Family::Scarf => "scarf",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "oscillator" => Ok(Family::Oscillator),
            "gpt" => Ok(Family::Gpt),
            "scarf" => Ok(Family::Scarf),
            other => Err(format!(
                "unknown model family `{other}` (expected oscillator, gpt or scarf)"
            )),
        }
    }
}

/// Quasi-parity `q = ±1` labelling the two series of bound states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuasiParity {
    Plus,
    Minus,
}

impl QuasiParity {
    pub fn from_sign(s: i8) -> Option<Self> {
        match s {
            1 => Some(QuasiParity::Plus),
            -1 => Some(QuasiParity::Minus),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            QuasiParity::Plus => 1,
            QuasiParity::Minus => -1,
        }
    }

    pub fn sign<T: Real>(self) -> T {
        match self {
            QuasiParity::Plus => T::one(),
            QuasiParity::Minus => -T::one(),
        }
    }
}

/// One bound state: quasi-parity and quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateLabel {
    pub q: QuasiParity,
    pub n: usize,
}

impl StateLabel {
    pub fn new(q: QuasiParity, n: usize) -> Self {
        Self { q, n }
    }

    pub fn plus(n: usize) -> Self {
        Self::new(QuasiParity::Plus, n)
    }

    pub fn minus(n: usize) -> Self {
        Self::new(QuasiParity::Minus, n)
    }
}

impl std::fmt::Display for StateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}:{}", self.q.as_i8(), self.n)
    }
}

impl std::str::FromStr for StateLabel {
    type Err = String;

    /// Parses `q:n`, e.g. `+1:0` or `-1:2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (q, n) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| format!("label `{s}` is not of the form q:n"))?;
        let q: i8 = q
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| format!("label `{s}`: q must be +1 or -1"))?;
        let q = QuasiParity::from_sign(q).ok_or_else(|| format!("label `{s}`: q must be +1 or -1"))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| format!("label `{s}`: n must be a non-negative integer"))?;
        Ok(StateLabel::new(q, n))
    }
}

// Serialized in its `q:n` text form.
impl Serialize for StateLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StateLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Highest quantum number a series admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxLevel {
    Unbounded,
    Highest(usize),
    NoStates,
}

impl MaxLevel {
    fn admits(self, n: usize) -> bool {
        match self {
            MaxLevel::Unbounded => true,
            MaxLevel::Highest(m) => n <= m,
            MaxLevel::NoStates => false,
        }
    }
}

// Largest integer n >= 0 with n < bound.
fn highest_below<T: Real>(bound: T) -> MaxLevel {
    if bound <= T::zero() {
        MaxLevel::NoStates
    } else {
        MaxLevel::Highest(bound.ceil().to_usize().unwrap_or(0).saturating_sub(1))
    }
}

/// A validated potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model<T> {
    Oscillator(OscillatorParams<T>),
    Gpt(GptParams<T>),
    Scarf(ScarfParams<T>),
}

impl<T: Real> Model<T> {
    pub fn oscillator(alpha: T, c: T) -> Result<Self, ModelError> {
        OscillatorParams::new(alpha, c).map(Model::Oscillator)
    }

    pub fn gpt(a: T, b: T, gamma: T) -> Result<Self, ModelError> {
        GptParams::new(a, b, gamma).map(Model::Gpt)
    }

    pub fn scarf(a: T, b: T) -> Result<Self, ModelError> {
        ScarfParams::new(a, b).map(Model::Scarf)
    }

    pub fn family(&self) -> Family {
        match self {
            Model::Oscillator(_) => Family::Oscillator,
            Model::Gpt(_) => Family::Gpt,
            Model::Scarf(_) => Family::Scarf,
        }
    }

    pub fn norm_valid(&self) -> bool {
        match self {
            Model::Oscillator(p) => p.norm_valid(),
            Model::Gpt(p) => p.norm_valid(),
            Model::Scarf(p) => p.norm_valid(),
        }
    }

    /// `V(x)` on the real line, complex shift applied internally.
    pub fn potential(&self, x: T) -> Complex<T> {
        let quarter = lit::<T>(0.25);
        match self {
            Model::Oscillator(p) => {
                let z = Complex::new(x, -p.c());
                let z2 = z * z;
                z2 + Complex::new(p.alpha() * p.alpha() - quarter, T::zero()) / z2
            }
            Model::Gpt(p) => {
                let (a, b) = (p.a(), p.b());
                let tau = Complex::new(x, -p.gamma());
                let (cosech, coth) = cosech_coth(tau);
                cosech * cosech * (b * b + a * (a + T::one())) - cosech * coth * (b * (a + a + T::one()))
            }
            Model::Scarf(p) => {
                let (a, b) = (p.a(), p.b());
                let sech = T::one() / x.cosh();
                Complex::new(
                    -(b * b + a * (a + T::one())) * sech * sech,
                    b * (a + a + T::one()) * sech * x.tanh(),
                )
            }
        }
    }

    pub fn max_level(&self, q: QuasiParity) -> MaxLevel {
        let half = lit::<T>(0.5);
        match (self, q) {
            (Model::Oscillator(_), _) => MaxLevel::Unbounded,
            (Model::Gpt(p), QuasiParity::Plus) => highest_below(p.b() - half),
            (Model::Gpt(p), QuasiParity::Minus) => highest_below(p.a()),
            (Model::Scarf(p), QuasiParity::Plus) => highest_below(p.a()),
            (Model::Scarf(p), QuasiParity::Minus) => highest_below(p.b() - half),
        }
    }

    pub fn check_label(&self, label: StateLabel) -> Result<(), ModelError> {
        let level = self.max_level(label.q);
        if level.admits(label.n) {
            return Ok(());
        }
        let detail = match level {
            MaxLevel::Highest(m) => format!("n_max = {m}"),
            _ => "this series has no bound states".to_string(),
        };
        Err(ModelError::LabelOutOfRange {
            family: self.family().name(),
            q: label.q.as_i8(),
            n: label.n,
            detail,
        })
    }

    /// All admissible labels with `n <= n_cap`, in the order q = +1 first.
    pub fn labels_up_to(&self, n_cap: usize) -> Vec<StateLabel> {
        [QuasiParity::Plus, QuasiParity::Minus]
            .into_iter()
            .flat_map(|q| (0..=n_cap).map(move |n| StateLabel::new(q, n)))
            .filter(|l| self.check_label(*l).is_ok())
            .collect()
    }

    /// Closed-form real eigenvalue.
    pub fn energy(&self, label: StateLabel) -> Result<T, ModelError> {
        self.check_label(label)?;
        let n = T::from_usize(label.n).unwrap();
        let half = lit::<T>(0.5);
        let two = lit::<T>(2.0);
        let series_b = |b: T| -(b - half - n) * (b - half - n);
        let series_a = |a: T| -(a - n) * (a - n);
        Ok(match (self, label.q) {
            (Model::Oscillator(p), q) => lit::<T>(4.0) * n + two - two * q.sign::<T>() * p.alpha(),
            (Model::Gpt(p), QuasiParity::Plus) => series_b(p.b()),
            (Model::Gpt(p), QuasiParity::Minus) => series_a(p.a()),
            (Model::Scarf(p), QuasiParity::Plus) => series_a(p.a()),
            (Model::Scarf(p), QuasiParity::Minus) => series_b(p.b()),
        })
    }

    /// Jacobi parameters `(lambda, mu)` of the series; `(0, 0)` for the oscillator.
    pub fn jacobi_params(&self, q: QuasiParity) -> (T, T) {
        let half = lit::<T>(0.5);
        let s = q.sign::<T>();
        match self {
            Model::Oscillator(_) => (T::zero(), T::zero()),
            Model::Gpt(p) => (s * (p.a() - p.b() + half), -p.a() - p.b() - half),
            Model::Scarf(p) => (s * (-p.a() + p.b() - half), -p.a() - p.b() - half),
        }
    }

    /// Eigenfunction with unit normalization coefficient.
    pub fn raw_wavefunction(&self, label: StateLabel, x: T) -> Complex<T> {
        let half = lit::<T>(0.5);
        let n = label.n;
        match self {
            Model::Oscillator(p) => {
                let a = -label.q.sign::<T>() * p.alpha();
                let z = Complex::new(x, -p.c());
                let z2 = z * z;
                let lag = specialfn::laguerre(n, a, z2).expect("degree within cap");
                (-z2 * half + z.ln() * (a + half)).exp() * lag
            }
            Model::Gpt(p) => {
                let (lam, mu) = self.jacobi_params(label.q);
                // negative shifts are the complex conjugate of the positive ones
                let g = p.gamma().abs();
                let tau = Complex::new(x, -g);
                let half_tau = tau * half;
                let log_weight = half_tau.sinh().ln() * (lam + half)
                    + half_tau.cosh().ln() * (mu + half)
                    + Complex::new((lam + mu + T::one()) * half * lit::<T>(2.0).ln(), T::zero());
                let poly = specialfn::jacobi(n, lam, mu, tau.cosh()).expect("recurrence within supported range");
                let u = log_weight.exp() * poly;
                if p.gamma() < T::zero() {
                    u.conj()
                } else {
                    u
                }
            }
            Model::Scarf(_) => {
                let (lam, mu) = self.jacobi_params(label.q);
                // (sech x)^{-(lam+mu+1)/2} = exp((lam+mu+1)/2 * ln cosh x)
                let modulus_log = (lam + mu + T::one()) * half * ln_cosh(x);
                let angle = -(lam - mu) * half * gudermannian(x);
                let poly = specialfn::jacobi(n, lam, mu, Complex::new(T::zero(), x.sinh()))
                    .expect("recurrence within supported range");
                Complex::from_polar(modulus_log.exp(), angle) * poly
            }
        }
    }

    /// Asymptotic decay of the eigenfunctions: Gaussian for the oscillator,
    /// `exp(-sqrt(-E) |x|)` for the hyperbolic families.
    pub fn decay(&self, label: StateLabel) -> Decay<T> {
        match self {
            Model::Oscillator(_) => Decay::Gaussian,
            _ => match self.energy(label) {
                Ok(e) => Decay::Exponential((-e).max(T::zero()).sqrt()),
                Err(_) => Decay::Exponential(T::zero()),
            },
        }
    }

    /// Builds the eigenstate, filling in `|N|` when a closed form is available
    /// without auxiliary input.
    pub fn state(&self, label: StateLabel) -> Result<Eigenstate<T>, ModelError> {
        Eigenstate::new(*self, label)
    }
}

/// `(cosech tau, coth tau)` evaluated through `exp(-|tau|)` so that large
/// real parts neither overflow nor produce `inf / inf`.
fn cosech_coth<T: Real>(tau: Complex<T>) -> (Complex<T>, Complex<T>) {
    let flip = tau.re < T::zero();
    let t = if flip { -tau } else { tau };
    let w = (-t).exp();
    let w2 = w * w;
    let one = Complex::new(T::one(), T::zero());
    let cosech = w * lit::<T>(2.0) / (one - w2);
    let coth = (one + w2) / (one - w2);
    if flip {
        (-cosech, -coth)
    } else {
        (cosech, coth)
    }
}

pub(crate) fn ln_cosh<T: Real>(x: T) -> T {
    let ax = x.abs();
    ax + (lit::<T>(-2.0) * ax).exp().ln_1p() - lit::<T>(2.0).ln()
}

// arctan(sinh x), computed without forming sinh for large |x|
fn gudermannian<T: Real>(x: T) -> T {
    lit::<T>(2.0) * (x * lit(0.5)).tanh().atan()
}

impl<T: Real> Potential<T> for Model<T> {
    fn value(&self, x: T) -> Complex<T> {
        self.potential(x)
    }
}

#[cfg(test)]
mod tests;
