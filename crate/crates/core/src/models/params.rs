use crate::scalar::{dist_to_int, lit, Real};

use super::ModelError;

// Parameters closer than this to an integer are treated as integral.
const INTEGER_EPS: f64 = 1e-9;

fn f(x: impl num_traits::ToPrimitive) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn require(family: &'static str, ok: bool, condition: &'static str, detail: String) -> Result<(), ModelError> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::Invalid {
            family,
            condition,
            detail,
        })
    }
}

fn finite<T: Real>(family: &'static str, name: &str, v: T) -> Result<(), ModelError> {
    require(family, v.is_finite(), "parameters finite", format!("{name} = {}", f(v)))
}

/// Shifted oscillator `(x - ic)^2 + (alpha^2 - 1/4) / (x - ic)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams<T> {
    alpha: T,
    c: T,
}

impl<T: Real> OscillatorParams<T> {
    pub fn new(alpha: T, c: T) -> Result<Self, ModelError> {
        const FAM: &str = "oscillator";
        finite(FAM, "alpha", alpha)?;
        finite(FAM, "c", c)?;
        require(FAM, alpha > T::zero(), "alpha > 0", format!("alpha = {}", f(alpha)))?;
        require(
            FAM,
            dist_to_int(alpha) > lit(INTEGER_EPS),
            "alpha not an integer",
            format!("alpha = {}", f(alpha)),
        )?;
        require(FAM, c > T::zero(), "c > 0", format!("c = {}", f(c)))?;
        Ok(Self { alpha, c })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn c(&self) -> T {
        self.c
    }

    /// Same oscillator with a different imaginary shift.
    pub fn with_shift(&self, c: T) -> Result<Self, ModelError> {
        Self::new(self.alpha, c)
    }

    /// The closed-form pseudo-norm only holds for `0 < alpha < 1`.
    pub fn norm_valid(&self) -> bool {
        self.alpha < T::one()
    }
}

/// Generalized Pöschl-Teller parameters, shift `tau = x - i gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GptParams<T> {
    a: T,
    b: T,
    gamma: T,
}

impl<T: Real> GptParams<T> {
    pub fn new(a: T, b: T, gamma: T) -> Result<Self, ModelError> {
        const FAM: &str = "gpt";
        finite(FAM, "A", a)?;
        finite(FAM, "B", b)?;
        finite(FAM, "gamma", gamma)?;
        let half = lit::<T>(0.5);
        require(FAM, a + half > T::zero(), "A + 1/2 > 0", format!("A = {}", f(a)))?;
        require(FAM, b > a + half, "B > A + 1/2", format!("A = {}, B = {}", f(a), f(b)))?;
        let quarter_pi = T::FRAC_PI_4();
        require(
            FAM,
            gamma >= -quarter_pi && gamma < quarter_pi,
            "-pi/4 <= gamma < pi/4",
            format!("gamma = {}", f(gamma)),
        )?;
        require(FAM, gamma != T::zero(), "gamma != 0", "gamma = 0".to_string())?;
        require(
            FAM,
            dist_to_int(b - a - half) > lit(INTEGER_EPS),
            "B - A - 1/2 not an integer",
            format!("B - A - 1/2 = {}", f(b - a - half)),
        )?;
        Ok(Self { a, b, gamma })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// Sign analysis of the closed-form pseudo-norm needs `A + 1/2 < B < A + 3/2`.
    pub fn norm_valid(&self) -> bool {
        self.b < self.a + lit(1.5)
    }
}

/// PT-symmetric Scarf II parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfParams<T> {
    a: T,
    b: T,
}

impl<T: Real> ScarfParams<T> {
    pub fn new(a: T, b: T) -> Result<Self, ModelError> {
        const FAM: &str = "scarf";
        finite(FAM, "A", a)?;
        finite(FAM, "B", b)?;
        let half = lit::<T>(0.5);
        require(FAM, b - half > T::zero(), "B - 1/2 > 0", format!("B = {}", f(b)))?;
        require(
            FAM,
            a > b - half,
            "A > B - 1/2",
            format!("A = {}, B - 1/2 = {}", f(a), f(b - half)),
        )?;
        require(
            FAM,
            dist_to_int(a - b + half) > lit(INTEGER_EPS),
            "A - B + 1/2 not an integer",
            format!("A - B + 1/2 = {}", f(a - b + half)),
        )?;
        Ok(Self { a, b })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Scarf closed forms exist for every admissible (A, B); the sign of the
    /// `q = -1` pseudo-norm is checked separately.
    pub fn norm_valid(&self) -> bool {
        true
    }
}
