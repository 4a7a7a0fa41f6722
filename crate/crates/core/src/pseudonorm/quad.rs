//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.
//!
//! The per-panel error is the difference between the embedded Gauss and
//! Kronrod estimates, which overestimates the Kronrod error on smooth panels.
//! Panels whose difference is already at the rounding level of `∫|f|` are
//! frozen: splitting them cannot help, but their error still counts.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;

use crate::scalar::{from_usize, lit, Real};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integral estimate with its absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: Complex<T>,
    pub abs_err: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    /// Uniform panels the interval is split into before adapting.
    pub initial_panels: usize,
    pub max_evaluations: usize,
}

impl<T: Real> QuadOptions<T> {
    pub fn with_tol(abs_tol: T) -> Self {
        Self {
            abs_tol,
            initial_panels: 8,
            max_evaluations: 2_000_000,
        }
    }

    pub fn panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadFailure<T> {
    pub best: QuadResult<T>,
    /// The unmet part of the target is rounding noise, not truncation error.
    pub roundoff: bool,
}

// |K - G| within this many ulps of the panel's ∫|f| is treated as noise
const ROUNDOFF_ULPS: f64 = 1.0;

struct Panel<T> {
    a: T,
    b: T,
    value: Complex<T>,
    err: T,
    mag: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN errors sort first so they get refined (and eventually reported)
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Greater)
    }
}

fn kronrod<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> Panel<T> {
    let half = lit::<T>(0.5);
    let center = (a + b) * half;
    let half_len = (b - a) * half;
    let fc = f(center);
    let mut k = fc * lit::<T>(WGK[7]);
    let mut g = fc * lit::<T>(WG[3]);
    let mut mag = fc.norm() * lit::<T>(WGK[7]);
    for j in 0..7 {
        let dx = half_len * lit::<T>(XGK[j]);
        let (lo, hi) = (f(center - dx), f(center + dx));
        let pair = lo + hi;
        k = k + pair * lit::<T>(WGK[j]);
        mag = mag + (lo.norm() + hi.norm()) * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            g = g + pair * lit::<T>(WG[j / 2]);
        }
    }
    let value = k * half_len;
    let err = ((k - g) * half_len).norm();
    Panel {
        a,
        b,
        value,
        err,
        mag: mag * half_len.abs(),
    }
}

impl<T: Real> Panel<T> {
    fn at_noise_floor(&self) -> bool {
        self.err <= lit::<T>(ROUNDOFF_ULPS) * T::epsilon() * self.mag
    }
}

/// Integrates `f` over `[a, b]` until the summed panel error is below
/// `opts.abs_tol`.
pub fn integrate<T, F>(f: F, a: T, b: T, opts: &QuadOptions<T>) -> Result<QuadResult<T>, QuadFailure<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let panels = opts.initial_panels.max(1);
    let width = (b - a) / from_usize(panels);
    let mut heap = BinaryHeap::with_capacity(panels * 4);
    for i in 0..panels {
        let lo = a + width * from_usize(i);
        let hi = if i + 1 == panels { b } else { lo + width };
        heap.push(kronrod(&f, lo, hi));
    }
    let mut evaluations = 15 * panels;
    let mut frozen: Vec<Panel<T>> = Vec::new();
    let summarize = |heap: &BinaryHeap<Panel<T>>, frozen: &[Panel<T>], evaluations: usize| {
        let (value, abs_err) = heap
            .iter()
            .chain(frozen)
            .fold((Complex::new(T::zero(), T::zero()), T::zero()), |(v, e), p| {
                (v + p.value, e + p.err)
            });
        QuadResult {
            value,
            abs_err,
            evaluations,
        }
    };

    let resum = |heap: &BinaryHeap<Panel<T>>| heap.iter().fold(T::zero(), |e, p| e + p.err);
    let mut active_err: T = resum(&heap);
    let mut frozen_err = T::zero();
    let tiny = T::epsilon() * lit(64.0);
    let mut steps = 0usize;
    while !(active_err + frozen_err <= opts.abs_tol) {
        let fail = |heap: &BinaryHeap<Panel<T>>, frozen: &[Panel<T>], roundoff: bool| QuadFailure {
            best: summarize(heap, frozen, evaluations),
            roundoff,
        };
        if frozen_err > opts.abs_tol || heap.is_empty() {
            return Err(fail(&heap, &frozen, true));
        }
        if evaluations + 30 > opts.max_evaluations {
            return Err(fail(&heap, &frozen, frozen_err >= active_err));
        }
        let worst = heap.pop().expect("checked non-empty");
        active_err = active_err - worst.err;
        let mid = (worst.a + worst.b) * lit(0.5);
        if worst.at_noise_floor() || (worst.b - worst.a) <= tiny * (worst.a.abs() + worst.b.abs()) {
            frozen_err = frozen_err + worst.err;
            frozen.push(worst);
            continue;
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        evaluations += 30;
        active_err = active_err + left.err + right.err;
        heap.push(left);
        heap.push(right);
        steps += 1;
        // resum periodically to keep drift out of the running total
        if steps.is_multiple_of(64) {
            active_err = resum(&heap);
        }
    }
    let result = summarize(&heap, &frozen, evaluations);
    if result.value.re.is_finite() && result.value.im.is_finite() {
        Ok(result)
    } else {
        Err(QuadFailure {
            best: result,
            roundoff: false,
        })
    }
}
