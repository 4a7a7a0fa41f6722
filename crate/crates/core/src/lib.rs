//! Pseudo-norms, pseudo-inner-products and modified normalization
//! coefficients for three exactly solvable PT-symmetric potentials (shifted
//! oscillator, generalized Pöschl-Teller, Scarf II), together with
//! Crank-Nicolson time evolution that checks the generalized continuity
//! equation `∂P/∂t + ∂J/∂x = 0` with `P = ψ*(-x,t) ψ(x,t)`.
//!
//! The numerical core is generic over the float type through [`Real`];
//! double-precision aliases are provided at the crate root.

// `!(x > 0)` style checks are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod scalar;

pub mod cli;
pub mod dynamics;
pub mod models;
pub mod pseudonorm;
pub mod specialfn;

pub use scalar::Real;

pub type Model64 = models::Model<f64>;
pub type Eigenstate64 = models::Eigenstate<f64>;
pub type QuadResult64 = pseudonorm::QuadResult<f64>;
pub type Gram64 = pseudonorm::Gram<f64>;
pub type Grid64 = dynamics::Grid<f64>;
pub type GridWavefunction64 = dynamics::GridWavefunction<f64>;
pub type Propagator64 = dynamics::Propagator<f64>;
pub type DensityPair64 = dynamics::DensityPair<f64>;
