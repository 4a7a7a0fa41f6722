use num_complex::Complex;
use rayon::prelude::*;

use crate::models::{Eigenstate, Model, StateLabel};
use crate::scalar::Real;

use super::{normalize, pseudo_inner, PseudoNormError};

/// Matrix of pseudo-inner-products `G[i][j] = ∫ u_i*(-x) u_j(x) dx` between
/// normalized eigenstates.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram<T> {
    pub labels: Vec<StateLabel>,
    pub states: Vec<Eigenstate<T>>,
    pub values: Vec<Vec<Complex<T>>>,
    pub abs_err: Vec<Vec<T>>,
}

impl<T: Real> Gram<T> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim()).map(|i| self.values[i][i]).collect()
    }

    pub fn max_off_diagonal(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j {
                    m = m.max(self.values[i][j].norm());
                }
            }
        }
        m
    }
}

/// Normalizes every labelled state numerically and fills the Gram matrix.
/// Entries are computed in parallel; failures carry their `(row, col)`.
pub fn gram<T: Real>(model: &Model<T>, labels: &[StateLabel], tol: T) -> Result<Gram<T>, PseudoNormError> {
    if labels.is_empty() {
        return Err(PseudoNormError::Precondition("label list is empty".into()));
    }
    let states: Vec<Eigenstate<T>> = labels
        .par_iter()
        .enumerate()
        .map(|(i, l)| {
            let annotate = |e: PseudoNormError| PseudoNormError::GramEntry {
                row: i,
                col: i,
                source: Box::new(e),
            };
            let s = model.state(*l).map_err(|e| annotate(e.into()))?;
            normalize(&s, tol).map_err(annotate)
        })
        .collect::<Result<_, _>>()?;

    let n = labels.len();
    let entries: Vec<(Complex<T>, T)> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let ui = states[i].normalized()?;
            let uj = states[j].normalized()?;
            pseudo_inner(&uj, &ui, tol)
                .map(|r| (r.value, r.abs_err))
                .map_err(|e| PseudoNormError::GramEntry {
                    row: i,
                    col: j,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_, _>>()?;

    let mut values = vec![vec![Complex::new(T::zero(), T::zero()); n]; n];
    let mut abs_err = vec![vec![T::zero(); n]; n];
    for (k, (v, e)) in entries.into_iter().enumerate() {
        values[k / n][k % n] = v;
        abs_err[k / n][k % n] = e;
    }
    Ok(Gram {
        labels: labels.to_vec(),
        states,
        values,
        abs_err,
    })
}
