//! Adjacency-matrix inertia and the eigenvalue lower bound on `tau`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Counts of positive, zero and negative adjacency eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InertiaSignature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    /// Eigenvalues with `|lambda| <= tol` count as zero.
    pub tol: f64,
    /// Some eigenvalue satisfied `tol < |lambda| <= 2 tol`, so the
    /// classification is sensitive to the choice of `tol`.
    pub ambiguous: bool,
}

impl InertiaSignature {
    pub fn n(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

/// `1e-8 * max(n, 1)`. Adjacency eigenvalues are algebraic integers, so true zeros
/// are exact and rounding error at these sizes stays far below this.
pub fn default_tolerance(n: usize) -> f64 {
    1e-8 * n.max(1) as f64
}

pub fn adjacency_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    // Eigenvalues only; the QR iteration runs without an iteration cap.
    let mut values: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

pub fn inertia(g: &Graph, tol: f64) -> Result<InertiaSignature> {
    if !(tol > 0.0) {
        return Err(Error::param(format!("tolerance must be positive, got {tol}")));
    }
    let mut sig = InertiaSignature {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
        tol,
        ambiguous: false,
    };
    for lambda in adjacency_eigenvalues(g) {
        if lambda.abs() <= tol {
            sig.n_zero += 1;
        } else {
            if lambda.abs() <= 2.0 * tol {
                sig.ambiguous = true;
            }
            if lambda > 0.0 {
                sig.n_plus += 1;
            } else {
                sig.n_minus += 1;
            }
        }
    }
    Ok(sig)
}

/// `max(n+, n-)` at the default tolerance; a lower bound on `tau(G)`.
pub fn graham_pollak_lower_bound(g: &Graph) -> Result<usize> {
    let sig = inertia(g, default_tolerance(g.n()))?;
    Ok(sig.n_plus.max(sig.n_minus))
}
