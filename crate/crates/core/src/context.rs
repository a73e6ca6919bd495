//! Shared configuration: the value of ħ and validation tolerances.

use crate::scalar::Real;

/// Configuration threaded through operations that involve ħ or validate
/// constructed values. Defaults are tuned for `f64`.
#[derive(Clone, Debug)]
pub struct Context<T: Real = f64> {
    /// Reduced Planck constant (action units). Natural units by default.
    pub hbar: T,
    /// Hermiticity / anti-Hermiticity tolerance at construction.
    pub herm_tol: T,
    /// Frobenius tolerance on the fiber condition ψ†ψ = P(σ).
    pub fiber_tol: T,
    /// Eigenvalue threshold and multiplicity-grouping tolerance.
    pub rank_tol: T,
    /// Per-frame validation tolerance for integrated trajectories, looser
    /// than the construction tolerances because integration drifts.
    pub drift_tol: T,
}

impl<T: Real> Default for Context<T> {
    fn default() -> Self {
        Self {
            hbar: T::one(),
            herm_tol: T::of(1e-12),
            fiber_tol: T::of(1e-10),
            rank_tol: T::of(1e-9),
            drift_tol: T::of(1e-8),
        }
    }
}

impl<T: Real> Context<T> {
    pub fn with_hbar(hbar: T) -> Self {
        Self {
            hbar,
            ..Self::default()
        }
    }
}
