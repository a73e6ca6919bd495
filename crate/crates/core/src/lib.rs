//! Riemannian geometry of unitary orbits of density operators.
//!
//! A spectrum σ (the nonincreasing positive eigenvalues of a density
//! operator) labels a unitary orbit D(σ). The bundle
//! S(σ) = {ψ : ψ†ψ = P(σ)} of purifications projects onto the orbit by
//! π(ψ) = ψψ†, and the real Hilbert–Schmidt metric G on S(σ) descends to
//! the unique metric g on D(σ) that makes π a Riemannian submersion. This
//! crate implements the resulting geometry end to end:
//!
//! - [`state`]: spectra, density operators, purifications, the gauge
//!   algebra u(σ), the metrics G and β, and the split u(n) = u(σ) ⊕ u(σ)^⊥;
//! - [`connection`]: moment map, locked inertia tensor, the mechanical
//!   connection, horizontal/vertical splitting, the metric g, uncertainty,
//!   and the parallelism test behind the bound ΔA ≥ ħ√g(X_A, X_A);
//! - [`dynamics`]: von Neumann/Schrödinger integrators, the negative
//!   time-ordered exponential, curve length, energy dispersion, horizontal
//!   lifts, and the Mandelstam–Tamm report;
//! - [`control`]: the coadjoint map, Arnold–Euler flow ξ̇ = ad*_ξξ,
//!   Hamiltonian synthesis, geodesic generation, the two-eigenvalue fast
//!   path, and Riemannian distance by multi-start geodesic shooting;
//! - [`io`]: matrix JSON, spectrum JSON, and trajectory CSV/JSON formats.
//!
//! Everything is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); public types default their scalar parameter to `f64`,
//! so `Spectrum`, `DensityOperator`, `Trajectory`, ... are the `f64`
//! instantiations unless spelled otherwise. Default tolerances assume
//! `f64`; ħ and the validation tolerances live in [`Context`].

pub mod connection;
pub mod context;
pub mod control;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod linalg;
pub mod optim;
pub mod sampling;
pub mod scalar;
pub mod state;

pub use connection::{
    connection_form, is_parallel_at, locked_inertia, moment_map, observable_base_speed_squared,
    observable_field, submersion_metric, uncertainty, xi_a, ConnectionEvaluation,
};
pub use context::Context;
pub use control::{
    arnold_euler_flow, coadjoint, distance, distinguishable_geodesic, geodesic_from,
    synth_hamiltonian, two_eigenvalue_geodesic, DistanceResult, GeodesicSolution, ShootingConfig,
};
pub use dynamics::{
    constant, curve_length, energy_dispersion, energy_dispersion_sampled, evolve_schrodinger,
    evolve_von_neumann, horizontal_lift, is_distinguishable, mt_bound_report, neg_time_ordered_exp,
    neg_time_ordered_exp_fn, propagator_curve, sampled, MtReport, Trajectory, TrajectoryKind,
};
pub use error::{Error, Result};
pub use linalg::{CMat, C};
pub use scalar::Real;
pub use state::{
    gauge_algebra_basis, gauge_metric, hs_metric, spectrum_of, split_gauge, standard_purification,
    DensityOperator, GaugeAlgebraElement, Observable, Purification, Spectrum,
};

/// Dense complex matrix over `f64` (the default scalar).
pub type Mat = CMat<f64>;
