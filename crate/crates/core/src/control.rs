//! Lie-algebra controlled Hamiltonians: the coadjoint map, the Arnold–Euler
//! flow, synthesis of the transporting Hamiltonian, geodesic generation,
//! the two-eigenvalue fast path, and Riemannian distance by geodesic
//! shooting.
//!
//! Control curves live in u(n) with the metric β; the Hamiltonian attached
//! to a curve ξ is
//!     Ĥ_ξ(t) = iħ ψ₀ P^{-1/2} V(t) ξ(t) V(t)† P^{-1/2} ψ₀†,
//! with V the negative time-ordered exponential of ξ. Its Schrödinger flow
//! from ψ₀ is ψ(t) = ψ₀ P^{-1/2} V(t) P^{1/2}, which is a horizontal
//! geodesic exactly when ξ stays in u(σ)^⊥ and satisfies ξ̇ = ad*_ξ ξ.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::dynamics::{evolve_schrodinger, propagators, sampled, Trajectory, TrajectoryKind};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C};
use crate::optim::{minimize, NelderMead};
use crate::sampling::random_horizontal;
use crate::scalar::Real;
use crate::state::{
    beta_norm, spectrum_of, split_gauge, standard_purification, DensityOperator,
    GaugeAlgebraElement, Purification, Spectrum,
};

/// Horizontality threshold on the u(σ) part of an initial control.
const HORIZONTAL_TOL: f64 = 1e-10;

/// Coadjoint map on raw matrices: ζ with β(ζ, η) = β(ξ, [ξ, η]) for all
/// η ∈ u(k). Entrywise ζᵢⱼ = Cᵢⱼ/(pᵢ + pⱼ) with C = [{P, ξ}, ξ].
pub(crate) fn coadjoint_raw<T: Real>(xi: &CMat<T>, sigma: &Spectrum<T>) -> CMat<T> {
    let p = sigma.p_matrix();
    let anti = p.anticommutator(xi);
    let c = anti.commutator(xi);
    let values = sigma.values();
    let k = sigma.k();
    CMat::from_fn(k, k, |i, j| {
        let denom = values[i] + values[j];
        c[(i, j)] / Complex::new(denom, T::zero())
    })
}

/// ad*_ξ ξ, defined by ad*_ξξ·η = ξ·[ξ, η] for every η ∈ u(k).
pub fn coadjoint<T: Real>(
    xi: &GaugeAlgebraElement<T>,
    sigma: &Spectrum<T>,
) -> Result<GaugeAlgebraElement<T>> {
    if xi.k() != sigma.k() {
        return Err(Error::ShapeMismatch {
            left_rows: xi.k(),
            left_cols: xi.k(),
            right_rows: sigma.k(),
            right_cols: sigma.k(),
        });
    }
    let zeta = coadjoint_raw(xi.matrix(), sigma).antihermitian_part();
    GaugeAlgebraElement::general(zeta)
}

/// Integrates the Arnold–Euler equation ξ̇ = ad*_ξ ξ with RK4 and per-step
/// re-projection onto the anti-Hermitian matrices. β(ξ, ξ) is a conserved
/// quantity of the exact flow (ξ̇·ξ = ξ·[ξ, ξ] = 0).
pub fn arnold_euler_flow<T: Real>(
    xi0: &GaugeAlgebraElement<T>,
    sigma: &Spectrum<T>,
    tau: T,
    steps: usize,
) -> Result<Trajectory<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    if xi0.k() != sigma.k() {
        return Err(Error::ShapeMismatch {
            left_rows: xi0.k(),
            left_cols: xi0.k(),
            right_rows: sigma.k(),
            right_cols: sigma.k(),
        });
    }
    let h = tau / T::of(steps as f64);
    let half = T::half();
    let sixth = h / T::of(6.0);
    let times: Vec<T> = (0..=steps)
        .map(|i| tau * T::of(i as f64) / T::of(steps as f64))
        .collect();
    let mut frames = Vec::with_capacity(steps + 1);
    let mut xi = xi0.matrix().clone();
    frames.push(xi.clone());
    for _ in 0..steps {
        let k1 = coadjoint_raw(&xi, sigma);
        let k2 = coadjoint_raw(&(&xi + &k1.scale(h * half)), sigma);
        let k3 = coadjoint_raw(&(&xi + &k2.scale(h * half)), sigma);
        let k4 = coadjoint_raw(&(&xi + &k3.scale(h)), sigma);
        let sum = &(&k1 + &k4) + &(&k2 + &k3).scale(T::two());
        xi = (&xi + &sum.scale(sixth)).antihermitian_part();
        frames.push(xi.clone());
    }
    Trajectory::new(times, frames, TrajectoryKind::Control, None, T::of(1e-8))
}

/// The Hamiltonian trajectory Ĥ_ξ attached to a sampled control curve.
/// Requires an invertible ψ₀ (full rank, k = n). Frames are Hermitian to
/// 1e-9 by validation.
pub fn synth_hamiltonian<T: Real>(
    psi0: &Purification<T>,
    xi: &Trajectory<T>,
    ctx: &Context<T>,
) -> Result<Trajectory<T>> {
    let vs = propagators(xi, xi.len() - 1)?;
    synth_from_propagators(psi0, xi, &vs, ctx)
}

fn synth_from_propagators<T: Real>(
    psi0: &Purification<T>,
    xi: &Trajectory<T>,
    vs: &[CMat<T>],
    ctx: &Context<T>,
) -> Result<Trajectory<T>> {
    if xi.kind() != TrajectoryKind::Control {
        return Err(Error::InvalidArgument(
            "synthesis expects a control curve".into(),
        ));
    }
    if psi0.k() != psi0.n() {
        return Err(Error::RankDeficient {
            k: psi0.k(),
            n: psi0.n(),
        });
    }
    if xi.first().rows() != psi0.k() {
        return Err(Error::ShapeMismatch {
            left_rows: xi.first().rows(),
            left_cols: xi.first().cols(),
            right_rows: psi0.k(),
            right_cols: psi0.k(),
        });
    }
    let a = psi0.matrix() * &psi0.spectrum().p_inv_sqrt();
    let a_adj = a.adjoint();
    let i_hbar = C::new(T::zero(), ctx.hbar);
    let frames: Vec<CMat<T>> = xi
        .frames()
        .iter()
        .zip(vs)
        .map(|(xi_t, v)| {
            let conjugated = &(v * xi_t) * &v.adjoint();
            (&(&a * &conjugated) * &a_adj).scale_c(i_hbar)
        })
        .collect();
    Trajectory::new(
        xi.times().to_vec(),
        frames,
        TrajectoryKind::Hamiltonian,
        None,
        T::of(1e-9),
    )
}

/// A horizontal geodesic produced by the control pipeline, with the
/// diagnostics the pipeline certifies.
#[derive(Clone, Debug)]
pub struct GeodesicSolution<T: Real = f64> {
    /// Initial control direction in u(σ)^⊥.
    pub xi0: GaugeAlgebraElement<T>,
    /// Arnold–Euler flow of xi0.
    pub xi_curve: Trajectory<T>,
    /// Synthesized Hamiltonian trajectory.
    pub hamiltonian: Trajectory<T>,
    /// Schrödinger flow of the Hamiltonian from the standard purification.
    pub psi_curve: Trajectory<T>,
    /// Projection π(ψ(t)) = ψψ†.
    pub rho_curve: Trajectory<T>,
    /// ∫√β(ξ, ξ) dt.
    pub length: T,
    /// √β(ξ₀, ξ₀); equals length/τ for the exact flow.
    pub speed: T,
    /// max_t of the β-norm of the u(σ) part of ξ(t).
    pub horizontal_residual_max: T,
    /// max_t |√β(ξ(t), ξ(t)) − speed|.
    pub speed_drift_max: T,
    /// max_t ‖ψ(t) − ψ₀ P^{-1/2} V(t) P^{1/2}‖_F: agreement between the
    /// Schrödinger flow and the group-translate closed form.
    pub synthesis_defect_max: T,
}

/// Generates the horizontal geodesic from ρ₀ with initial control ξ₀ by
/// composing the Arnold–Euler flow, Hamiltonian synthesis, the Schrödinger
/// flow, and the bundle projection.
pub fn geodesic_from<T: Real>(
    rho0: &DensityOperator<T>,
    xi0: &GaugeAlgebraElement<T>,
    tau: T,
    steps: usize,
    ctx: &Context<T>,
) -> Result<GeodesicSolution<T>> {
    let sigma = spectrum_of(rho0, ctx.rank_tol)?;
    if sigma.k() != rho0.n() {
        return Err(Error::RankDeficient {
            k: sigma.k(),
            n: rho0.n(),
        });
    }
    let (par, _) = split_gauge(xi0, &sigma)?;
    let par_norm = beta_norm(par.matrix(), &sigma);
    if par_norm > T::of(HORIZONTAL_TOL) {
        return Err(Error::NotHorizontal {
            parallel_norm: par_norm.to_f64().unwrap_or(f64::NAN),
            tolerance: HORIZONTAL_TOL,
        });
    }
    let psi0 = standard_purification(rho0, ctx.rank_tol)?;
    let xi_curve = arnold_euler_flow(xi0, &sigma, tau, steps)?;
    let vs = propagators(&xi_curve, xi_curve.len() - 1)?;
    let hamiltonian = synth_from_propagators(&psi0, &xi_curve, &vs, ctx)?;
    let psi_curve = evolve_schrodinger(&sampled(&hamiltonian), &psi0, tau, steps, ctx)?;
    let rho_frames: Vec<CMat<T>> = psi_curve
        .frames()
        .iter()
        .map(|psi| (psi * &psi.adjoint()).hermitian_part())
        .collect();
    let rho_curve = Trajectory::new(
        psi_curve.times().to_vec(),
        rho_frames,
        TrajectoryKind::Density,
        None,
        ctx.drift_tol.max(T::of(1e-7)),
    )?;

    let speed = beta_norm(xi0.matrix(), &sigma);
    let mut horizontal_residual_max = T::zero();
    let mut speed_drift_max = T::zero();
    let mut speeds = Vec::with_capacity(xi_curve.len());
    for frame in xi_curve.frames() {
        let xi_t = GaugeAlgebraElement::general_with_tolerance(frame.clone(), T::of(1e-6))?;
        let (par_t, _) = split_gauge(&xi_t, &sigma)?;
        horizontal_residual_max = horizontal_residual_max.max(beta_norm(par_t.matrix(), &sigma));
        let s = beta_norm(frame, &sigma);
        speed_drift_max = speed_drift_max.max((s - speed).abs());
        speeds.push(s);
    }
    let dt = xi_curve.dt();
    let inner: T = speeds[1..speeds.len() - 1].iter().copied().sum();
    let length = dt * (T::half() * (speeds[0] + speeds[speeds.len() - 1]) + inner);

    let a = psi0.matrix() * &sigma.p_inv_sqrt();
    let p_sqrt = sigma.p_sqrt();
    let mut synthesis_defect_max = T::zero();
    for (psi, v) in psi_curve.frames().iter().zip(&vs) {
        let closed = &(&a * v) * &p_sqrt;
        synthesis_defect_max = synthesis_defect_max.max(psi.distance(&closed));
    }

    if horizontal_residual_max > T::of(1e-6) {
        return Err(Error::IntegrationDrift {
            quantity: "horizontal residual of the control curve",
            deviation: horizontal_residual_max.to_f64().unwrap_or(f64::NAN),
            tolerance: 1e-6,
        });
    }
    let speed_scale = speed.max(T::of(1e-12));
    if speed_drift_max / speed_scale > T::of(1e-8) {
        return Err(Error::IntegrationDrift {
            quantity: "geodesic speed conservation",
            deviation: (speed_drift_max / speed_scale).to_f64().unwrap_or(f64::NAN),
            tolerance: 1e-8,
        });
    }

    Ok(GeodesicSolution {
        xi0: xi0.clone(),
        xi_curve,
        hamiltonian,
        psi_curve,
        rho_curve,
        length,
        speed,
        horizontal_residual_max,
        speed_drift_max,
        synthesis_defect_max,
    })
}

/// Closed-form geodesic for spectra with exactly two distinct eigenvalues:
/// ad*_ξξ = 0 on u(σ)^⊥, so the control is constant, the Hamiltonian is
/// time independent, and V(t) = exp(tξ₀).
pub fn two_eigenvalue_geodesic<T: Real>(
    rho0: &DensityOperator<T>,
    xi0: &GaugeAlgebraElement<T>,
    tau: T,
    steps: usize,
    ctx: &Context<T>,
) -> Result<GeodesicSolution<T>> {
    let sigma = spectrum_of(rho0, ctx.rank_tol)?;
    if sigma.n_groups() != 2 {
        return Err(Error::InvalidArgument(format!(
            "fast path requires exactly two distinct eigenvalues, spectrum has {} groups",
            sigma.n_groups()
        )));
    }
    if sigma.k() != rho0.n() {
        return Err(Error::RankDeficient {
            k: sigma.k(),
            n: rho0.n(),
        });
    }
    let (par, _) = split_gauge(xi0, &sigma)?;
    let par_norm = beta_norm(par.matrix(), &sigma);
    if par_norm > T::of(HORIZONTAL_TOL) {
        return Err(Error::NotHorizontal {
            parallel_norm: par_norm.to_f64().unwrap_or(f64::NAN),
            tolerance: HORIZONTAL_TOL,
        });
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let psi0 = standard_purification(rho0, ctx.rank_tol)?;
    let times: Vec<T> = (0..=steps)
        .map(|i| tau * T::of(i as f64) / T::of(steps as f64))
        .collect();
    // Diagonalize iξ₀ once; V(t) = W exp(−iλt) W†.
    let eig = xi0.matrix().scale_c(C::new(T::zero(), T::one())).eigh()?;
    let w = eig.vectors;
    let w_adj = w.adjoint();
    let v_at = |t: T| -> CMat<T> {
        let phases: Vec<C<T>> = eig
            .values
            .iter()
            .map(|&l| C::new((l * t).cos(), -(l * t).sin()))
            .collect();
        &(&w * &CMat::diag(&phases)) * &w_adj
    };
    let a = psi0.matrix() * &sigma.p_inv_sqrt();
    let a_adj = a.adjoint();
    let p_sqrt = sigma.p_sqrt();
    let h_const = (&(&a * xi0.matrix()) * &a_adj).scale_c(C::new(T::zero(), ctx.hbar));

    let mut xi_frames = Vec::with_capacity(steps + 1);
    let mut h_frames = Vec::with_capacity(steps + 1);
    let mut psi_frames = Vec::with_capacity(steps + 1);
    let mut rho_frames = Vec::with_capacity(steps + 1);
    for &t in &times {
        let v = v_at(t);
        let psi = &(&a * &v) * &p_sqrt;
        rho_frames.push((&psi * &psi.adjoint()).hermitian_part());
        psi_frames.push(psi);
        xi_frames.push(xi0.matrix().clone());
        h_frames.push(h_const.clone());
    }
    let xi_curve = Trajectory::new(
        times.clone(),
        xi_frames,
        TrajectoryKind::Control,
        None,
        T::of(1e-10),
    )?;
    let hamiltonian = Trajectory::new(
        times.clone(),
        h_frames,
        TrajectoryKind::Hamiltonian,
        None,
        T::of(1e-10),
    )?;
    let psi_curve = Trajectory::new(
        times.clone(),
        psi_frames,
        TrajectoryKind::Purification,
        Some(sigma.clone()),
        T::of(1e-10),
    )?;
    let rho_curve = Trajectory::new(
        times,
        rho_frames,
        TrajectoryKind::Density,
        None,
        T::of(1e-8),
    )?;
    let speed = beta_norm(xi0.matrix(), &sigma);
    Ok(GeodesicSolution {
        xi0: xi0.clone(),
        xi_curve,
        hamiltonian,
        psi_curve,
        rho_curve,
        length: speed * tau,
        speed,
        horizontal_residual_max: T::zero(),
        speed_drift_max: T::zero(),
        synthesis_defect_max: T::zero(),
    })
}

/// Great circle between purifications with orthogonal
/// supports: ψ(t) = cos(t)ψ₀ + sin(t)ψ₁ on [0, π/2]. The curve is
/// horizontal, stays in S(σ), and has unit speed (length π/2).
pub fn distinguishable_geodesic<T: Real>(
    psi0: &Purification<T>,
    psi1: &Purification<T>,
    steps: usize,
) -> Result<Trajectory<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    if !psi0.spectrum().is_close(psi1.spectrum(), T::of(1e-10)) {
        return Err(Error::NotIsospectral {
            left: psi0.spectrum().describe(),
            right: psi1.spectrum().describe(),
        });
    }
    let overlap = (&psi0.matrix().adjoint() * psi1.matrix()).frob_norm();
    if overlap > T::of(1e-10) {
        return Err(Error::SupportsNotOrthogonal {
            overlap: overlap.to_f64().unwrap_or(f64::NAN),
        });
    }
    let tau = T::PI() * T::half();
    let times: Vec<T> = (0..=steps)
        .map(|i| tau * T::of(i as f64) / T::of(steps as f64))
        .collect();
    let mut frames = Vec::with_capacity(steps + 1);
    for &t in &times {
        let frame = &psi0.matrix().scale(t.cos()) + &psi1.matrix().scale(t.sin());
        // Horizontality along the curve: ψ†ψ̇ = cos² ψ₀†ψ₁ − sin² ψ₁†ψ₀ = 0.
        let dot = &psi1.matrix().scale(t.cos()) - &psi0.matrix().scale(t.sin());
        let vertical_pairing = (&frame.adjoint() * &dot).frob_norm();
        if vertical_pairing > T::of(1e-10) {
            return Err(Error::IntegrationDrift {
                quantity: "horizontality of the great circle",
                deviation: vertical_pairing.to_f64().unwrap_or(f64::NAN),
                tolerance: 1e-10,
            });
        }
        frames.push(frame);
    }
    Trajectory::new(
        times,
        frames,
        TrajectoryKind::Purification,
        Some(psi0.spectrum().clone()),
        T::of(1e-10),
    )
}

/// Shooting configuration for [`distance`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ShootingConfig {
    pub restarts: usize,
    pub endpoint_tol: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub steps: usize,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            endpoint_tol: 1e-6,
            max_iters: 2000,
            seed: 7,
            steps: 200,
        }
    }
}

/// Result of [`distance`].
#[derive(Clone, Debug)]
pub struct DistanceResult<T: Real = f64> {
    /// √β(ξ₀, ξ₀): an upper bound on the Riemannian distance, minimal over
    /// the converged restarts.
    pub distance: T,
    /// Optimal initial control (zero for the closed-form branches).
    pub xi0: GaugeAlgebraElement<T>,
    /// Whether some restart closed the endpoint gap below `endpoint_tol`.
    pub converged: bool,
    /// Final Frobenius endpoint mismatch of the reported solution.
    pub endpoint_mismatch: T,
    /// Number of restarts that converged.
    pub restarts_converged: usize,
}

/// Real coordinates on u(σ)^⊥: one (re, im) pair per strictly-upper
/// cross-group entry.
struct HorizontalChart {
    k: usize,
    positions: Vec<(usize, usize)>,
}

impl HorizontalChart {
    fn new<T: Real>(sigma: &Spectrum<T>) -> Self {
        let groups = sigma.group_index();
        let k = sigma.k();
        let mut positions = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                if groups[i] != groups[j] {
                    positions.push((i, j));
                }
            }
        }
        Self { k, positions }
    }

    fn dim(&self) -> usize {
        2 * self.positions.len()
    }

    fn to_matrix<T: Real>(&self, coords: &[T]) -> CMat<T> {
        let mut xi = CMat::zeros(self.k, self.k);
        for (m, &(i, j)) in self.positions.iter().enumerate() {
            let z = Complex::new(coords[2 * m], coords[2 * m + 1]);
            xi[(i, j)] = z;
            xi[(j, i)] = -z.conj();
        }
        xi
    }

    fn coords_of<T: Real>(&self, xi: &CMat<T>) -> Vec<T> {
        let mut coords = Vec::with_capacity(self.dim());
        for &(i, j) in &self.positions {
            coords.push(xi[(i, j)].re);
            coords.push(xi[(i, j)].im);
        }
        coords
    }
}

/// Endpoint ρ(1) of the geodesic with initial control ξ₀, via joint RK4
/// integration of (ξ̇, V̇) = (ad*_ξξ, Vξ) on [0, 1].
fn shoot_endpoint<T: Real>(
    xi0: &CMat<T>,
    sigma: &Spectrum<T>,
    a: &CMat<T>,
    steps: usize,
) -> Result<CMat<T>> {
    let h = T::one() / T::of(steps as f64);
    let half = T::half();
    let sixth = h / T::of(6.0);
    let mut xi = xi0.clone();
    let mut v = CMat::identity(sigma.k());
    for _ in 0..steps {
        let k1x = coadjoint_raw(&xi, sigma);
        let k1v = &v * &xi;
        let x2 = &xi + &k1x.scale(h * half);
        let v2 = &v + &k1v.scale(h * half);
        let k2x = coadjoint_raw(&x2, sigma);
        let k2v = &v2 * &x2;
        let x3 = &xi + &k2x.scale(h * half);
        let v3 = &v + &k2v.scale(h * half);
        let k3x = coadjoint_raw(&x3, sigma);
        let k3v = &v3 * &x3;
        let x4 = &xi + &k3x.scale(h);
        let v4 = &v + &k3v.scale(h);
        let k4x = coadjoint_raw(&x4, sigma);
        let k4v = &v4 * &x4;
        let sum_x = &(&k1x + &k4x) + &(&k2x + &k3x).scale(T::two());
        let sum_v = &(&k1v + &k4v) + &(&k2v + &k3v).scale(T::two());
        xi = (&xi + &sum_x.scale(sixth)).antihermitian_part();
        v = (&v + &sum_v.scale(sixth)).polar_unitary()?;
    }
    let psi_end = &(a * &v) * &sigma.p_sqrt();
    Ok((&psi_end * &psi_end.adjoint()).hermitian_part())
}

/// Riemannian distance between isospectral density operators.
///
/// Pure states and distinguishable endpoints use the closed forms
/// (arccos overlap, respectively π/2); full-rank pairs are solved by
/// multi-start Nelder–Mead shooting over u(σ)^⊥. The result is an upper
/// bound on the true distance, minimal over the converged restarts.
pub fn distance<T: Real>(
    rho0: &DensityOperator<T>,
    rho1: &DensityOperator<T>,
    cfg: &ShootingConfig,
    ctx: &Context<T>,
) -> Result<DistanceResult<T>> {
    let sigma0 = spectrum_of(rho0, ctx.rank_tol)?;
    let sigma1 = spectrum_of(rho1, ctx.rank_tol)?;
    if !sigma0.is_close(&sigma1, T::of(1e-8)) {
        return Err(Error::NotIsospectral {
            left: sigma0.describe(),
            right: sigma1.describe(),
        });
    }
    let endpoint_tol = T::of(cfg.endpoint_tol);
    let direct = rho0.matrix().distance(rho1.matrix());
    let k = sigma0.k();
    if direct < endpoint_tol {
        return Ok(DistanceResult {
            distance: T::zero(),
            xi0: GaugeAlgebraElement::zero(k),
            converged: true,
            endpoint_mismatch: direct,
            restarts_converged: 0,
        });
    }
    let overlap = (rho0.matrix() * rho1.matrix()).trace().re;
    if k == 1 {
        // Pure states: Fubini–Study arc, Tr(ρ₀ρ₁) = |⟨ψ₀|ψ₁⟩|².
        let cosine = overlap.max(T::zero()).sqrt().min(T::one());
        return Ok(DistanceResult {
            distance: cosine.acos(),
            xi0: GaugeAlgebraElement::zero(1),
            converged: true,
            endpoint_mismatch: T::zero(),
            restarts_converged: 0,
        });
    }
    if overlap < T::of(1e-9) {
        // Distinguishable: the bound dist ≥ π/2 is attained.
        return Ok(DistanceResult {
            distance: T::PI() * T::half(),
            xi0: GaugeAlgebraElement::zero(k),
            converged: true,
            endpoint_mismatch: T::zero(),
            restarts_converged: 0,
        });
    }
    if k != rho0.n() {
        return Err(Error::Unsupported(
            "shooting requires full-rank density operators (closed forms cover the pure and distinguishable cases)"
                .into(),
        ));
    }
    let chart = HorizontalChart::new(&sigma0);
    if chart.dim() == 0 {
        return Err(Error::Unsupported(
            "the orbit is a single point but the endpoints differ".into(),
        ));
    }
    let psi0 = standard_purification(rho0, ctx.rank_tol)?;
    let a = psi0.matrix() * &sigma0.p_inv_sqrt();
    let target = rho1.matrix().clone();
    let mut objective = |coords: &[T]| -> T {
        let xi = chart.to_matrix(coords);
        match shoot_endpoint(&xi, &sigma0, &a, cfg.steps) {
            Ok(rho_end) => rho_end.distance(&target),
            Err(_) => T::of(1e6),
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let opts = NelderMead {
        max_iters: cfg.max_iters,
        ..NelderMead::default()
    };
    let mut best_converged: Option<(T, Vec<T>, T)> = None;
    let mut best_overall: Option<(T, Vec<T>, T)> = None;
    let mut restarts_converged = 0;
    for _ in 0..cfg.restarts.max(1) {
        let norm = T::of(0.1) + (T::PI() - T::of(0.1)) * T::of(rng.gen::<f64>());
        let init = chart.coords_of(&random_horizontal(&sigma0, norm, &mut rng));
        let outcome = minimize(&mut objective, &init, &opts);
        let speed = beta_norm(&chart.to_matrix(&outcome.x), &sigma0);
        let candidate = (speed, outcome.x.clone(), outcome.fx);
        if outcome.fx < endpoint_tol {
            restarts_converged += 1;
            let better = best_converged.as_ref().is_none_or(|(s, _, _)| speed < *s);
            if better {
                best_converged = Some(candidate.clone());
            }
        }
        let better_overall = best_overall
            .as_ref()
            .is_none_or(|(_, _, m)| outcome.fx < *m);
        if better_overall {
            best_overall = Some(candidate);
        }
    }
    let (speed, coords, mismatch, converged) = match (best_converged, best_overall) {
        (Some((s, x, m)), _) => (s, x, m, true),
        (None, Some((s, x, m))) => (s, x, m, false),
        (None, None) => unreachable!("at least one restart runs"),
    };
    let xi0 = GaugeAlgebraElement::general(chart.to_matrix(&coords))?;
    Ok(DistanceResult {
        distance: speed,
        xi0,
        converged,
        endpoint_mismatch: mismatch,
        restarts_converged,
    })
}
