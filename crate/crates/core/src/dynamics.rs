//! Time evolution and curve functionals: von Neumann and Schrödinger
//! integrators, the negative time-ordered exponential, horizontal lifts,
//! curve length, energy dispersion, distinguishability, and the
//! Mandelstam–Tamm report.
//!
//! Integration is fixed-step classical RK4 with per-step structure
//! projection (re-Hermitization of density frames, polar re-unitarization
//! of propagators). Time-dependent generators are passed as `Fn(T) -> CMat<T>`;
//! use [`constant`] for a fixed matrix and [`sampled`] for a trajectory
//! (interpolated at off-grid stage times, which preserves the integrator's
//! order; quadratures never interpolate).

use crate::connection::{self, variance_raw};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C};
use crate::scalar::Real;
use crate::state::{DensityOperator, Purification, Spectrum};

/// What the frames of a [`Trajectory`] are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrajectoryKind {
    Density,
    Purification,
    Hamiltonian,
    Control,
}

/// Uniformly time-sampled sequence of matrices.
#[derive(Clone, Debug)]
pub struct Trajectory<T: Real = f64> {
    times: Vec<T>,
    frames: Vec<CMat<T>>,
    kind: TrajectoryKind,
    sigma: Option<Spectrum<T>>,
}

impl<T: Real> Trajectory<T> {
    /// Validates frames per kind at tolerance `tol` (Hermitian+trace+PSD for
    /// density, fiber condition for purification, Hermitian for Hamiltonian,
    /// anti-Hermitian for control) and checks grid uniformity.
    pub fn new(
        times: Vec<T>,
        frames: Vec<CMat<T>>,
        kind: TrajectoryKind,
        sigma: Option<Spectrum<T>>,
        tol: T,
    ) -> Result<Self> {
        if times.len() != frames.len() || times.len() < 2 {
            return Err(Error::GridMismatch(format!(
                "{} times vs {} frames",
                times.len(),
                frames.len()
            )));
        }
        let dt = times[1] - times[0];
        let tol_grid = grid_tol(dt, times.len());
        for w in times.windows(2) {
            if ((w[1] - w[0]) - dt).abs() > tol_grid {
                return Err(Error::GridMismatch("grid is not uniform".into()));
            }
        }
        let traj = Self {
            times,
            frames,
            kind,
            sigma,
        };
        traj.validate(tol)?;
        Ok(traj)
    }

    fn validate(&self, tol: T) -> Result<()> {
        for frame in &self.frames {
            match self.kind {
                TrajectoryKind::Density => {
                    let defect = frame.herm_defect();
                    if defect > tol {
                        return Err(drift("density frame Hermiticity", defect, tol));
                    }
                    let trace = frame.trace().re;
                    if (trace - T::one()).abs() > tol {
                        return Err(drift("density frame trace", (trace - T::one()).abs(), tol));
                    }
                    let min = frame.eigh()?.values.last().copied().unwrap_or(T::zero());
                    if min < -tol {
                        return Err(drift("density frame positivity", -min, tol));
                    }
                }
                TrajectoryKind::Purification => {
                    let sigma = self.sigma.as_ref().ok_or_else(|| {
                        Error::InvalidArgument(
                            "purification trajectory requires its spectrum".into(),
                        )
                    })?;
                    let gram = &frame.adjoint() * frame;
                    let defect = gram.distance(&sigma.p_matrix());
                    if defect > tol {
                        return Err(drift("fiber condition", defect, tol));
                    }
                }
                TrajectoryKind::Hamiltonian => {
                    let defect = frame.herm_defect();
                    if defect > tol {
                        return Err(drift("Hamiltonian frame Hermiticity", defect, tol));
                    }
                }
                TrajectoryKind::Control => {
                    let defect = frame.antiherm_defect();
                    if defect > tol {
                        return Err(drift("control frame anti-Hermiticity", defect, tol));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn frames(&self) -> &[CMat<T>] {
        &self.frames
    }

    pub fn kind(&self) -> TrajectoryKind {
        self.kind
    }

    pub fn sigma(&self) -> Option<&Spectrum<T>> {
        self.sigma.as_ref()
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn dt(&self) -> T {
        self.times[1] - self.times[0]
    }

    pub fn tau(&self) -> T {
        *self.times.last().expect("nonempty grid")
    }

    pub fn first(&self) -> &CMat<T> {
        &self.frames[0]
    }

    pub fn last(&self) -> &CMat<T> {
        self.frames.last().expect("nonempty grid")
    }

    /// Index of a grid-aligned time, or an error if `t` falls between nodes.
    pub fn index_of(&self, t: T) -> Result<usize> {
        let dt = self.dt();
        let pos = ((t - self.times[0]) / dt).round();
        let idx = pos.to_f64().unwrap_or(-1.0);
        if idx < 0.0 || idx as usize >= self.len() {
            return Err(Error::GridMismatch(format!("time {t} outside the grid")));
        }
        let idx = idx as usize;
        if (self.times[idx] - t).abs() > grid_tol(dt, self.len()) {
            return Err(Error::GridMismatch(format!("time {t} is not a grid node")));
        }
        Ok(idx)
    }

    fn stencil(&self, t: T) -> (usize, usize, T) {
        let dt = self.dt();
        let n = self.len();
        let m = n.min(4);
        let cell = ((t - self.times[0]) / dt).floor().to_f64().unwrap_or(0.0) as isize;
        let cell = cell.clamp(0, n as isize - 2) as usize;
        let base = cell.saturating_sub((m - 1) / 2).min(n - m);
        let s = (t - self.times[base]) / dt;
        (base, m, s)
    }

    /// Frame value at arbitrary `t` by local Lagrange interpolation (exact
    /// on grid nodes, cubic inside for grids of ≥ 4 points).
    pub fn value_at(&self, t: T) -> CMat<T> {
        let dt = self.dt();
        let near = ((t - self.times[0]) / dt).round();
        let idx = near.to_f64().unwrap_or(-1.0);
        if idx >= 0.0 && (idx as usize) < self.len() {
            let idx = idx as usize;
            if (self.times[idx] - t).abs() <= grid_tol(dt, self.len()) {
                return self.frames[idx].clone();
            }
        }
        let (base, m, s) = self.stencil(t);
        let mut out = CMat::zeros(self.frames[0].rows(), self.frames[0].cols());
        for i in 0..m {
            let mut w = T::one();
            for j in 0..m {
                if j != i {
                    w = w * (s - T::of(j as f64)) / (T::of(i as f64) - T::of(j as f64));
                }
            }
            out = &out + &self.frames[base + i].scale(w);
        }
        out
    }

    /// Time derivative of the local interpolant at `t`.
    pub fn derivative_at(&self, t: T) -> CMat<T> {
        let (base, m, s) = self.stencil(t);
        let dt = self.dt();
        let mut out = CMat::zeros(self.frames[0].rows(), self.frames[0].cols());
        for i in 0..m {
            // d/ds of the Lagrange weight: sum over the dropped factor.
            let mut dw = T::zero();
            for l in 0..m {
                if l == i {
                    continue;
                }
                let mut term = T::one() / (T::of(i as f64) - T::of(l as f64));
                for j in 0..m {
                    if j != i && j != l {
                        term = term * (s - T::of(j as f64)) / (T::of(i as f64) - T::of(j as f64));
                    }
                }
                dw += term;
            }
            out = &out + &self.frames[base + i].scale(dw / dt);
        }
        out
    }
}

/// Grid-comparison tolerance: a small multiple of the node count in units
/// of the scalar's epsilon, so uniform grids built in either precision pass
/// while genuine misalignment fails.
fn grid_tol<T: Real>(dt: T, len: usize) -> T {
    dt.abs() * T::epsilon() * T::of(16.0 * len.max(4) as f64)
}

fn drift<T: Real>(quantity: &'static str, deviation: T, tol: T) -> Error {
    Error::IntegrationDrift {
        quantity,
        deviation: deviation.to_f64().unwrap_or(f64::NAN),
        tolerance: tol.to_f64().unwrap_or(f64::NAN),
    }
}

/// Adapter: a fixed matrix as a time-dependent generator.
pub fn constant<T: Real>(m: CMat<T>) -> impl Fn(T) -> CMat<T> + Clone {
    move |_| m.clone()
}

/// Adapter: a sampled trajectory as a time-dependent generator
/// (exact on grid nodes, local cubic interpolation between them).
pub fn sampled<T: Real>(traj: &Trajectory<T>) -> impl Fn(T) -> CMat<T> + Clone + '_ {
    move |t| traj.value_at(t)
}

/// One classical RK4 step of ẏ = rhs(gen(t), y).
fn rk4_step<T: Real, G: Fn(T) -> CMat<T> + ?Sized>(
    y: &CMat<T>,
    t: T,
    h: T,
    gen: &G,
    rhs: &impl Fn(&CMat<T>, &CMat<T>) -> CMat<T>,
) -> CMat<T> {
    let half = T::half();
    let g1 = gen(t);
    let g2 = gen(t + h * half);
    let g3 = gen(t + h);
    let k1 = rhs(&g1, y);
    let k2 = rhs(&g2, &(y + &k1.scale(h * half)));
    let k3 = rhs(&g2, &(y + &k2.scale(h * half)));
    let k4 = rhs(&g3, &(y + &k3.scale(h)));
    let sixth = h / T::of(6.0);
    let sum = &(&k1 + &k4) + &(&k2 + &k3).scale(T::two());
    y + &sum.scale(sixth)
}

fn uniform_grid<T: Real>(tau: T, steps: usize) -> Vec<T> {
    (0..=steps)
        .map(|i| tau * T::of(i as f64) / T::of(steps as f64))
        .collect()
}

/// Integrates the von Neumann equation ρ̇ = [Ĥ(t), ρ]/(iħ) with per-step
/// re-Hermitization. Frames are validated at `ctx.drift_tol`.
pub fn evolve_von_neumann<T: Real, H: Fn(T) -> CMat<T> + ?Sized>(
    hamiltonian: &H,
    rho0: &DensityOperator<T>,
    tau: T,
    steps: usize,
    ctx: &Context<T>,
) -> Result<Trajectory<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let times = uniform_grid(tau, steps);
    let h = tau / T::of(steps as f64);
    // 1/(iħ) = −i/ħ.
    let factor = C::new(T::zero(), -T::one() / ctx.hbar);
    let rhs = |g: &CMat<T>, y: &CMat<T>| g.commutator(y).scale_c(factor);
    let mut frames = Vec::with_capacity(steps + 1);
    frames.push(rho0.matrix().clone());
    let mut y = rho0.matrix().clone();
    for &t in &times[..steps] {
        y = rk4_step(&y, t, h, hamiltonian, &rhs).hermitian_part();
        frames.push(y.clone());
    }
    Trajectory::new(times, frames, TrajectoryKind::Density, None, ctx.drift_tol)
}

/// Integrates the Schrödinger equation ψ̇ = Ĥ(t)ψ/(iħ) on S(σ).
/// The fiber condition is monitored, not enforced, and validated at
/// `ctx.drift_tol`.
pub fn evolve_schrodinger<T: Real, H: Fn(T) -> CMat<T> + ?Sized>(
    hamiltonian: &H,
    psi0: &Purification<T>,
    tau: T,
    steps: usize,
    ctx: &Context<T>,
) -> Result<Trajectory<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let times = uniform_grid(tau, steps);
    let h = tau / T::of(steps as f64);
    let factor = C::new(T::zero(), -T::one() / ctx.hbar);
    let rhs = |g: &CMat<T>, y: &CMat<T>| (g * y).scale_c(factor);
    let mut frames = Vec::with_capacity(steps + 1);
    frames.push(psi0.matrix().clone());
    let mut y = psi0.matrix().clone();
    for &t in &times[..steps] {
        y = rk4_step(&y, t, h, hamiltonian, &rhs);
        frames.push(y.clone());
    }
    Trajectory::new(
        times,
        frames,
        TrajectoryKind::Purification,
        Some(psi0.spectrum().clone()),
        ctx.drift_tol,
    )
}

/// Negative time-ordered exponential of a sampled control curve: the value
/// V(t) of the solution to V̇ = Vξ(t), V(0) = 1, with later-time factors
/// composing on the right. `t` must be a node of the curve's grid.
pub fn neg_time_ordered_exp<T: Real>(xi: &Trajectory<T>, t: T) -> Result<CMat<T>> {
    if xi.kind() != TrajectoryKind::Control {
        return Err(Error::InvalidArgument(
            "time-ordered exponential expects a control curve".into(),
        ));
    }
    let upto = xi.index_of(t)?;
    Ok(propagators(xi, upto)?.pop().expect("nonempty"))
}

/// Negative time-ordered exponential of a generator given as a function of
/// time, integrated with `steps` RK4 steps over [0, t] with per-step polar
/// re-unitarization.
pub fn neg_time_ordered_exp_fn<T: Real, G: Fn(T) -> CMat<T> + ?Sized>(
    xi: &G,
    t: T,
    steps: usize,
) -> Result<CMat<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let probe = xi(T::zero());
    let defect = probe.antiherm_defect();
    if defect > T::of(1e-9) * (T::one() + probe.frob_norm()) {
        return Err(Error::NotAntiHermitian {
            deviation: defect.to_f64().unwrap_or(f64::NAN),
            tolerance: 1e-9,
        });
    }
    let h = t / T::of(steps as f64);
    let rhs = |g: &CMat<T>, v: &CMat<T>| v * g;
    let mut v = CMat::identity(probe.rows());
    for i in 0..steps {
        let ti = t * T::of(i as f64) / T::of(steps as f64);
        v = rk4_step(&v, ti, h, xi, &rhs).polar_unitary()?;
    }
    Ok(v)
}

/// Negative time-ordered exponential sampled along the whole grid of a
/// control curve: V(t_j) for every node, solving V̇ = Vξ with V(0) = 1.
pub fn propagator_curve<T: Real>(xi: &Trajectory<T>) -> Result<Vec<CMat<T>>> {
    if xi.kind() != TrajectoryKind::Control {
        return Err(Error::InvalidArgument(
            "propagators expect a control curve".into(),
        ));
    }
    propagators(xi, xi.len() - 1)
}

/// Propagator V at every grid node of a control curve up to index `upto`
/// (inclusive), with per-step polar re-unitarization.
pub(crate) fn propagators<T: Real>(xi: &Trajectory<T>, upto: usize) -> Result<Vec<CMat<T>>> {
    let k = xi.first().rows();
    let h = xi.dt();
    let rhs = |g: &CMat<T>, v: &CMat<T>| v * g;
    let gen = sampled(xi);
    let mut out = Vec::with_capacity(upto + 1);
    let mut v = CMat::identity(k);
    out.push(v.clone());
    for i in 0..upto {
        v = rk4_step(&v, xi.times()[i], h, &gen, &rhs).polar_unitary()?;
        out.push(v.clone());
    }
    Ok(out)
}

/// Length ∫√g(ρ̇, ρ̇) dt of a density trajectory (full rank; goes through
/// the submersion metric), or ∫√G(ψ̇, ψ̇) dt of a purification trajectory
/// (valid for any rank when the curve is horizontal, since horizontal
/// lifting is length preserving). Central differences + trapezoid, O(h²).
pub fn curve_length<T: Real>(traj: &Trajectory<T>, ctx: &Context<T>) -> Result<T> {
    let n = traj.len();
    if n < 2 {
        return Err(Error::InvalidArgument("trajectory too short".into()));
    }
    let speeds: Vec<T> = match traj.kind() {
        TrajectoryKind::Density => {
            let mut speeds = Vec::with_capacity(n);
            for i in 0..n {
                let dot = grid_derivative(traj, i);
                let rho = DensityOperator::with_tolerance(
                    traj.frames()[i].clone(),
                    ctx.drift_tol.max(T::of(1e-7)),
                )?;
                let g = connection::submersion_metric(&rho, &dot, &dot, ctx)?;
                speeds.push(g.max(T::zero()).sqrt());
            }
            speeds
        }
        TrajectoryKind::Purification => (0..n)
            .map(|i| {
                let dot = grid_derivative(traj, i);
                dot.hs_dot(&dot).re.max(T::zero()).sqrt()
            })
            .collect(),
        _ => {
            return Err(Error::InvalidArgument(
                "length is defined for density or purification trajectories".into(),
            ))
        }
    };
    Ok(trapezoid(&speeds, traj.dt()))
}

/// Second-order finite difference of the frames at grid node `i`.
fn grid_derivative<T: Real>(traj: &Trajectory<T>, i: usize) -> CMat<T> {
    let f = traj.frames();
    let n = traj.len();
    let dt = traj.dt();
    let half = T::half();
    if n == 2 {
        return (&f[1] - &f[0]).scale(T::one() / dt);
    }
    if i == 0 {
        let combo = &(&f[1].scale(T::of(4.0)) - &f[0].scale(T::of(3.0))) - &f[2];
        combo.scale(half / dt)
    } else if i == n - 1 {
        let combo = &(&f[n - 1].scale(T::of(3.0)) - &f[n - 2].scale(T::of(4.0))) + &f[n - 3];
        combo.scale(half / dt)
    } else {
        (&f[i + 1] - &f[i - 1]).scale(half / dt)
    }
}

fn trapezoid<T: Real>(values: &[T], dt: T) -> T {
    let n = values.len();
    if n < 2 {
        return T::zero();
    }
    let inner: T = values[1..n - 1].iter().copied().sum();
    dt * (T::half() * (values[0] + values[n - 1]) + inner)
}

/// Energy dispersion (1/ħ)∫ΔH(ρ(t)) dt along a density trajectory;
/// trapezoid on the trajectory's own grid, no interpolation.
pub fn energy_dispersion<T: Real, H: Fn(T) -> CMat<T> + ?Sized>(
    hamiltonian: &H,
    traj: &Trajectory<T>,
    ctx: &Context<T>,
) -> Result<T> {
    if traj.kind() != TrajectoryKind::Density {
        return Err(Error::InvalidArgument(
            "energy dispersion expects a density trajectory".into(),
        ));
    }
    let values: Result<Vec<T>> = traj
        .times()
        .iter()
        .zip(traj.frames())
        .map(|(&t, rho)| {
            let h = hamiltonian(t).hermitian_part();
            variance_raw(rho, &h).map(|v| v.max(T::zero()).sqrt() / ctx.hbar)
        })
        .collect();
    Ok(trapezoid(&values?, traj.dt()))
}

/// Same as [`energy_dispersion`] for a sampled Hamiltonian, first checking
/// that the grids coincide.
pub fn energy_dispersion_sampled<T: Real>(
    hamiltonian: &Trajectory<T>,
    traj: &Trajectory<T>,
    ctx: &Context<T>,
) -> Result<T> {
    check_same_grid(hamiltonian, traj)?;
    energy_dispersion(&sampled(hamiltonian), traj, ctx)
}

pub(crate) fn check_same_grid<T: Real>(a: &Trajectory<T>, b: &Trajectory<T>) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch(format!(
            "{} vs {} nodes",
            a.len(),
            b.len()
        )));
    }
    let tol = grid_tol(a.dt(), a.len());
    for (&ta, &tb) in a.times().iter().zip(b.times()) {
        if (ta - tb).abs() > tol {
            return Err(Error::GridMismatch(format!("nodes {ta} vs {tb}")));
        }
    }
    Ok(())
}

/// Horizontal lift of a full-rank density trajectory extending from `psi0`:
/// integrates ψ̇ = hor_ψ(Aψ), with A the anti-Hermitian solution of
/// [A, ρ(t)] = ρ̇(t), along the interpolated curve with `steps_per_frame`
/// RK4 steps per frame interval.
pub fn horizontal_lift<T: Real>(
    traj: &Trajectory<T>,
    psi0: &Purification<T>,
    steps_per_frame: usize,
    ctx: &Context<T>,
) -> Result<Trajectory<T>> {
    if traj.kind() != TrajectoryKind::Density {
        return Err(Error::InvalidArgument(
            "horizontal lift expects a density trajectory".into(),
        ));
    }
    if steps_per_frame == 0 {
        return Err(Error::InvalidArgument(
            "steps_per_frame must be >= 1".into(),
        ));
    }
    if psi0.k() != psi0.n() {
        return Err(Error::RankDeficient {
            k: psi0.k(),
            n: psi0.n(),
        });
    }
    let mismatch = psi0.project().distance(traj.first());
    if mismatch > ctx.drift_tol.max(T::of(1e-8)) {
        return Err(Error::FiberMismatch {
            deviation: mismatch.to_f64().unwrap_or(f64::NAN),
        });
    }
    let sigma = psi0.spectrum().clone();
    let rhs_at = |t: T, psi: &CMat<T>| -> Result<CMat<T>> {
        let rho_t = traj.value_at(t).hermitian_part();
        let dot = traj.derivative_at(t);
        let gen = connection::orbit_generator(&rho_t, &dot, ctx.rank_tol)?;
        let x = &gen * psi;
        let (_, _, horizontal) = connection::horizontal_split_raw(psi, &sigma, &x)?;
        Ok(horizontal)
    };
    let mut frames = Vec::with_capacity(traj.len());
    let mut psi = psi0.matrix().clone();
    frames.push(psi.clone());
    let h = traj.dt() / T::of(steps_per_frame as f64);
    let half = T::half();
    let sixth = h / T::of(6.0);
    for i in 0..traj.len() - 1 {
        for s in 0..steps_per_frame {
            let t = traj.times()[i] + h * T::of(s as f64);
            let k1 = rhs_at(t, &psi)?;
            let k2 = rhs_at(t + h * half, &(&psi + &k1.scale(h * half)))?;
            let k3 = rhs_at(t + h * half, &(&psi + &k2.scale(h * half)))?;
            let k4 = rhs_at(t + h, &(&psi + &k3.scale(h)))?;
            let sum = &(&k1 + &k4) + &(&k2 + &k3).scale(T::two());
            psi = &psi + &sum.scale(sixth);
        }
        frames.push(psi.clone());
    }
    Trajectory::new(
        traj.times().to_vec(),
        frames,
        TrajectoryKind::Purification,
        Some(sigma),
        ctx.drift_tol.max(T::of(1e-6)),
    )
}

/// True iff the supports are orthogonal: Tr(ρ₀ρ₁) < tol.
pub fn is_distinguishable<T: Real>(
    rho0: &DensityOperator<T>,
    rho1: &DensityOperator<T>,
    tol: T,
) -> bool {
    (rho0.matrix() * rho1.matrix()).trace().re < tol
}

/// Outcome of the Mandelstam–Tamm check ⟨ΔH⟩τ ≥ πħ/2 for distinguishable
/// endpoints.
#[derive(Clone, Debug)]
pub struct MtReport<T: Real = f64> {
    /// Whether ρ(0) and ρ(τ) have orthogonal supports.
    pub distinguishable: bool,
    /// ⟨ΔH⟩ = (1/τ)∫ΔH dt.
    pub avg_uncertainty: T,
    /// ⟨ΔH⟩τ.
    pub product: T,
    /// πħ/2.
    pub bound: T,
    /// Bound status; `None` when the endpoints are not distinguishable
    /// (the estimate does not apply).
    pub satisfied: Option<bool>,
    /// product − bound; ~0 for parallel Hamiltonians.
    pub saturation_gap: T,
}

/// Evolves ρ₀ under Ĥ for time τ and reports the Mandelstam–Tamm data.
pub fn mt_bound_report<T: Real, H: Fn(T) -> CMat<T> + ?Sized>(
    hamiltonian: &H,
    rho0: &DensityOperator<T>,
    tau: T,
    steps: usize,
    ctx: &Context<T>,
) -> Result<MtReport<T>> {
    let traj = evolve_von_neumann(hamiltonian, rho0, tau, steps, ctx)?;
    let rho_end = DensityOperator::with_tolerance(traj.last().clone(), T::of(1e-6))?;
    let distinguishable = is_distinguishable(rho0, &rho_end, T::of(1e-9));
    let product = ctx.hbar * energy_dispersion(hamiltonian, &traj, ctx)?;
    let bound = T::PI() * ctx.hbar * T::half();
    let satisfied = distinguishable.then(|| product >= bound - T::of(1e-8));
    Ok(MtReport {
        distinguishable,
        avg_uncertainty: product / tau,
        product,
        bound,
        satisfied,
        saturation_gap: product - bound,
    })
}
