//! Sampled invariants of the geometry: metric positivity, gauge covariance,
//! uncertainty identities, isospectral drift, projection compatibility, and
//! the dispersion/distance inequalities. Everything is seeded.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qorbit::dynamics::sampled;
use qorbit::sampling::{
    random_antihermitian, random_density, random_gauge_unitary, random_hermitian,
    random_horizontal, random_unitary,
};
use qorbit::state::{gauge_metric, split_gauge};
use qorbit::{
    connection_form, constant, curve_length, distance, energy_dispersion, evolve_schrodinger,
    evolve_von_neumann, geodesic_from, is_parallel_at, observable_base_speed_squared,
    observable_field, spectrum_of, standard_purification, submersion_metric, uncertainty, xi_a,
    Context, DensityOperator, GaugeAlgebraElement, Mat, Observable, ShootingConfig, Spectrum,
};

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

#[test]
fn purification_round_trip_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in [2, 3, 4] {
        for _ in 0..10 {
            let rho = random_density::<f64, _>(n, &mut rng);
            let psi = standard_purification(&rho, 1e-9).unwrap();
            assert!(psi.project().distance(rho.matrix()) < 1e-10);
        }
    }
}

#[test]
fn gauge_metric_is_positive_definite() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for values in [vec![0.75, 0.25], vec![0.5, 0.5], vec![0.5, 0.3, 0.2]] {
        let sigma = Spectrum::new(values, 1e-9).unwrap();
        for _ in 0..100 {
            let xi_mat = random_antihermitian::<f64, _>(sigma.k(), 1.0, &mut rng);
            let xi = GaugeAlgebraElement::general(xi_mat).unwrap();
            let norm2 = gauge_metric(&xi, &xi, &sigma).unwrap();
            assert!(norm2 > 0.0, "beta must be positive definite, got {norm2}");
        }
    }
}

#[test]
fn split_gauge_idempotent_and_orthogonal_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let sigma = Spectrum::new(vec![0.4, 0.4, 0.2], 1e-9).unwrap();
    for _ in 0..50 {
        let xi =
            GaugeAlgebraElement::general(random_antihermitian::<f64, _>(3, 1.0, &mut rng)).unwrap();
        let (par, perp) = split_gauge(&xi, &sigma).unwrap();
        let rebuilt = &(par.matrix() + perp.matrix()) - xi.matrix();
        assert!(rebuilt.frob_norm() < 1e-14);
        let cross = gauge_metric(&par, &perp, &sigma).unwrap();
        assert!(cross.abs() < 1e-12);
        let (par2, perp2) = split_gauge(&par, &sigma).unwrap();
        assert!(par2.matrix().distance(par.matrix()) < 1e-15);
        assert!(perp2.matrix().frob_norm() < 1e-15);
    }
}

/// Uncertainty bound, decomposition identity, and pure-state specialization
/// on a seeded sample of (ρ, Â) pairs.
#[test]
fn uncertainty_identities_randomized() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for draw in 0..200 {
        let n = 2 + draw % 3;
        let rho = random_density::<f64, _>(n, &mut rng);
        let a_hat = Observable::new(random_hermitian::<f64, _>(n, 2.0, &mut rng)).unwrap();
        let delta = uncertainty(&rho, &a_hat).unwrap();
        let g = observable_base_speed_squared(&rho, &a_hat, &ctx).unwrap();
        // Lower bound: ΔA ≥ ħ√g(X_A, X_A).
        assert!(
            delta >= ctx.hbar * g.max(0.0).sqrt() - 1e-10,
            "draw {draw}: ΔA = {delta}, ħ√g = {}",
            g.sqrt()
        );
        // Decomposition identity at 1e-9 relative.
        let sigma = spectrum_of(&rho, 1e-9).unwrap();
        let (_, perp) = xi_a(&rho, &a_hat, &ctx).unwrap();
        let beta_perp = gauge_metric(&perp, &perp, &sigma).unwrap();
        let rhs = ctx.hbar * ctx.hbar * (g + beta_perp);
        let scale = (delta * delta).abs().max(rhs.abs()).max(1e-30);
        assert!(
            ((delta * delta - rhs) / scale).abs() < 1e-9,
            "draw {draw}: ΔA² = {}, ħ²(g+β) = {rhs}",
            delta * delta
        );
    }
}

#[test]
fn pure_states_have_no_perp_component() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for n in [2, 3, 4] {
        for _ in 0..10 {
            let u = random_unitary::<f64, _>(n, &mut rng);
            let mut diag = vec![0.0; n];
            diag[0] = 1.0;
            let rho = DensityOperator::new(&(&u * &Mat::diag_real(&diag)) * &u.adjoint()).unwrap();
            let a_hat = Observable::new(random_hermitian::<f64, _>(n, 1.5, &mut rng)).unwrap();
            let (_, perp) = xi_a(&rho, &a_hat, &ctx).unwrap();
            let sigma = spectrum_of(&rho, 1e-9).unwrap();
            assert_eq!(sigma.k(), 1);
            let beta_perp = gauge_metric(&perp, &perp, &sigma).unwrap();
            assert!(beta_perp.abs() < 1e-24);
            // Hence ΔA = ħ√g for every observable on a pure state.
            let delta = uncertainty(&rho, &a_hat).unwrap();
            let g = observable_base_speed_squared(&rho, &a_hat, &ctx).unwrap();
            assert!((delta - ctx.hbar * g.max(0.0).sqrt()).abs() < 1e-9);
        }
    }
}

/// ξ_A transforms by conjugation under the gauge action; its β-norm and the
/// β-norm of its i·1-orthogonal part are representative independent.
#[test]
fn xi_a_gauge_covariance() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..25 {
        let n = 3;
        let rho = random_density::<f64, _>(n, &mut rng);
        let a_hat = Observable::new(random_hermitian::<f64, _>(n, 1.0, &mut rng)).unwrap();
        let psi = standard_purification(&rho, 1e-9).unwrap();
        let sigma = psi.spectrum().clone();
        let u = random_gauge_unitary::<f64, _>(&sigma, &mut rng);
        let moved = psi.gauge_transform(&u).unwrap();

        let field = observable_field(&a_hat, &psi, &ctx).unwrap();
        let eval = connection_form(&psi, &field).unwrap();
        let field_moved = observable_field(&a_hat, &moved, &ctx).unwrap();
        let eval_moved = connection_form(&moved, &field_moved).unwrap();

        // A(ψU†) = U A(ψ) U†.
        let conjugated = &(&u * eval.xi.matrix()) * &u.adjoint();
        assert!(conjugated.distance(eval_moved.xi.matrix()) < 1e-10);
        let n1 = gauge_metric(&eval.xi, &eval.xi, &sigma).unwrap().sqrt();
        let n2 = gauge_metric(&eval_moved.xi, &eval_moved.xi, &sigma)
            .unwrap()
            .sqrt();
        assert!((n1 - n2).abs() < 1e-10);
    }
}

#[test]
fn parallel_equality_on_constructed_observables() {
    // Horizontal controls give parallel Hamiltonians; equality in the
    // uncertainty bound must hold there.
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for values in [vec![0.75, 0.25], vec![0.5, 0.3, 0.2]] {
        let sigma = Spectrum::new(values.clone(), 1e-9).unwrap();
        let rho = DensityOperator::new(Mat::diag_real(&values)).unwrap();
        for _ in 0..10 {
            let xi = random_horizontal::<f64, _>(&sigma, 0.8, &mut rng);
            let h = Observable::new(xi.scale_c(c(0.0, ctx.hbar))).unwrap();
            assert!(is_parallel_at(&h, &rho, 1e-10, &ctx).unwrap());
            let delta = uncertainty(&rho, &h).unwrap();
            let g = observable_base_speed_squared(&rho, &h, &ctx).unwrap();
            assert!(
                (delta - ctx.hbar * g.max(0.0).sqrt()).abs() < 1e-8,
                "ΔA = {delta}, ħ√g = {}",
                g.sqrt()
            );
        }
    }
}

#[test]
fn submersion_metric_positivity() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for _ in 0..20 {
        let n = 2 + rng.gen_range(0..3);
        let rho = random_density::<f64, _>(n, &mut rng);
        let h = random_hermitian::<f64, _>(n, 1.0, &mut rng);
        let dot = h.commutator(rho.matrix()).scale_c(c(0.0, -1.0));
        let g = submersion_metric(&rho, &dot, &dot, &ctx).unwrap();
        assert!(g >= 0.0);
        if dot.frob_norm() > 1e-6 {
            assert!(g > 0.0);
        }
        let zero = Mat::zeros(n, n);
        assert!(submersion_metric(&rho, &zero, &zero, &ctx).unwrap().abs() < 1e-12);
    }
}

/// The base speed agrees with a finite difference of the shooting distance
/// on the qubit fixture: g(ρ̇, ρ̇) ≈ (dist(ρ(t), ρ(t+h))/h)².
#[test]
fn submersion_metric_matches_distance_finite_difference() {
    let ctx = Context::default();
    let rho = DensityOperator::new(Mat::diag_real(&[0.75, 0.25])).unwrap();
    let mut xi = Mat::zeros(2, 2);
    xi[(0, 1)] = c(0.5, 0.0);
    xi[(1, 0)] = c(-0.5, 0.0);
    let h_op = xi.scale_c(c(0.0, 1.0));
    let dot = h_op.commutator(rho.matrix()).scale_c(c(0.0, -1.0));
    let g = submersion_metric(&rho, &dot, &dot, &ctx).unwrap();

    let h = 1e-3;
    let traj = evolve_von_neumann(&constant(h_op), &rho, h, 50, &ctx).unwrap();
    let rho_h = DensityOperator::new(traj.last().clone()).unwrap();
    let cfg = ShootingConfig {
        restarts: 4,
        ..ShootingConfig::default()
    };
    let dist = distance(&rho, &rho_h, &cfg, &ctx).unwrap();
    assert!(dist.converged);
    let fd = (dist.distance / h).powi(2);
    assert!((g - fd).abs() < 1e-2, "g = {g}, fd = {fd}");
}

#[test]
fn von_neumann_frames_are_isospectral() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let rho = random_density::<f64, _>(4, &mut rng);
    let base = spectrum_of(&rho, 1e-9).unwrap();
    let h = random_hermitian::<f64, _>(4, 2.0, &mut rng);
    let traj = evolve_von_neumann(&constant(h), &rho, 1.0, 1000, &ctx).unwrap();
    let mut drift = 0.0f64;
    for frame in traj.frames() {
        let eig = frame.eigh().unwrap();
        for (a, b) in eig.values.iter().zip(base.values()) {
            drift = drift.max((a - b).abs());
        }
    }
    assert!(drift < 1e-7, "spectrum drift {drift:e}");
}

#[test]
fn schrodinger_projects_onto_von_neumann() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for n in [2, 3] {
        let rho = random_density::<f64, _>(n, &mut rng);
        let psi = standard_purification(&rho, 1e-9).unwrap();
        let a = random_hermitian::<f64, _>(n, 1.5, &mut rng);
        let b = random_hermitian::<f64, _>(n, 0.8, &mut rng);
        let drive = move |t: f64| &a + &b.scale((2.0 * t).sin());
        let steps = 400;
        let psi_traj = evolve_schrodinger(&drive, &psi, 1.0, steps, &ctx).unwrap();
        let rho_traj = evolve_von_neumann(&drive, &rho, 1.0, steps, &ctx).unwrap();
        for (pf, rf) in psi_traj.frames().iter().zip(rho_traj.frames()) {
            let projected = pf * &pf.adjoint();
            assert!(projected.distance(rf) < 1e-7);
        }
    }
}

/// Random time-dependent drives: the energy dispersion dominates the length
/// of the generated curve.
#[test]
fn dispersion_dominates_length_on_random_drives() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for draw in 0..12 {
        let n = 2 + draw % 3;
        let rho = random_density::<f64, _>(n, &mut rng);
        let a = random_hermitian::<f64, _>(n, 1.0, &mut rng);
        let b = random_hermitian::<f64, _>(n, 1.0, &mut rng);
        let drive = move |t: f64| &a + &b.scale((3.0 * t).sin());
        let traj = evolve_von_neumann(&drive, &rho, 1.0, 500, &ctx).unwrap();
        let disp = energy_dispersion(&drive, &traj, &ctx).unwrap();
        let len = curve_length(&traj, &ctx).unwrap();
        assert!(
            disp >= len - 1e-6,
            "draw {draw}: dispersion {disp} < length {len}"
        );
    }
}

/// Geodesics realize equality: the synthesized Hamiltonian is parallel
/// along its own curve and its dispersion equals the length.
#[test]
fn geodesic_optimality_witness() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    for values in [vec![0.75, 0.25], vec![0.5, 0.3, 0.2]] {
        let sigma = Spectrum::new(values.clone(), 1e-9).unwrap();
        let rho = DensityOperator::new(Mat::diag_real(&values)).unwrap();
        let xi0 = GaugeAlgebraElement::general(random_horizontal::<f64, _>(&sigma, 0.7, &mut rng))
            .unwrap();
        let sol = geodesic_from(&rho, &xi0, 1.0, 600, &ctx).unwrap();
        let disp = energy_dispersion(&sampled(&sol.hamiltonian), &sol.rho_curve, &ctx).unwrap();
        assert!(
            (disp - sol.length).abs() < 1e-5,
            "dispersion {disp} vs length {}",
            sol.length
        );
        // Parallelism along the curve, every frame.
        for idx in 0..sol.rho_curve.len() {
            let rho_t =
                DensityOperator::with_tolerance(sol.rho_curve.frames()[idx].clone(), 1e-7).unwrap();
            let h_t =
                Observable::with_tolerance(sol.hamiltonian.frames()[idx].clone(), 1e-9).unwrap();
            assert!(is_parallel_at(&h_t, &rho_t, 1e-6, &ctx).unwrap());
        }
    }
}

/// One-sided check of the distance formula: any drive that connects two
/// states disperses at least as much as the distance between them.
#[test]
fn dispersion_dominates_distance() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let rho0 = DensityOperator::new(Mat::diag_real(&[0.75, 0.25])).unwrap();
    for _ in 0..5 {
        let h = random_hermitian::<f64, _>(2, 1.2, &mut rng);
        let traj = evolve_von_neumann(&constant(h.clone()), &rho0, 1.0, 400, &ctx).unwrap();
        let rho1 = DensityOperator::new(traj.last().clone()).unwrap();
        let disp = energy_dispersion(&constant(h), &traj, &ctx).unwrap();
        let cfg = ShootingConfig {
            restarts: 5,
            ..ShootingConfig::default()
        };
        let dist = distance(&rho0, &rho1, &cfg, &ctx).unwrap();
        assert!(dist.converged);
        assert!(
            disp >= dist.distance - 1e-4,
            "dispersion {disp} < distance {}",
            dist.distance
        );
    }
}

/// Shooting never undercuts the closed form on the fixture and never beats
/// more restarts.
#[test]
fn shooting_upper_bound_sanity() {
    let ctx = Context::default();
    let rho0 = DensityOperator::new(Mat::diag_real(&[0.75, 0.25])).unwrap();
    let mut xi = Mat::zeros(2, 2);
    xi[(0, 1)] = c(0.5, 0.0);
    xi[(1, 0)] = c(-0.5, 0.0);
    let h_op = xi.scale_c(c(0.0, 1.0));
    let traj = evolve_von_neumann(&constant(h_op), &rho0, 1.0, 800, &ctx).unwrap();
    let rho1 = DensityOperator::new(traj.last().clone()).unwrap();
    let mut last = f64::INFINITY;
    for restarts in [2, 4, 8] {
        let cfg = ShootingConfig {
            restarts,
            ..ShootingConfig::default()
        };
        let result = distance(&rho0, &rho1, &cfg, &ctx).unwrap();
        assert!(result.converged);
        assert!(result.distance <= 0.5 + 1e-5);
        // More restarts can only improve the converged incumbent.
        assert!(result.distance <= last + 1e-9);
        last = result.distance;
    }
}

/// Degenerate spectra exercise the non-abelian gauge blocks: the identities
/// and the geodesic pipeline must hold there too.
#[test]
fn degenerate_spectrum_end_to_end() {
    let ctx = Context::default();
    let mut rng = ChaCha8Rng::seed_from_u64(115);
    let u = random_unitary::<f64, _>(3, &mut rng);
    let rho = DensityOperator::new(&(&u * &Mat::diag_real(&[0.4, 0.4, 0.2])) * &u.adjoint())
        .unwrap();
    let sigma = spectrum_of(&rho, 1e-9).unwrap();
    assert_eq!(sigma.multiplicities(), &[2, 1]);
    assert_eq!(sigma.gauge_dim(), 5);

    // Decomposition identity with a non-abelian u(σ).
    for _ in 0..20 {
        let a_hat = Observable::new(random_hermitian::<f64, _>(3, 1.5, &mut rng)).unwrap();
        let delta2 = uncertainty(&rho, &a_hat).unwrap().powi(2);
        let g = observable_base_speed_squared(&rho, &a_hat, &ctx).unwrap();
        let (_, perp) = xi_a(&rho, &a_hat, &ctx).unwrap();
        let beta_perp = gauge_metric(&perp, &perp, &sigma).unwrap();
        let rhs = ctx.hbar * ctx.hbar * (g + beta_perp);
        let rel = (delta2 - rhs).abs() / delta2.abs().max(rhs.abs()).max(1e-30);
        assert!(rel < 1e-9, "relative defect {rel:e}");
    }

    // Geodesic pipeline: two distinct eigenvalues keep the flow constant
    // and the Hamiltonian time independent even with a degenerate block.
    let xi0 = GaugeAlgebraElement::general(random_horizontal::<f64, _>(&sigma, 0.7, &mut rng))
        .unwrap();
    let diag_rho = DensityOperator::new(Mat::diag_real(&[0.4, 0.4, 0.2])).unwrap();
    let sol = geodesic_from(&diag_rho, &xi0, 1.0, 500, &ctx).unwrap();
    assert!((sol.length - 0.7).abs() < 1e-9);
    assert!(sol.horizontal_residual_max < 1e-12);
    let disp = energy_dispersion(&sampled(&sol.hamiltonian), &sol.rho_curve, &ctx).unwrap();
    assert!((disp - sol.length).abs() < 1e-5);
    for frame in sol.hamiltonian.frames() {
        assert!(frame.distance(sol.hamiltonian.first()) < 1e-9);
    }

    // Shooting on the degenerate orbit recovers the geodesic's length as an
    // upper bound.
    let rho1 = DensityOperator::new(sol.rho_curve.last().clone()).unwrap();
    let cfg = ShootingConfig {
        restarts: 4,
        ..ShootingConfig::default()
    };
    let result = distance(&diag_rho, &rho1, &cfg, &ctx).unwrap();
    assert!(result.converged);
    assert!(result.distance <= 0.7 + 1e-5, "distance {}", result.distance);
    assert!(result.distance > 0.3, "distance {}", result.distance);
}
