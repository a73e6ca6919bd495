//! Command-line surface for the orbit-geometry library: distances,
//! geodesics, evolutions, horizontal lifts, Hamiltonian synthesis, and
//! verification suites. Matrices travel as JSON, trajectories as CSV;
//! every command prints a machine-readable JSON report on stdout (floats
//! at 17 significant digits, so identical inputs give identical bytes)
//! and a human check table on stderr.
//!
//! Exit codes: 0 success, 1 input error, 2 `distance` did not converge,
//! 3 a verification check failed.

mod report;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qorbit::dynamics::{propagator_curve, sampled};
use qorbit::io::{
    from_json_str, to_json_string, trajectory_from_csv, trajectory_to_csv, MatrixJson,
};
use qorbit::sampling::{random_density, random_hermitian, random_horizontal, random_unitary};
use qorbit::state::gauge_metric;
use qorbit::{
    connection_form, curve_length, distance, energy_dispersion, energy_dispersion_sampled,
    evolve_schrodinger, evolve_von_neumann, geodesic_from, horizontal_lift, is_parallel_at,
    mt_bound_report, observable_base_speed_squared, spectrum_of, standard_purification,
    synth_hamiltonian, uncertainty, xi_a, Context, DensityOperator, GaugeAlgebraElement, Mat,
    Observable, Purification, ShootingConfig, Spectrum, Trajectory, TrajectoryKind,
};

use report::{write_atomic, Check, RunReport};

#[derive(Parser)]
#[command(
    name = "qorbit",
    version,
    about = "Riemannian geometry of unitary orbits of density operators"
)]
struct Cli {
    /// Reduced Planck constant (natural units by default).
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Integration step count for commands that integrate.
    #[arg(long, global = true, default_value_t = 1000)]
    steps: usize,
    /// Seed for every sampled computation.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Eigenvalue / rank tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Riemannian distance between two isospectral density operators
    /// (geodesic shooting; closed forms for pure and distinguishable pairs).
    Distance {
        /// Matrix JSON of ρ₀.
        rho0: PathBuf,
        /// Matrix JSON of ρ₁.
        rho1: PathBuf,
        /// Shooting configuration JSON
        /// {"restarts", "endpoint_tol", "max_iters", "seed", "steps"}.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Horizontal geodesic from ρ₀ with initial control ξ₀ ∈ u(σ)^⊥;
    /// writes rho.csv, psi.csv, hamiltonian.csv.
    Geodesic {
        rho0: PathBuf,
        /// Matrix JSON of the anti-Hermitian initial control.
        xi0: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Output directory for the trajectory CSV files.
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate the von Neumann equation; writes rho.csv.
    Evolve {
        /// Hamiltonian: matrix JSON (constant) or trajectory CSV
        /// (time-dependent; the CSV grid drives the integration).
        hamiltonian: PathBuf,
        rho0: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Horizontal lift of a density trajectory; writes psi.csv.
    Lift {
        /// Density trajectory CSV.
        rho_traj: PathBuf,
        /// Matrix JSON of the starting purification ψ₀ over the first frame.
        psi0: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// RK4 substeps per frame interval.
        #[arg(long, default_value_t = 1)]
        steps_per_frame: usize,
    },
    /// Synthesize the transporting Hamiltonian of a control curve;
    /// writes hamiltonian.csv.
    Synth {
        rho0: PathBuf,
        /// Control curve: trajectory CSV, or matrix JSON for a constant curve.
        xi: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sampled verification suites; exit code 3 if any check fails.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Energy dispersion dominates curve length; equality on geodesics.
    Dispersion {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Mandelstam–Tamm bound and its saturation.
    Mt {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Uncertainty decomposition identity and bound.
    Decomposition {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let ctx = Context {
        hbar: cli.hbar,
        rank_tol: cli.tol,
        ..Context::default()
    };
    match cli.command {
        Command::Distance { rho0, rho1, config } => {
            cmd_distance(&rho0, &rho1, config.as_deref(), cli.seed, &ctx)
        }
        Command::Geodesic {
            rho0,
            xi0,
            tau,
            out,
        } => cmd_geodesic(&rho0, &xi0, tau, cli.steps, &out, cli.seed, &ctx),
        Command::Evolve {
            hamiltonian,
            rho0,
            tau,
            out,
        } => cmd_evolve(&hamiltonian, &rho0, tau, cli.steps, &out, cli.seed, &ctx),
        Command::Lift {
            rho_traj,
            psi0,
            out,
            steps_per_frame,
        } => cmd_lift(&rho_traj, &psi0, steps_per_frame, &out, cli.seed, &ctx),
        Command::Synth { rho0, xi, tau, out } => {
            cmd_synth(&rho0, &xi, tau, cli.steps, &out, cli.seed, &ctx)
        }
        Command::Verify { suite } => match suite {
            VerifySuite::Dispersion { samples } => verify_dispersion(samples, cli.seed, &ctx),
            VerifySuite::Mt { samples } => verify_mt(samples, cli.seed, &ctx),
            VerifySuite::Decomposition { samples } => verify_decomposition(samples, cli.seed, &ctx),
        },
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_matrix(path: &Path) -> Result<Mat> {
    let json: MatrixJson = from_json_str(&read_to_string(path)?)
        .with_context(|| format!("parsing matrix JSON {}", path.display()))?;
    Ok(json.to_matrix()?)
}

fn read_density(path: &Path, ctx: &Context) -> Result<DensityOperator> {
    DensityOperator::with_context(read_matrix(path)?, ctx)
        .with_context(|| format!("{} is not a valid density operator", path.display()))
}

fn finish(report: &RunReport) -> Result<i32> {
    println!("{}", to_json_string(report)?);
    report.print_table();
    Ok(if report.all_passed() { 0 } else { 3 })
}

#[derive(serde::Serialize)]
struct DistanceOut {
    distance: f64,
    converged: bool,
    xi0: MatrixJson,
}

fn cmd_distance(
    rho0_path: &Path,
    rho1_path: &Path,
    config: Option<&Path>,
    seed: u64,
    ctx: &Context,
) -> Result<i32> {
    let rho0 = read_density(rho0_path, ctx)?;
    let rho1 = read_density(rho1_path, ctx)?;
    let cfg: ShootingConfig = match config {
        Some(path) => from_json_str(&read_to_string(path)?)
            .with_context(|| format!("parsing shooting config {}", path.display()))?,
        None => ShootingConfig {
            seed,
            ..ShootingConfig::default()
        },
    };
    let result = distance(&rho0, &rho1, &cfg, ctx)?;
    let out = DistanceOut {
        distance: result.distance,
        converged: result.converged,
        xi0: MatrixJson::from_matrix(result.xi0.matrix()),
    };
    println!("{}", to_json_string(&out)?);
    if !result.converged {
        eprintln!(
            "warning: no restart closed the endpoint gap (best mismatch {:.3e}); the reported value is the best incumbent",
            result.endpoint_mismatch
        );
        return Ok(2);
    }
    Ok(0)
}

fn cmd_geodesic(
    rho0_path: &Path,
    xi0_path: &Path,
    tau: f64,
    steps: usize,
    out: &Path,
    seed: u64,
    ctx: &Context,
) -> Result<i32> {
    let rho0 = read_density(rho0_path, ctx)?;
    let xi0 = GaugeAlgebraElement::general(read_matrix(xi0_path)?)
        .with_context(|| format!("{} is not anti-Hermitian", xi0_path.display()))?;
    let sol = geodesic_from(&rho0, &xi0, tau, steps, ctx)?;

    let mut report = RunReport::new(
        "geodesic",
        vec![
            rho0_path.display().to_string(),
            xi0_path.display().to_string(),
        ],
        seed,
    );
    for (name, traj) in [
        ("rho", &sol.rho_curve),
        ("psi", &sol.psi_curve),
        ("hamiltonian", &sol.hamiltonian),
    ] {
        let path = out.join(format!("{name}.csv"));
        write_atomic(&path, &trajectory_to_csv(traj))?;
        report.path(name, &path);
    }
    let dispersion = energy_dispersion_sampled(&sol.hamiltonian, &sol.rho_curve, ctx)?;
    report.scalar("length", sol.length);
    report.scalar("speed", sol.speed);
    report.scalar("dispersion", dispersion);
    report.scalar("horizontal_residual_max", sol.horizontal_residual_max);
    report.scalar("synthesis_defect_max", sol.synthesis_defect_max);
    report.checks.push(Check::close(
        "dispersion_equals_length_on_geodesics",
        dispersion,
        sol.length,
        1e-5,
    ));
    report.checks.push(Check::at_most(
        "horizontal_residual_max",
        sol.horizontal_residual_max,
        0.0,
        1e-6,
    ));
    report.checks.push(Check::at_most(
        "schrodinger_flow_matches_group_translate",
        sol.synthesis_defect_max,
        0.0,
        1e-6,
    ));
    finish(&report)
}

fn cmd_evolve(
    h_path: &Path,
    rho0_path: &Path,
    tau: f64,
    steps: usize,
    out: &Path,
    seed: u64,
    ctx: &Context,
) -> Result<i32> {
    let rho0 = read_density(rho0_path, ctx)?;
    let is_csv = h_path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let traj = if is_csv {
        let h_traj = trajectory_from_csv::<f64>(
            &read_to_string(h_path)?,
            TrajectoryKind::Hamiltonian,
            None,
            1e-8,
        )?;
        let steps = h_traj.len() - 1;
        let tau = h_traj.tau();
        let out = evolve_von_neumann(&sampled(&h_traj), &rho0, tau, steps, ctx)?;
        out
    } else {
        let h = Observable::new(read_matrix(h_path)?)
            .with_context(|| format!("{} is not Hermitian", h_path.display()))?;
        let h_mat = h.matrix().clone();
        evolve_von_neumann(&move |_: f64| h_mat.clone(), &rho0, tau, steps, ctx)?
    };

    // Spectrum drift against the initial state, frame by frame.
    let base = spectrum_of(&rho0, ctx.rank_tol)?;
    let mut drift = 0.0f64;
    for frame in traj.frames() {
        let eig = frame.eigh()?;
        for (a, b) in eig.values.iter().take(base.k()).zip(base.values()) {
            drift = drift.max((a - b).abs());
        }
    }

    let mut report = RunReport::new(
        "evolve",
        vec![
            h_path.display().to_string(),
            rho0_path.display().to_string(),
        ],
        seed,
    );
    let path = out.join("rho.csv");
    write_atomic(&path, &trajectory_to_csv(&traj))?;
    report.path("rho", &path);
    report.scalar("tau", traj.tau());
    report.scalar("steps", (traj.len() - 1) as f64);
    report.scalar("spectrum_drift_max", drift);
    report
        .checks
        .push(Check::at_most("isospectral_drift", drift, 0.0, 1e-7));
    finish(&report)
}

fn cmd_lift(
    rho_traj_path: &Path,
    psi0_path: &Path,
    steps_per_frame: usize,
    out: &Path,
    seed: u64,
    ctx: &Context,
) -> Result<i32> {
    let traj = trajectory_from_csv::<f64>(
        &read_to_string(rho_traj_path)?,
        TrajectoryKind::Density,
        None,
        1e-7,
    )?;
    let psi0_mat = read_matrix(psi0_path)?;
    // σ comes from the fiber condition: ψ†ψ must be P(σ).
    let gram = &psi0_mat.adjoint() * &psi0_mat;
    let diag: Vec<f64> = (0..gram.rows()).map(|i| gram[(i, i)].re).collect();
    let sigma = Spectrum::new(diag, ctx.rank_tol)?;
    let psi0 = Purification::new(psi0_mat, sigma.clone())
        .with_context(|| format!("{} is not a purification", psi0_path.display()))?;

    let lift = horizontal_lift(&traj, &psi0, steps_per_frame, ctx)?;

    // Residual of the connection on finite-difference velocities.
    let dt = lift.dt();
    let mut residual_max = 0.0f64;
    for i in 1..lift.len() - 1 {
        let dot = (&lift.frames()[i + 1] - &lift.frames()[i - 1]).scale(0.5 / dt);
        let psi_i = Purification::with_tolerance(lift.frames()[i].clone(), sigma.clone(), 1e-5)?;
        let eval = connection_form(&psi_i, &dot)?;
        residual_max = residual_max.max(gauge_metric(&eval.xi, &eval.xi, &sigma)?.max(0.0).sqrt());
    }
    let mut round_trip = 0.0f64;
    for (f, base) in lift.frames().iter().zip(traj.frames()) {
        round_trip = round_trip.max((f * &f.adjoint()).distance(base));
    }
    let len_base = curve_length(&traj, ctx)?;
    let len_lift = curve_length(&lift, ctx)?;

    let mut report = RunReport::new(
        "lift",
        vec![
            rho_traj_path.display().to_string(),
            psi0_path.display().to_string(),
        ],
        seed,
    );
    let path = out.join("psi.csv");
    write_atomic(&path, &trajectory_to_csv(&lift))?;
    report.path("psi", &path);
    report.scalar("length_base", len_base);
    report.scalar("length_lift", len_lift);
    report.scalar("connection_residual_max", residual_max);
    report.scalar("round_trip_max", round_trip);
    report.checks.push(Check::at_most(
        "lift_velocities_are_horizontal",
        residual_max,
        0.0,
        1e-6,
    ));
    report.checks.push(Check::close(
        "lift_preserves_length",
        len_lift,
        len_base,
        1e-5,
    ));
    report.checks.push(Check::at_most(
        "projection_round_trip",
        round_trip,
        0.0,
        1e-6,
    ));
    finish(&report)
}

fn cmd_synth(
    rho0_path: &Path,
    xi_path: &Path,
    tau: f64,
    steps: usize,
    out: &Path,
    seed: u64,
    ctx: &Context,
) -> Result<i32> {
    let rho0 = read_density(rho0_path, ctx)?;
    let psi0 = standard_purification(&rho0, ctx.rank_tol)?;
    let is_csv = xi_path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let xi_curve = if is_csv {
        trajectory_from_csv::<f64>(
            &read_to_string(xi_path)?,
            TrajectoryKind::Control,
            None,
            1e-8,
        )?
    } else {
        let xi0 = GaugeAlgebraElement::general(read_matrix(xi_path)?)
            .with_context(|| format!("{} is not anti-Hermitian", xi_path.display()))?;
        let times: Vec<f64> = (0..=steps).map(|i| tau * i as f64 / steps as f64).collect();
        let frames = vec![xi0.matrix().clone(); steps + 1];
        Trajectory::new(times, frames, TrajectoryKind::Control, None, 1e-10)?
    };
    let hamiltonian = synth_hamiltonian(&psi0, &xi_curve, ctx)?;

    let herm_defect = hamiltonian
        .frames()
        .iter()
        .map(|f| f.herm_defect())
        .fold(0.0f64, f64::max);
    // The Schrödinger flow of the synthesized Hamiltonian must follow the
    // group translate ψ₀ P^{-1/2} V(t) P^{1/2}.
    let psi_traj = evolve_schrodinger(
        &sampled(&hamiltonian),
        &psi0,
        xi_curve.tau(),
        xi_curve.len() - 1,
        ctx,
    )?;
    let vs = propagator_curve(&xi_curve)?;
    let a = psi0.matrix() * &psi0.spectrum().p_inv_sqrt();
    let p_sqrt = psi0.spectrum().p_sqrt();
    let mut flow_defect = 0.0f64;
    for (psi, v) in psi_traj.frames().iter().zip(&vs) {
        flow_defect = flow_defect.max(psi.distance(&(&(&a * v) * &p_sqrt)));
    }

    let mut report = RunReport::new(
        "synth",
        vec![
            rho0_path.display().to_string(),
            xi_path.display().to_string(),
        ],
        seed,
    );
    let path = out.join("hamiltonian.csv");
    write_atomic(&path, &trajectory_to_csv(&hamiltonian))?;
    report.path("hamiltonian", &path);
    report.scalar("herm_defect_max", herm_defect);
    report.scalar("flow_defect_max", flow_defect);
    report.checks.push(Check::at_most(
        "synthesized_frames_hermitian",
        herm_defect,
        0.0,
        1e-9,
    ));
    report.checks.push(Check::at_most(
        "schrodinger_flow_matches_group_translate",
        flow_defect,
        0.0,
        1e-6,
    ));
    finish(&report)
}

fn verify_dispersion(samples: usize, seed: u64, ctx: &Context) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_gap = f64::INFINITY;
    for draw in 0..samples {
        let n = 2 + draw % 3;
        let rho = random_density::<f64, _>(n, &mut rng);
        let a = random_hermitian::<f64, _>(n, 1.5, &mut rng);
        let b = random_hermitian::<f64, _>(n, 1.0, &mut rng);
        let w = 1.0 + 3.0 * rng.gen::<f64>();
        let drive = move |t: f64| &a + &b.scale((w * t).sin());
        let traj = evolve_von_neumann(&drive, &rho, 1.0, 400, ctx)?;
        let disp = energy_dispersion(&drive, &traj, ctx)?;
        let len = curve_length(&traj, ctx)?;
        min_gap = min_gap.min(disp - len);
    }
    // Identity-drive corner: zero dispersion, zero length.
    let rho = random_density::<f64, _>(3, &mut rng);
    let id_drive = move |_: f64| Mat::identity(3).scale(1.7);
    let traj = evolve_von_neumann(&id_drive, &rho, 1.0, 100, ctx)?;
    let disp0 = energy_dispersion(&id_drive, &traj, ctx)?;
    let len0 = curve_length(&traj, ctx)?;
    // Geodesic equality witness on the qubit fixture.
    let rho0 = DensityOperator::new(Mat::diag_real(&[0.75, 0.25]))?;
    let sigma = spectrum_of(&rho0, ctx.rank_tol)?;
    let xi0 = GaugeAlgebraElement::general(random_horizontal::<f64, _>(&sigma, 0.5, &mut rng))?;
    let sol = geodesic_from(&rho0, &xi0, 1.0, 600, ctx)?;
    let disp_geo = energy_dispersion_sampled(&sol.hamiltonian, &sol.rho_curve, ctx)?;

    let mut report = RunReport::new("verify dispersion", Vec::new(), seed);
    report.scalar("samples", samples as f64);
    report.scalar("min_dispersion_minus_length", min_gap);
    report.checks.push(Check::at_least(
        "dispersion_dominates_length",
        min_gap,
        0.0,
        1e-6,
    ));
    report.checks.push(Check::close(
        "identity_drive_dispersion_zero",
        disp0,
        0.0,
        1e-9,
    ));
    report
        .checks
        .push(Check::close("identity_drive_length_zero", len0, 0.0, 1e-9));
    report.checks.push(Check::close(
        "geodesic_dispersion_equals_length",
        disp_geo,
        sol.length,
        1e-5,
    ));
    finish(&report)
}

/// K = (π/2)[[0, U], [−U†, 0]]: exp(K) maps span{e₁,e₂} onto span{e₃,e₄}.
fn block_rotation(u: &Mat) -> Mat {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut k = Mat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            k[(i, j + 2)] = u[(i, j)] * half_pi;
            k[(i + 2, j)] = -u[(j, i)].conj() * half_pi;
        }
    }
    k
}

fn verify_mt(samples: usize, seed: u64, ctx: &Context) -> Result<i32> {
    // Saturation fixture.
    let sy = Mat::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]])
        .scale(ctx.hbar);
    let pure = DensityOperator::new(Mat::diag_real(&[1.0, 0.0]))?;
    let sy_drive = move |_: f64| sy.clone();
    let fixture = mt_bound_report(&sy_drive, &pure, std::f64::consts::FRAC_PI_2, 1000, ctx)?;

    // Seeded drives in C⁴ with distinguishable endpoints.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho0 = DensityOperator::new(Mat::diag_real(&[0.75, 0.25, 0.0, 0.0]))?;
    let mut min_product = f64::INFINITY;
    let mut all_distinguishable = true;
    for _ in 0..samples {
        let u = random_unitary::<f64, _>(2, &mut rng);
        let k = block_rotation(&u);
        let h = k.scale_c(qorbit::C::new(0.0, ctx.hbar));
        let drive = move |_: f64| h.clone();
        let rep = mt_bound_report(&drive, &rho0, 1.0, 400, ctx)?;
        all_distinguishable &= rep.distinguishable;
        min_product = min_product.min(rep.product);
    }

    let mut report = RunReport::new("verify mt", Vec::new(), seed);
    report.scalar("samples", samples as f64);
    report.scalar("fixture_product", fixture.product);
    report.scalar("bound", fixture.bound);
    report.scalar("min_product_over_drives", min_product);
    report.checks.push(Check::close(
        "sigma_y_fixture_saturates",
        fixture.product,
        fixture.bound,
        1e-6,
    ));
    report.checks.push(Check::at_least(
        "fixture_endpoints_distinguishable",
        fixture.distinguishable as u8 as f64,
        1.0,
        0.0,
    ));
    report.checks.push(Check::at_least(
        "drive_endpoints_distinguishable",
        all_distinguishable as u8 as f64,
        1.0,
        0.0,
    ));
    report.checks.push(Check::at_least(
        "mt_bound_over_drives",
        min_product,
        fixture.bound,
        1e-8,
    ));
    finish(&report)
}

fn verify_decomposition(samples: usize, seed: u64, ctx: &Context) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_rel = 0.0f64;
    let mut min_slack = f64::INFINITY;
    for draw in 0..samples {
        let n = 2 + draw % 3;
        let rho = random_density::<f64, _>(n, &mut rng);
        let a_hat = Observable::new(random_hermitian::<f64, _>(n, 2.0, &mut rng))?;
        let delta = uncertainty(&rho, &a_hat)?;
        let g = observable_base_speed_squared(&rho, &a_hat, ctx)?;
        let sigma = spectrum_of(&rho, ctx.rank_tol)?;
        let (_, perp) = xi_a(&rho, &a_hat, ctx)?;
        let beta_perp = gauge_metric(&perp, &perp, &sigma)?;
        let rhs = ctx.hbar * ctx.hbar * (g + beta_perp);
        let rel = (delta * delta - rhs).abs() / (delta * delta).abs().max(rhs.abs()).max(1e-30);
        worst_rel = worst_rel.max(rel);
        min_slack = min_slack.min(delta - ctx.hbar * g.max(0.0).sqrt());
    }
    // Constructed parallel cases exercise the equality branch.
    let mut worst_parallel_gap = 0.0f64;
    let sigma = Spectrum::new(vec![0.75, 0.25], 1e-9)?;
    let rho = DensityOperator::new(Mat::diag_real(&[0.75, 0.25]))?;
    for _ in 0..10 {
        let xi = random_horizontal::<f64, _>(&sigma, 0.8, &mut rng);
        let h = Observable::new(xi.scale_c(qorbit::C::new(0.0, ctx.hbar)))?;
        if !is_parallel_at(&h, &rho, 1e-10, ctx)? {
            bail!("constructed horizontal control is not parallel");
        }
        let delta = uncertainty(&rho, &h)?;
        let g = observable_base_speed_squared(&rho, &h, ctx)?;
        worst_parallel_gap = worst_parallel_gap.max((delta - ctx.hbar * g.max(0.0).sqrt()).abs());
    }

    let mut report = RunReport::new("verify decomposition", Vec::new(), seed);
    report.scalar("samples", samples as f64);
    report.scalar("worst_relative_defect", worst_rel);
    report.scalar("min_bound_slack", min_slack);
    report.scalar("worst_parallel_gap", worst_parallel_gap);
    report.checks.push(Check::at_most(
        "decomposition_identity_relative",
        worst_rel,
        0.0,
        1e-9,
    ));
    report.checks.push(Check::at_least(
        "uncertainty_bound_slack",
        min_slack,
        0.0,
        1e-10,
    ));
    report.checks.push(Check::at_most(
        "parallel_equality_gap",
        worst_parallel_gap,
        0.0,
        1e-8,
    ));
    finish(&report)
}
