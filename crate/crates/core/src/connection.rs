//! The mechanical connection on S(σ) and everything derived from it: the
//! moment map, the locked inertia tensor, horizontal/vertical splitting of
//! tangents, the submersion metric g on the orbit, the uncertainty
//! functional, and the parallelism test.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C};
use crate::scalar::Real;
use crate::state::{
    beta_norm, beta_raw, gauge_algebra_basis, standard_purification, DensityOperator,
    GaugeAlgebraElement, Observable, Purification, Spectrum,
};

/// Condition-number guard for the locked-inertia solve.
const COND_LIMIT: f64 = 1e12;

/// Value of the connection form at a tangent vector, together with the
/// vertical/horizontal decomposition it induces.
#[derive(Clone, Debug)]
pub struct ConnectionEvaluation<T: Real = f64> {
    /// A_ψ(X) ∈ u(σ).
    pub xi: GaugeAlgebraElement<T>,
    /// ψ · A_ψ(X)†, the fiber-tangent component.
    pub vertical: CMat<T>,
    /// X − vertical; G-orthogonal to the fiber directions.
    pub horizontal: CMat<T>,
}

fn check_tangent_shape<T: Real>(psi: &Purification<T>, x: &CMat<T>) -> Result<()> {
    if x.rows() != psi.n() || x.cols() != psi.k() {
        return Err(Error::ShapeMismatch {
            left_rows: x.rows(),
            left_cols: x.cols(),
            right_rows: psi.n(),
            right_cols: psi.k(),
        });
    }
    Ok(())
}

/// Fiber direction generated by ξ at ψ: the derivative of ψ exp(tξ)† at 0.
fn fiber_direction<T: Real>(psi: &Purification<T>, xi: &CMat<T>) -> CMat<T> {
    psi.matrix() * &xi.adjoint()
}

/// Moment map coordinates J_ψ(X)·ξᵢ = G(X, ψξᵢ†) for each basis element.
pub fn moment_map<T: Real>(
    psi: &Purification<T>,
    x: &CMat<T>,
    basis: &[GaugeAlgebraElement<T>],
) -> Result<Vec<T>> {
    check_tangent_shape(psi, x)?;
    basis
        .iter()
        .map(|b| crate::state::hs_metric(x, &fiber_direction(psi, b.matrix())))
        .collect()
}

/// Locked inertia tensor in basis coordinates: the Gram matrix
/// 𝕀ᵢⱼ = G(ψξᵢ†, ψξⱼ†) of the fiber directions. Symmetric positive
/// definite whenever all eigenvalues of σ are positive.
pub fn locked_inertia<T: Real>(
    psi: &Purification<T>,
    basis: &[GaugeAlgebraElement<T>],
) -> Result<CMat<T>> {
    let d = basis.len();
    let dirs: Vec<CMat<T>> = basis
        .iter()
        .map(|b| fiber_direction(psi, b.matrix()))
        .collect();
    let mut gram = CMat::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let g = crate::state::hs_metric(&dirs[i], &dirs[j])?;
            gram[(i, j)] = C::new(g, T::zero());
            gram[(j, i)] = C::new(g, T::zero());
        }
    }
    Ok(gram)
}

/// Evaluates the mechanical connection A_ψ = 𝕀_ψ⁻¹ J_ψ at a tangent vector
/// and splits it into vertical and horizontal parts.
pub fn connection_form<T: Real>(
    psi: &Purification<T>,
    x: &CMat<T>,
) -> Result<ConnectionEvaluation<T>> {
    check_tangent_shape(psi, x)?;
    let sigma = psi.spectrum().clone();
    let (xi, vertical, horizontal) = horizontal_split_raw(psi.matrix(), &sigma, x)?;
    Ok(ConnectionEvaluation {
        xi: GaugeAlgebraElement::in_gauge(xi, &sigma, T::of(1e-9))?,
        vertical,
        horizontal,
    })
}

/// Connection evaluation on raw matrices, used by the integrators where the
/// working point drifts slightly off the fiber during RK4 stages.
/// Returns (ξ, vertical, horizontal).
pub(crate) fn horizontal_split_raw<T: Real>(
    psi_mat: &CMat<T>,
    sigma: &Spectrum<T>,
    x: &CMat<T>,
) -> Result<(CMat<T>, CMat<T>, CMat<T>)> {
    let basis = gauge_algebra_basis(sigma);
    let d = basis.len();
    let dirs: Vec<CMat<T>> = basis
        .iter()
        .map(|b| psi_mat * &b.matrix().adjoint())
        .collect();
    let mut gram = CMat::zeros(d, d);
    let mut rhs = Vec::with_capacity(d);
    for i in 0..d {
        rhs.push(x.hs_dot(&dirs[i]).re);
        for j in i..d {
            let g = dirs[i].hs_dot(&dirs[j]).re;
            gram[(i, j)] = C::new(g, T::zero());
            gram[(j, i)] = C::new(g, T::zero());
        }
    }
    let coords = solve_inertia(&gram, &rhs)?;
    let k = sigma.k();
    let mut xi = CMat::zeros(k, k);
    for (a, b) in coords.iter().zip(&basis) {
        xi = &xi + &b.matrix().scale(*a);
    }
    let vertical = psi_mat * &xi.adjoint();
    let horizontal = x - &vertical;
    Ok((xi, vertical, horizontal))
}

/// Solves 𝕀 a = b with a condition-number guard at 1e12.
fn solve_inertia<T: Real>(gram: &CMat<T>, rhs: &[T]) -> Result<Vec<T>> {
    let d = rhs.len();
    let eig = gram.eigh()?;
    let lead = eig.values.first().copied().unwrap_or(T::zero());
    let tail = eig.values.last().copied().unwrap_or(T::zero());
    if tail <= T::zero() || lead / tail > T::of(COND_LIMIT) {
        return Err(Error::IllConditioned {
            cond: (lead / tail).to_f64().unwrap_or(f64::INFINITY),
            limit: COND_LIMIT,
        });
    }
    let mut b = CMat::zeros(d, 1);
    for (i, &v) in rhs.iter().enumerate() {
        b[(i, 0)] = C::new(v, T::zero());
    }
    let x = gram.lu_solve(&b)?;
    Ok((0..d).map(|i| x[(i, 0)].re).collect())
}

/// The vector field generated by an observable: X_Â(ψ) = Âψ/(iħ).
pub fn observable_field<T: Real>(
    a_hat: &Observable<T>,
    psi: &Purification<T>,
    ctx: &Context<T>,
) -> Result<CMat<T>> {
    if a_hat.n() != psi.n() {
        return Err(Error::ShapeMismatch {
            left_rows: a_hat.n(),
            left_cols: a_hat.n(),
            right_rows: psi.n(),
            right_cols: psi.k(),
        });
    }
    // 1/(iħ) = −i/ħ.
    let factor = C::new(T::zero(), -T::one() / ctx.hbar);
    Ok((a_hat.matrix() * psi.matrix()).scale_c(factor))
}

/// The u(σ)-valued field ξ_A at ρ, and its component β-orthogonal to i·1.
///
/// Computed at the standard purification; gauge covariance makes the choice
/// of fiber representative irrelevant for all derived quantities.
pub fn xi_a<T: Real>(
    rho: &DensityOperator<T>,
    a_hat: &Observable<T>,
    ctx: &Context<T>,
) -> Result<(GaugeAlgebraElement<T>, GaugeAlgebraElement<T>)> {
    let psi = standard_purification(rho, ctx.rank_tol)?;
    let field = observable_field(a_hat, &psi, ctx)?;
    let eval = connection_form(&psi, &field)?;
    let sigma = psi.spectrum();
    let k = sigma.k();
    let i_unit = CMat::identity(k).scale_c(C::new(T::zero(), T::one()));
    let denom = beta_raw(&i_unit, &i_unit, sigma);
    let coeff = beta_raw(&eval.xi.matrix().clone(), &i_unit, sigma) / denom;
    let perp = eval.xi.matrix() - &i_unit.scale(coeff);
    let perp = GaugeAlgebraElement::in_gauge(perp, sigma, T::of(1e-9))?;
    Ok((eval.xi, perp))
}

/// Variance Tr(Â²ρ) − Tr(Âρ)² on raw matrices; negative values within
/// −1e-12 of zero are the caller's to clamp, values below −1e-9 error out.
pub(crate) fn variance_raw<T: Real>(rho: &CMat<T>, a: &CMat<T>) -> Result<T> {
    let a_rho = a * rho;
    let mean = a_rho.trace().re;
    let second = (a * &a_rho).trace().re;
    let variance = second - mean * mean;
    if variance < -T::of(1e-9) {
        return Err(Error::NegativeVariance(
            variance.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(variance)
}

/// Uncertainty ΔA(ρ) = √(Tr(Â²ρ) − Tr(Âρ)²).
pub fn uncertainty<T: Real>(rho: &DensityOperator<T>, a_hat: &Observable<T>) -> Result<T> {
    if a_hat.n() != rho.n() {
        return Err(Error::ShapeMismatch {
            left_rows: a_hat.n(),
            left_cols: a_hat.n(),
            right_rows: rho.n(),
            right_cols: rho.n(),
        });
    }
    let variance = variance_raw(rho.matrix(), a_hat.matrix())?;
    Ok(variance.max(T::zero()).sqrt())
}

/// True iff Â is parallel at ρ: the β-norm of ξ_A(ρ) is below `tol`.
/// By gauge covariance this certifies horizontality of X_Â along the fiber.
pub fn is_parallel_at<T: Real>(
    a_hat: &Observable<T>,
    rho: &DensityOperator<T>,
    tol: T,
    ctx: &Context<T>,
) -> Result<bool> {
    let (xi, _) = xi_a(rho, a_hat, ctx)?;
    Ok(beta_norm(
        xi.matrix(),
        standard_purification(rho, ctx.rank_tol)?.spectrum(),
    ) < tol)
}

fn validate_orbit_tangent<T: Real>(rho: &DensityOperator<T>, dot: &CMat<T>, tol: T) -> Result<()> {
    if !dot.same_shape(rho.matrix()) {
        return Err(Error::ShapeMismatch {
            left_rows: dot.rows(),
            left_cols: dot.cols(),
            right_rows: rho.n(),
            right_cols: rho.n(),
        });
    }
    let defect = dot.herm_defect();
    if defect > tol {
        return Err(Error::NotHermitian {
            deviation: defect.to_f64().unwrap_or(f64::NAN),
            tolerance: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let trace = dot.trace();
    if trace.re.abs() > tol || trace.im.abs() > tol {
        return Err(Error::InvalidArgument(format!(
            "orbit tangents are traceless, got trace {}",
            trace.re
        )));
    }
    Ok(())
}

/// Anti-Hermitian generator A solving [A, ρ] = ρ̇ in the eigenbasis of ρ,
/// with the components that commute with ρ set to zero (they are exactly
/// the vertical freedom of the lift). Components of ρ̇ inside degenerate
/// eigenvalue blocks do not move ρ along its isospectral orbit and are
/// ignored.
pub(crate) fn orbit_generator<T: Real>(
    rho: &CMat<T>,
    rho_dot: &CMat<T>,
    rank_tol: T,
) -> Result<CMat<T>> {
    let eig = rho.eigh()?;
    let e = &eig.vectors;
    let dot_tilde = &(&e.adjoint() * rho_dot) * e;
    let n = rho.rows();
    let lam = &eig.values;
    let mut a_tilde = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let gap = lam[j] - lam[i];
            if gap.abs() > rank_tol {
                a_tilde[(i, j)] = dot_tilde[(i, j)] / C::new(gap, T::zero());
            }
        }
    }
    Ok((&(e * &a_tilde) * &e.adjoint()).antihermitian_part())
}

/// The submersion metric g(ρ̇₁, ρ̇₂) on a full-rank orbit.
///
/// Each tangent ρ̇ is lifted through X = Aψ where A is the anti-Hermitian
/// solution of [A, ρ] = ρ̇ (X is then tangent to S(σ) and projects onto ρ̇;
/// any other such lift differs by a vertical vector, which the horizontal
/// projection removes). The result is G of the horizontal parts.
pub fn submersion_metric<T: Real>(
    rho: &DensityOperator<T>,
    rho_dot1: &CMat<T>,
    rho_dot2: &CMat<T>,
    ctx: &Context<T>,
) -> Result<T> {
    let tol = ctx.drift_tol.max(T::of(1e-8));
    validate_orbit_tangent(rho, rho_dot1, tol)?;
    validate_orbit_tangent(rho, rho_dot2, tol)?;
    let psi = standard_purification(rho, ctx.rank_tol)?;
    if psi.k() != psi.n() {
        return Err(Error::RankDeficient {
            k: psi.k(),
            n: psi.n(),
        });
    }
    let lift = |dot: &CMat<T>| -> Result<CMat<T>> {
        let gen = orbit_generator(rho.matrix(), dot, ctx.rank_tol)?;
        let x = &gen * psi.matrix();
        Ok(connection_form(&psi, &x)?.horizontal)
    };
    let h1 = lift(rho_dot1)?;
    let h2 = lift(rho_dot2)?;
    crate::state::hs_metric(&h1, &h2)
}

/// ξ_A with the horizontal field pushed down: the squared base-metric norm
/// g(X_A, X_A) of the projected observable field at ρ.
///
/// Works for any rank (the push-forward of the horizontal part needs no
/// tangent lift of ρ̇), which is what the uncertainty identities quantify.
pub fn observable_base_speed_squared<T: Real>(
    rho: &DensityOperator<T>,
    a_hat: &Observable<T>,
    ctx: &Context<T>,
) -> Result<T> {
    let psi = standard_purification(rho, ctx.rank_tol)?;
    let field = observable_field(a_hat, &psi, ctx)?;
    let eval = connection_form(&psi, &field)?;
    crate::state::hs_metric(&eval.horizontal, &eval.horizontal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{gauge_metric, hs_metric, split_gauge};
    use num_complex::Complex;

    type M = CMat<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        C::new(re, im)
    }

    fn qubit_rho() -> DensityOperator<f64> {
        DensityOperator::new(M::diag_real(&[0.75, 0.25])).unwrap()
    }

    fn qubit_psi() -> Purification<f64> {
        standard_purification(&qubit_rho(), 1e-9).unwrap()
    }

    fn off_diag_control(eps: f64, theta: f64) -> M {
        let z = Complex::from_polar(eps, theta);
        let mut xi = M::zeros(2, 2);
        xi[(0, 1)] = z;
        xi[(1, 0)] = -z.conj();
        xi
    }

    #[test]
    fn moment_map_reproduces_inertia_on_fiber_directions() {
        let psi = qubit_psi();
        let basis = gauge_algebra_basis(psi.spectrum());
        let inertia = locked_inertia(&psi, &basis).unwrap();
        for (i, b) in basis.iter().enumerate() {
            let x = psi.matrix() * &b.matrix().adjoint();
            let coords = moment_map(&psi, &x, &basis).unwrap();
            for (j, &coord) in coords.iter().enumerate() {
                assert!((coord - inertia[(j, i)].re).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn moment_map_annihilates_horizontal_vectors() {
        let psi = qubit_psi();
        let basis = gauge_algebra_basis(psi.spectrum());
        let x = M::from_rows(&[vec![(0.3, -0.2), (0.1, 0.4)], vec![(-0.5, 0.0), (0.2, 0.2)]]);
        let eval = connection_form(&psi, &x).unwrap();
        for coord in moment_map(&psi, &eval.horizontal, &basis).unwrap() {
            assert!(coord.abs() < 1e-12);
        }
    }

    #[test]
    fn moment_map_pure_state_coordinate() {
        // k = 1, ψ = (1,0)ᵀ, X = (i,0)ᵀ, basis {i}: X is the fiber direction
        // of ξ = −i, so J(X)·(i) = 𝕀(−i)·(i) = −β(i, i) = −1.
        let rho = DensityOperator::new(M::diag_real(&[1.0, 0.0])).unwrap();
        let psi = standard_purification(&rho, 1e-9).unwrap();
        let x = M::from_rows(&[vec![(0.0, 1.0)], vec![(0.0, 0.0)]]);
        let basis = gauge_algebra_basis(psi.spectrum());
        assert_eq!(basis.len(), 1);
        let coords = moment_map(&psi, &x, &basis).unwrap();
        assert!((coords[0] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn locked_inertia_diagonal_case() {
        let psi = qubit_psi();
        let basis = gauge_algebra_basis(psi.spectrum());
        let inertia = locked_inertia(&psi, &basis).unwrap();
        assert!((inertia[(0, 0)].re - 0.75).abs() < 1e-14);
        assert!((inertia[(1, 1)].re - 0.25).abs() < 1e-14);
        assert!(inertia[(0, 1)].re.abs() < 1e-14);
    }

    #[test]
    fn locked_inertia_pure_state() {
        let rho = DensityOperator::new(M::diag_real(&[1.0, 0.0])).unwrap();
        let psi = standard_purification(&rho, 1e-9).unwrap();
        let basis = gauge_algebra_basis(psi.spectrum());
        let inertia = locked_inertia(&psi, &basis).unwrap();
        assert_eq!(inertia.rows(), 1);
        assert!((inertia[(0, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn locked_inertia_is_gauge_invariant() {
        // U ∈ U(σ) for a simple spectrum is a diagonal phase matrix.
        let psi = qubit_psi();
        let u = M::diag(&[
            Complex::from_polar(1.0, 0.87),
            Complex::from_polar(1.0, -1.43),
        ]);
        let moved = psi.gauge_transform(&u).unwrap();
        let basis = gauge_algebra_basis(psi.spectrum());
        let a = locked_inertia(&psi, &basis).unwrap();
        let b = locked_inertia(&moved, &basis).unwrap();
        assert!(a.distance(&b) < 1e-12);
    }

    #[test]
    fn connection_form_restores_generators() {
        let psi = qubit_psi();
        let basis = gauge_algebra_basis(psi.spectrum());
        for b in &basis {
            let x = psi.matrix() * &b.matrix().adjoint();
            let eval = connection_form(&psi, &x).unwrap();
            assert!(eval.xi.matrix().distance(b.matrix()) < 1e-12);
            assert!(eval.horizontal.frob_norm() < 1e-12);
        }
    }

    #[test]
    fn connection_form_annihilates_horizontal_field() {
        // Y_ξ(ψ₀) = ξ P^{1/2} with ξ ∈ u(σ)^⊥ is horizontal.
        let psi = qubit_psi();
        let xi = off_diag_control(0.5, 0.3);
        let x = &xi * &psi.spectrum().p_sqrt();
        let eval = connection_form(&psi, &x).unwrap();
        assert!(eval.xi.matrix().frob_norm() < 1e-12);
        assert!(eval.vertical.frob_norm() < 1e-12);
        assert!(eval.horizontal.distance(&x) < 1e-14);
    }

    #[test]
    fn connection_form_is_linear() {
        let psi = qubit_psi();
        let x = M::from_rows(&[vec![(0.2, 0.1), (-0.4, 0.3)], vec![(0.0, -0.6), (0.5, 0.2)]]);
        let y = M::from_rows(&[vec![(-0.3, 0.5), (0.1, 0.1)], vec![(0.7, 0.2), (-0.2, 0.4)]]);
        let (a, b) = (1.7f64, -0.6f64);
        let combo = &x.scale(a) + &y.scale(b);
        let lhs = connection_form(&psi, &combo).unwrap();
        let ex = connection_form(&psi, &x).unwrap();
        let ey = connection_form(&psi, &y).unwrap();
        let rhs = &ex.xi.matrix().scale(a) + &ey.xi.matrix().scale(b);
        assert!(lhs.xi.matrix().distance(&rhs) < 1e-10);
        // Reconstruction invariant.
        let rebuilt = &lhs.vertical + &lhs.horizontal;
        assert!(rebuilt.distance(&combo) < 1e-12);
    }

    #[test]
    fn observable_field_matches_exponential_derivative() {
        let ctx = Context::default();
        let psi = qubit_psi();

        let zero = Observable::new(M::zeros(2, 2)).unwrap();
        assert!(observable_field(&zero, &psi, &ctx).unwrap().frob_norm() < 1e-15);

        let scaled_id = Observable::new(M::identity(2).scale(ctx.hbar)).unwrap();
        let field = observable_field(&scaled_id, &psi, &ctx).unwrap();
        let expected = psi.matrix().scale_c(c(0.0, -1.0));
        assert!(field.distance(&expected) < 1e-15);

        // Finite difference of exp(ε Â/(iħ)) ψ for Â = ħ σ_y.
        let sy = M::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]]);
        let a_hat = Observable::new(sy.clone()).unwrap();
        let field = observable_field(&a_hat, &psi, &ctx).unwrap();
        let eps = 1e-6;
        let gen_plus = sy.scale_c(c(0.0, -eps)).expm_antihermitian().unwrap();
        let gen_minus = sy.scale_c(c(0.0, eps)).expm_antihermitian().unwrap();
        let diff = (&(&gen_plus * psi.matrix()) - &(&gen_minus * psi.matrix())).scale(0.5 / eps);
        assert!(field.distance(&diff) < 1e-8);
    }

    #[test]
    fn xi_a_for_commuting_observable() {
        // Â = diag(a₁, a₂) commuting with ρ: ξ_A = (i/ħ) diag(a₁, a₂).
        let ctx = Context::default();
        let rho = qubit_rho();
        let a_hat = Observable::new(M::diag_real(&[1.3, -0.4])).unwrap();
        let (xi, perp) = xi_a(&rho, &a_hat, &ctx).unwrap();
        let expected = M::diag(&[c(0.0, 1.3), c(0.0, -0.4)]);
        assert!(xi.matrix().distance(&expected) < 1e-12);
        // ξ_A^⊥ is ξ_A minus its β-projection onto i·1.
        let sigma = standard_purification(&rho, 1e-9)
            .unwrap()
            .spectrum()
            .clone();
        let i_unit = M::identity(2).scale_c(c(0.0, 1.0));
        let coeff = beta_raw(&expected, &i_unit, &sigma);
        let expected_perp = &expected - &i_unit.scale(coeff);
        assert!(perp.matrix().distance(&expected_perp) < 1e-12);
    }

    #[test]
    fn xi_a_pure_state_has_no_perp_component() {
        let ctx = Context::default();
        let rho = DensityOperator::new(M::diag_real(&[1.0, 0.0])).unwrap();
        for a in [
            M::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]]),
            M::from_rows(&[vec![(0.7, 0.0), (0.2, 0.1)], vec![(0.2, -0.1), (-0.3, 0.0)]]),
        ] {
            let (_, perp) = xi_a(&rho, &Observable::new(a).unwrap(), &ctx).unwrap();
            assert!(perp.matrix().frob_norm() < 1e-13);
        }
    }

    #[test]
    fn xi_a_vanishes_for_parallel_hamiltonian() {
        // Ĥ = iħξ with horizontal ξ generates a horizontal field at ρ₀.
        let ctx = Context::default();
        let rho = qubit_rho();
        let h = off_diag_control(0.5, 0.0).scale_c(c(0.0, ctx.hbar));
        let a_hat = Observable::new(h).unwrap();
        let (xi, _) = xi_a(&rho, &a_hat, &ctx).unwrap();
        assert!(xi.matrix().frob_norm() < 1e-12);
        assert!(is_parallel_at(&a_hat, &rho, 1e-10, &ctx).unwrap());
    }

    #[test]
    fn diagonal_observable_is_not_parallel_on_mixed_state() {
        let ctx = Context::default();
        let rho = qubit_rho();
        let a_hat = Observable::new(M::diag_real(&[1.0, -1.0])).unwrap();
        assert!(!is_parallel_at(&a_hat, &rho, 1e-10, &ctx).unwrap());
    }

    #[test]
    fn parallel_sigma_y_on_pure_state() {
        let ctx = Context::default();
        let rho = DensityOperator::new(M::diag_real(&[1.0, 0.0])).unwrap();
        let sy = M::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]]);
        let a_hat = Observable::new(sy).unwrap();
        assert!(is_parallel_at(&a_hat, &rho, 1e-10, &ctx).unwrap());
    }

    #[test]
    fn uncertainty_examples() {
        let rho = qubit_rho();
        let scaled_id = Observable::new(M::identity(2).scale(3.7)).unwrap();
        assert!(uncertainty(&rho, &scaled_id).unwrap() < 1e-12);

        let pure = DensityOperator::new(M::diag_real(&[1.0, 0.0])).unwrap();
        let sy = M::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]]);
        assert!((uncertainty(&pure, &Observable::new(sy).unwrap()).unwrap() - 1.0).abs() < 1e-12);

        // Qubit fixture: Ĥ = iħξ with ε = 0.5 gives ΔH = ħε.
        let h = off_diag_control(0.5, 0.0).scale_c(c(0.0, 1.0));
        assert!((uncertainty(&rho, &Observable::new(h).unwrap()).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn submersion_metric_on_qubit_fixture() {
        let ctx = Context::default();
        let rho = qubit_rho();
        let zero = M::zeros(2, 2);
        assert!(submersion_metric(&rho, &zero, &zero, &ctx).unwrap().abs() < 1e-15);

        // ρ̇ = [Ĥ, ρ₀]/(iħ) with Ĥ = iħξ, ε = 0.5: g(ρ̇, ρ̇) = ε² = 0.25.
        let xi = off_diag_control(0.5, 0.0);
        let h = xi.scale_c(c(0.0, 1.0));
        let dot = h.commutator(rho.matrix()).scale_c(c(0.0, -1.0));
        let speed2 = submersion_metric(&rho, &dot, &dot, &ctx).unwrap();
        assert!((speed2 - 0.25).abs() < 1e-12, "speed² = {speed2}");
    }

    #[test]
    fn decomposition_identity_on_fixture() {
        // ΔA² = ħ²(g(X_A, X_A) + β(ξ_A^⊥, ξ_A^⊥)).
        let ctx = Context::default();
        let rho = qubit_rho();
        let a_hat = Observable::new(M::from_rows(&[
            vec![(0.9, 0.0), (0.3, -0.2)],
            vec![(0.3, 0.2), (-0.5, 0.0)],
        ]))
        .unwrap();
        let delta = uncertainty(&rho, &a_hat).unwrap();
        let g = observable_base_speed_squared(&rho, &a_hat, &ctx).unwrap();
        let sigma = standard_purification(&rho, 1e-9)
            .unwrap()
            .spectrum()
            .clone();
        let (_, perp) = xi_a(&rho, &a_hat, &ctx).unwrap();
        let beta_perp = gauge_metric(&perp, &perp, &sigma).unwrap();
        let rhs = ctx.hbar * ctx.hbar * (g + beta_perp);
        assert!((delta * delta - rhs).abs() < 1e-12);
        // And the split of the observable field is β/G-consistent.
        let psi = standard_purification(&rho, 1e-9).unwrap();
        let field = observable_field(&a_hat, &psi, &ctx).unwrap();
        let eval = connection_form(&psi, &field).unwrap();
        let (par, _) = split_gauge(&eval.xi, &sigma).unwrap();
        assert!(par.matrix().distance(eval.xi.matrix()) < 1e-12);
        assert!(hs_metric(&eval.horizontal, &eval.vertical).unwrap().abs() < 1e-12);
    }
}
