//! Seeded random matrices and states for property checks and the
//! verification commands. All draws go through an explicit [`Rng`], so a
//! fixed seed reproduces the exact sample set.

use num_complex::Complex;
use rand::Rng;

use crate::linalg::{CMat, C};
use crate::scalar::Real;
use crate::state::{DensityOperator, Spectrum};

/// Standard complex Gaussian via Box–Muller.
pub fn standard_complex<T: Real, R: Rng>(rng: &mut R) -> C<T> {
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let phi = 2.0 * std::f64::consts::PI * u2;
    Complex::new(T::of(r * phi.cos()), T::of(r * phi.sin()))
}

/// Matrix with independent standard complex Gaussian entries.
pub fn ginibre<T: Real, R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat<T> {
    CMat::from_fn(rows, cols, |_, _| standard_complex(rng))
}

/// Random Hermitian matrix of the given Frobenius-norm scale.
pub fn random_hermitian<T: Real, R: Rng>(n: usize, scale: T, rng: &mut R) -> CMat<T> {
    let g = ginibre::<T, _>(n, n, rng).hermitian_part();
    let norm = g.frob_norm();
    if norm == T::zero() {
        g
    } else {
        g.scale(scale / norm)
    }
}

/// Random anti-Hermitian matrix of the given Frobenius-norm scale.
pub fn random_antihermitian<T: Real, R: Rng>(n: usize, scale: T, rng: &mut R) -> CMat<T> {
    let g = ginibre::<T, _>(n, n, rng).antihermitian_part();
    let norm = g.frob_norm();
    if norm == T::zero() {
        g
    } else {
        g.scale(scale / norm)
    }
}

/// Random full-rank density operator ρ = GG†/Tr(GG†) (Ginibre induced).
pub fn random_density<T: Real, R: Rng>(n: usize, rng: &mut R) -> DensityOperator<T> {
    let g = ginibre::<T, _>(n, n, rng);
    let gram = (&g * &g.adjoint()).hermitian_part();
    let trace = gram.trace().re;
    DensityOperator::new(gram.scale(T::one() / trace)).expect("Ginibre density is valid")
}

/// Haar-ish random unitary: Gram–Schmidt of a Ginibre matrix with the
/// phases fixed by positive diagonal of R.
pub fn random_unitary<T: Real, R: Rng>(n: usize, rng: &mut R) -> CMat<T> {
    let g = ginibre::<T, _>(n, n, rng);
    let mut q = CMat::zeros(n, n);
    for j in 0..n {
        // Column j of g minus projections onto previous q columns.
        let mut col: Vec<C<T>> = (0..n).map(|i| g[(i, j)]).collect();
        for prev in 0..j {
            let mut overlap = C::new(T::zero(), T::zero());
            for i in 0..n {
                overlap += q[(i, prev)].conj() * col[i];
            }
            for i in 0..n {
                let correction = q[(i, prev)] * overlap;
                col[i] -= correction;
            }
        }
        let norm = col
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        for (i, z) in col.into_iter().enumerate() {
            q[(i, j)] = z / norm;
        }
    }
    q
}

/// Random element of the gauge group U(σ): block-diagonal unitaries per
/// multiplicity group.
pub fn random_gauge_unitary<T: Real, R: Rng>(sigma: &Spectrum<T>, rng: &mut R) -> CMat<T> {
    let k = sigma.k();
    let mut u = CMat::zeros(k, k);
    let mut offset = 0;
    for &m in sigma.multiplicities() {
        let block = random_unitary::<T, _>(m, rng);
        for a in 0..m {
            for b in 0..m {
                u[(offset + a, offset + b)] = block[(a, b)];
            }
        }
        offset += m;
    }
    u
}

/// Random element of u(σ)^⊥ (block-off-diagonal anti-Hermitian) with the
/// given β-norm.
pub fn random_horizontal<T: Real, R: Rng>(
    sigma: &Spectrum<T>,
    beta_norm: T,
    rng: &mut R,
) -> CMat<T> {
    let k = sigma.k();
    let groups = sigma.group_index();
    let mut xi = CMat::zeros(k, k);
    for i in 0..k {
        for j in (i + 1)..k {
            if groups[i] != groups[j] {
                let z = standard_complex::<T, _>(rng);
                xi[(i, j)] = z;
                xi[(j, i)] = -z.conj();
            }
        }
    }
    let current = crate::state::beta_norm(&xi, sigma);
    if current == T::zero() {
        xi
    } else {
        xi.scale(beta_norm / current)
    }
}
