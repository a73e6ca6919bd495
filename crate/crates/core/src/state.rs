//! Foundational types of the orbit geometry: spectra, density operators,
//! purifications, the gauge algebra u(σ), and the two base metrics.
//!
//! A spectrum σ labels a unitary orbit of density operators. The bundle
//! S(σ) = {ψ : ψ†ψ = P(σ)} projects onto the orbit by π(ψ) = ψψ†, with gauge
//! group the unitaries commuting with P(σ). The metric G on S(σ) is the real
//! part of the Hilbert–Schmidt product; the metric β on the gauge algebra is
//! its pullback along the fiber identification.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C};
use crate::scalar::Real;

/// Nonincreasing list of the positive eigenvalues of a density operator,
/// with multiplicity grouping. Entries inside a group are exactly equal
/// (grouping assigns the group mean).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T: Real = f64> {
    values: Vec<T>,
    multiplicities: Vec<usize>,
}

impl<T: Real> Spectrum<T> {
    /// Validates and groups a list of positive eigenvalues. Values closer
    /// than `rank_tol` (transitively) are merged into one multiplicity group.
    pub fn new(mut values: Vec<T>, rank_tol: T) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty eigenvalue list".into()));
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        if *values.last().expect("nonempty") <= T::zero() {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalues must be strictly positive, got {}",
                values.last().expect("nonempty")
            )));
        }
        let sum: T = values.iter().copied().sum();
        let sum_tol = T::of(1e-12).max(rank_tol * T::of(values.len() as f64));
        if (sum - T::one()).abs() > sum_tol {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalues must sum to 1, got {sum}"
            )));
        }
        // Group by transitive closeness, then flatten group means back out.
        let mut grouped: Vec<T> = Vec::with_capacity(values.len());
        let mut multiplicities = Vec::new();
        let mut start = 0;
        for i in 1..=values.len() {
            let split = i == values.len() || values[i - 1] - values[i] > rank_tol;
            if split {
                let m = i - start;
                let mean = values[start..i].iter().copied().sum::<T>() / T::of(m as f64);
                grouped.extend(std::iter::repeat_n(mean, m));
                multiplicities.push(m);
                start = i;
            }
        }
        Ok(Self {
            values: grouped,
            multiplicities,
        })
    }

    /// Dimension of the support (number of positive eigenvalues, counted
    /// with multiplicity).
    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// Eigenvalues, nonincreasing, repeated per multiplicity.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn n_groups(&self) -> usize {
        self.multiplicities.len()
    }

    /// Group index of each eigenvalue position.
    pub fn group_index(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.k());
        for (g, &m) in self.multiplicities.iter().enumerate() {
            out.extend(std::iter::repeat_n(g, m));
        }
        out
    }

    /// The diagonal matrix P(σ).
    pub fn p_matrix(&self) -> CMat<T> {
        CMat::diag_real(&self.values)
    }

    pub fn p_sqrt(&self) -> CMat<T> {
        let roots: Vec<T> = self.values.iter().map(|&p| p.sqrt()).collect();
        CMat::diag_real(&roots)
    }

    pub fn p_inv_sqrt(&self) -> CMat<T> {
        let roots: Vec<T> = self.values.iter().map(|&p| T::one() / p.sqrt()).collect();
        CMat::diag_real(&roots)
    }

    /// Dimension of u(σ): Σ mᵢ² over multiplicity groups.
    pub fn gauge_dim(&self) -> usize {
        self.multiplicities.iter().map(|&m| m * m).sum()
    }

    /// True when two positions belong to the same multiplicity group.
    pub fn same_group(&self, i: usize, j: usize) -> bool {
        let idx = self.group_index();
        idx[i] == idx[j]
    }

    /// Compares eigenvalue lists entrywise (both nonincreasing).
    pub fn is_close(&self, other: &Self, tol: T) -> bool {
        self.k() == other.k()
            && self
                .values
                .iter()
                .zip(other.values())
                .all(|(&a, &b)| (a - b).abs() <= tol)
    }

    /// Bracketed value list for error messages.
    pub fn describe(&self) -> String {
        self.values
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// n×n Hermitian positive-semidefinite unit-trace matrix.
#[derive(Clone, Debug)]
pub struct DensityOperator<T: Real = f64> {
    matrix: CMat<T>,
}

impl<T: Real> DensityOperator<T> {
    pub fn new(matrix: CMat<T>) -> Result<Self> {
        Self::with_context(matrix, &Context::default())
    }

    pub fn with_context(matrix: CMat<T>, ctx: &Context<T>) -> Result<Self> {
        Self::with_tolerance(matrix, ctx.herm_tol)
    }

    /// Validates Hermiticity, positivity and unit trace at tolerance `tol`.
    pub fn with_tolerance(matrix: CMat<T>, tol: T) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch {
                left_rows: matrix.rows(),
                left_cols: matrix.cols(),
                right_rows: matrix.cols(),
                right_cols: matrix.cols(),
            });
        }
        let defect = matrix.herm_defect();
        if defect > tol {
            return Err(Error::NotHermitian {
                deviation: defect.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let trace = matrix.trace();
        if (trace.re - T::one()).abs() > tol || trace.im.abs() > tol {
            return Err(Error::TraceNotOne {
                trace: trace.re.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let eig = matrix.eigh()?;
        let min = eig.values.last().copied().unwrap_or(T::zero());
        if min < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }
}

/// Element ψ of S(σ): an n×k matrix with ψ†ψ = P(σ).
#[derive(Clone, Debug)]
pub struct Purification<T: Real = f64> {
    matrix: CMat<T>,
    sigma: Spectrum<T>,
}

impl<T: Real> Purification<T> {
    pub fn new(matrix: CMat<T>, sigma: Spectrum<T>) -> Result<Self> {
        Self::with_tolerance(matrix, sigma, T::of(1e-10))
    }

    pub fn with_tolerance(matrix: CMat<T>, sigma: Spectrum<T>, tol: T) -> Result<Self> {
        if matrix.cols() != sigma.k() {
            return Err(Error::ShapeMismatch {
                left_rows: matrix.rows(),
                left_cols: matrix.cols(),
                right_rows: sigma.k(),
                right_cols: sigma.k(),
            });
        }
        let gram = &matrix.adjoint() * &matrix;
        let deviation = gram.distance(&sigma.p_matrix());
        if deviation > tol {
            return Err(Error::FiberCondition {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { matrix, sigma })
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum<T> {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    /// π(ψ) = ψψ†.
    pub fn project(&self) -> CMat<T> {
        &self.matrix * &self.matrix.adjoint()
    }

    /// Gauge action ψ ↦ ψU†.
    pub fn gauge_transform(&self, u: &CMat<T>) -> Result<Self> {
        let moved = &self.matrix * &u.adjoint();
        Self::new(moved, self.sigma.clone())
    }
}

/// k×k anti-Hermitian matrix, optionally certified to lie in u(σ)
/// (commuting with P(σ)).
#[derive(Clone, Debug)]
pub struct GaugeAlgebraElement<T: Real = f64> {
    matrix: CMat<T>,
    in_gauge_algebra: bool,
}

impl<T: Real> GaugeAlgebraElement<T> {
    /// General element of u(k).
    pub fn general(matrix: CMat<T>) -> Result<Self> {
        Self::general_with_tolerance(matrix, T::of(1e-12))
    }

    pub fn general_with_tolerance(matrix: CMat<T>, tol: T) -> Result<Self> {
        let defect = matrix.antiherm_defect();
        if !matrix.is_square() || defect > tol {
            return Err(Error::NotAntiHermitian {
                deviation: defect.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            matrix,
            in_gauge_algebra: false,
        })
    }

    /// Element of u(σ): additionally checks [ξ, P(σ)] = 0.
    pub fn in_gauge(matrix: CMat<T>, sigma: &Spectrum<T>, tol: T) -> Result<Self> {
        let mut element = Self::general_with_tolerance(matrix, tol)?;
        let commutant = element.matrix.commutator(&sigma.p_matrix());
        let deviation = commutant.frob_norm();
        if deviation > tol {
            return Err(Error::NotInGaugeAlgebra {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
            });
        }
        element.in_gauge_algebra = true;
        Ok(element)
    }

    pub fn zero(k: usize) -> Self {
        Self {
            matrix: CMat::zeros(k, k),
            in_gauge_algebra: true,
        }
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_in_gauge_algebra(&self) -> bool {
        self.in_gauge_algebra
    }
}

/// Hermitian observable (units of energy; ħ lives in [`Context`]).
#[derive(Clone, Debug)]
pub struct Observable<T: Real = f64> {
    matrix: CMat<T>,
}

impl<T: Real> Observable<T> {
    pub fn new(matrix: CMat<T>) -> Result<Self> {
        Self::with_tolerance(matrix, T::of(1e-12))
    }

    pub fn with_tolerance(matrix: CMat<T>, tol: T) -> Result<Self> {
        let defect = matrix.herm_defect();
        if !matrix.is_square() || defect > tol {
            return Err(Error::NotHermitian {
                deviation: defect.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }
}

/// Spectrum of a density operator: eigenvalues above `rank_tol`, grouped.
pub fn spectrum_of<T: Real>(rho: &DensityOperator<T>, rank_tol: T) -> Result<Spectrum<T>> {
    let eig = rho.matrix().eigh()?;
    let kept: Vec<T> = eig.values.into_iter().filter(|&v| v > rank_tol).collect();
    Spectrum::new(kept, rank_tol)
}

/// Purification ψ = E √P(σ), with E the n×k matrix of orthonormal
/// eigenvectors of ρ ordered by nonincreasing eigenvalue.
pub fn standard_purification<T: Real>(
    rho: &DensityOperator<T>,
    rank_tol: T,
) -> Result<Purification<T>> {
    let eig = rho.matrix().eigh()?;
    let sigma = Spectrum::new(
        eig.values
            .iter()
            .copied()
            .filter(|&v| v > rank_tol)
            .collect(),
        rank_tol,
    )?;
    let n = rho.n();
    let k = sigma.k();
    let basis = CMat::from_fn(n, k, |i, j| eig.vectors[(i, j)]);
    let psi = &basis * &sigma.p_sqrt();
    Purification::new(psi, sigma)
}

/// The metric G(X, Y) = ½Tr(X†Y + Y†X) on n×k matrices.
pub fn hs_metric<T: Real>(x: &CMat<T>, y: &CMat<T>) -> Result<T> {
    if !x.same_shape(y) {
        return Err(Error::ShapeMismatch {
            left_rows: x.rows(),
            left_cols: x.cols(),
            right_rows: y.rows(),
            right_cols: y.cols(),
        });
    }
    Ok(x.hs_dot(y).re)
}

/// β pairing on raw k×k matrices: Re Tr(ξ†η P(σ)).
pub(crate) fn beta_raw<T: Real>(xi: &CMat<T>, eta: &CMat<T>, sigma: &Spectrum<T>) -> T {
    // Tr(ξ†ηP) with P diagonal: Σ_j p_j (ξ†η)_{jj} = Σ_j p_j Σ_i conj(ξ_ij) η_ij.
    let mut acc = T::zero();
    for j in 0..sigma.k() {
        let p = sigma.values()[j];
        let mut col = T::zero();
        for i in 0..xi.rows() {
            let a = xi[(i, j)];
            let b = eta[(i, j)];
            col = col + a.re * b.re + a.im * b.im;
        }
        acc += p * col;
    }
    acc
}

pub(crate) fn beta_norm<T: Real>(xi: &CMat<T>, sigma: &Spectrum<T>) -> T {
    beta_raw(xi, xi, sigma).max(T::zero()).sqrt()
}

/// The metric β(ξ, η) = ½Tr((ξ†η + η†ξ)P(σ)) on the gauge algebra;
/// positive definite since every p_j > 0.
pub fn gauge_metric<T: Real>(
    xi: &GaugeAlgebraElement<T>,
    eta: &GaugeAlgebraElement<T>,
    sigma: &Spectrum<T>,
) -> Result<T> {
    if xi.k() != sigma.k() || eta.k() != sigma.k() {
        return Err(Error::ShapeMismatch {
            left_rows: xi.k(),
            left_cols: eta.k(),
            right_rows: sigma.k(),
            right_cols: sigma.k(),
        });
    }
    Ok(beta_raw(xi.matrix(), eta.matrix(), sigma))
}

/// Basis of u(σ), built block-diagonally per multiplicity group: the m
/// diagonal imaginary units plus the m(m−1) off-diagonal anti-Hermitian
/// generators of each group of size m. Dimension Σ mᵢ².
pub fn gauge_algebra_basis<T: Real>(sigma: &Spectrum<T>) -> Vec<GaugeAlgebraElement<T>> {
    let k = sigma.k();
    let i_unit = C::new(T::zero(), T::one());
    let one = C::new(T::one(), T::zero());
    let mut basis = Vec::with_capacity(sigma.gauge_dim());
    let mut offset = 0;
    for &m in sigma.multiplicities() {
        for a in 0..m {
            let mut mat = CMat::zeros(k, k);
            mat[(offset + a, offset + a)] = i_unit;
            basis.push(GaugeAlgebraElement {
                matrix: mat,
                in_gauge_algebra: true,
            });
        }
        for a in 0..m {
            for b in (a + 1)..m {
                let (ia, ib) = (offset + a, offset + b);
                let mut real = CMat::zeros(k, k);
                real[(ia, ib)] = one;
                real[(ib, ia)] = -one;
                basis.push(GaugeAlgebraElement {
                    matrix: real,
                    in_gauge_algebra: true,
                });
                let mut imag = CMat::zeros(k, k);
                imag[(ia, ib)] = i_unit;
                imag[(ib, ia)] = i_unit;
                basis.push(GaugeAlgebraElement {
                    matrix: imag,
                    in_gauge_algebra: true,
                });
            }
        }
        offset += m;
    }
    basis
}

/// β-orthogonal split u(k) = u(σ) ⊕ u(σ)^⊥. The u(σ) part keeps the
/// diagonal blocks of the multiplicity structure; the complement keeps the
/// off-diagonal blocks (the split is β-orthogonal for any eigenvalue
/// weights because cross-block products are traceless).
pub fn split_gauge<T: Real>(
    xi: &GaugeAlgebraElement<T>,
    sigma: &Spectrum<T>,
) -> Result<(GaugeAlgebraElement<T>, GaugeAlgebraElement<T>)> {
    let k = sigma.k();
    if xi.k() != k {
        return Err(Error::ShapeMismatch {
            left_rows: xi.k(),
            left_cols: xi.k(),
            right_rows: k,
            right_cols: k,
        });
    }
    let groups = sigma.group_index();
    let zero = C::new(T::zero(), T::zero());
    let mut par = CMat::zeros(k, k);
    let mut perp = CMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let z = xi.matrix()[(i, j)];
            if groups[i] == groups[j] {
                par[(i, j)] = z;
                perp[(i, j)] = zero;
            } else {
                perp[(i, j)] = z;
            }
        }
    }
    Ok((
        GaugeAlgebraElement {
            matrix: par,
            in_gauge_algebra: true,
        },
        GaugeAlgebraElement {
            matrix: perp,
            in_gauge_algebra: false,
        },
    ))
}
