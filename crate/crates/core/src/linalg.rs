//! Dense complex matrices and the few factorizations this crate needs.
//!
//! Everything is generic over the real scalar [`Real`]; matrix entries are
//! `num_complex::Complex<T>`. The intended regime is small dense matrices
//! (n up to a few dozen), so the implementations favor robustness over
//! asymptotics: a cyclic complex Jacobi eigensolver for Hermitian matrices,
//! LU with partial pivoting for solves, and an eigendecomposition-based
//! polar factor for re-unitarization.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Complex number over the crate scalar.
pub type C<T> = Complex<T>;

/// Dense complex matrix, row-major storage.
#[derive(Clone, PartialEq)]
pub struct CMat<T: Real = f64> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows of `(re, im)` pairs. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<(T, T)>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &(re, im)) in row.iter().enumerate() {
                m[(i, j)] = C::new(re, im);
            }
        }
        m
    }

    pub fn diag(entries: &[C<T>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag_real(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = C::new(x, T::zero());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conjugate(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C<T> {
        debug_assert!(self.is_square());
        (0..self.rows)
            .map(|i| self[(i, i)])
            .fold(C::new(T::zero(), T::zero()), |a, b| a + b)
    }

    pub fn frob_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Self) -> T {
        assert!(self.same_shape(other), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Hilbert–Schmidt product Tr(self† other).
    pub fn hs_dot(&self, other: &Self) -> C<T> {
        assert!(self.same_shape(other), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * *b)
            .fold(C::new(T::zero(), T::zero()), |acc, z| acc + z)
    }

    pub fn hermitian_part(&self) -> Self {
        debug_assert!(self.is_square());
        let adj = self.adjoint();
        (self + &adj).scale(T::half())
    }

    pub fn antihermitian_part(&self) -> Self {
        debug_assert!(self.is_square());
        let adj = self.adjoint();
        (self - &adj).scale(T::half())
    }

    /// ||A - A†||_F, zero iff Hermitian.
    pub fn herm_defect(&self) -> T {
        self.distance(&self.adjoint())
    }

    /// ||A + A†||_F, zero iff anti-Hermitian.
    pub fn antiherm_defect(&self) -> T {
        let adj = self.adjoint();
        (self + &adj).frob_norm()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Hermitian eigendecomposition by cyclic complex Jacobi sweeps.
    ///
    /// The Hermitian part of `self` is diagonalized; eigenvalues are returned
    /// in nonincreasing order with matching eigenvector columns, so that
    /// `self ≈ V diag(values) V†`.
    pub fn eigh(&self) -> Result<HermitianEigen<T>> {
        if !self.is_square() {
            return Err(shape_error(self, self));
        }
        let n = self.rows;
        let mut a = self.hermitian_part();
        let mut v = Self::identity(n);
        let norm = a.frob_norm();
        if norm == T::zero() || n == 1 {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(HermitianEigen { values, vectors: v });
        }
        let target = norm * T::epsilon() * T::of(n as f64);
        for _sweep in 0..100 {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let r = apq.norm();
                    if r <= norm * T::epsilon() * T::of(1e-2) {
                        continue;
                    }
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    // tan(2θ) = 2r/(app - aqq); stable half-angle formula.
                    let tau = (app - aqq) / (T::two() * r);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    let phase = apq / C::new(r, T::zero());
                    let sp = phase * s; // s e^{iφ}
                                        // A <- J† A J with J[p,p]=c, J[p,q]=-s e^{iφ}, J[q,p]=s e^{-iφ}, J[q,q]=c.
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c + akq * sp.conj();
                        a[(k, q)] = akq * c - akp * sp;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c + aqk * sp;
                        a[(q, k)] = aqk * c - apk * sp.conj();
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c + vkq * sp.conj();
                        v[(k, q)] = vkq * c - vkp * sp;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
        order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));
        let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
        let vectors = Self::from_fn(n, n, |i, j| v[(i, order[j])]);
        Ok(HermitianEigen { values, vectors })
    }

    /// Solves `self * X = rhs` by LU with partial pivoting.
    pub fn lu_solve(&self, rhs: &Self) -> Result<Self> {
        if !self.is_square() || self.rows != rhs.rows {
            return Err(shape_error(self, rhs));
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut lu = self.clone();
        let mut x = rhs.clone();
        let scale = self.max_abs().max(T::epsilon());
        for col in 0..n {
            let (mut pivot_row, mut pivot_abs) = (col, lu[(col, col)].norm());
            for r in (col + 1)..n {
                let a = lu[(r, col)].norm();
                if a > pivot_abs {
                    pivot_row = r;
                    pivot_abs = a;
                }
            }
            if pivot_abs <= scale * T::epsilon() * T::of(n as f64) {
                return Err(Error::Singular("lu_solve"));
            }
            if pivot_row != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                for j in 0..m {
                    let tmp = x[(col, j)];
                    x[(col, j)] = x[(pivot_row, j)];
                    x[(pivot_row, j)] = tmp;
                }
            }
            let pivot = lu[(col, col)];
            for r in (col + 1)..n {
                let factor = lu[(r, col)] / pivot;
                if factor.norm_sqr() == T::zero() {
                    continue;
                }
                for j in col..n {
                    let v = lu[(col, j)];
                    lu[(r, j)] -= factor * v;
                }
                for j in 0..m {
                    let v = x[(col, j)];
                    x[(r, j)] -= factor * v;
                }
            }
        }
        for col in (0..n).rev() {
            let pivot = lu[(col, col)];
            for j in 0..m {
                let mut acc = x[(col, j)];
                for k in (col + 1)..n {
                    acc -= lu[(col, k)] * x[(k, j)];
                }
                x[(col, j)] = acc / pivot;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.lu_solve(&Self::identity(self.rows))
    }

    /// Unitary factor of the polar decomposition `A = U H` (H positive).
    ///
    /// Used to project drifted propagators back onto the unitary group.
    pub fn polar_unitary(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(shape_error(self, self));
        }
        let gram = &self.adjoint() * self;
        let eig = gram.eigh()?;
        let lead = eig.values.first().copied().unwrap_or(T::zero());
        if lead <= T::zero() {
            return Err(Error::Singular("polar_unitary"));
        }
        let floor = lead * T::epsilon() * T::epsilon();
        let inv_sqrt: Vec<T> = eig
            .values
            .iter()
            .map(|&l| {
                let l = l.max(floor);
                T::one() / l.sqrt()
            })
            .collect();
        let h_inv_sqrt = &(&eig.vectors * &Self::diag_real(&inv_sqrt)) * &eig.vectors.adjoint();
        Ok(self * &h_inv_sqrt)
    }

    /// Matrix exponential of an anti-Hermitian matrix (exactly unitary up to
    /// roundoff). The anti-Hermitian part of `self` is used.
    pub fn expm_antihermitian(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(shape_error(self, self));
        }
        let a = self.antihermitian_part();
        // iA is Hermitian; exp(A) = V exp(-i λ) V†.
        let h = a.scale_c(C::new(T::zero(), T::one()));
        let eig = h.eigh()?;
        let phases: Vec<C<T>> = eig
            .values
            .iter()
            .map(|&l| C::new(l.cos(), -l.sin()))
            .collect();
        Ok(&(&eig.vectors * &Self::diag(&phases)) * &eig.vectors.adjoint())
    }
}

/// Result of [`CMat::eigh`]: `A ≈ vectors · diag(values) · vectors†`,
/// eigenvalues nonincreasing.
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: CMat<T>,
}

fn shape_error<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Error {
    Error::ShapeMismatch {
        left_rows: a.rows,
        left_cols: a.cols,
        right_rows: b.rows,
        right_cols: b.cols,
    }
}

impl<T: Real> Index<(usize, usize)> for CMat<T> {
    type Output = C<T>;

    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &CMat<T> {
    type Output = CMat<T>;

    fn add(self, rhs: Self) -> CMat<T> {
        assert!(self.same_shape(rhs), "shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &CMat<T> {
    type Output = CMat<T>;

    fn sub(self, rhs: Self) -> CMat<T> {
        assert!(self.same_shape(rhs), "shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Neg for &CMat<T> {
    type Output = CMat<T>;

    fn neg(self) -> CMat<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> Mul for &CMat<T> {
    type Output = CMat<T>;

    fn mul(self, rhs: Self) -> CMat<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
