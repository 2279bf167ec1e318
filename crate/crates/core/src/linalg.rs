//! Dense complex linear algebra: Hermitian eigendecomposition and the
//! exponential map from the Lie algebra onto the unitary group.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{cis, cone, czero, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: CMatrix<T>,
}

pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> Result<HermitianEigen<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let dim = m.nrows();
    let eigenvectors = CMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

pub fn identity<T: Real>(dim: usize) -> CMatrix<T> {
    CMatrix::from_fn(dim, dim, |r, c| if r == c { cone() } else { czero() })
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
}

pub fn frobenius_norm<T: Real>(m: &CMatrix<T>) -> T {
    m.iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// `a·b - b·a`
pub fn commutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b - b * a
}

/// A square matrix known to be unitary to working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary<T: Real> {
    matrix: CMatrix<T>,
}

impl<T: Real> DenseUnitary<T> {
    /// Wraps `matrix` after checking `‖U†U − I‖_max` against `tol`.
    pub fn new(matrix: CMatrix<T>, tol: T) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let drift = unitarity_defect(&matrix);
        if drift > tol {
            return Err(Error::UnitarityDrift {
                drift: drift.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: identity(dim),
        }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn unitarity_defect(&self) -> T {
        unitarity_defect(&self.matrix)
    }
}

/// `‖U†U − I‖_max`
pub fn unitarity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let gram = m.adjoint() * m;
    max_abs(&(gram - identity::<T>(m.nrows())))
}

/// `exp(Ω)` for skew-Hermitian `Ω`.
///
/// With `A = -iΩ` Hermitian and `A = V diag(λ) V†`, the result is
/// `V diag(e^{iλ}) V†`, unitary up to rounding.
pub fn expm_skew_hermitian<T: Real>(omega: &CMatrix<T>) -> Result<DenseUnitary<T>> {
    if !omega.is_square() {
        return Err(Error::DimensionMismatch {
            expected: omega.nrows(),
            found: omega.ncols(),
        });
    }
    let dim = omega.nrows();
    Error::guard("dense exponential", dim.trailing_zeros() as usize, 12)?;
    let deviation = max_abs(&(omega + omega.adjoint()));
    if deviation > T::tolerance(1e-10) {
        return Err(Error::NotSkewHermitian {
            deviation: deviation.as_f64(),
        });
    }
    let minus_i = Complex::new(T::zero(), -T::one());
    let a = omega.map(|z| z * minus_i);
    // symmetrize away rounding so the eigensolver sees an exactly Hermitian input
    let half = T::lit(0.5);
    let a = (&a + a.adjoint()).map(|z| z * half);
    let eig = hermitian_eigen(&a)?;
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (c, lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = cis(*lambda);
        scaled.column_mut(c).iter_mut().for_each(|z| *z *= phase);
    }
    let u = scaled * v.adjoint();
    DenseUnitary::new(u, T::tolerance(1e-10))
}
