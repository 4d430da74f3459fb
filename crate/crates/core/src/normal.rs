//! The commutative C*-algebra generated by a single normal matrix.
//!
//! A normal `N` is unitarily diagonalisable, `N = U diag(λ) U*`, and the
//! unital *-algebra it generates is `{U diag(f(λ)) U* : f : σ(N) → ℂ}`.
//! Elements are stored as the vector of values `f(λ)` over the distinct
//! eigenvalues, which makes the isomorphism with `C(σ(N))` structural.
//!
//! The diagonalisation goes through the commuting Hermitian parts
//! `H = (N + N*)/2` and `K = (N - N*)/2i`: `H` is diagonalised first, then
//! `K` is diagonalised inside each eigenspace of `H`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::SpectrumSet;

/// Default relative threshold for `‖NN* − N*N‖_F ≤ tol·‖N‖_F²`.
pub const DEFAULT_NORMALITY_TOL: f64 = 1e-10;
/// Default absolute distance below which two eigenvalues share a character.
pub const DEFAULT_MERGE_TOL: f64 = 1e-8;
/// Relative reconstruction/unitarity defect above which diagonalisation is rejected.
const RECONSTRUCTION_TOL: f64 = 1e-8;
/// Relative gap below which eigenvalues of the Hermitian part are grouped.
const CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalOptions {
    pub normality_tol: f64,
    pub merge_tol: f64,
}

impl Default for NormalOptions {
    fn default() -> Self {
        Self {
            normality_tol: DEFAULT_NORMALITY_TOL,
            merge_tol: DEFAULT_MERGE_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalGeneratorAlgebra {
    generator: DMatrix<Complex64>,
    eigenvalues: Vec<Complex64>,
    eigenvectors: DMatrix<Complex64>,
    distinct_spectrum: SpectrumSet,
    multiplicity_map: Vec<usize>,
}

impl NormalGeneratorAlgebra {
    pub fn new(generator: DMatrix<Complex64>, options: NormalOptions) -> Result<Self> {
        if !generator.is_square() || generator.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: generator.nrows().max(1),
                found: generator.ncols(),
            });
        }
        let defect = normality_defect(&generator);
        let scale = generator.norm_squared();
        if defect > options.normality_tol * scale {
            return Err(Error::NotNormal { defect });
        }

        let (eigenvalues, eigenvectors) = joint_diagonalize(&generator)?;
        let distinct_spectrum = SpectrumSet::from_values(eigenvalues.iter().copied(), options.merge_tol)?;
        let multiplicity_map = eigenvalues
            .iter()
            .map(|&z| distinct_spectrum.nearest(z).0)
            .collect();

        Ok(Self {
            generator,
            eigenvalues,
            eigenvectors,
            distinct_spectrum,
            multiplicity_map,
        })
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &DMatrix<Complex64> {
        &self.generator
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Unitary `U` whose columns are joint eigenvectors.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn distinct_spectrum(&self) -> &SpectrumSet {
        &self.distinct_spectrum
    }

    /// For each eigenvalue slot, the index of its distinct eigenvalue.
    pub fn multiplicity_map(&self) -> &[usize] {
        &self.multiplicity_map
    }

    /// `U diag(coords[m(j)]) U*`.
    pub fn materialize(&self, coords: &[Complex64]) -> DMatrix<Complex64> {
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= coords[self.multiplicity_map[j]];
        }
        scaled * u.adjoint()
    }

    /// Spectral coordinates of a dense matrix, if it lies in the algebra.
    pub fn coordinates_of(&self, matrix: &DMatrix<Complex64>, tol: f64) -> Result<Vec<Complex64>> {
        let n = self.dimension();
        if matrix.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        let u = &self.eigenvectors;
        let d = u.adjoint() * matrix * u;
        let bound = tol * (1.0 + matrix.norm());

        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += d[(i, j)].norm_sqr();
                }
            }
        }
        let off = off.sqrt();
        if off > bound {
            return Err(Error::NotInAlgebra { defect: off });
        }

        let k = self.distinct_spectrum.len();
        let mut sums = vec![Complex64::new(0.0, 0.0); k];
        let mut counts = vec![0usize; k];
        for (j, &slot) in self.multiplicity_map.iter().enumerate() {
            sums[slot] += d[(j, j)];
            counts[slot] += 1;
        }
        let coords: Vec<Complex64> = sums
            .iter()
            .zip(&counts)
            .map(|(&s, &c)| s / c as f64)
            .collect();
        // a matrix that splits an eigenspace of N is not a function of N
        let spread = self
            .multiplicity_map
            .iter()
            .enumerate()
            .map(|(j, &slot)| (d[(j, j)] - coords[slot]).norm())
            .fold(0.0, f64::max);
        if spread > bound {
            return Err(Error::NotInAlgebra { defect: spread });
        }
        Ok(coords)
    }
}

/// `‖NN* − N*N‖_F`.
pub fn normality_defect(matrix: &DMatrix<Complex64>) -> f64 {
    let adj = matrix.adjoint();
    (matrix * &adj - &adj * matrix).norm()
}

/// Joint unitary diagonalisation of a normal matrix through its Hermitian parts.
///
/// Returns the eigenvalues (as Rayleigh quotients `(U*NU)_jj`) and the unitary `U`.
pub fn joint_diagonalize(matrix: &DMatrix<Complex64>) -> Result<(Vec<Complex64>, DMatrix<Complex64>)> {
    let n = matrix.nrows();
    let adj = matrix.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let hermitian = hermitize((matrix + &adj) * half);
    let skew = hermitize((matrix - &adj) * Complex64::new(0.0, -0.5));

    let eig = SymmetricEigen::new(hermitian);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let h_values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut u = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);

    let gap = CLUSTER_TOL * matrix.norm();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && h_values[end] - h_values[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            let block = u.columns(start, end - start).into_owned();
            let restricted = hermitize(block.adjoint() * &skew * &block);
            let inner = SymmetricEigen::new(restricted);
            let rotated = block * inner.eigenvectors;
            u.columns_mut(start, end - start).copy_from(&rotated);
        }
        start = end;
    }

    let d = u.adjoint() * matrix * &u;
    let eigenvalues: Vec<Complex64> = (0..n).map(|j| d[(j, j)]).collect();

    let mut scaled = u.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= eigenvalues[j];
    }
    let reconstruction = (scaled * u.adjoint() - matrix).norm();
    let unitarity = (u.adjoint() * &u - DMatrix::identity(n, n)).norm();
    let scale = matrix.norm().max(f64::MIN_POSITIVE);
    if reconstruction > RECONSTRUCTION_TOL * scale || unitarity > RECONSTRUCTION_TOL * n as f64 {
        return Err(Error::DecompositionFailure {
            defect: reconstruction.max(unitarity),
        });
    }
    Ok((eigenvalues, u))
}

fn hermitize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let adj = m.adjoint();
    (m + adj) * Complex64::new(0.5, 0.0)
}
