//! Random instance generators for property checks.
//!
//! Everything is driven by a caller-supplied RNG so that runs are
//! reproducible from a seed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Algebra, Element};
use crate::space::{ContinuousMap, FiniteSpace};

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniform in the square `[-scale, scale]²`.
pub fn complex_in_box<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale))
}

/// Uniform in the closed disc of the given radius.
pub fn complex_in_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn space<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> FiniteSpace {
    let n = rng.random_range(1..=max_size.max(1));
    FiniteSpace::indexed("x", n).expect("n >= 1")
}

pub fn map<R: Rng + ?Sized>(rng: &mut R, source: &FiniteSpace, target: &FiniteSpace) -> ContinuousMap {
    let assignment = (0..source.len()).map(|_| rng.random_range(0..target.len())).collect();
    ContinuousMap::new(source.clone(), target.clone(), assignment).expect("indices in range")
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra, scale: f64) -> Element {
    let coords = (0..algebra.dim()).map(|_| complex_in_box(rng, scale)).collect();
    algebra.element(coords).expect("dim entries")
}

/// Element with `‖a‖ <= radius`.
pub fn element_in_ball<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra, radius: f64) -> Element {
    let coords = (0..algebra.dim()).map(|_| complex_in_disc(rng, radius)).collect();
    algebra.element(coords).expect("dim entries")
}

pub fn self_adjoint<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra, scale: f64) -> Element {
    let coords = (0..algebra.dim())
        .map(|_| Complex64::new(rng.random_range(-scale..=scale), 0.0))
        .collect();
    algebra.element(coords).expect("dim entries")
}

pub fn unitary_element<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra) -> Element {
    let coords = (0..algebra.dim())
        .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    algebra.element(coords).expect("dim entries")
}

pub fn projection<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra) -> Element {
    let coords = (0..algebra.dim())
        .map(|_| if rng.random_bool(0.5) { 1.0.into() } else { 0.0.into() })
        .collect();
    algebra.element(coords).expect("dim entries")
}

/// `bb*` for a random `b`.
pub fn positive<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra, scale: f64) -> Element {
    let b = element(rng, algebra, scale);
    b.mul(&b.star()).expect("same algebra")
}

/// Haar-like random unitary from the QR factorisation of a complex Gaussian matrix.
pub fn unitary_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| complex_normal(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (j, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            col *= d / d.norm();
        }
    }
    q
}

/// `U diag(λ) U*` with eigenvalues in the box of the given scale.
///
/// With probability `repeat` each eigenvalue copies an earlier one, so that
/// degenerate spectra are exercised.
pub fn normal_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64, repeat: f64) -> DMatrix<Complex64> {
    let mut eigenvalues: Vec<Complex64> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.random_bool(repeat) {
            let k = rng.random_range(0..i);
            eigenvalues.push(eigenvalues[k]);
        } else {
            eigenvalues.push(complex_in_box(rng, scale));
        }
    }
    let u = unitary_matrix(rng, n);
    let d = DMatrix::from_diagonal(&DVector::from_vec(eigenvalues));
    &u * d * u.adjoint()
}

/// Random polynomial of degree at most `max_degree`, ascending coefficients.
pub fn polynomial<R: Rng + ?Sized>(rng: &mut R, max_degree: usize, scale: f64) -> Vec<Complex64> {
    let degree = rng.random_range(0..=max_degree);
    (0..=degree).map(|_| complex_in_box(rng, scale)).collect()
}
