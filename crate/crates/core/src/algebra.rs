//! The two concrete commutative unital C*-algebra models and their elements.
//!
//! Both models are realised as `C(K)` for a finite set `K` of characters:
//! `C(X)` for a finite space `X`, and the algebra generated by a normal
//! matrix `N`, which is carried in spectral coordinates over the distinct
//! eigenvalues of `N`. An [`Element`] is therefore always a coordinate
//! vector with one complex entry per character, and all algebra operations
//! act coordinatewise.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::normal::{NormalGeneratorAlgebra, NormalOptions};
use crate::space::FiniteSpace;

/// `C(X)`: complex functions on a finite discrete space, with the sup norm.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionAlgebra {
    space: FiniteSpace,
}

impl FunctionAlgebra {
    pub fn new(space: FiniteSpace) -> Self {
        Self { space }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }
}

#[derive(Debug, PartialEq)]
enum Model {
    Function(FunctionAlgebra),
    Normal(NormalGeneratorAlgebra),
}

/// Shared handle to one of the algebra models.
///
/// Cloning is cheap. Two handles compare equal when they describe the same
/// model, so elements built from independently constructed but identical
/// algebras may be combined.
#[derive(Clone)]
pub struct Algebra(Arc<Model>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Model::Function(fa) => write!(f, "C({:?})", fa.space()),
            Model::Normal(na) => write!(
                f,
                "C*(N) n={} spectrum={:?}",
                na.dimension(),
                na.distinct_spectrum().points()
            ),
        }
    }
}

/// Which of the two models an algebra is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Function,
    NormalMatrix,
}

impl Algebra {
    /// `C(X)` for a finite space `X`. The space is non-empty by construction.
    pub fn functions(space: FiniteSpace) -> Self {
        Self(Arc::new(Model::Function(FunctionAlgebra::new(space))))
    }

    /// The algebra generated by a normal matrix, with default tolerances.
    pub fn normal(matrix: DMatrix<Complex64>) -> Result<Self> {
        Self::normal_with(matrix, NormalOptions::default())
    }

    pub fn normal_with(matrix: DMatrix<Complex64>, options: NormalOptions) -> Result<Self> {
        let na = NormalGeneratorAlgebra::new(matrix, options)?;
        Ok(Self(Arc::new(Model::Normal(na))))
    }

    pub fn kind(&self) -> ModelKind {
        match &*self.0 {
            Model::Function(_) => ModelKind::Function,
            Model::Normal(_) => ModelKind::NormalMatrix,
        }
    }

    pub fn as_function(&self) -> Option<&FunctionAlgebra> {
        match &*self.0 {
            Model::Function(fa) => Some(fa),
            Model::Normal(_) => None,
        }
    }

    pub fn as_normal(&self) -> Option<&NormalGeneratorAlgebra> {
        match &*self.0 {
            Model::Normal(na) => Some(na),
            Model::Function(_) => None,
        }
    }

    /// Vector-space dimension, which equals the number of characters.
    pub fn dim(&self) -> usize {
        match &*self.0 {
            Model::Function(fa) => fa.space().len(),
            Model::Normal(na) => na.distinct_spectrum().len(),
        }
    }

    /// Human-readable names of the characters, in canonical order.
    ///
    /// For `C(X)` these are the point labels; for a matrix algebra they are
    /// `lambda0, lambda1, ...` following the canonical spectrum order.
    pub fn character_labels(&self) -> FiniteSpace {
        match &*self.0 {
            Model::Function(fa) => fa.space().clone(),
            Model::Normal(na) => FiniteSpace::indexed("lambda", na.distinct_spectrum().len())
                .expect("spectrum is non-empty"),
        }
    }

    pub fn element(&self, coords: Vec<Complex64>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(Element {
            algebra: self.clone(),
            coords,
        })
    }

    pub fn from_real(&self, values: &[f64]) -> Result<Element> {
        self.element(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(&self, value: Complex64) -> Element {
        Element {
            algebra: self.clone(),
            coords: vec![value; self.dim()],
        }
    }

    pub fn unit(&self) -> Element {
        self.constant(Complex64::new(1.0, 0.0))
    }

    pub fn zero(&self) -> Element {
        self.constant(Complex64::new(0.0, 0.0))
    }

    /// The minimal projection supported on character `k`.
    pub fn indicator(&self, k: usize) -> Element {
        let mut coords = vec![Complex64::new(0.0, 0.0); self.dim()];
        coords[k] = Complex64::new(1.0, 0.0);
        Element {
            algebra: self.clone(),
            coords,
        }
    }

    /// Indicator basis; every element is a unique combination of these.
    pub fn basis(&self) -> Vec<Element> {
        (0..self.dim()).map(|k| self.indicator(k)).collect()
    }

    /// For a matrix algebra, the generator `N` as an element.
    pub fn generator(&self) -> Option<Element> {
        let na = self.as_normal()?;
        Some(Element {
            algebra: self.clone(),
            coords: na.distinct_spectrum().points().to_vec(),
        })
    }

    /// Recovers the spectral coordinates of a dense matrix lying in a matrix algebra.
    pub fn element_from_matrix(&self, matrix: &DMatrix<Complex64>, tol: f64) -> Result<Element> {
        let na = self.as_normal().ok_or(Error::AlgebraMismatch)?;
        let coords = na.coordinates_of(matrix, tol)?;
        self.element(coords)
    }
}

/// An element of one of the two models, held in character coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    algebra: Algebra,
    coords: Vec<Complex64>,
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Character values `φ_k(a)`; for `C(X)` these are the function values.
    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    fn same_algebra(&self, other: &Element) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn zip_with(&self, other: &Element, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| op(x, y))
                .collect(),
        })
    }

    pub(crate) fn map(&self, op: impl Fn(Complex64) -> Complex64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|&x| op(x)).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn scale(&self, lambda: Complex64) -> Element {
        self.map(|x| lambda * x)
    }

    /// The involution. Conjugation in both models.
    pub fn star(&self) -> Element {
        self.map(|x| x.conj())
    }

    pub fn pow(&self, exponent: u32) -> Element {
        self.map(|x| x.powu(exponent))
    }

    /// The C*-norm: sup of moduli of character values.
    ///
    /// In the matrix model this is the operator norm of the materialised
    /// matrix, since every element is normal.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Dense matrix `U diag(..) U*` for an element of a matrix algebra.
    pub fn materialize(&self) -> Option<DMatrix<Complex64>> {
        let na = self.algebra.as_normal()?;
        Some(na.materialize(&self.coords))
    }

    /// `‖self - other‖`, or `None` when the algebras differ.
    pub fn distance(&self, other: &Element) -> Option<f64> {
        self.sub(other).ok().map(|d| d.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn three_points() -> Algebra {
        Algebra::functions(FiniteSpace::new(["a", "b", "c"]).unwrap())
    }

    #[test]
    fn one_point_algebra_is_scalars() {
        let a = Algebra::functions(FiniteSpace::new(["p"]).unwrap());
        assert_eq!(a.dim(), 1);
        let x = a.element(vec![c(2.0, -1.0)]).unwrap();
        let y = a.element(vec![c(0.5, 3.0)]).unwrap();
        assert_eq!(x.mul(&y).unwrap().coords()[0], c(2.0, -1.0) * c(0.5, 3.0));
        assert_eq!(x.norm(), c(2.0, -1.0).norm());
    }

    #[test]
    fn unit_of_two_point_space() {
        let a = Algebra::functions(FiniteSpace::new(["p", "q"]).unwrap());
        assert_eq!(a.unit().coords(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(a.unit().norm(), 1.0);
    }

    #[test]
    fn pointwise_operations() {
        let a = Algebra::functions(FiniteSpace::new(["p", "q"]).unwrap());
        let x = a.from_real(&[1.0, 2.0]).unwrap();
        let y = a.from_real(&[3.0, 4.0]).unwrap();
        assert_eq!(x.add(&y).unwrap().coords(), &[c(4.0, 0.0), c(6.0, 0.0)]);

        let z = a.element(vec![c(0.0, 1.0), c(1.0, 1.0)]).unwrap();
        assert_eq!(z.star().coords(), &[c(0.0, -1.0), c(1.0, -1.0)]);
        assert_eq!(a.unit().mul(&z).unwrap(), z);
    }

    #[test]
    fn sup_norm_and_c_star_identity() {
        let a = three_points();
        let f = a.element(vec![c(1.0, 0.0), c(0.0, -2.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(f.norm(), 3.0);
        assert_eq!(a.zero().norm(), 0.0);
        assert_eq!(f.star().mul(&f).unwrap().norm(), 9.0);
        assert_eq!(f.star().norm(), f.norm());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a = three_points();
        let b = Algebra::functions(FiniteSpace::new(["x", "y", "z"]).unwrap());
        assert!(matches!(a.unit().add(&b.unit()), Err(Error::AlgebraMismatch)));
        // structurally identical algebras are interchangeable
        let a2 = three_points();
        assert!(a.unit().add(&a2.unit()).is_ok());
    }

    #[test]
    fn wrong_length_rejected() {
        let a = three_points();
        assert!(matches!(
            a.from_real(&[1.0]),
            Err(Error::DimensionMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn basis_spans() {
        let a = three_points();
        let f = a.from_real(&[7.0, -1.0, 2.5]).unwrap();
        let rebuilt = a
            .basis()
            .iter()
            .zip(f.coords())
            .fold(a.zero(), |acc, (e, &v)| acc.add(&e.scale(v)).unwrap());
        assert_eq!(rebuilt, f);
    }
}
