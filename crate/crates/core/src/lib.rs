//! Executable commutative C*-algebra theory at finite scale.
//!
//! Two concrete models of finite-dimensional commutative unital C*-algebras
//! are provided: `C(X)` for a finite discrete space `X`, and the algebra
//! generated by a normal matrix. On top of them the crate implements
//! spectra and inversion ([`spectral`]), characters and the Gelfand
//! transform ([`gelfand`]), the duality between finite spaces and these
//! algebras ([`duality`]), and closed ideals with their quotients and the
//! Zariski topology on maximal ideals ([`ideals`]).

pub mod algebra;
pub mod document;
pub mod duality;
pub mod error;
pub mod gelfand;
pub mod ideals;
pub mod morphism;
pub mod normal;
pub mod sample;
pub mod space;
pub mod spectral;

pub use algebra::{Algebra, Element, FunctionAlgebra, ModelKind};
pub use error::{Error, Result};
pub use morphism::StarHomomorphism;
pub use normal::{NormalGeneratorAlgebra, NormalOptions};
pub use space::{ContinuousMap, FiniteSpace};
pub use spectral::SpectrumSet;

pub use num_complex::Complex64;
