//! Characters and the Gelfand transform.

use num_complex::Complex64;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::space::FiniteSpace;

/// A unital *-homomorphism `A → ℂ`, identified by its canonical index.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    algebra: Algebra,
    index: usize,
}

impl Character {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `φ(a)`.
    pub fn evaluate(&self, a: &Element) -> Result<Complex64> {
        if *a.algebra() != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(a.coords()[self.index])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSpace {
    algebra: Algebra,
    characters: Vec<Character>,
}

impl CharacterSpace {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    /// Always false.
    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// The character space as a finite space with labels `phi0, phi1, ...`.
    pub fn as_space(&self) -> FiniteSpace {
        FiniteSpace::indexed("phi", self.characters.len()).expect("at least one character")
    }
}

/// All characters of `A`, in canonical order: point evaluations for `C(X)`,
/// evaluation at each distinct eigenvalue for a matrix algebra.
pub fn characters(algebra: &Algebra) -> CharacterSpace {
    let characters = (0..algebra.dim())
        .map(|index| Character {
            algebra: algebra.clone(),
            index,
        })
        .collect();
    CharacterSpace {
        algebra: algebra.clone(),
        characters,
    }
}

pub fn evaluate_character(phi: &Character, a: &Element) -> Result<Complex64> {
    phi.evaluate(a)
}

/// Identifies a linear functional, given by its values on the indicator
/// basis, as a character of `algebra`.
///
/// Checks unitality, multiplicativity and *-preservation on the basis; the
/// returned index is the unique basis element the functional sends to 1.
pub fn identify_character(algebra: &Algebra, basis_values: &[Complex64], tol: f64) -> Result<usize> {
    if basis_values.len() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: basis_values.len(),
        });
    }
    let total: Complex64 = basis_values.iter().sum();
    let mut defect = (total - 1.0).norm();
    // φ(1_k)φ(1_l) = φ(1_k 1_l) = δ_kl φ(1_k), and φ(1_k*) = conj φ(1_k)
    for (k, &vk) in basis_values.iter().enumerate() {
        defect = defect.max((vk * vk - vk).norm()).max(vk.im.abs());
        for &vl in &basis_values[k + 1..] {
            defect = defect.max((vk * vl).norm());
        }
    }
    if defect > tol {
        return Err(Error::NotACharacter { defect });
    }
    basis_values
        .iter()
        .position(|v| (v - 1.0).norm() <= tol.max(0.5))
        .ok_or(Error::NotACharacter { defect: 1.0 })
}

/// The algebra `C(Â)` in which Gelfand transforms of elements of `A` live.
pub fn transform_algebra(algebra: &Algebra) -> Algebra {
    Algebra::functions(characters(algebra).as_space())
}

/// `â` with `â(φ) = φ(a)`, as a function on the character space.
pub fn gelfand_transform(a: &Element) -> Element {
    let space = characters(a.algebra());
    let target = Algebra::functions(space.as_space());
    let values = space
        .characters()
        .iter()
        .map(|phi| phi.evaluate(a).expect("character of the same algebra"))
        .collect();
    target.element(values).expect("one value per character")
}

/// The unique element of `algebra` whose transform is `f_hat`.
pub fn gelfand_inverse(f_hat: &Element, algebra: &Algebra) -> Result<Element> {
    if *f_hat.algebra() != transform_algebra(algebra) {
        return Err(Error::SpaceMismatch);
    }
    algebra.element(f_hat.coords().to_vec())
}
