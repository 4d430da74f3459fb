//! Unital *-homomorphisms between the finite models.
//!
//! Every unital *-homomorphism `φ: C(K) → C(L)` between algebras of
//! functions on finite sets is the pullback along a map `L → K`: each
//! character `ψ` of the target pulls back to the character `ψ ∘ φ` of the
//! source. A [`StarHomomorphism`] stores exactly that map.

use num_complex::Complex64;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct StarHomomorphism {
    source: Algebra,
    target: Algebra,
    character_images: Vec<usize>,
}

impl StarHomomorphism {
    /// `character_images[j]` is the source character equal to `ψ_j ∘ φ`.
    pub fn new(source: Algebra, target: Algebra, character_images: Vec<usize>) -> Result<Self> {
        if character_images.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: character_images.len(),
            });
        }
        if let Some(&index) = character_images.iter().find(|&&k| k >= source.dim()) {
            return Err(Error::InvalidPointMap {
                index,
                len: source.dim(),
            });
        }
        Ok(Self {
            source,
            target,
            character_images,
        })
    }

    pub fn identity(algebra: &Algebra) -> Self {
        Self {
            source: algebra.clone(),
            target: algebra.clone(),
            character_images: (0..algebra.dim()).collect(),
        }
    }

    /// Recognises a linear map, given by the images of the indicator basis,
    /// as a unital *-homomorphism.
    ///
    /// The images of the minimal projections must themselves be projections
    /// that are pairwise orthogonal and sum to the unit; each target
    /// character then sees exactly one of them.
    pub fn from_basis_images(source: Algebra, target: Algebra, images: &[Element], tol: f64) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: images.len(),
            });
        }
        if images.iter().any(|e| *e.algebra() != target) {
            return Err(Error::AlgebraMismatch);
        }
        let mut character_images = Vec::with_capacity(target.dim());
        for j in 0..target.dim() {
            let column: Vec<Complex64> = images.iter().map(|e| e.coords()[j]).collect();
            let mut hit = None;
            for (k, v) in column.iter().enumerate() {
                if (v - 1.0).norm() <= tol {
                    if hit.is_some() {
                        return Err(Error::NotAHomomorphism(format!(
                            "character {j} sees two orthogonal projections"
                        )));
                    }
                    hit = Some(k);
                } else if v.norm() > tol {
                    return Err(Error::NotAHomomorphism(format!(
                        "image of basis element {k} is not a projection (value {v} at character {j})"
                    )));
                }
            }
            let k = hit.ok_or_else(|| Error::NotAHomomorphism(format!("unit not preserved at character {j}")))?;
            character_images.push(k);
        }
        Self::new(source, target, character_images)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn character_images(&self) -> &[usize] {
        &self.character_images
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if *a.algebra() != self.source {
            return Err(Error::AlgebraMismatch);
        }
        let coords = self.character_images.iter().map(|&k| a.coords()[k]).collect();
        self.target.element(coords)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &StarHomomorphism) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::AlgebraMismatch);
        }
        let character_images = self
            .character_images
            .iter()
            .map(|&k| first.character_images[k])
            .collect();
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            character_images,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.source.dim()];
        self.character_images.iter().for_each(|&k| seen[k] = true);
        seen.into_iter().all(|s| s)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    /// Indices of indicator-basis elements sent to zero; they span the kernel.
    pub fn kernel_support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.source.dim()];
        self.character_images.iter().for_each(|&k| seen[k] = true);
        (0..self.source.dim()).filter(|&k| !seen[k]).collect()
    }
}
