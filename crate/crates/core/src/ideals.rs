//! Closed ideals, quotients, and the maximal-ideal space with its Zariski topology.
//!
//! In `C(K)` for finite `K` every closed ideal is `I_Y = {f : f|_Y = 0}` for
//! a unique `Y ⊆ K`, so an [`Ideal`] is stored as its zero set. Inclusion of
//! ideals reverses inclusion of zero sets.

use std::collections::BTreeSet;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::morphism::StarHomomorphism;

#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    algebra: Algebra,
    zero_set: BTreeSet<usize>,
}

impl Ideal {
    /// `I_Y` for a set of character indices `Y`.
    pub fn from_zero_set(algebra: &Algebra, zero_set: impl IntoIterator<Item = usize>) -> Result<Self> {
        let labels = algebra.character_labels();
        let mut set = BTreeSet::new();
        for k in zero_set {
            if k >= algebra.dim() {
                return Err(Error::InvalidSubset(format!("#{k} (of {})", labels.len())));
            }
            set.insert(k);
        }
        Ok(Self {
            algebra: algebra.clone(),
            zero_set: set,
        })
    }

    /// The zero ideal `{0} = I_K`.
    pub fn zero(algebra: &Algebra) -> Self {
        Self {
            algebra: algebra.clone(),
            zero_set: (0..algebra.dim()).collect(),
        }
    }

    /// The improper ideal `A = I_∅`.
    pub fn whole(algebra: &Algebra) -> Self {
        Self {
            algebra: algebra.clone(),
            zero_set: BTreeSet::new(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn zero_set(&self) -> &BTreeSet<usize> {
        &self.zero_set
    }

    pub fn is_proper(&self) -> bool {
        !self.zero_set.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.zero_set.len() == 1
    }

    /// Vector-space dimension of the ideal.
    pub fn dim(&self) -> usize {
        self.algebra.dim() - self.zero_set.len()
    }

    pub fn contains(&self, f: &Element, tol: f64) -> bool {
        *f.algebra() == self.algebra && self.zero_set.iter().all(|&k| f.coords()[k].norm() <= tol)
    }

    /// Indicator functions of the points off the zero set; a basis of the ideal.
    pub fn spanning_set(&self) -> Vec<Element> {
        (0..self.algebra.dim())
            .filter(|k| !self.zero_set.contains(k))
            .map(|k| self.algebra.indicator(k))
            .collect()
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.algebra == other.algebra && other.zero_set.is_subset(&self.zero_set)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.same_algebra(other)?;
        Ok(Ideal {
            algebra: self.algebra.clone(),
            zero_set: self.zero_set.union(&other.zero_set).copied().collect(),
        })
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_algebra(other)?;
        Ok(Ideal {
            algebra: self.algebra.clone(),
            zero_set: self.zero_set.intersection(&other.zero_set).copied().collect(),
        })
    }

    fn same_algebra(&self, other: &Ideal) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// An ideal vanishing at exactly one character, i.e. the kernel of that character.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalIdeal(Ideal);

impl MaximalIdeal {
    pub fn kernel_of(algebra: &Algebra, character: usize) -> Result<Self> {
        Ideal::from_zero_set(algebra, [character]).map(Self)
    }

    pub fn point(&self) -> usize {
        *self.0.zero_set.first().expect("exactly one vanishing point")
    }

    pub fn ideal(&self) -> &Ideal {
        &self.0
    }
}

impl TryFrom<Ideal> for MaximalIdeal {
    type Error = Ideal;

    fn try_from(ideal: Ideal) -> std::result::Result<Self, Ideal> {
        if ideal.is_maximal() {
            Ok(Self(ideal))
        } else {
            Err(ideal)
        }
    }
}

/// `I_Y` for a set of character labels (point labels for `C(X)`).
pub fn ideal_from_closed_set<S: AsRef<str>>(algebra: &Algebra, labels: &[S]) -> Result<Ideal> {
    let space = algebra.character_labels();
    let indices = labels
        .iter()
        .map(|l| {
            space
                .index_of(l.as_ref())
                .ok_or_else(|| Error::InvalidSubset(l.as_ref().to_owned()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::from_zero_set(algebra, indices)
}

/// Common zero set of the ideal, computed from a spanning set.
pub fn closed_set_from_ideal(ideal: &Ideal) -> BTreeSet<usize> {
    let span = ideal.spanning_set();
    (0..ideal.algebra.dim())
        .filter(|&x| span.iter().all(|f| f.coords()[x].norm() == 0.0))
        .collect()
}

/// Labels of the common zero set, in canonical order.
pub fn closed_set_labels(ideal: &Ideal) -> Vec<String> {
    let space = ideal.algebra.character_labels();
    closed_set_from_ideal(ideal)
        .into_iter()
        .map(|k| space.label(k).to_owned())
        .collect()
}

/// `A/I`, realised as functions on the zero set of `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlgebra {
    base: Algebra,
    ideal: Ideal,
    algebra: Algebra,
    representatives: Vec<usize>,
}

impl QuotientAlgebra {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The quotient as an algebra in its own right.
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `‖a + I‖` in closed form: the sup of `|a|` over the zero set.
    pub fn quotient_norm(&self, a: &Element) -> Result<f64> {
        if *a.algebra() != self.base {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self
            .representatives
            .iter()
            .map(|&k| a.coords()[k].norm())
            .fold(0.0, f64::max))
    }

    /// `‖a + g‖` for some `g ∈ I`: an upper bound for the quotient norm, attained at the infimum.
    pub fn coset_norm(&self, a: &Element, g: &Element, tol: f64) -> Result<f64> {
        if *g.algebra() != self.base {
            return Err(Error::AlgebraMismatch);
        }
        if let Some(&basis_index) = self.representatives.iter().find(|&&k| g.coords()[k].norm() > tol) {
            return Err(Error::NotContained { basis_index });
        }
        Ok(a.add(g)?.norm())
    }

    /// The element of `I` realising the infimum: `-a` off the zero set.
    pub fn best_correction(&self, a: &Element) -> Result<Element> {
        if *a.algebra() != self.base {
            return Err(Error::AlgebraMismatch);
        }
        let coords = a
            .coords()
            .iter()
            .enumerate()
            .map(|(k, &z)| if self.ideal.zero_set.contains(&k) { 0.0.into() } else { -z })
            .collect();
        self.base.element(coords)
    }
}

/// `A/I` together with the projection `π: A → A/I`.
pub fn quotient(ideal: &Ideal) -> Result<(QuotientAlgebra, StarHomomorphism)> {
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let base = ideal.algebra.clone();
    let representatives: Vec<usize> = ideal.zero_set.iter().copied().collect();
    let labels = base.character_labels().subspace(&representatives)?;
    let algebra = Algebra::functions(labels);
    let projection = StarHomomorphism::new(base.clone(), algebra.clone(), representatives.clone())?;
    Ok((
        QuotientAlgebra {
            base,
            ideal: ideal.clone(),
            algebra,
            representatives,
        },
        projection,
    ))
}

/// The unique `ψ: A/I → B` with `φ = ψ ∘ π`, provided `I ⊆ ker φ`.
pub fn factor_through_quotient(phi: &StarHomomorphism, q: &QuotientAlgebra) -> Result<StarHomomorphism> {
    if *phi.source() != q.base {
        return Err(Error::AlgebraMismatch);
    }
    // I is spanned by the indicators off the zero set; each must die under φ
    for basis_index in (0..q.base.dim()).filter(|k| !q.ideal.zero_set.contains(k)) {
        let image = phi.apply(&q.base.indicator(basis_index))?;
        if image.norm() != 0.0 {
            return Err(Error::NotContained { basis_index });
        }
    }
    let images = phi
        .character_images()
        .iter()
        .map(|&k| {
            q.representatives
                .iter()
                .position(|&r| r == k)
                .expect("characters of the target see only the zero set")
        })
        .collect();
    StarHomomorphism::new(q.algebra.clone(), phi.target().clone(), images)
}

/// `Max(A)`: the kernels of the characters, in canonical order.
pub fn max_ideals(algebra: &Algebra) -> Vec<MaximalIdeal> {
    (0..algebra.dim())
        .map(|k| MaximalIdeal::kernel_of(algebra, k).expect("index in range"))
        .collect()
}

/// `V(I) = {𝔪 ∈ Max(A) : 𝔪 ⊇ I}`.
pub fn zariski_v(ideal: &Ideal) -> Vec<MaximalIdeal> {
    max_ideals(&ideal.algebra)
        .into_iter()
        .filter(|m| ideal.is_subset_of(m.ideal()))
        .collect()
}
