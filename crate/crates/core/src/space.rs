//! Finite discrete spaces and the maps between them.
//!
//! Every finite set with the discrete topology is compact and Hausdorff, and
//! every function between two such sets is continuous, so a [`ContinuousMap`]
//! is just a total assignment of target indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered, non-empty list of distinct point labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    points: Arc<[String]>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = labels.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut seen = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        Ok(Self {
            points: points.into(),
        })
    }

    /// The space `{prefix0, prefix1, ...}` with `n` points.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, index: usize) -> &str {
        &self.points[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    /// Indices of a set of labels, in the order given.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_owned()))
            })
            .collect()
    }

    /// The subspace on the given indices, keeping the original order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Self::new(sorted.into_iter().map(|i| self.points[i].clone()))
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

/// A map between finite discrete spaces, stored as `assignment[i] = f(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousMap {
    source: FiniteSpace,
    target: FiniteSpace,
    assignment: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::DimensionMismatch {
                expected: source.len(),
                found: assignment.len(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&j| j >= target.len()) {
            return Err(Error::InvalidPointMap {
                index: bad,
                len: target.len(),
            });
        }
        Ok(Self {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source label, target label)` pairs covering every source point.
    pub fn from_labels<S: AsRef<str>>(
        source: FiniteSpace,
        target: FiniteSpace,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (from, to) in pairs {
            let i = source
                .index_of(from.as_ref())
                .ok_or_else(|| Error::UnknownLabel(from.as_ref().to_owned()))?;
            let j = target
                .index_of(to.as_ref())
                .ok_or_else(|| Error::UnknownLabel(to.as_ref().to_owned()))?;
            assignment[i] = Some(j);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::UnknownLabel(source.label(i).to_owned())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        Self {
            source: space.clone(),
            target: space.clone(),
            assignment: (0..space.len()).collect(),
        }
    }

    pub fn constant(source: &FiniteSpace, target: &FiniteSpace, value: usize) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![value; source.len()])
    }

    /// Inclusion of a subspace whose labels all occur in `ambient`.
    pub fn inclusion(sub: &FiniteSpace, ambient: &FiniteSpace) -> Result<Self> {
        let assignment = ambient.indices_of(sub.labels())?;
        Self::new(sub.clone(), ambient.clone(), assignment)
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, index: usize) -> usize {
        self.assignment[index]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &ContinuousMap) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch {
                expected: self.source.len(),
                found: first.target.len(),
            });
        }
        let assignment = first.assignment.iter().map(|&j| self.assignment[j]).collect();
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            assignment,
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut hit = vec![false; self.target.len()];
        for &j in &self.assignment {
            if std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        true
    }
}
