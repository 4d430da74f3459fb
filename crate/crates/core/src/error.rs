//! Error type shared by every module of the crate.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::Element;
use crate::spectral::NeumannReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("a finite space needs at least one point")]
    EmptySpace,
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not normal: |NN* - N*N|_F = {defect:e}")]
    NotNormal { defect: f64 },
    #[error("unitary diagonalisation failed: reconstruction defect {defect:e}")]
    DecompositionFailure { defect: f64 },
    #[error("matrix does not belong to the algebra (off-diagonal defect {defect:e})")]
    NotInAlgebra { defect: f64 },
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("point map index {index} is out of range for {len} characters")]
    InvalidPointMap { index: usize, len: usize },
    #[error("linear map is not a unital *-homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("geometric series needs |a| < 1, got |a| = {norm}")]
    NormTooLarge { norm: f64 },
    #[error("series did not reach tolerance after {} terms (residual {:e})", .report.terms_used, .report.residual)]
    Unconverged {
        best: Box<Element>,
        report: NeumannReport,
    },
    #[error("perturbation too large: |a - b| = {distance} >= 1/|a^-1| = {radius}")]
    PerturbationTooLarge { distance: f64, radius: f64 },
    #[error("element is not invertible (character value {value} at index {index})")]
    NotInvertible { index: usize, value: Complex64 },
    #[error("{lambda} lies within tolerance of spectrum point {point}")]
    SpectrumHit { lambda: Complex64, point: Complex64 },
    #[error("power a^(2^{step}) overflowed; rescale by the norm first")]
    Overflow { step: usize },
    #[error("function is undefined at spectrum point {point}")]
    DomainError { point: Complex64 },
    #[error("a spectrum is never empty")]
    EmptySpectrum,
    #[error("function does not live on the character space of the algebra")]
    SpaceMismatch,
    #[error("composite functional is not a character (defect {defect:e})")]
    NotACharacter { defect: f64 },
    #[error("duality violated: {0}")]
    DualityViolation(String),
    #[error("subset label `{0}` is not a point of the space")]
    InvalidSubset(String),
    #[error("cannot form the quotient by the whole algebra")]
    ImproperIdeal,
    #[error("ideal is not contained in the kernel: basis element {basis_index} survives")]
    NotContained { basis_index: usize },
    #[error("invalid document: {0}")]
    InvalidDocument(String),
}
