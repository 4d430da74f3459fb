//! Inversion, resolvents, spectra, spectral radius and functional calculus.

use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::Element;
use crate::error::{Error, Result};

/// Default tolerance for comparing two spectra as sets.
pub const DEFAULT_SET_TOL: f64 = 1e-9;

fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A finite, non-empty set of complex numbers, deduplicated at `merge_tol`
/// and ordered lexicographically by (real part, imaginary part).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSet {
    points: Vec<Complex64>,
    merge_tol: f64,
}

impl SpectrumSet {
    /// Values are visited in canonical order; each one either joins the first
    /// earlier representative within `merge_tol` or becomes a new representative.
    pub fn from_values<I: IntoIterator<Item = Complex64>>(values: I, merge_tol: f64) -> Result<Self> {
        let mut sorted: Vec<Complex64> = values.into_iter().collect();
        if sorted.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        sorted.sort_by(canonical_cmp);
        let mut points: Vec<Complex64> = Vec::with_capacity(sorted.len());
        for z in sorted {
            if !points.iter().any(|p| (p - z).norm() <= merge_tol) {
                points.push(z);
            }
        }
        points.sort_by(canonical_cmp);
        Ok(Self { points, merge_tol })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn merge_tol(&self) -> f64 {
        self.merge_tol
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of and distance to the closest point.
    pub fn nearest(&self, z: Complex64) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, (p - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("spectrum is non-empty")
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.nearest(z).1 <= self.merge_tol
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Image of the set under `f`, re-deduplicated at the same tolerance.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::from_values(self.points.iter().map(|&z| f(z)), self.merge_tol)
            .expect("image of a non-empty set is non-empty")
    }

    pub fn hausdorff_distance(&self, other: &SpectrumSet) -> f64 {
        hausdorff_distance(&self.points, &other.points)
    }

    /// Set equality up to `tol` in Hausdorff distance.
    pub fn approx_eq(&self, other: &SpectrumSet, tol: f64) -> bool {
        self.hausdorff_distance(other) <= tol
    }
}

/// Hausdorff distance between two finite point sets in the complex plane.
///
/// Infinite when exactly one side is empty.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn directed(from: &[Complex64], to: &[Complex64]) -> f64 {
        from.iter()
            .map(|x| to.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    directed(a, b).max(directed(b, a))
}

// ---------------------------------------------------------------------------
// Inversion

/// Scale-relative zero test used when no tolerance is supplied.
pub fn default_invertibility_tol(a: &Element) -> f64 {
    1e-10 * (1.0 + a.norm())
}

/// True iff every character value has modulus above `tol`.
pub fn is_invertible(a: &Element, tol: f64) -> bool {
    a.coords().iter().all(|z| z.norm() > tol)
}

/// Exact inverse from character values.
pub fn inverse(a: &Element) -> Result<Element> {
    let tol = default_invertibility_tol(a);
    if let Some((index, &value)) = a.coords().iter().enumerate().find(|(_, z)| z.norm() <= tol) {
        return Err(Error::NotInvertible { index, value });
    }
    Ok(a.map(|z| z.inv()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NeumannReport {
    /// Number of powers summed: the partial sum is `a^0 + ... + a^(terms_used-1)`.
    pub terms_used: usize,
    /// `‖(e − a)S − e‖` for the returned partial sum `S`.
    pub residual: f64,
    /// `‖a‖^terms_used / (1 − ‖a‖)`, the geometric tail bound.
    pub a_priori_bound: f64,
}

/// Partial sums `S_N = e + a + ... + a^N` of the geometric series.
///
/// Yields `(N + 1, S_N)` starting with `N = 0`.
#[derive(Clone, Debug)]
pub struct NeumannSeries {
    base: Element,
    power: Element,
    sum: Element,
    terms: usize,
}

impl NeumannSeries {
    pub fn new(a: &Element) -> Self {
        let unit = a.algebra().unit();
        Self {
            base: a.clone(),
            power: unit.clone(),
            sum: a.algebra().zero(),
            terms: 0,
        }
    }
}

impl Iterator for NeumannSeries {
    type Item = (usize, Element);

    fn next(&mut self) -> Option<Self::Item> {
        if self.terms > 0 {
            self.power = self.power.mul(&self.base).expect("same algebra");
        }
        self.sum = self.sum.add(&self.power).expect("same algebra");
        self.terms += 1;
        Some((self.terms, self.sum.clone()))
    }
}

/// `(e − a)⁻¹` as a truncated geometric series.
pub fn neumann_inverse(a: &Element, tol: f64, max_terms: usize) -> Result<(Element, NeumannReport)> {
    let norm = a.norm();
    if norm >= 1.0 {
        return Err(Error::NormTooLarge { norm });
    }
    let unit = a.algebra().unit();
    let one_minus_a = unit.sub(a)?;
    let mut best = None;
    for (terms_used, sum) in NeumannSeries::new(a).take(max_terms.max(1)) {
        let residual = one_minus_a.mul(&sum)?.sub(&unit)?.norm();
        let report = NeumannReport {
            terms_used,
            residual,
            a_priori_bound: norm.powi(terms_used as i32) / (1.0 - norm),
        };
        if residual <= tol {
            return Ok((sum, report));
        }
        best = Some((sum, report));
    }
    let (sum, report) = best.expect("at least one term");
    Err(Error::Unconverged {
        best: Box::new(sum),
        report,
    })
}

/// `b⁻¹` from a nearby invertible `a` via `Σ (a⁻¹(a − b))ⁿ a⁻¹`.
pub fn perturbation_inverse(a: &Element, b: &Element, tol: f64, max_terms: usize) -> Result<Element> {
    let a_inv = inverse(a)?;
    let radius = 1.0 / a_inv.norm();
    let diff = a.sub(b)?;
    let distance = diff.norm();
    if distance >= radius {
        return Err(Error::PerturbationTooLarge { distance, radius });
    }
    let ratio = a_inv.mul(&diff)?;
    let (series, _) = match neumann_inverse(&ratio, tol, max_terms) {
        Err(Error::NormTooLarge { .. }) => return Err(Error::PerturbationTooLarge { distance, radius }),
        other => other?,
    };
    let result = series.mul(&a_inv)?;
    let unit = a.algebra().unit();
    let residual = b.mul(&result)?.sub(&unit)?.norm();
    if residual > tol {
        return Err(Error::Unconverged {
            best: Box::new(result),
            report: NeumannReport {
                terms_used: max_terms,
                residual,
                a_priori_bound: f64::NAN,
            },
        });
    }
    Ok(result)
}

/// Radius of the ball around `a` that stays inside the invertible group.
pub fn invertibility_radius(a: &Element) -> Result<f64> {
    Ok(1.0 / inverse(a)?.norm())
}

/// A `δ` such that `‖a − b‖ < δ` forces `‖b⁻¹ − a⁻¹‖ ≤ eps`.
///
/// With `ε₁ = eps/‖a⁻¹‖` and `δ = ε₁/((1 + ε₁)‖a⁻¹‖)`, the geometric tail gives
/// `‖b⁻¹ − a⁻¹‖ ≤ ‖a⁻¹‖·ε₁ = eps`.
pub fn inversion_continuity_delta(inverse_norm: f64, eps: f64) -> f64 {
    let eps1 = eps / inverse_norm;
    eps1 / ((1.0 + eps1) * inverse_norm)
}

// ---------------------------------------------------------------------------
// Resolvent and spectrum

pub fn spectrum(a: &Element, merge_tol: f64) -> SpectrumSet {
    SpectrumSet::from_values(a.coords().iter().copied(), merge_tol).expect("algebras have at least one character")
}

/// `(λe − a)⁻¹`.
pub fn resolvent(a: &Element, lambda: Complex64, merge_tol: f64) -> Result<Element> {
    let sigma = spectrum(a, merge_tol);
    let (i, dist) = sigma.nearest(lambda);
    if dist <= merge_tol {
        return Err(Error::SpectrumHit {
            lambda,
            point: sigma.points()[i],
        });
    }
    Ok(a.map(|z| (lambda - z).inv()))
}

/// `(1/λ) Σ_{n<terms} (a/λ)ⁿ` for `|λ| > ‖a‖`, with the bound on the omitted tail.
pub fn resolvent_series(a: &Element, lambda: Complex64, terms: usize) -> Result<(Element, f64)> {
    let q = a.norm() / lambda.norm();
    if q >= 1.0 {
        return Err(Error::NormTooLarge { norm: q });
    }
    let scaled = a.scale(lambda.inv());
    let (_, sum) = NeumannSeries::new(&scaled)
        .take(terms.max(1))
        .last()
        .expect("at least one term");
    let tail = q.powi(terms.max(1) as i32) / ((1.0 - q) * lambda.norm());
    Ok((sum.scale(lambda.inv()), tail))
}

/// `max |φ(a)|` over all characters.
pub fn spectral_radius_exact(a: &Element) -> f64 {
    a.coords().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusEstimate {
    pub estimate: f64,
    /// `trace[k] = ‖a^(2^k)‖^(1/2^k)` for `k = 0..=n_max`.
    pub trace: Vec<f64>,
}

/// Spectral radius as the limit of `‖a^(2^k)‖^(1/2^k)` by successive squaring.
///
/// Fails with [`Error::Overflow`] when a power leaves the floating-point
/// range, in either direction; [`spectral_radius_limit_rescaled`] avoids this.
pub fn spectral_radius_limit(a: &Element, n_max: usize) -> Result<RadiusEstimate> {
    let mut power = a.clone();
    let mut trace = Vec::with_capacity(n_max + 1);
    let mut exponent = 1.0f64;
    for step in 0..=n_max {
        if step > 0 {
            power = power.mul(&power)?;
            exponent *= 2.0;
        }
        let norm = power.norm();
        let prev_nonzero = trace.last().is_none_or(|&t: &f64| t > 0.0);
        if !norm.is_finite() || (norm == 0.0 && prev_nonzero && step > 0) {
            return Err(Error::Overflow { step });
        }
        trace.push(norm.powf(exponent.recip()));
    }
    Ok(RadiusEstimate {
        estimate: *trace.last().expect("n_max + 1 entries"),
        trace,
    })
}

/// `‖a‖ · r(a/‖a‖)` so that the powers stay in range.
pub fn spectral_radius_limit_rescaled(a: &Element, n_max: usize) -> Result<RadiusEstimate> {
    let s = a.norm();
    if s == 0.0 {
        return Ok(RadiusEstimate {
            estimate: 0.0,
            trace: vec![0.0; n_max + 1],
        });
    }
    let mut est = spectral_radius_limit(&a.scale(Complex64::new(s.recip(), 0.0)), n_max)?;
    est.estimate *= s;
    est.trace.iter_mut().for_each(|t| *t *= s);
    Ok(est)
}

// ---------------------------------------------------------------------------
// Raw matrices

/// Largest singular value, as `sqrt(r(M*M))`.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let gram = (&gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(gram);
    eig.eigenvalues.iter().copied().fold(0.0, f64::max).sqrt()
}

/// Successive-squaring radius estimate for an arbitrary square matrix.
///
/// Each power is renormalised to unit operator norm and the scale is carried
/// in log form, so no overflow can occur.
pub fn matrix_radius_limit(m: &DMatrix<Complex64>, n_max: usize) -> RadiusEstimate {
    let mut trace = Vec::with_capacity(n_max + 1);
    let norm = operator_norm(m);
    trace.push(norm);
    if norm == 0.0 {
        trace.resize(n_max + 1, 0.0);
        return RadiusEstimate { estimate: 0.0, trace };
    }
    let mut log_scale = norm.ln();
    let mut unit_power = m * Complex64::new(norm.recip(), 0.0);
    let mut exponent = 1.0f64;
    for _ in 1..=n_max {
        let sq = &unit_power * &unit_power;
        let nb = operator_norm(&sq);
        exponent *= 2.0;
        if nb == 0.0 {
            trace.resize(n_max + 1, 0.0);
            break;
        }
        log_scale = 2.0 * log_scale + nb.ln();
        unit_power = sq * Complex64::new(nb.recip(), 0.0);
        trace.push((log_scale / exponent).exp());
    }
    RadiusEstimate {
        estimate: *trace.last().expect("non-empty"),
        trace,
    }
}

// ---------------------------------------------------------------------------
// Functional calculus

/// `p(a)` for `p(z) = c₀ + c₁z + ... + c_d z^d` (ascending coefficients), by Horner's rule.
pub fn apply_polynomial(coefficients: &[Complex64], a: &Element) -> Element {
    let algebra = a.algebra();
    let mut acc = algebra.zero();
    for &c in coefficients.iter().rev() {
        acc = acc
            .mul(a)
            .and_then(|x| x.add(&algebra.constant(c)))
            .expect("same algebra");
    }
    acc
}

/// Evaluates a complex polynomial (ascending coefficients) at a scalar.
pub fn eval_polynomial(coefficients: &[Complex64], z: Complex64) -> Complex64 {
    coefficients
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Continuous functional calculus: the element whose character values are `g(φ(a))`.
///
/// A non-finite value of `g` at a spectrum point is reported as a domain error.
pub fn apply_function(a: &Element, g: impl Fn(Complex64) -> Complex64) -> Result<Element> {
    let mut coords = Vec::with_capacity(a.coords().len());
    for &z in a.coords() {
        let w = g(z);
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::DomainError { point: z });
        }
        coords.push(w);
    }
    a.algebra().element(coords)
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ClassFlags {
    pub self_adjoint: bool,
    pub unitary: bool,
    pub projection: bool,
    pub positive: bool,
}

/// Per-class numbers: identity defects or spectrum-containment distances.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ClassMeasures {
    pub self_adjoint: f64,
    pub unitary: f64,
    pub projection: f64,
    pub positive: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub flags: ClassFlags,
    /// Defect of each defining identity: `‖a − a*‖`, `‖a*a − e‖`,
    /// `max(‖a² − a‖, ‖a − a*‖)`, `‖bb* − a‖` (infinite without a witness).
    pub witness_tolerances: ClassMeasures,
    /// Largest distance of a spectrum point from ℝ, S¹, {0,1} and [0, ∞).
    pub containment: ClassMeasures,
    /// `b` with `bb* = a`, when `a` is positive.
    pub positivity_witness: Option<Element>,
    /// First character value that rules out positivity.
    pub offending_value: Option<Complex64>,
}

fn dist_to_nonneg_reals(z: Complex64) -> f64 {
    if z.re >= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

pub fn classify_element(a: &Element, tol: f64) -> ClassificationReport {
    let unit = a.algebra().unit();
    let star = a.star();
    let sa_defect = a.distance(&star).expect("same algebra");
    let unitary_defect = star.mul(a).and_then(|x| x.sub(&unit)).expect("same algebra").norm();
    let idem_defect = a.mul(a).and_then(|x| x.sub(a)).expect("same algebra").norm();
    let proj_defect = idem_defect.max(sa_defect);

    let offending_value = a
        .coords()
        .iter()
        .copied()
        .find(|z| z.im.abs() > tol || z.re < -tol);
    let (positivity_witness, pos_defect) = if offending_value.is_some() {
        (None, f64::INFINITY)
    } else {
        let b = a.map(|z| z.sqrt());
        let defect = b.mul(&b.star()).and_then(|x| x.sub(a)).expect("same algebra").norm();
        (Some(b), defect)
    };

    let sigma = a.coords();
    let worst = |f: &dyn Fn(Complex64) -> f64| sigma.iter().map(|&z| f(z)).fold(0.0, f64::max);
    let containment = ClassMeasures {
        self_adjoint: worst(&|z| z.im.abs()),
        unitary: worst(&|z| (z.norm() - 1.0).abs()),
        projection: worst(&|z| z.norm().min((z - 1.0).norm())),
        positive: worst(&dist_to_nonneg_reals),
    };

    let self_adjoint = sa_defect <= tol;
    let flags = ClassFlags {
        self_adjoint,
        unitary: unitary_defect <= tol,
        projection: self_adjoint && idem_defect <= tol,
        positive: pos_defect <= tol,
    };
    ClassificationReport {
        flags,
        witness_tolerances: ClassMeasures {
            self_adjoint: sa_defect,
            unitary: unitary_defect,
            projection: proj_defect,
            positive: pos_defect,
        },
        containment,
        positivity_witness: if flags.positive { positivity_witness } else { None },
        offending_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::space::FiniteSpace;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fa(n: usize) -> Algebra {
        Algebra::functions(FiniteSpace::indexed("x", n).unwrap())
    }

    #[test]
    fn spectrum_set_dedups_and_orders() {
        let s = SpectrumSet::from_values([c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0 + 1e-12), c(-1.0, 0.0)], 1e-9).unwrap();
        assert_eq!(s.points(), &[c(-1.0, 0.0), c(0.0, 2.0), c(1.0, 0.0)]);
        assert!(matches!(SpectrumSet::from_values([], 1e-9), Err(Error::EmptySpectrum)));
    }

    #[test]
    fn hausdorff_of_shifted_sets() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)];
        assert_eq!(hausdorff_distance(&a, &b), 2.0);
        assert_eq!(hausdorff_distance(&a, &a), 0.0);
    }

    #[test]
    fn neumann_of_zero_is_unit_in_one_term() {
        let a = fa(2).zero();
        let (inv, rep) = neumann_inverse(&a, 1e-12, 10).unwrap();
        assert_eq!(inv, fa(2).unit());
        assert_eq!(rep.terms_used, 1);
        assert_eq!(rep.residual, 0.0);
    }

    #[test]
    fn neumann_rejects_large_norm_and_reports_unconverged() {
        let alg = fa(2);
        assert!(matches!(
            neumann_inverse(&alg.from_real(&[1.0, 0.0]).unwrap(), 1e-9, 100),
            Err(Error::NormTooLarge { .. })
        ));
        match neumann_inverse(&alg.from_real(&[0.9, 0.0]).unwrap(), 1e-12, 5) {
            Err(Error::Unconverged { best, report }) => {
                assert_eq!(report.terms_used, 5);
                assert_eq!(best.coords()[1], c(1.0, 0.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perturbation_errors() {
        let alg = fa(2);
        let a = alg.from_real(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            perturbation_inverse(&a, &alg.unit(), 1e-9, 100),
            Err(Error::NotInvertible { index: 1, .. })
        ));
        let a = alg.from_real(&[2.0, 2.0]).unwrap();
        let b = alg.from_real(&[2.0, -1.0]).unwrap();
        assert!(matches!(
            perturbation_inverse(&a, &b, 1e-9, 100),
            Err(Error::PerturbationTooLarge { .. })
        ));
    }

    #[test]
    fn resolvent_hits_spectrum() {
        let a = fa(2).from_real(&[1.0, 2.0]).unwrap();
        assert!(matches!(
            resolvent(&a, c(2.0, 1e-12), 1e-9),
            Err(Error::SpectrumHit { .. })
        ));
    }

    #[test]
    fn radius_limit_overflow_and_rescale() {
        let a = fa(2).from_real(&[3.0, 1.0]).unwrap();
        assert!(matches!(spectral_radius_limit(&a, 20), Err(Error::Overflow { .. })));
        let est = spectral_radius_limit_rescaled(&a, 20).unwrap();
        assert!((est.estimate - 3.0).abs() < 1e-12);
        let z = spectral_radius_limit(&fa(3).zero(), 4).unwrap();
        assert_eq!(z.estimate, 0.0);
    }

    #[test]
    fn nilpotent_norm_versus_radius() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((operator_norm(&m) - 1.0).abs() < 1e-14);
        assert_eq!(matrix_radius_limit(&m, 5).estimate, 0.0);
    }

    #[test]
    fn function_domain_error() {
        let a = fa(2).from_real(&[0.0, 1.0]).unwrap();
        assert!(matches!(
            apply_function(&a, |z| z.inv()),
            Err(Error::DomainError { point }) if point == c(0.0, 0.0)
        ));
    }

    #[test]
    fn negative_value_is_offending() {
        let a = fa(3).from_real(&[4.0, -2.0, 1.0]).unwrap();
        let r = classify_element(&a, 1e-9);
        assert!(!r.flags.positive && r.flags.self_adjoint);
        assert_eq!(r.offending_value, Some(c(-2.0, 0.0)));
        assert!(r.positivity_witness.is_none());
    }
}
