//! The contravariant functors between finite spaces and finite-dimensional
//! commutative unital C*-algebras, their unit/counit transformations, and
//! extensional checks that they form an equivalence.
//!
//! * `F(A) = Â`, `F(φ)(ψ) = ψ ∘ φ`
//! * `G(X) = C(X)`, `G(h)(g) = g ∘ h`
//! * `τ(A): A → C(Â)`, `a ↦ â`
//! * `μ(X): X → Â` for `A = C(X)`, `x ↦ e_x`

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::gelfand::{characters, gelfand_inverse, gelfand_transform, identify_character, transform_algebra};
use crate::morphism::StarHomomorphism;
use crate::space::{ContinuousMap, FiniteSpace};

/// Default tolerance used to recognise composite functionals as characters.
pub const CHARACTER_TOL: f64 = 1e-10;

/// One checked law on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub instance: String,
    pub defect: f64,
    pub pass: bool,
}

impl LawCheck {
    pub fn new(law: impl Into<String>, instance: impl Into<String>, defect: f64, tol: f64) -> Self {
        Self {
            law: law.into(),
            instance: instance.into(),
            defect,
            pass: defect <= tol,
        }
    }

    /// A yes/no law: defect 0 when it holds, 1 when it does not.
    pub fn exact(law: impl Into<String>, instance: impl Into<String>, holds: bool) -> Self {
        Self {
            law: law.into(),
            instance: instance.into(),
            defect: if holds { 0.0 } else { 1.0 },
            pass: holds,
        }
    }
}

pub fn functor_f_object(algebra: &Algebra) -> FiniteSpace {
    characters(algebra).as_space()
}

/// `F(φ): B̂ → Â`, `ψ ↦ ψ ∘ φ`.
///
/// Each composite is evaluated on the indicator basis of the source and
/// recognised as a character; failure means `φ` was not a *-homomorphism.
pub fn functor_f_morphism(phi: &StarHomomorphism) -> Result<ContinuousMap> {
    let source = phi.source();
    let target = phi.target();
    let images: Vec<Element> = source.basis().iter().map(|e| phi.apply(e)).collect::<Result<_>>()?;
    let assignment = characters(target)
        .characters()
        .iter()
        .map(|psi| {
            let values: Vec<_> = images.iter().map(|img| psi.evaluate(img)).collect::<Result<_>>()?;
            identify_character(source, &values, CHARACTER_TOL)
        })
        .collect::<Result<Vec<_>>>()?;
    ContinuousMap::new(functor_f_object(target), functor_f_object(source), assignment)
}

pub fn functor_g_object(space: &FiniteSpace) -> Algebra {
    Algebra::functions(space.clone())
}

/// `G(h): C(Y) → C(X)`, `g ↦ g ∘ h`, for `h: X → Y`.
pub fn functor_g_morphism(h: &ContinuousMap) -> StarHomomorphism {
    StarHomomorphism::new(
        functor_g_object(h.target()),
        functor_g_object(h.source()),
        h.assignment().to_vec(),
    )
    .expect("a total map gives a valid pullback")
}

/// `τ(A): A → C(Â)`, assembled from the transforms of the basis.
pub fn tau(algebra: &Algebra) -> StarHomomorphism {
    let images: Vec<Element> = algebra.basis().iter().map(gelfand_transform).collect();
    StarHomomorphism::from_basis_images(algebra.clone(), transform_algebra(algebra), &images, 0.0)
        .expect("the Gelfand transform is a unital *-homomorphism")
}

/// `μ(X): X → F(G(X))`, `x ↦ e_x`, found by probing indicator functions.
pub fn mu(space: &FiniteSpace) -> Result<ContinuousMap> {
    let algebra = functor_g_object(space);
    let chars = characters(&algebra);
    let assignment = (0..space.len())
        .map(|x| {
            let probe = algebra.indicator(x);
            let hits: Vec<usize> = chars
                .characters()
                .iter()
                .filter(|phi| phi.evaluate(&probe).map(|v| v == 1.0.into()).unwrap_or(false))
                .map(|phi| phi.index())
                .collect();
            match hits.as_slice() {
                [k] => Ok(*k),
                _ => Err(Error::DualityViolation(format!(
                    "point {} is detected by {} characters",
                    space.label(x),
                    hits.len()
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let map = ContinuousMap::new(space.clone(), chars.as_space(), assignment)?;
    if !map.is_bijective() {
        return Err(Error::DualityViolation("μ is not a bijection".into()));
    }
    Ok(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareKind {
    Tau,
    Mu,
}

impl fmt::Display for SquareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareKind::Tau => "tau",
            SquareKind::Mu => "mu",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NaturalitySquareReport {
    pub kind: SquareKind,
    pub morphism: String,
    pub max_defect: f64,
    pub commutes: bool,
}

impl NaturalitySquareReport {
    pub fn to_check(&self) -> LawCheck {
        LawCheck {
            law: format!("naturality_{}", self.kind),
            instance: self.morphism.clone(),
            defect: self.max_defect,
            pass: self.commutes,
        }
    }
}

fn describe_hom(phi: &StarHomomorphism) -> String {
    format!(
        "dim {} -> dim {} via {:?}",
        phi.source().dim(),
        phi.target().dim(),
        phi.character_images()
    )
}

/// `G(F(φ)) ∘ τ(A)` against `τ(B) ∘ φ` on every basis element and character.
pub fn verify_naturality_tau(phi: &StarHomomorphism, tol: f64) -> Result<NaturalitySquareReport> {
    let g_f_phi = functor_g_morphism(&functor_f_morphism(phi)?);
    let tau_a = tau(phi.source());
    let tau_b = tau(phi.target());
    let mut max_defect: f64 = 0.0;
    for a in phi.source().basis() {
        let lhs = g_f_phi.apply(&tau_a.apply(&a)?)?;
        let rhs = tau_b.apply(&phi.apply(&a)?)?;
        for (x, y) in lhs.coords().iter().zip(rhs.coords()) {
            max_defect = max_defect.max((x - y).norm());
        }
    }
    Ok(NaturalitySquareReport {
        kind: SquareKind::Tau,
        morphism: describe_hom(phi),
        max_defect,
        commutes: max_defect <= tol,
    })
}

/// `F(G(f)) ∘ μ(X)` against `μ(Y) ∘ f`, compared as functionals on the
/// indicator basis of `C(Y)`.
pub fn verify_naturality_mu(f: &ContinuousMap, tol: f64) -> Result<NaturalitySquareReport> {
    let f_g_f = functor_f_morphism(&functor_g_morphism(f))?;
    let mu_x = mu(f.source())?;
    let mu_y = mu(f.target())?;
    let c_y = functor_g_object(f.target());
    let chars_y = characters(&c_y);
    let mut max_defect: f64 = 0.0;
    for x in 0..f.source().len() {
        let lhs = &chars_y.characters()[f_g_f.apply(mu_x.apply(x))];
        let rhs = &chars_y.characters()[mu_y.apply(f.apply(x))];
        for g in c_y.basis() {
            max_defect = max_defect.max((lhs.evaluate(&g)? - rhs.evaluate(&g)?).norm());
        }
    }
    Ok(NaturalitySquareReport {
        kind: SquareKind::Mu,
        morphism: format!("{} -> {} via {:?}", f.source().len(), f.target().len(), f.assignment()),
        max_defect,
        commutes: max_defect <= tol,
    })
}

/// `F(1) = 1` and `F(φ ∘ ρ) = F(ρ) ∘ F(φ)` for `ρ: A → B`, `φ: B → C`.
pub fn check_f_functor_laws(rho: &StarHomomorphism, phi: &StarHomomorphism) -> Result<Vec<LawCheck>> {
    let instance = format!("{} ; {}", describe_hom(rho), describe_hom(phi));
    let ident = functor_f_morphism(&StarHomomorphism::identity(rho.source()))?;
    let ident_ok = ident == ContinuousMap::identity(&functor_f_object(rho.source()));
    let composite = functor_f_morphism(&phi.after(rho)?)?;
    let expected = functor_f_morphism(rho)?.after(&functor_f_morphism(phi)?)?;
    Ok(vec![
        LawCheck::exact("functor_f_identity", instance.clone(), ident_ok),
        LawCheck::exact("functor_f_composition", instance, composite == expected),
    ])
}

/// `G(1) = 1` and `G(g ∘ h) = G(h) ∘ G(g)` for `h: X → Y`, `g: Y → Z`.
pub fn check_g_functor_laws(h: &ContinuousMap, g: &ContinuousMap) -> Result<Vec<LawCheck>> {
    let instance = format!("{:?} ; {:?}", h.assignment(), g.assignment());
    let ident = functor_g_morphism(&ContinuousMap::identity(h.source()));
    let ident_ok = ident == StarHomomorphism::identity(&functor_g_object(h.source()));
    let composite = functor_g_morphism(&g.after(h)?);
    let expected = functor_g_morphism(h).after(&functor_g_morphism(g))?;
    Ok(vec![
        LawCheck::exact("functor_g_identity", instance.clone(), ident_ok),
        LawCheck::exact("functor_g_composition", instance, composite == expected),
    ])
}

#[derive(Clone, Debug)]
pub enum Instance<'a> {
    Space(&'a FiniteSpace),
    Algebra(&'a Algebra),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub instance: String,
    pub checks: Vec<LawCheck>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Probe elements used to test τ beyond the basis: the unit, a generic
/// complex combination of the basis, and the generator for matrix algebras.
fn probe_elements(algebra: &Algebra) -> Vec<Element> {
    let generic: Vec<_> = (0..algebra.dim())
        .map(|k| {
            let t = k as f64 + 1.0;
            num_complex::Complex64::new(t.sin() * t, (0.5 * t).cos() - 0.3)
        })
        .collect();
    let mut probes = vec![algebra.unit(), algebra.element(generic).expect("dim entries")];
    probes.extend(algebra.generator());
    probes.extend(algebra.basis());
    probes
}

/// Extensional check that the unit or counit is an isomorphism on one instance.
///
/// For a space: μ is a bijection and `|F(G(X))| = |X|`. For an algebra: τ is
/// injective, surjective (dimension count and explicit inverse), isometric,
/// multiplicative and *-preserving.
pub fn verify_equivalence(instance: Instance<'_>, tol: f64) -> EquivalenceReport {
    match instance {
        Instance::Space(x) => {
            let name = format!("space |X|={}", x.len());
            let fg = functor_f_object(&functor_g_object(x));
            let bijective = mu(x).map(|m| m.is_bijective()).unwrap_or(false);
            EquivalenceReport {
                instance: name.clone(),
                checks: vec![
                    LawCheck::exact("mu_bijective", name.clone(), bijective),
                    LawCheck::exact("space_round_trip_size", name, fg.len() == x.len()),
                ],
            }
        }
        Instance::Algebra(a) => {
            let name = format!("{:?}", a.kind()).to_lowercase() + &format!(" dim={}", a.dim());
            let t = tau(a);
            let c_hat = transform_algebra(a);
            let mut iso: f64 = 0.0;
            let mut mult: f64 = 0.0;
            let mut star: f64 = 0.0;
            let mut round: f64 = 0.0;
            let probes = probe_elements(a);
            for x in &probes {
                let xh = gelfand_transform(x);
                iso = iso.max((xh.norm() - x.norm()).abs() / (1.0 + x.norm()));
                star = star.max(gelfand_transform(&x.star()).distance(&xh.star()).unwrap_or(f64::INFINITY));
                round = round.max(
                    gelfand_inverse(&xh, a)
                        .ok()
                        .and_then(|back| back.distance(x))
                        .unwrap_or(f64::INFINITY),
                );
                for y in &probes {
                    let lhs = gelfand_transform(&x.mul(y).expect("same algebra"));
                    let rhs = xh.mul(&gelfand_transform(y)).expect("same algebra");
                    mult = mult.max(lhs.distance(&rhs).unwrap_or(f64::INFINITY));
                }
            }
            let mut checks = vec![
                LawCheck::exact("tau_injective", name.clone(), t.is_injective()),
                LawCheck::exact("tau_surjective_dimension", name.clone(), c_hat.dim() == a.dim()),
                LawCheck::new("tau_round_trip", name.clone(), round, tol),
                LawCheck::new("tau_isometry", name.clone(), iso, tol),
                LawCheck::new("tau_multiplicative", name.clone(), mult, tol),
                LawCheck::new("tau_star", name.clone(), star, tol),
            ];
            if let Some(na) = a.as_normal() {
                let n = na.generator();
                let gen = a.generator().expect("matrix algebra");
                let rebuilt = gen.materialize().expect("matrix algebra");
                let defect = (rebuilt - n).norm() / (1.0 + n.norm());
                // transform of the generator is the identity function on the spectrum
                let ident = gelfand_transform(&gen)
                    .coords()
                    .iter()
                    .zip(na.distinct_spectrum().points())
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                checks.push(LawCheck::new("generator_reconstruction", name.clone(), defect, tol.max(1e-9)));
                checks.push(LawCheck::new("generator_transform_identity", name.clone(), ident, tol));
            }
            EquivalenceReport { instance: name, checks }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};
    use num_complex::Complex64;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::indexed("x", n).unwrap()
    }

    #[test]
    fn f_object_sizes() {
        assert_eq!(functor_f_object(&functor_g_object(&space(4))).len(), 4);
        assert_eq!(functor_f_object(&functor_g_object(&space(1))).len(), 1);
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        assert_eq!(functor_f_object(&Algebra::normal(m).unwrap()).len(), 2);
    }

    #[test]
    fn f_of_identity_and_restriction() {
        let a = functor_g_object(&space(3));
        let id = functor_f_morphism(&StarHomomorphism::identity(&a)).unwrap();
        assert_eq!(id, ContinuousMap::identity(&functor_f_object(&a)));

        let x = FiniteSpace::new(["1", "2", "3"]).unwrap();
        let y = x.subspace(&[0, 2]).unwrap();
        let incl = ContinuousMap::inclusion(&y, &x).unwrap();
        let restriction = functor_g_morphism(&incl);
        let back = functor_f_morphism(&restriction).unwrap();
        assert_eq!(back.assignment(), &[0, 2]);
    }

    #[test]
    fn g_of_constant_map() {
        let x = space(3);
        let y = space(2);
        let h = ContinuousMap::constant(&x, &y, 1).unwrap();
        let phi = functor_g_morphism(&h);
        let g = functor_g_object(&y).from_real(&[5.0, -7.0]).unwrap();
        assert!(phi.apply(&g).unwrap().coords().iter().all(|&v| v == Complex64::new(-7.0, 0.0)));
    }

    #[test]
    fn mu_sends_points_to_evaluations() {
        let x = space(5);
        let m = mu(&x).unwrap();
        assert!(m.is_bijective());
        let a = functor_g_object(&x);
        let chars = characters(&a);
        for i in 0..5 {
            let phi = &chars.characters()[m.apply(i)];
            assert_eq!(phi.evaluate(&a.indicator(i)).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn identity_squares_have_zero_defect() {
        let a = functor_g_object(&space(3));
        let r = verify_naturality_tau(&StarHomomorphism::identity(&a), 1e-12).unwrap();
        assert!(r.commutes && r.max_defect == 0.0);
        let r = verify_naturality_mu(&ContinuousMap::identity(&space(3)), 1e-12).unwrap();
        assert!(r.commutes && r.max_defect == 0.0);
    }

    #[test]
    fn constant_map_mu_square() {
        let f = ContinuousMap::constant(&space(4), &space(3), 2).unwrap();
        let r = verify_naturality_mu(&f, 1e-12).unwrap();
        assert!(r.commutes);
    }

    #[test]
    fn equivalence_on_small_instances() {
        for n in 1..=6 {
            assert!(verify_equivalence(Instance::Space(&space(n)), 1e-10).passed());
            assert!(verify_equivalence(Instance::Algebra(&functor_g_object(&space(n))), 1e-10).passed());
        }
    }
}
