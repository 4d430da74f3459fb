//! The `verify` suite: duality, ideal correspondence and spectral laws,
//! aggregated per law name.

use std::collections::BTreeMap;

use cstar_core::duality::{
    check_f_functor_laws, check_g_functor_laws, functor_g_morphism, functor_g_object, verify_equivalence,
    verify_naturality_mu, verify_naturality_tau, Instance, LawCheck,
};
use cstar_core::gelfand::{characters, gelfand_inverse, gelfand_transform};
use cstar_core::ideals::{closed_set_from_ideal, max_ideals, quotient, zariski_v, Ideal};
use cstar_core::sample;
use cstar_core::spectral::{
    apply_polynomial, classify_element, eval_polynomial, neumann_inverse, operator_norm, spectral_radius_exact,
    spectral_radius_limit_rescaled, spectrum, SpectrumSet,
};
use cstar_core::{Algebra, ContinuousMap, Element, FiniteSpace, StarHomomorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_MORPHISMS: usize = 200;
const RANDOM_ELEMENTS: usize = 200;
const EXHAUSTIVE_MAPS: usize = 4;
const SUBSET_LIMIT: usize = 10;
const PAIR_LIMIT: usize = 7;

#[derive(Debug)]
struct Tally {
    cases: usize,
    defect: f64,
    worst: String,
    witness: Option<String>,
}

/// Aggregated outcome of one law.
#[derive(Debug, Clone, PartialEq)]
pub struct LawSummary {
    pub law: String,
    pub instance: String,
    pub defect: f64,
    pub pass: bool,
}

#[derive(Default)]
pub struct Suite {
    laws: BTreeMap<String, Tally>,
}

impl Suite {
    fn record(&mut self, check: LawCheck) {
        let tally = self.laws.entry(check.law).or_insert(Tally {
            cases: 0,
            defect: 0.0,
            worst: String::new(),
            witness: None,
        });
        tally.cases += 1;
        if check.defect > tally.defect || tally.worst.is_empty() {
            tally.defect = tally.defect.max(check.defect);
            tally.worst = check.instance.clone();
        }
        // the first failure in enumeration order is the smallest
        if !check.pass && tally.witness.is_none() {
            tally.witness = Some(check.instance);
        }
    }

    fn measured(&mut self, law: &str, instance: impl Into<String>, defect: f64, tol: f64) {
        self.record(LawCheck::new(law, instance, defect, tol));
    }

    fn exact(&mut self, law: &str, instance: impl Into<String>, holds: bool) {
        self.record(LawCheck::exact(law, instance, holds));
    }

    pub fn summaries(&self) -> Vec<LawSummary> {
        self.laws
            .iter()
            .map(|(law, t)| LawSummary {
                law: law.clone(),
                instance: match &t.witness {
                    Some(w) => w.clone(),
                    None => format!("{} cases", t.cases),
                },
                defect: t.defect,
                pass: t.witness.is_none(),
            })
            .collect()
    }
}

fn space(n: usize) -> FiniteSpace {
    FiniteSpace::indexed("x", n).expect("n >= 1")
}

fn describe(f: &ContinuousMap) -> String {
    format!("{} -> {} via {:?}", f.source().len(), f.target().len(), f.assignment())
}

fn duality(suite: &mut Suite, rng: &mut ChaCha8Rng, max_size: usize, tol: f64) {
    for n in 1..=max_size {
        let x = space(n);
        for report in [
            verify_equivalence(Instance::Space(&x), tol),
            verify_equivalence(Instance::Algebra(&functor_g_object(&x)), tol),
        ] {
            report.checks.into_iter().for_each(|c| suite.record(c));
        }
    }

    let limit = max_size.min(EXHAUSTIVE_MAPS);
    for n in 1..=limit {
        for m in 1..=limit {
            for code in 0..m.pow(n as u32) {
                let assignment = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                let f = ContinuousMap::new(space(n), FiniteSpace::indexed("y", m).unwrap(), assignment)
                    .expect("valid assignment");
                naturality(suite, &f, tol);
            }
        }
    }

    for _ in 0..RANDOM_MORPHISMS {
        let x = sample::space(rng, max_size);
        let y = sample::space(rng, max_size);
        let z = sample::space(rng, max_size);
        let h = sample::map(rng, &x, &y);
        let g = sample::map(rng, &y, &z);
        for check in check_g_functor_laws(&h, &g).expect("composable") {
            suite.record(check);
        }
        for check in check_f_functor_laws(&functor_g_morphism(&g), &functor_g_morphism(&h)).expect("composable") {
            suite.record(check);
        }
        naturality(suite, &h, tol);

        let a = normal_algebra(rng, max_size);
        let b = normal_algebra(rng, max_size);
        let images = (0..b.dim()).map(|_| rng.random_range(0..a.dim())).collect();
        let hom = StarHomomorphism::new(a, b, images).expect("valid point map");
        match verify_naturality_tau(&hom, tol) {
            Ok(r) => suite.record(r.to_check()),
            Err(e) => suite.exact("naturality_tau", e.to_string(), false),
        }
    }

    for _ in 0..RANDOM_MORPHISMS / 4 {
        let a = normal_algebra(rng, max_size);
        verify_equivalence(Instance::Algebra(&a), tol).checks.into_iter().for_each(|c| suite.record(c));
    }
}

fn naturality(suite: &mut Suite, f: &ContinuousMap, tol: f64) {
    match verify_naturality_mu(f, tol) {
        Ok(r) => suite.record(r.to_check()),
        Err(e) => suite.exact("naturality_mu", format!("{}: {e}", describe(f)), false),
    }
    match verify_naturality_tau(&functor_g_morphism(f), tol) {
        Ok(r) => suite.record(r.to_check()),
        Err(e) => suite.exact("naturality_tau", format!("{}: {e}", describe(f)), false),
    }
}

fn normal_algebra(rng: &mut ChaCha8Rng, max_size: usize) -> Algebra {
    let n = rng.random_range(1..=max_size.min(12));
    Algebra::normal(sample::normal_matrix(rng, n, 2.0, 0.25)).expect("sampled matrices are normal")
}

fn ideals(suite: &mut Suite, max_size: usize, tol: f64) {
    for n in 1..=max_size.min(SUBSET_LIMIT) {
        let alg = Algebra::functions(space(n));
        let all: Vec<Ideal> = (0..1usize << n)
            .map(|mask| Ideal::from_zero_set(&alg, (0..n).filter(|k| mask >> k & 1 == 1)).expect("in range"))
            .collect();
        for (mask, ideal) in all.iter().enumerate() {
            let back = closed_set_from_ideal(ideal);
            let expected: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            suite.exact(
                "ideal_closed_set_round_trip",
                format!("|X|={n} Y={expected:?}"),
                back.into_iter().eq(expected.iter().copied()),
            );
        }

        let probe = alg.element((0..n).map(|k| cstar_core::Complex64::new(k as f64 - 1.5, 0.5)).collect()).unwrap();
        for m in max_ideals(&alg) {
            let instance = format!("|X|={n} point {}", m.point());
            let (q, pi) = quotient(m.ideal()).expect("maximal ideals are proper");
            suite.exact("maximal_quotient_dimension_one", instance.clone(), q.dim() == 1);
            let value = characters(&alg).characters()[m.point()].evaluate(&probe).expect("same algebra");
            let class = pi.apply(&probe).expect("same algebra");
            suite.measured("maximal_quotient_isometric", instance, (class.norm() - value.norm()).abs(), tol);
        }

        if n <= PAIR_LIMIT {
            let v = |i: &Ideal| zariski_v(i).iter().map(|m| m.point()).collect::<Vec<_>>();
            suite.exact("zariski_v_zero", format!("|X|={n}"), v(&Ideal::zero(&alg)) == (0..n).collect::<Vec<_>>());
            suite.exact("zariski_v_whole", format!("|X|={n}"), v(&Ideal::whole(&alg)).is_empty());
            for (i, a) in all.iter().enumerate() {
                for b in &all[i..] {
                    let (va, vb) = (v(a), v(b));
                    let union: Vec<usize> = (0..n).filter(|k| va.contains(k) || vb.contains(k)).collect();
                    let meet: Vec<usize> = (0..n).filter(|k| va.contains(k) && vb.contains(k)).collect();
                    let instance = || format!("|X|={n} Z(I)={:?} Z(J)={:?}", a.zero_set(), b.zero_set());
                    let cap = v(&a.intersection(b).expect("same algebra"));
                    let sum = v(&a.sum(b).expect("same algebra"));
                    if cap != union || sum != meet {
                        suite.exact("zariski_closed_sets", instance(), false);
                    } else {
                        suite.exact("zariski_closed_sets", format!("|X|={n}"), true);
                    }
                }
            }
        }
    }
}

fn any_algebra(rng: &mut ChaCha8Rng, max_size: usize) -> Algebra {
    if rng.random_bool(0.5) {
        Algebra::functions(sample::space(rng, max_size))
    } else {
        normal_algebra(rng, max_size)
    }
}

fn describe_element(a: &Element) -> String {
    cstar_core::document::Document::from_element(a).to_json()
}

fn spectral(suite: &mut Suite, rng: &mut ChaCha8Rng, max_size: usize, tol: f64) {
    for _ in 0..RANDOM_ELEMENTS {
        let alg = any_algebra(rng, max_size);
        let a = sample::element(rng, &alg, 2.0);
        let b = sample::element(rng, &alg, 2.0);
        let name = || describe_element(&a);
        let n2 = a.norm().powi(2);
        let cstar = (a.star().mul(&a).unwrap().norm() - n2).abs() / n2.max(f64::MIN_POSITIVE);
        suite.measured("c_star_identity", name(), cstar, tol);
        let sub = (a.mul(&b).unwrap().norm() - a.norm() * b.norm()).max(0.0);
        suite.measured("submultiplicative", name(), sub, tol);

        let p = sample::polynomial(rng, 5, 1.0);
        let lhs = spectrum(&apply_polynomial(&p, &a), tol);
        let rhs = spectrum(&a, tol).map(|z| eval_polynomial(&p, z));
        suite.measured("spectral_mapping", name(), lhs.hausdorff_distance(&rhs), tol);

        let small = sample::element_in_ball(rng, &alg, 0.9);
        match neumann_inverse(&small, tol * 1e-2, 100_000) {
            Ok((inv, _)) => {
                let unit = alg.unit();
                let residual = unit.sub(&small).unwrap().mul(&inv).unwrap().sub(&unit).unwrap().norm();
                suite.measured("neumann_residual", describe_element(&small), residual, tol);
            }
            Err(e) => suite.exact("neumann_residual", format!("{}: {e}", describe_element(&small)), false),
        }

        match spectral_radius_limit_rescaled(&a, 20) {
            Ok(est) => suite.measured("radius_formula", name(), (est.estimate - spectral_radius_exact(&a)).abs(), tol),
            Err(e) => suite.exact("radius_formula", format!("{}: {e}", name()), false),
        }
        suite.measured("radius_equals_norm", name(), (spectral_radius_exact(&a) - a.norm()).abs(), tol);

        let ah = gelfand_transform(&a);
        let round = gelfand_inverse(&ah, &alg).ok().and_then(|x| x.distance(&a)).unwrap_or(f64::INFINITY);
        suite.measured("gelfand_round_trip", name(), round, tol);
        suite.measured("gelfand_isometry", name(), (ah.norm() - a.norm()).abs(), tol);
        let values = SpectrumSet::from_values(
            characters(&alg).characters().iter().map(|phi| phi.evaluate(&a).unwrap()),
            tol,
        )
        .expect("non-empty");
        suite.measured("spectrum_is_character_values", name(), spectrum(&a, tol).hausdorff_distance(&values), tol);

        if let Some(dense) = a.materialize() {
            let defect = (operator_norm(&dense) - a.norm()).abs() / (1.0 + a.norm());
            suite.measured("norm_uniqueness", name(), defect, tol);
        }

        for (class, x) in [
            ("self_adjoint", sample::self_adjoint(rng, &alg, 2.0)),
            ("unitary", sample::unitary_element(rng, &alg)),
            ("projection", sample::projection(rng, &alg)),
            ("positive", sample::positive(rng, &alg, 2.0)),
        ] {
            let r = classify_element(&x, tol);
            let (flag, containment) = match class {
                "self_adjoint" => (r.flags.self_adjoint, r.containment.self_adjoint),
                "unitary" => (r.flags.unitary, r.containment.unitary),
                "projection" => (r.flags.projection, r.containment.projection),
                _ => (r.flags.positive, r.containment.positive),
            };
            let law = format!("classification_{class}");
            let defect = if flag { containment } else { f64::INFINITY };
            suite.measured(&law, describe_element(&x), defect, tol);
        }
    }
}

/// Runs the whole suite deterministically for the given seed.
pub fn run(seed: u64, max_size: usize, tol: f64, extra: Option<&Element>) -> Suite {
    let mut suite = Suite::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    duality(&mut suite, &mut rng, max_size, tol);
    ideals(&mut suite, max_size, tol);
    spectral(&mut suite, &mut rng, max_size, tol);
    if let Some(a) = extra {
        verify_equivalence(Instance::Algebra(a.algebra()), tol)
            .checks
            .into_iter()
            .for_each(|c| suite.record(c));
    }
    suite
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_keep_the_first_witness() {
        let mut suite = Suite::default();
        suite.measured("law", "small", 0.5, 1.0);
        suite.measured("law", "first bad", 2.0, 1.0);
        suite.measured("law", "worse", 9.0, 1.0);
        let s = &suite.summaries()[0];
        assert!(!s.pass);
        assert_eq!(s.instance, "first bad");
        assert_eq!(s.defect, 9.0);
    }

    #[test]
    fn small_suite_passes() {
        let suite = run(1, 3, 1e-9, None);
        let failed: Vec<_> = suite.summaries().into_iter().filter(|s| !s.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
