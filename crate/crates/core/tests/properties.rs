use cstar_core::duality::{functor_g_morphism, verify_naturality_mu, verify_naturality_tau};
use cstar_core::gelfand::{characters, gelfand_inverse, gelfand_transform};
use cstar_core::ideals::{closed_set_from_ideal, quotient, Ideal};
use cstar_core::sample;
use cstar_core::spectral::*;
use cstar_core::{Algebra, Complex64, ContinuousMap, Element, FiniteSpace};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn complex(scale: f64) -> impl Strategy<Value = Complex64> {
    (-scale..scale, -scale..scale).prop_map(|(re, im)| Complex64::new(re, im))
}

fn element_pair(scale: f64) -> impl Strategy<Value = (Element, Element)> {
    (1usize..8).prop_flat_map(move |n| {
        (
            prop::collection::vec(complex(scale), n),
            prop::collection::vec(complex(scale), n),
        )
            .prop_map(move |(x, y)| {
                let alg = Algebra::functions(FiniteSpace::indexed("x", n).unwrap());
                (alg.element(x).unwrap(), alg.element(y).unwrap())
            })
    })
}

fn normal_algebra_element() -> impl Strategy<Value = Element> {
    (1usize..7, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = sample::normal_matrix(&mut rng, n, 2.0, 0.25);
        let alg = Algebra::normal(m).unwrap();
        sample::element(&mut rng, &alg, 2.0)
    })
}

proptest! {
    #[test]
    fn c_star_identity_and_isometric_involution((a, _) in element_pair(10.0)) {
        let n = a.norm();
        let lhs = a.star().mul(&a).unwrap().norm();
        prop_assert!((lhs - n * n).abs() <= 1e-12 * (1.0 + n * n));
        prop_assert_eq!(a.star().norm(), n);
    }

    #[test]
    fn submultiplicative((a, b) in element_pair(10.0)) {
        prop_assert!(a.mul(&b).unwrap().norm() <= a.norm() * b.norm() + 1e-12);
    }

    #[test]
    fn matrix_model_ops_commute_with_materialisation(a in normal_algebra_element(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let b = sample::element(&mut rng, a.algebra(), 2.0);
        let (ma, mb) = (a.materialize().unwrap(), b.materialize().unwrap());
        let prod = a.mul(&b).unwrap().materialize().unwrap();
        let sum = a.add(&b).unwrap().materialize().unwrap();
        let star = a.star().materialize().unwrap();
        prop_assert!((prod - &ma * &mb).norm() <= 1e-9);
        prop_assert!((sum - (&ma + &mb)).norm() <= 1e-9);
        prop_assert!((star - ma.adjoint()).norm() <= 1e-9);
    }

    #[test]
    fn character_values_bounded_by_norm((a, _) in element_pair(5.0)) {
        for phi in characters(a.algebra()).characters() {
            prop_assert!(phi.evaluate(&a).unwrap().norm() <= a.norm());
        }
        for z in spectrum(&a, 1e-9).points() {
            prop_assert!(z.norm() <= a.norm() + 1e-12);
        }
    }

    #[test]
    fn homomorphisms_contract(n in 1usize..6, m in 1usize..6, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let x = FiniteSpace::indexed("x", n).unwrap();
        let y = FiniteSpace::indexed("y", m).unwrap();
        let phi = functor_g_morphism(&sample::map(&mut rng, &y, &x));
        let a = sample::element(&mut rng, phi.source(), 3.0);
        let image = phi.apply(&a).unwrap();
        prop_assert!(image.norm() <= a.norm());
        prop_assert_eq!(phi.apply(&phi.source().unit()).unwrap(), phi.target().unit());
    }

    #[test]
    fn invertible_group_is_open((a, d) in element_pair(3.0), t in 0.0f64..0.999) {
        prop_assume!(is_invertible(&a, 1e-6));
        let radius = 1.0 / inverse(&a).unwrap().norm();
        let dn = d.norm();
        prop_assume!(dn > 0.0);
        let b = a.add(&d.scale(Complex64::new(t * radius / (2.0 * dn), 0.0))).unwrap();
        prop_assert!(is_invertible(&b, default_invertibility_tol(&b)));
    }

    #[test]
    fn neumann_tail_bound((a, _) in element_pair(0.6)) {
        prop_assume!(a.norm() < 0.95);
        let exact = inverse(&a.algebra().unit().sub(&a).unwrap()).unwrap();
        let q = a.norm();
        for (terms, sum) in NeumannSeries::new(&a).take(40) {
            let err = sum.distance(&exact).unwrap();
            prop_assert!(err <= q.powi(terms as i32) / (1.0 - q) + 1e-12);
        }
    }

    #[test]
    fn gelfand_is_isometric_star_isomorphism((a, b) in element_pair(10.0)) {
        let (ah, bh) = (gelfand_transform(&a), gelfand_transform(&b));
        prop_assert_eq!(gelfand_transform(&a.mul(&b).unwrap()), ah.mul(&bh).unwrap());
        prop_assert_eq!(gelfand_transform(&a.star()), ah.star());
        prop_assert_eq!(ah.norm(), a.norm());
        prop_assert_eq!(ah.norm(), spectral_radius_exact(&a));
        prop_assert_eq!(gelfand_inverse(&ah, a.algebra()).unwrap(), a);
    }

    #[test]
    fn closed_sets_round_trip(n in 1usize..9, mask in any::<u16>()) {
        let alg = Algebra::functions(FiniteSpace::indexed("x", n).unwrap());
        let y: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let ideal = Ideal::from_zero_set(&alg, y.iter().copied()).unwrap();
        prop_assert_eq!(closed_set_from_ideal(&ideal).into_iter().collect::<Vec<_>>(), y.clone());
        prop_assert_eq!(ideal.dim(), n - y.len());
    }

    #[test]
    fn quotient_norm_is_the_infimum(n in 2usize..8, mask in 1u16..255, seed in any::<u64>()) {
        let alg = Algebra::functions(FiniteSpace::indexed("x", n).unwrap());
        let y: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!y.is_empty());
        let ideal = Ideal::from_zero_set(&alg, y).unwrap();
        let (q, pi) = quotient(&ideal).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let a = sample::element(&mut rng, &alg, 4.0);
        let qn = q.quotient_norm(&a).unwrap();
        // every coset representative is at least as large, and the optimum is attained
        for _ in 0..20 {
            let g = sample::element(&mut rng, &alg, 4.0);
            let g_in_i = {
                let coords = g.coords().iter().enumerate()
                    .map(|(k, &z)| if ideal.zero_set().contains(&k) { Complex64::new(0.0, 0.0) } else { z })
                    .collect();
                alg.element(coords).unwrap()
            };
            prop_assert!(q.coset_norm(&a, &g_in_i, 0.0).unwrap() >= qn);
        }
        let best = q.best_correction(&a).unwrap();
        prop_assert_eq!(q.coset_norm(&a, &best, 0.0).unwrap(), qn);
        let class = pi.apply(&a).unwrap();
        prop_assert_eq!(class.norm(), qn);
        let cs = class.star().mul(&class).unwrap().norm();
        prop_assert!((cs - qn * qn).abs() <= 1e-12 * (1.0 + qn * qn));
        prop_assert!(class.norm() <= a.norm());
    }

    #[test]
    fn random_squares_commute(n in 1usize..7, m in 1usize..7, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let x = FiniteSpace::indexed("x", n).unwrap();
        let y = FiniteSpace::indexed("y", m).unwrap();
        let f = sample::map(&mut rng, &x, &y);
        prop_assert!(verify_naturality_mu(&f, 1e-12).unwrap().commutes);
        prop_assert!(verify_naturality_tau(&functor_g_morphism(&f), 1e-12).unwrap().commutes);
    }

    #[test]
    fn norm_uniqueness_in_matrix_model(a in normal_algebra_element()) {
        let dense = a.materialize().unwrap();
        prop_assert!((operator_norm(&dense) - a.norm()).abs() <= 1e-8);
    }
}

#[test]
fn identity_map_matrix_squares() {
    let m = DMatrix::from_row_slice(2, 2, &[
        Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0),
        Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0),
    ]);
    let alg = Algebra::normal(m).unwrap();
    let id = cstar_core::StarHomomorphism::identity(&alg);
    assert!(verify_naturality_tau(&id, 0.0).unwrap().commutes);
    let labels = alg.character_labels();
    assert_eq!(ContinuousMap::identity(&labels).assignment(), &[0, 1]);
}
