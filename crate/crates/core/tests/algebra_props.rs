mod common;

use common::{algebra_checks, element_distance, random_element, rng, Dense};
use grassmann_fcs::{GeneratorId, GrassmannElement, MeasureList, Monomial};
use proptest::prelude::*;

#[test]
fn ten_thousand_checks_against_dense_oracle() {
    let tally = algebra_checks(0x5eed, 2500);
    assert_eq!(tally.checks, 10_000);
    assert!(tally.worst <= 1e-9, "worst deviation {}", tally.worst);
}

#[test]
fn oracle_sign_conventions() {
    // t2 t1 = -t1 t2 and conjugation reverses order
    assert_eq!(Dense::sort_word(&[2, 0]), Some((-1.0, 0b101)));
    let t1t2 = GrassmannElement::product_of(1.0, &[GeneratorId::theta(1), GeneratorId::theta(2)]);
    let expected = GrassmannElement::product_of(1.0, &[GeneratorId::theta_conj(2), GeneratorId::theta_conj(1)]);
    assert_eq!(t1t2.conjugate(), expected);
    let pair = GrassmannElement::product_of(1.0, &[GeneratorId::theta_conj(1), GeneratorId::theta(1)]);
    let body = Dense::from_element(&pair).integrate(&[GeneratorId::theta_conj(1), GeneratorId::theta(1)]);
    assert_eq!(body.to_element(), GrassmannElement::scalar(-1.0));
}

#[test]
fn top_degree_integral_is_the_top_coefficient() {
    let mut r = rng(7);
    let m = MeasureList::full(2).unwrap();
    for _ in 0..200 {
        let a = random_element(&mut r, 2, 10);
        let top = Monomial::from_bits(0b1111);
        let lib = a.berezin_integrate(&m);
        let only_top = GrassmannElement::term(top, a.coefficient(top)).berezin_integrate(&m);
        assert!(element_distance(&lib, &only_top) < 1e-12);
        assert!(lib.degree() == 0);
    }
}

fn element(modes: u32) -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0u16..(1 << (2 * modes)), -1.0f64..1.0, -1.0f64..1.0), 1..6).prop_map(|terms| {
        GrassmannElement::from_terms(
            terms
                .into_iter()
                .map(|(m, re, im)| (Monomial::from_bits(m), num_complex::Complex64::new(re, im))),
        )
    })
}

fn even_nilpotent(modes: u32) -> impl Strategy<Value = GrassmannElement> {
    element(modes).prop_map(|e| {
        GrassmannElement::from_terms(e.terms().filter(|(m, _)| m.degree() % 2 == 0 && m.degree() > 0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distributes_over_linear_combination(a in element(3), b in element(3), d in element(3), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let lhs = &a * &GrassmannElement::linear_combine(x, &b, y, &d);
        let rhs = GrassmannElement::linear_combine(x, &(&a * &b), y, &(&a * &d));
        prop_assert!(element_distance(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn exp_of_even_sum_factorizes(a in even_nilpotent(3), b in even_nilpotent(3)) {
        let lhs = &a.exp_nilpotent().unwrap() * &b.exp_nilpotent().unwrap();
        let rhs = (&a + &b).exp_nilpotent().unwrap();
        prop_assert!(element_distance(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn integration_removes_the_generator(a in element(3), bit in 0u32..6) {
        let g = common::generator_at(bit);
        let out = a.berezin_integrate(&MeasureList::new(vec![g]).unwrap());
        prop_assert!(out.terms().all(|(m, _)| !m.contains(g)));
    }

    #[test]
    fn grade_involution_flips_odd_part(a in element(3)) {
        let g = a.grade_involution();
        for (m, c) in a.terms() {
            let sign = if m.degree() % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((g.coefficient(m) - c * sign).norm() < 1e-15);
        }
    }
}
