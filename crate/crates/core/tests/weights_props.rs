mod common;

use common::{c, random_complex, random_element, rng, Dense};
use grassmann_fcs::corpus::cases;
use grassmann_fcs::weights::{integrate_with_weight, solve_weight};
use grassmann_fcs::{coherent_ket, FermionLabel, GeneratorId, GrassmannElement, GrassmannState, MeasureList, QubitState};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

/// Integration through the dense oracle, ket by ket.
fn oracle_integrate(w: &GrassmannElement, s: &GrassmannState, m: &MeasureList) -> QubitState {
    let mut amps = vec![c(0.0, 0.0); 1 << s.qubits()];
    let dw = Dense::from_element(w);
    for (ket, amp) in s.iter() {
        let reduced = dw.mul(&Dense::from_element(amp)).integrate(m.factors());
        for (&mask, &v) in &reduced.0 {
            if mask == 0 {
                amps[ket.index() as usize] += v;
            } else {
                assert!(v.norm() < 1e-12, "measure leaves generator content");
            }
        }
    }
    QubitState::from_amplitudes(amps)
}

fn random_state(r: &mut StdRng, modes: u32, factors: usize) -> GrassmannState {
    let kets: Vec<GrassmannState> = (0..factors)
        .map(|_| {
            let g = GeneratorId::new(r.random_range(1..=modes), r.random_bool(0.3)).unwrap();
            coherent_ket(FermionLabel::new(random_complex(r), g))
        })
        .collect();
    kets.iter().skip(1).fold(kets[0].clone(), |acc, k| acc.tensor_product(k))
}

#[test]
fn integration_matches_dense_oracle() {
    let mut r = rng(11);
    for _ in 0..300 {
        let modes = r.random_range(1..=3);
        let factors = r.random_range(1..=3);
        let s = random_state(&mut r, modes, factors);
        let w = random_element(&mut r, modes, 8);
        let m = MeasureList::full(modes).unwrap();
        let lib = integrate_with_weight(&w, &s, &m).unwrap();
        let oracle = oracle_integrate(&w, &s, &m);
        assert!(lib.max_deviation(&oracle) < 1e-12);
    }
}

#[test]
fn absent_generators_enter_only_through_top_degree() {
    // the state uses mode 1, the measure covers modes 1 and 2
    let mut r = rng(12);
    let m = MeasureList::full(2).unwrap();
    let top2 = GrassmannElement::product_of(1.0, &[GeneratorId::theta_conj(2), GeneratorId::theta(2)]);
    for _ in 0..100 {
        let s = random_state(&mut r, 1, 2);
        let w = random_element(&mut r, 2, 12);
        // keep only monomials carrying all of mode 2
        let kept = GrassmannElement::from_terms(w.terms().filter(|(mono, _)| mono.bits() & 0b1100 == 0b1100));
        let lib = integrate_with_weight(&w, &s, &m).unwrap();
        assert!(lib.max_deviation(&integrate_with_weight(&kept, &s, &m).unwrap()) < 1e-12);
        assert!(lib.max_deviation(&oracle_integrate(&w, &s, &m)) < 1e-12);
        // the mode-2 pair integrates to -1 on its own
        let w1 = random_element(&mut r, 1, 4);
        let lifted = &w1 * &top2;
        let m1 = MeasureList::full(1).unwrap();
        let direct = integrate_with_weight(&w1, &s, &m1).unwrap().scale(c(-1.0, 0.0));
        assert!(integrate_with_weight(&lifted, &s, &m).unwrap().max_deviation(&direct) < 1e-12);
    }
}

#[test]
fn null_space_leaves_outputs_unchanged() {
    let mut r = rng(13);
    for case in cases() {
        let d = &case.document;
        let s = d.grassmann_state().unwrap();
        let m = d.effective_measure();
        let sol = solve_weight(&s, &d.target_state().unwrap(), &m).unwrap();
        let base = integrate_with_weight(&sol.particular, &s, &m).unwrap();
        for n in &sol.null_space {
            let shifted = &sol.particular + &n.scale(random_complex(&mut r));
            let out = integrate_with_weight(&shifted, &s, &m).unwrap();
            assert!(out.max_deviation(&base) < 1e-9, "{}", case.name);
        }
    }
}

#[test]
fn null_space_dimension_accounts_for_every_basis_monomial() {
    let d = grassmann_fcs::dsl::parse_document("state: |1:t1> (x) |-1:t1> - |-1:t1> (x) |1:t1>\ntarget: PsiMinus").unwrap();
    let m = d.effective_measure();
    let sol = solve_weight(&d.grassmann_state().unwrap(), &d.target_state().unwrap(), &m).unwrap();
    assert_eq!(sol.null_space.len(), 3);
    assert!(sol.residual < 1e-12);
}

fn weight() -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0u16..16, -1.0f64..1.0, -1.0f64..1.0), 1..8).prop_map(|t| {
        GrassmannElement::from_terms(
            t.into_iter()
                .map(|(m, re, im)| (grassmann_fcs::Monomial::from_bits(m), num_complex::Complex64::new(re, im))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn integration_is_linear(w1 in weight(), w2 in weight(), a in -2.0f64..2.0, b in -2.0f64..2.0, k1 in -2.0f64..2.0, k2 in -2.0f64..2.0) {
        let s = coherent_ket(FermionLabel::new(k1, GeneratorId::theta(1)))
            .tensor_product(&coherent_ket(FermionLabel::new(k2, GeneratorId::theta(2))));
        let m = MeasureList::full(2).unwrap();
        let lhs = integrate_with_weight(&GrassmannElement::linear_combine(a, &w1, b, &w2), &s, &m).unwrap();
        let o1 = integrate_with_weight(&w1, &s, &m).unwrap();
        let o2 = integrate_with_weight(&w2, &s, &m).unwrap();
        let rhs: Vec<_> = o1.amplitudes().iter().zip(o2.amplitudes()).map(|(x, y)| x * a + y * b).collect();
        prop_assert!(lhs.max_deviation(&QubitState::from_amplitudes(rhs)) < 1e-9);
    }
}
