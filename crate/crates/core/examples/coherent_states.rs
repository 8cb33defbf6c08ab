//! Coherent kets as Grassmann-valued Fock states: eigenvalue relation,
//! overlap, and displacement of the vacuum.

use grassmann_fcs::{coherent_ket, displacement, FermionLabel, GeneratorId, GrassmannElement, GrassmannState, ModeOperator};

fn main() {
    let theta = GeneratorId::theta(1);
    for k in [1.0, -1.0, 3.0, -2.0] {
        let ket = coherent_ket(FermionLabel::new(k, theta));
        let lowered = ket.apply_mode_op(&ModeOperator::annihilation(), 0).expect("slot 0 exists");
        let expected = ket.left_multiply(&GrassmannElement::from(theta).scale(k));
        println!("|{k}θ> = {ket}");
        println!("  a|{k}θ> = kθ|{k}θ>: {}", lowered.approx_eq(&expected, 1e-12));
    }

    let ket = coherent_ket(FermionLabel::unit(theta));
    println!("<0|θ> = {}", GrassmannState::vacuum(1).inner(&ket).expect("same size"));
    println!("<θ|θ> = {}", ket.inner(&ket).expect("same size"));

    let d = displacement(FermionLabel::unit(theta));
    let shifted = GrassmannState::vacuum(1).apply_mode_op(&d, 0).expect("slot 0 exists");
    println!("D(θ)|0> = |θ>: {}", shifted == ket);
    println!("D(θ)D(θ)† = I: {}", d.compose(&d.adjoint()) == ModeOperator::identity());
}
