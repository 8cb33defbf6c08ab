//! Anticommuting generators, conjugation, and Berezin integration.

use grassmann_fcs::{GeneratorId, GrassmannElement, MeasureList};

fn main() {
    let t1: GrassmannElement = GeneratorId::theta(1).into();
    let t1c: GrassmannElement = GeneratorId::theta_conj(1).into();
    let t2: GrassmannElement = GeneratorId::theta(2).into();

    println!("t1 * t2        = {}", &t1 * &t2);
    println!("t2 * t1        = {}", &t2 * &t1);
    println!("t1 * t1        = {}", &t1 * &t1);

    let gauss = (&t1c * &t1).scale(-0.5).exp_nilpotent().expect("nilpotent exponent");
    println!("exp(-t1' t1/2) = {gauss}");
    println!("conjugate      = {}", gauss.conjugate());

    let measure = MeasureList::full(1).expect("one mode");
    println!("measure        = {measure}");
    println!("∫ t1' t1       = {}", (&t1c * &t1).berezin_integrate(&measure));
    println!("∫ t1 t1'       = {}", (&t1 * &t1c).berezin_integrate(&measure));
    println!("∂/∂t1 (t1 t2)  = {}", (&t1 * &t2).left_derivative(GeneratorId::theta(1)));
}
