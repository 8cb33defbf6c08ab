//! Bosonic two-term coherent superpositions against their fermionic
//! counterparts.

use std::f64::consts::PI;

use grassmann_fcs::boson::{maximality_report, KQuad, Sign};
use grassmann_fcs::dsl::format_complex;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let quads = [
        ("(1,-1,-1,-3) -", KQuad::real([1.0, -1.0, -1.0, -3.0], Sign::Minus, 1.0)),
        ("(i,i,1,1) -", KQuad::new([c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0)], Sign::Minus, 1.0)),
        (
            "(π/2+i,π+i,π/2-i,π-i) +",
            KQuad::new([c(PI / 2.0, 1.0), c(PI, 1.0), c(PI / 2.0, -1.0), c(PI, -1.0)], Sign::Plus, 1.0),
        ),
    ];
    for (label, q) in quads {
        let r = maximality_report(&q).expect("non-degenerate quad");
        println!(
            "{label:<24} boson C = {:.9} (maximal {})  fermion maximal {}  m = {}",
            r.concurrence,
            r.boson_maximal(),
            r.fermion_maximal,
            r.fermion_m.map_or("-".to_string(), format_complex)
        );
    }
}
