//! Bell states from products of single-mode coherent kets.

use grassmann_fcs::dsl::parse_document;
use grassmann_fcs::entanglement::concurrence2;
use grassmann_fcs::weights::integrate_with_weight;

const SOURCES: [(&str, &str); 4] = [
    (
        "Psi+",
        "state: |1:t1> (x) |1:t1> - |-1:t1> (x) |-1:t1>\nweight: (1/(2*sqrt(2))) * t1'",
    ),
    (
        "Psi-",
        "state: |1:t1> (x) |-1:t1> - |-1:t1> (x) |1:t1>\nweight: -(1/(2*sqrt(2))) * t1'",
    ),
    ("Phi+", "state: |1:t1'> (x) |1:t1>\nweight: (1/sqrt(2)) * exp(t1*t1')"),
    (
        "Bell-like+",
        "state: |1:t1'> (x) |1:t1>\nweight: (1/sqrt(2)) * (exp(i*pi/4)*t1' + exp(-i*pi/4)*t1)",
    ),
];

fn main() {
    for (label, src) in SOURCES {
        let doc = parse_document(src).expect("valid document");
        let out = integrate_with_weight(
            &doc.weight_element().expect("weight"),
            &doc.grassmann_state().expect("state"),
            &doc.effective_measure(),
        )
        .expect("measure covers the integrand");
        let c = concurrence2(&out).expect("two qubits");
        println!("{label:<11} {out}   C = {c:.12}");
    }
}
