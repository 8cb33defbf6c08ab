//! W and GHZ states on three to five qubits, with their classification.

use grassmann_fcs::dsl::{parse_document, Document};
use grassmann_fcs::entanglement::classify;
use grassmann_fcs::weights::integrate_with_weight;

fn run(label: &str, doc: &Document) {
    let out = integrate_with_weight(
        &doc.weight_element().expect("weight"),
        &doc.grassmann_state().expect("state"),
        &doc.effective_measure(),
    )
    .expect("measure covers the integrand");
    let report = classify(&out).expect("nonzero state");
    let name = report.named_match.map_or("-".to_string(), |m| m.name.to_string());
    println!("{label:<5} {:<22} {name:<6} {out}", report.category.to_string());
}

fn main() {
    for n in 3..=5 {
        let kets = vec!["|1:t1>"; n].join(" (x) ");
        let doc = parse_document(&format!("state: {kets}\nweight: (1/sqrt({n})) * t1'")).expect("valid");
        run(&format!("W{n}"), &doc);
    }
    for n in 3..=4u32 {
        let kets: Vec<String> = (1..=n).map(|m| format!("|1:t{m}>")).collect();
        let full: Vec<String> = (1..=n).map(|m| format!("t{m}'*t{m}")).collect();
        let stars: Vec<String> = (1..=n).map(|m| format!("t{m}'")).collect();
        let src = format!(
            "state: {}\nweight: (1/sqrt(2)) * ({} + {})",
            kets.join(" (x) "),
            full.join("*"),
            stars.join("*")
        );
        run(&format!("GHZ{n}"), &parse_document(&src).expect("valid"));
    }
}
