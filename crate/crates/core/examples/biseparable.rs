//! Schmidt profiles of biseparable outputs on three and four modes.

use grassmann_fcs::corpus::{run_corpus, CaseResult};
use grassmann_fcs::entanglement::schmidt_profile;

fn show(case: &CaseResult) {
    println!("{}: {}", case.name, case.achieved);
    if let Some(c) = &case.classification {
        println!("  {}", c.category);
        for cut in &c.cuts {
            println!("  cut {:?} rank {}", cut.partition, cut.schmidt_rank);
        }
    }
}

fn main() {
    let report = run_corpus(Some("bisep*")).expect("cases exist");
    for case in &report.cases {
        show(case);
    }
    let psi_phi = report.cases.iter().find(|c| c.name == "bisep4-psi12-phi34").expect("case exists");
    let cut = schmidt_profile(&psi_phi.achieved, &[1, 2]).expect("valid partition");
    println!("{{1,2}} Schmidt values: {:?}", cut.schmidt_values);
}
