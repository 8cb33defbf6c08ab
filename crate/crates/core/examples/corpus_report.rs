//! Runs the built-in corpus, optionally filtered by a glob argument.

use grassmann_fcs::corpus::run_corpus;

fn main() {
    let filter = std::env::args().nth(1);
    match run_corpus(filter.as_deref()) {
        Ok(report) => print!("{}", report.to_text()),
        Err(e) => eprintln!("{e}"),
    }
}
