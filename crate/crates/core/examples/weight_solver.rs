//! Solving for a weight function that takes a state to a target, plus the
//! freedom left in the solution.

use grassmann_fcs::dsl::{parse_document, render_element};
use grassmann_fcs::weights::solve_weight;

fn solve(src: &str) {
    let doc = parse_document(src).expect("valid document");
    let sol = solve_weight(
        &doc.grassmann_state().expect("state"),
        &doc.target_state().expect("target"),
        &doc.effective_measure(),
    )
    .expect("well-formed problem");
    println!("{}", src.lines().next().unwrap_or_default());
    println!("  weight   {}", render_element(&sol.particular));
    println!("  residual {:.3e}", sol.residual);
    for n in &sol.null_space {
        println!("  null     {}", render_element(n));
    }
}

fn main() {
    solve("state: |1:t1> (x) |-1:t1> - |-1:t1> (x) |1:t1>\ntarget: PsiMinus");
    solve("state: |1:t1> (x) |1:t2>\ntarget: PhiMinus");
    // no weight reaches a Phi state from a single-mode product
    solve("state: |1:t1> (x) |1:t1>\ntarget: PhiPlus");
}
