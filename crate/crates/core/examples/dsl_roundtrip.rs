//! Parsing, canonical rendering, and error positions.

use grassmann_fcs::dsl::{parse_document, render_document};

fn main() {
    let src = "state: |1:t1> (x) |1:t2>   # two modes\nweight: (1/sqrt(2)) * (t1'*t1*t2'*t2\n        - t1'*t2')\ntarget: PhiPlus\n";
    let doc = parse_document(src).expect("valid document");
    let canonical = render_document(&doc);
    print!("{canonical}");
    assert_eq!(parse_document(&canonical).expect("reparses"), doc);

    for bad in ["state: |1:", "weight: t9", "measure: d t1, d t1"] {
        match parse_document(bad) {
            Ok(_) => println!("{bad:?} parsed"),
            Err(e) => println!("{bad:?} -> {e}"),
        }
    }
}
