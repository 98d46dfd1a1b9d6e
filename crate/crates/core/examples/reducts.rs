//! Truth assignment reducts and atom deletion on the running example.

use aspback::reducts::{delete_atoms, gl_reduct, TruthAssignment};
use aspback::{parse_program, render_program, Program, EX1};

fn inline(p: &Program) -> String {
    render_program(p).lines().collect::<Vec<_>>().join("  ")
}

fn main() {
    let p = parse_program(EX1).unwrap();
    let x = p.table().resolve_names("r s").unwrap();
    for tau in TruthAssignment::all(&x) {
        let reduct = aspback::reducts::ta_reduct(&p, &tau);
        println!("true {:<8} -> {}", tau.ones().render(p.table()), inline(&reduct));
    }
    println!("P - X        -> {}", inline(&delete_atoms(&p, &x)));
    let m = p.table().resolve_names("t").unwrap();
    println!("P^{{t}}        -> {}", inline(&gl_reduct(&p, &m).unwrap()));
}
