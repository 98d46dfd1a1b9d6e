//! Least models of Horn programs and the answer set of a `Horn*` program.

use aspback::horn::{horn_star_answer_sets, least_model};
use aspback::parse_program;

fn main() {
    let p = parse_program("t.  q :- u.  w :- u.  u :- t.  :- w, z.").unwrap();
    let (m, consistent) = least_model(&p).unwrap();
    println!("least model {} (constraints hold: {consistent})", m.render(p.table()));

    let p = parse_program("a.  b :- a.  c :- b, not c, c.").unwrap();
    for s in horn_star_answer_sets(&p).unwrap() {
        println!("answer set {}", s.render(p.table()));
    }
}
