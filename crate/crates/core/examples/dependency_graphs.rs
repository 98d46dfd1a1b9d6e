//! Class membership with forbidden cycles, and a DOT export.

use aspback::depgraph::{ddg_dot, witness_cycle};
use aspback::{in_target_class, parse_program, TargetClass, EX1};

fn main() {
    let p = parse_program(EX1).unwrap();
    for c in TargetClass::ALL {
        let cycle = if c.is_acyclic() {
            witness_cycle(&p, c).unwrap().map(|w| w.render(&p))
        } else {
            None
        };
        let line = format!(
            "{:<10} {:<5} {}",
            c.to_string(),
            in_target_class(&p, c),
            cycle.unwrap_or_default()
        );
        println!("{}", line.trim_end());
    }
    print!("{}", ddg_dot(&p));
}
