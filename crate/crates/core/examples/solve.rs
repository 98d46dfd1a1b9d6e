//! Answer sets and reasoning through a strong `Horn*` backdoor.

use aspback::{answer_sets, find_backdoor, parse_program, reason, BackdoorKind, BackdoorQuery, Mode, TargetClass};

fn main() {
    let p = parse_program("a | b.  c :- a.  c :- b.  d :- not c.  e :- not d, not f.  f :- not e.").unwrap();
    let q = BackdoorQuery::minimize(TargetClass::HornStar, BackdoorKind::Strong);
    let x = find_backdoor(&p, &q).unwrap().witness.unwrap();
    println!("backdoor {}", x.render(p.table()));

    let report = answer_sets(&p, &x).unwrap();
    println!(
        "{} candidates, {} rejected",
        report.candidates_total, report.candidates_rejected
    );
    for s in &report.answer_sets {
        println!("  {}", s.render(p.table()));
    }
    for (mode, atom) in [(Mode::Brave, "e"), (Mode::Cautious, "c"), (Mode::Count, "")] {
        let atom = (!atom.is_empty()).then_some(atom);
        println!(
            "{mode} {}: {:?}",
            atom.unwrap_or(""),
            reason(&p, &x, mode, atom).unwrap()
        );
    }
}
