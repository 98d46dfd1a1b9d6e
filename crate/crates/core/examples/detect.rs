//! Smallest backdoors of every kind on the running example.

use aspback::detect::horn_conflict_graph;
use aspback::{find_backdoor, parse_program, BackdoorKind, BackdoorQuery, TargetClass, EX1};

fn main() {
    let p = parse_program(EX1).unwrap();
    let g = horn_conflict_graph(&p);
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{}-{}", p.name(a), p.name(b))).collect();
    println!("conflict graph: {}", edges.join(" "));
    for target in TargetClass::ALL {
        for kind in [BackdoorKind::Strong, BackdoorKind::Deletion] {
            let r = find_backdoor(&p, &BackdoorQuery::minimize(target, kind)).unwrap();
            let w = r.witness.unwrap();
            println!(
                "{:<10} {:<8} {} ({} nodes)",
                target.to_string(),
                kind,
                w.render(p.table()),
                r.nodes_explored
            );
        }
    }
    let none = find_backdoor(
        &p,
        &BackdoorQuery::at_most(TargetClass::HornStar, BackdoorKind::Strong, 1),
    )
    .unwrap();
    println!("horn strong with k=1: {:?}", none.witness);
}
