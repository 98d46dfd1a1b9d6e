//! Program generators: random, planted backdoor, hitting set, disjoint copies.

use aspback::gen::{
    disjoint_copies, from_hitting_set, planted_program, random_program, GenConfig, HittingSetInstance,
    HittingSetReduction, PlantedConfig,
};
use aspback::{find_backdoor, parse_program, render_program, BackdoorKind, BackdoorQuery, TargetClass};

fn horn_min(p: &aspback::Program) -> usize {
    let q = BackdoorQuery::minimize(TargetClass::HornStar, BackdoorKind::Strong);
    find_backdoor(p, &q).unwrap().witness.unwrap().len()
}

fn main() {
    let cfg = GenConfig {
        n_atoms: 6,
        density: 1.0,
        seed: 1,
        ..GenConfig::default()
    };
    println!("{}\n{}", cfg.header(0), render_program(&random_program(&cfg).unwrap()));

    let planted = PlantedConfig {
        n_atoms: 200,
        backdoor: 8,
        density: 2.0,
        seed: 1,
    };
    let p = planted_program(&planted).unwrap();
    println!("planted: {} rules, smallest horn backdoor {}", p.len(), horn_min(&p));

    let h = HittingSetInstance::parse("1 2\n2 3\nk=1\n").unwrap();
    let p = from_hitting_set(&h, HittingSetReduction::Tautological);
    println!("hitting set program: {} atoms, {} rules", p.at().len(), p.len());

    let p = parse_program("a :- not b.").unwrap();
    let c = disjoint_copies(&p, 3);
    println!(
        "copies: {}  (horn backdoor {} -> {})",
        render_program(&c).lines().collect::<Vec<_>>().join("  "),
        horn_min(&p),
        horn_min(&c)
    );
}
