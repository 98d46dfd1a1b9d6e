//! Smallest `Horn*` backdoor size as a share of the atoms, by rule density.

use aspback::gen::{random_program, GenConfig};
use aspback::stats::{stats_report, CorpusEntry};
use aspback::{render_program, BackdoorKind, TargetClass};

fn main() {
    println!("density  mean%  stdev");
    for rho in 3..=8 {
        let corpus: Vec<CorpusEntry> = (0..10)
            .map(|seed| {
                let cfg = GenConfig {
                    n_atoms: 50,
                    density: rho as f64,
                    seed,
                    ..GenConfig::default()
                };
                (
                    format!("{rho}-{seed}"),
                    Ok(render_program(&random_program(&cfg).unwrap())),
                )
            })
            .collect();
        let r = stats_report(&corpus, TargetClass::HornStar, BackdoorKind::Strong);
        println!("{rho:>7} {:>6.2} {:>6.2}", r.mean.unwrap(), r.stdev);
    }
}
