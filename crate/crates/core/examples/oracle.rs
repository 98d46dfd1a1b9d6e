//! Cross-checks the backdoor pipeline against brute force on random programs.

use aspback::gen::{random_program_instance, GenConfig};
use aspback::oracle::{brute_answer_sets, brute_min_backdoor};
use aspback::{answer_sets, find_backdoor, BackdoorKind, BackdoorQuery, TargetClass};

fn main() {
    let cfg = GenConfig {
        n_atoms: 8,
        density: 2.0,
        seed: 3,
        ..GenConfig::default()
    };
    let mut agree = 0;
    for i in 0..100 {
        let p = random_program_instance(&cfg, i).unwrap();
        let q = BackdoorQuery::minimize(TargetClass::HornStar, BackdoorKind::Strong);
        let x = find_backdoor(&p, &q).unwrap().witness.unwrap();
        let same_sets = answer_sets(&p, &x).unwrap().answer_sets == brute_answer_sets(&p).unwrap();
        let same_size = x.len()
            == brute_min_backdoor(&p, TargetClass::HornStar, BackdoorKind::Strong)
                .unwrap()
                .len();
        if same_sets && same_size {
            agree += 1;
        }
    }
    println!("{agree}/100 programs agree with brute force");
}
