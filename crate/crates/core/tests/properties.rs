mod common;

use aspback::gen::{disjoint_copies, random_program_instance, GenConfig};
use aspback::oracle::brute_answer_sets;
use aspback::stats::stats_report;
use aspback::{
    answer_sets, find_backdoor, parse_program, render_program, BackdoorKind, BackdoorQuery, Program, TargetClass,
};
use common::general_program;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn program(seed: u64, n: usize, rules: usize) -> Program {
    general_program(&mut ChaCha8Rng::seed_from_u64(seed), n, rules)
}

fn min_size(p: &Program, target: TargetClass, kind: BackdoorKind) -> usize {
    find_backdoor(p, &BackdoorQuery::minimize(target, kind))
        .unwrap()
        .witness
        .unwrap()
        .len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>(), n in 1usize..12, rules in 1usize..20) {
        let p = program(seed, n, rules);
        let q = parse_program(&render_program(&p)).unwrap();
        prop_assert_eq!(render_program(&q), render_program(&p));
        prop_assert_eq!(q.rules(), p.rules());
    }

    #[test]
    fn disjunctive_programs_match_brute_force(seed in any::<u64>(), n in 1usize..9, rules in 1usize..16) {
        let p = program(seed, n, rules);
        let q = BackdoorQuery::minimize(TargetClass::HornStar, BackdoorKind::Strong);
        let x = find_backdoor(&p, &q).unwrap().witness.unwrap();
        let report = answer_sets(&p, &x).unwrap();
        prop_assert_eq!(&report.answer_sets, &brute_answer_sets(&p).unwrap());
        prop_assert_eq!(report.candidates_total, report.answer_sets.len() + report.candidates_rejected);
    }

    #[test]
    fn bounded_query_agrees_with_minimum(seed in any::<u64>(), n in 1usize..9, rules in 1usize..16, k in 0usize..5) {
        let p = program(seed, n, rules);
        for target in TargetClass::ALL {
            let min = min_size(&p, target, BackdoorKind::Deletion);
            let bounded = find_backdoor(&p, &BackdoorQuery::at_most(target, BackdoorKind::Deletion, k)).unwrap();
            prop_assert_eq!(bounded.witness.is_some(), min <= k);
            if let Some(w) = bounded.witness {
                prop_assert_eq!(w.len(), min);
            }
        }
    }

    #[test]
    fn copies_multiply_the_horn_backdoor(seed in any::<u64>(), n in 1usize..7, rules in 1usize..10, copies in 1usize..4) {
        let p = program(seed, n, rules);
        let c = disjoint_copies(&p, copies);
        let strong = (TargetClass::HornStar, BackdoorKind::Strong);
        prop_assert_eq!(min_size(&c, strong.0, strong.1), copies * min_size(&p, strong.0, strong.1));
    }

    #[test]
    fn copies_combine_answer_sets(seed in any::<u64>(), n in 1usize..5, rules in 1usize..7) {
        let p = program(seed, n, rules);
        let c = disjoint_copies(&p, 2);
        let single = brute_answer_sets(&p).unwrap();
        let both = brute_answer_sets(&c).unwrap();
        prop_assert_eq!(both.len(), single.len() * single.len());
    }

    #[test]
    fn stats_mean_is_mean_of_rows(seed in 0u64..1000, count in 1u64..6) {
        let cfg = GenConfig { n_atoms: 12, density: 2.0, seed, ..GenConfig::default() };
        let corpus: Vec<_> = (0..count)
            .map(|i| (format!("p{i}"), Ok(render_program(&random_program_instance(&cfg, i).unwrap()))))
            .collect();
        let report = stats_report(&corpus, TargetClass::HornStar, BackdoorKind::Strong);
        let fractions: Vec<f64> = report.rows.iter().map(|r| r.fraction).collect();
        let mean = fractions.iter().sum::<f64>() / fractions.len() as f64;
        prop_assert!((report.mean.unwrap() - mean).abs() < 1e-9);
        prop_assert!(fractions.iter().all(|f| (0.0..=100.0).contains(f)));
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), index in 0u64..100) {
        let cfg = GenConfig { n_atoms: 15, density: 3.0, seed, ..GenConfig::default() };
        let a = random_program_instance(&cfg, index).unwrap();
        let b = random_program_instance(&cfg, index).unwrap();
        prop_assert_eq!(render_program(&a), render_program(&b));
        prop_assert_eq!(a.len(), 45);
    }
}
