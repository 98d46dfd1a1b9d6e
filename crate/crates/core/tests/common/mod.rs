#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use aspback::gen::{random_program_instance, GenConfig};
use aspback::{parse_program, Program};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random normal programs with `n_atoms` from 3 to 10 and density 1 to 8.
pub fn normal_corpus(count: u64, seed: u64) -> Vec<Program> {
    (0..count)
        .map(|i| {
            let cfg = GenConfig {
                n_atoms: 3 + (i % 8) as usize,
                density: (1 + (i / 8) % 8) as f64,
                seed,
                ..GenConfig::default()
            };
            random_program_instance(&cfg, i).unwrap()
        })
        .collect()
}

/// Random disjunctive programs with constraints and tautological rules.
pub fn general_program(rng: &mut ChaCha8Rng, n: usize, rules: usize) -> Program {
    let atom = |rng: &mut ChaCha8Rng| format!("a{}", rng.gen_range(0..n));
    let mut text = String::new();
    for _ in 0..rules {
        let head: Vec<String> = (0..rng.gen_range(0..=2)).map(|_| atom(rng)).collect();
        let mut body: Vec<String> = (0..rng.gen_range(0..=2)).map(|_| atom(rng)).collect();
        body.extend((0..rng.gen_range(0..=2)).map(|_| format!("not {}", atom(rng))));
        if head.is_empty() && body.is_empty() {
            continue;
        }
        text += &head.join(" | ");
        if !body.is_empty() {
            text += " :- ";
            text += &body.join(", ");
        }
        text += ".\n";
    }
    parse_program(&text).unwrap()
}

pub fn general_corpus(count: usize, seed: u64, max_atoms: usize) -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_atoms);
            let rules = rng.gen_range(1..=2 * n);
            general_program(&mut rng, n, rules)
        })
        .collect()
}

pub fn aspback(args: &[&str]) -> Output {
    aspback_env(args, &[])
}

pub fn aspback_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aspback"));
    cmd.args(args).env_remove("ASPBACK_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn write_file(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}
