//! Instance generators.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`; instance
//! `i` of a corpus uses stream `i` of the same seed, so corpora regenerate
//! bit-identically on every platform. Atoms are interned in the order they
//! are written, which makes every generated program equal to the result of
//! parsing its own rendering.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atoms::AtomTable;
use crate::error::{Error, Result};
use crate::parse::is_valid_atom_name;
use crate::program::{Program, Rule};

/// Collects rules given by atom names, interning names in textual order.
#[derive(Default)]
struct Builder {
    table: AtomTable,
    rules: Vec<Rule>,
}

impl Builder {
    fn rule<S: AsRef<str>>(&mut self, head: &[S], pos: &[S], neg: &[S]) {
        let mut ids = |names: &[S]| names.iter().map(|n| self.table.intern(n.as_ref())).collect::<Vec<_>>();
        let h = ids(head);
        let p = ids(pos);
        let n = ids(neg);
        self.rules.push(Rule::new(h, p, n));
    }

    fn finish(self) -> Program {
        Program::new(self.table, self.rules)
    }
}

/// Parameters of a random normal program.
#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub n_atoms: usize,
    /// Rules per atom.
    pub density: f64,
    /// Literals per body.
    pub body_len: usize,
    /// Probability that a body literal is negated.
    pub neg_prob: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n_atoms: 50,
            density: 3.0,
            body_len: 2,
            neg_prob: 0.5,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n_atoms == 0 {
            return bad("n_atoms must be at least 1".into());
        }
        if !(self.density > 0.0 && self.density.is_finite()) {
            return bad(format!("density must be positive, got {}", self.density));
        }
        if !(0.0..=1.0).contains(&self.neg_prob) {
            return bad(format!("neg_prob must lie in [0, 1], got {}", self.neg_prob));
        }
        if self.body_len >= self.n_atoms {
            return bad(format!(
                "body_len {} needs more than {} atoms",
                self.body_len, self.n_atoms
            ));
        }
        Ok(())
    }

    /// `⌈density · n_atoms⌉`
    pub fn num_rules(&self) -> usize {
        (self.density * self.n_atoms as f64 - 1e-9).ceil().max(0.0) as usize
    }

    /// The metadata comment written at the top of generated files.
    pub fn header(&self, index: u64) -> String {
        format!(
            "% gen: random n={} density={} body_len={} neg_prob={} seed={} stream={} rng=chacha8",
            self.n_atoms, self.density, self.body_len, self.neg_prob, self.seed, index
        )
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A random normal program: each rule has a uniform head and `body_len`
/// distinct body atoms different from the head, each negated with
/// probability `neg_prob`.
pub fn random_program(cfg: &GenConfig) -> Result<Program> {
    random_program_instance(cfg, 0)
}

/// Instance `index` of the corpus described by `cfg`.
pub fn random_program_instance(cfg: &GenConfig, index: u64) -> Result<Program> {
    cfg.validate()?;
    let mut rng = rng(cfg.seed, index);
    let n = cfg.n_atoms;
    let name = |i: usize| format!("x{}", i + 1);
    let mut b = Builder::default();
    for _ in 0..cfg.num_rules() {
        let head = rng.gen_range(0..n);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for i in sample(&mut rng, n - 1, cfg.body_len) {
            let atom = if i >= head { i + 1 } else { i };
            if rng.gen_bool(cfg.neg_prob) {
                neg.push(name(atom));
            } else {
                pos.push(name(atom));
            }
        }
        b.rule(&[name(head)], &pos, &neg);
    }
    Ok(b.finish())
}

/// A family of sets and a size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub sets: Vec<Vec<String>>,
    pub k: usize,
}

impl HittingSetInstance {
    pub fn new(sets: Vec<Vec<String>>, k: usize) -> Result<Self> {
        let h = Self { sets, k };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        if self.sets.is_empty() {
            return Err(Error::HittingSet("no sets".into()));
        }
        for s in &self.sets {
            if s.is_empty() {
                return Err(Error::HittingSet("empty set".into()));
            }
            if let Some(t) = s.iter().find(|t| !is_valid_atom_name(&element_atom(t))) {
                return Err(Error::HittingSet(format!("bad element token `{t}`")));
            }
        }
        Ok(())
    }

    /// Reads one set per line as space-separated element tokens, plus a
    /// `k=` line. `%` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sets = Vec::new();
        let mut k = None;
        for line in text.lines() {
            let line = line.split('%').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("k=") {
                let v = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::HittingSet(format!("bad k line `{line}`")))?;
                if k.replace(v).is_some() {
                    return Err(Error::HittingSet("more than one k line".into()));
                }
                continue;
            }
            let mut set: Vec<String> = Vec::new();
            for t in line.split_whitespace() {
                if !set.iter().any(|s| s == t) {
                    set.push(t.to_owned());
                }
            }
            sets.push(set);
        }
        let k = k.ok_or_else(|| Error::HittingSet("missing k line".into()))?;
        Self::new(sets, k)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            out.push_str(&s.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("k={}\n", self.k));
        out
    }

    /// Distinct elements in order of first appearance.
    pub fn elements(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for t in self.sets.iter().flatten() {
            if !out.contains(&t.as_str()) {
                out.push(t);
            }
        }
        out
    }
}

/// Atom name of a hitting-set element.
pub fn element_atom(token: &str) -> String {
    format!("e{token}")
}

/// The two program families built from a hitting-set instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HittingSetReduction {
    /// `a :- S, b, not S.` and `b :- not a.`; hardness for the plain
    /// acyclicity classes.
    Tautological,
    /// `a :- b, not S.` and `b :- X, not a.`; hardness for the directed
    /// classes under the `*` reading.
    NonTautological,
}

impl HittingSetReduction {
    pub fn cli_name(self) -> &'static str {
        match self {
            HittingSetReduction::Tautological => "taut",
            HittingSetReduction::NonTautological => "nontaut",
        }
    }
}

impl fmt::Display for HittingSetReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for HittingSetReduction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "taut" => Ok(HittingSetReduction::Tautological),
            "nontaut" => Ok(HittingSetReduction::NonTautological),
            _ => Err(format!("unknown reduction `{s}`")),
        }
    }
}

/// For every set `S_i` and `1 <= j <= k+1` two rules over the elements and
/// fresh atoms `a_i_j`, `b_i_j`. The family has a hitting set of size at
/// most `k` iff the program has a strong backdoor of size at most `k`.
pub fn from_hitting_set(h: &HittingSetInstance, reduction: HittingSetReduction) -> Program {
    let all: Vec<String> = h.elements().into_iter().map(element_atom).collect();
    let mut b = Builder::default();
    for (i, set) in h.sets.iter().enumerate() {
        let s: Vec<String> = set.iter().map(|t| element_atom(t)).collect();
        for j in 1..=h.k + 1 {
            let a = format!("a_{}_{}", i + 1, j);
            let bb = format!("b_{}_{}", i + 1, j);
            match reduction {
                HittingSetReduction::Tautological => {
                    let mut pos = s.clone();
                    pos.push(bb.clone());
                    b.rule(std::slice::from_ref(&a), &pos, &s);
                    b.rule(&[bb], &[], &[a]);
                }
                HittingSetReduction::NonTautological => {
                    b.rule(std::slice::from_ref(&a), std::slice::from_ref(&bb), &s);
                    b.rule(&[bb], &all, &[a]);
                }
            }
        }
    }
    b.finish()
}

/// `n` atom-disjoint copies of `p`; atom `x` of copy `i` is named `x#i`.
pub fn disjoint_copies(p: &Program, n: usize) -> Program {
    let mut b = Builder::default();
    for i in 1..=n {
        for r in p.rules() {
            let rename = |atoms: &[crate::atoms::Atom]| -> Vec<String> {
                atoms.iter().map(|&a| format!("{}#{}", p.name(a), i)).collect()
            };
            b.rule(&rename(r.head()), &rename(r.pos()), &rename(r.neg()));
        }
    }
    b.finish()
}

/// Parameters of a program with a planted strong `Horn*` backdoor.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedConfig {
    pub n_atoms: usize,
    pub backdoor: usize,
    /// Rules per free atom.
    pub density: f64,
    pub seed: u64,
}

impl PlantedConfig {
    pub fn header(&self) -> String {
        format!(
            "% gen: planted n={} backdoor={} density={} seed={} rng=chacha8",
            self.n_atoms, self.backdoor, self.density, self.seed
        )
    }
}

/// A program whose smallest strong `Horn*` backdoor is `{c1, ..., cb}`.
///
/// Each `ci` forms an even loop with `di`; consecutive pairs exclude each
/// other through constraints `:- c(2i-1), c(2i).` The remaining atoms `y*`
/// get random definite rules over `y*` and `d*`, some of them with a
/// negated `c` atom in the body, and a few facts.
pub fn planted_program(cfg: &PlantedConfig) -> Result<Program> {
    let b_size = cfg.backdoor;
    if cfg.n_atoms < 2 * b_size + 3 {
        return Err(Error::InvalidConfig(format!(
            "{} atoms leave no room for a backdoor of {}",
            cfg.n_atoms, b_size
        )));
    }
    if !(cfg.density > 0.0 && cfg.density.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "density must be positive, got {}",
            cfg.density
        )));
    }
    let mut rng = rng(cfg.seed, 0);
    let mut b = Builder::default();
    let c = |i: usize| format!("c{}", i + 1);
    let d = |i: usize| format!("d{}", i + 1);
    let y = |i: usize| format!("y{}", i + 1);
    for i in 0..b_size {
        b.rule(&[c(i)], &[], &[d(i)]);
        b.rule(&[d(i)], &[], &[c(i)]);
    }
    for i in (0..b_size.saturating_sub(1)).step_by(2) {
        b.rule(&[], &[c(i), c(i + 1)], &[]);
    }
    let free = cfg.n_atoms - 2 * b_size;
    for i in 0..(free / 20).max(1) {
        b.rule(&[y(i)], &[], &[]);
    }
    let body_pool = free - 1 + b_size;
    let rules = (cfg.density * free as f64).ceil() as usize;
    for _ in 0..rules {
        let head = rng.gen_range(0..free);
        let pos: Vec<String> = sample(&mut rng, body_pool, 2)
            .into_iter()
            .map(|i| {
                if i < free - 1 {
                    y(if i >= head { i + 1 } else { i })
                } else {
                    d(i - (free - 1))
                }
            })
            .collect();
        let neg: Vec<String> = if b_size > 0 && rng.gen_bool(0.5) {
            vec![c(rng.gen_range(0..b_size))]
        } else {
            vec![]
        };
        b.rule(&[y(head)], &pos, &neg);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_program, render_program};

    fn round_trips(p: &Program) -> bool {
        parse_program(&render_program(p)).unwrap() == *p
    }

    #[test]
    fn random_program_is_deterministic() {
        let cfg = GenConfig {
            n_atoms: 5,
            density: 2.0,
            seed: 9,
            ..GenConfig::default()
        };
        let p = random_program(&cfg).unwrap();
        assert_eq!(p, random_program(&cfg).unwrap());
        assert_eq!(p.len(), 10);
        assert!(p
            .rules()
            .iter()
            .all(|r| r.is_normal() && r.atom_count() == 3 && !r.is_tautological()));
        assert!(round_trips(&p));
        assert_ne!(p, random_program_instance(&cfg, 1).unwrap());
    }

    #[test]
    fn negation_free_config_gives_horn_programs() {
        let cfg = GenConfig {
            n_atoms: 8,
            density: 3.0,
            neg_prob: 0.0,
            ..GenConfig::default()
        };
        assert!(random_program(&cfg).unwrap().is_horn());
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            GenConfig {
                n_atoms: 0,
                ..GenConfig::default()
            },
            GenConfig {
                n_atoms: 2,
                body_len: 2,
                ..GenConfig::default()
            },
            GenConfig {
                density: 0.0,
                ..GenConfig::default()
            },
            GenConfig {
                neg_prob: 1.5,
                ..GenConfig::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(random_program(&cfg), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
    }

    #[test]
    fn num_rules_rounds_up() {
        let cfg = GenConfig {
            n_atoms: 7,
            density: 1.5,
            ..GenConfig::default()
        };
        assert_eq!(cfg.num_rules(), 11);
        let cfg = GenConfig {
            n_atoms: 10,
            density: 0.3,
            ..GenConfig::default()
        };
        assert_eq!(cfg.num_rules(), 3);
    }

    fn small_instance() -> HittingSetInstance {
        HittingSetInstance::parse("1 2\n2 3\nk=1\n").unwrap()
    }

    #[test]
    fn hitting_set_file_format() {
        let h = small_instance();
        assert_eq!(h.sets, vec![vec!["1", "2"], vec!["2", "3"]]);
        assert_eq!(h.k, 1);
        assert_eq!(HittingSetInstance::parse(&h.render()).unwrap(), h);
        assert_eq!(h.elements(), vec!["1", "2", "3"]);
        assert!(HittingSetInstance::parse("1 2\n").is_err());
        assert!(HittingSetInstance::parse("k=1\n").is_err());
        assert!(HittingSetInstance::parse("1 ?\nk=1").is_err());
        assert!(HittingSetInstance::parse("1\nk=1\nk=2").is_err());
    }

    #[test]
    fn tautological_reduction_shape() {
        let p = from_hitting_set(&small_instance(), HittingSetReduction::Tautological);
        assert_eq!(p.at().len(), 11);
        assert_eq!(p.len(), 8);
        assert_eq!(p.rules().iter().filter(|r| r.is_tautological()).count(), 4);
        assert!(round_trips(&p));
    }

    #[test]
    fn non_tautological_reduction_shape() {
        let p = from_hitting_set(&small_instance(), HittingSetReduction::NonTautological);
        assert_eq!(p.at().len(), 11);
        assert_eq!(p.len(), 8);
        assert!(p.rules().iter().all(|r| !r.is_tautological()));
        assert!(round_trips(&p));
    }

    #[test]
    fn copies_rename_atoms() {
        let p = parse_program("a :- not b.").unwrap();
        let q = disjoint_copies(&p, 3);
        assert_eq!(q.len(), 3);
        assert_eq!(q.at().len(), 6);
        assert!(q.atom("b#3").is_some());
        assert!(round_trips(&q));
        let one = disjoint_copies(&p, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(render_program(&one).trim(), "a#1 :- not b#1.");
    }

    #[test]
    fn planted_program_shape() {
        let cfg = PlantedConfig {
            n_atoms: 60,
            backdoor: 4,
            density: 2.0,
            seed: 3,
        };
        let p = planted_program(&cfg).unwrap();
        assert_eq!(p, planted_program(&cfg).unwrap());
        assert!(p.at().len() <= 60);
        assert!(round_trips(&p));
        assert!(planted_program(&PlantedConfig { n_atoms: 8, ..cfg }).is_err());
    }
}
