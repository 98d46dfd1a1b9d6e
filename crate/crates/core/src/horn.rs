//! Model checking and least models of Horn programs.

use std::collections::VecDeque;

use crate::atoms::AtomSet;
use crate::class::{in_target_class, TargetClass};
use crate::error::{Error, Result};
use crate::program::{core, Program, Rule};
use crate::reducts::gl_reduct_masked;

/// A set satisfies a rule if its head or negative body meets the set, or
/// some positive body atom is missing from it.
pub fn satisfies(r: &Rule, m: &[bool]) -> bool {
    r.head().iter().chain(r.neg()).any(|a| m[a.index()]) || r.pos().iter().any(|a| !m[a.index()])
}

/// True iff `m` satisfies every rule of `p`.
pub fn is_model(p: &Program, m: &AtomSet) -> bool {
    is_model_mask(p, &m.to_mask(p.num_atoms()))
}

pub(crate) fn is_model_mask(p: &Program, m: &[bool]) -> bool {
    p.rules().iter().all(|r| satisfies(r, m))
}

/// Least model of the definite rules (`|H| = 1`) of a Horn program, and
/// whether it also satisfies the program's constraints.
///
/// Runs in time linear in the size of the program: each definite rule keeps
/// a counter of positive body atoms not yet derived, and derived atoms are
/// processed from a queue.
pub fn least_model(p: &Program) -> Result<(AtomSet, bool)> {
    if let Some(i) = p.rules().iter().position(|r| !r.is_horn()) {
        return Err(Error::NotHorn(i));
    }
    let lm = least_model_mask(p);
    let sat = p
        .rules()
        .iter()
        .filter(|r| r.is_constraint())
        .all(|r| satisfies(r, &lm));
    Ok((AtomSet::from_mask(&lm), sat))
}

/// Unit propagation over the rules with exactly one head atom; other rules
/// are ignored and the negative body is not consulted.
pub(crate) fn least_model_mask(p: &Program) -> Vec<bool> {
    let n = p.num_atoms();
    let rules = p.rules();
    let mut missing: Vec<usize> = rules.iter().map(|r| r.pos().len()).collect();
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut model = vec![false; n];
    let mut queue = VecDeque::new();
    for (i, r) in rules.iter().enumerate() {
        if r.head().len() != 1 {
            continue;
        }
        for a in r.pos() {
            watchers[a.index()].push(i);
        }
        if r.pos().is_empty() {
            let h = r.head()[0].index();
            if !model[h] {
                model[h] = true;
                queue.push_back(h);
            }
        }
    }
    while let Some(a) = queue.pop_front() {
        for &i in &watchers[a] {
            missing[i] -= 1;
            if missing[i] == 0 {
                let h = rules[i].head()[0].index();
                if !model[h] {
                    model[h] = true;
                    queue.push_back(h);
                }
            }
        }
    }
    model
}

/// Answer sets of a program in `Horn*`: at most one, the least model of the
/// definite rules of its core, kept only if it models the reduct of the
/// whole program.
pub fn horn_star_answer_sets(p: &Program) -> Result<Vec<AtomSet>> {
    if !in_target_class(p, TargetClass::HornStar) {
        return Err(Error::NotInClass(TargetClass::HornStar));
    }
    Ok(horn_star_answer_sets_unchecked(p).into_iter().collect())
}

pub(crate) fn horn_star_answer_sets_unchecked(p: &Program) -> Option<AtomSet> {
    let definite = core(p);
    let lm = least_model_mask(&definite);
    is_model_mask(&gl_reduct_masked(p, &lm), &lm).then(|| AtomSet::from_mask(&lm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn set(p: &Program, names: &str) -> AtomSet {
        p.table().resolve_names(names).unwrap()
    }

    #[test]
    fn model_checks() {
        let p = parse_program("t. q :- u. w :- u.").unwrap();
        assert!(is_model(&p, &set(&p, "t")));
        let p = parse_program("t.").unwrap();
        assert!(!is_model(&p, &AtomSet::new()));
        let p = parse_program("a :- a, not a.").unwrap();
        assert!(is_model(&p, &AtomSet::new()));
    }

    #[test]
    fn least_models() {
        let p = parse_program("t. q :- u. w :- u.").unwrap();
        assert_eq!(least_model(&p).unwrap(), (set(&p, "t"), true));
        let p = parse_program("q :- u.").unwrap();
        assert_eq!(least_model(&p).unwrap(), (AtomSet::new(), true));
        let p = parse_program("a. :- a.").unwrap();
        assert_eq!(least_model(&p).unwrap(), (set(&p, "a"), false));
    }

    #[test]
    fn least_model_chains() {
        let p = parse_program("d :- c. c :- b, a. b :- a. a. e :- f.").unwrap();
        assert_eq!(least_model(&p).unwrap().0, set(&p, "a b c d"));
    }

    #[test]
    fn least_model_rejects_non_horn() {
        let p = parse_program("a. b :- not a.").unwrap();
        assert_eq!(least_model(&p), Err(Error::NotHorn(1)));
        let p = parse_program("a | b.").unwrap();
        assert_eq!(least_model(&p), Err(Error::NotHorn(0)));
    }

    #[test]
    fn horn_star_examples() {
        let p = parse_program("u :- q. t. w :- u.").unwrap();
        assert_eq!(horn_star_answer_sets(&p).unwrap(), vec![set(&p, "t")]);
        let p = parse_program("a. :- a.").unwrap();
        assert!(horn_star_answer_sets(&p).unwrap().is_empty());
        let p = parse_program("a :- b.").unwrap();
        assert_eq!(horn_star_answer_sets(&p).unwrap(), vec![AtomSet::new()]);
    }

    #[test]
    fn horn_star_respects_tautologies_and_negative_constraints() {
        // the tautological rule is non-Horn but harmless
        let p = parse_program("a. b | c :- b, not a. :- a, not d.").unwrap();
        assert!(horn_star_answer_sets(&p).unwrap().is_empty());
        let p = parse_program("a. d. b | c :- b, not a. :- a, not d.").unwrap();
        assert_eq!(horn_star_answer_sets(&p).unwrap(), vec![set(&p, "a d")]);
    }

    #[test]
    fn horn_star_rejects_outside_class() {
        let p = parse_program(crate::EX1).unwrap();
        assert_eq!(horn_star_answer_sets(&p), Err(Error::NotInClass(TargetClass::HornStar)));
    }
}
