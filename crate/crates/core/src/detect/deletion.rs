//! Exact deletion backdoor search.
//!
//! A violation is a set of atoms that every deletion backdoor extending the
//! current one must meet: two head atoms of a rule that is not normal (or
//! not Horn), an atom pair of a `Horn*` conflict, or the atoms of a
//! forbidden cycle. The search branches on the atoms of one violation and
//! prunes with a packing of pairwise disjoint violations.

use crate::atoms::{Atom, AtomSet};
use crate::class::TargetClass;
use crate::depgraph::forbidden_cycle;
use crate::program::{core, Program};
use crate::reducts::delete_atoms_masked;

pub(crate) struct DeletionSearch<'a> {
    p: &'a Program,
    target: TargetClass,
    pub nodes: u64,
}

/// A violation of `target` in `q`, ignoring constraints and tautological
/// rules.
fn violation(q: &Program, target: TargetClass) -> Option<Vec<Atom>> {
    for r in q.rules() {
        if r.is_constraint() || r.is_tautological() {
            continue;
        }
        let h = r.head();
        if h.len() >= 2 {
            return Some(vec![h[0], h[1]]);
        }
        if target == TargetClass::HornStar && !r.neg().is_empty() {
            let mut v = vec![h[0], r.neg()[0]];
            v.dedup();
            return Some(v);
        }
    }
    if target == TargetClass::HornStar {
        return None;
    }
    forbidden_cycle(&core(q), target).map(|w| w.atoms().iter().collect())
}

impl<'a> DeletionSearch<'a> {
    pub(crate) fn new(p: &'a Program, target: TargetClass) -> Self {
        Self { p, target, nodes: 0 }
    }

    fn reduced(&self, deleted: &[bool]) -> Program {
        core(&delete_atoms_masked(self.p, deleted))
    }

    /// Number of pairwise disjoint violations found greedily in `q`.
    fn packing_bound(&self, q: &Program) -> usize {
        let mut blocked = vec![false; q.num_atoms()];
        let mut count = 0;
        loop {
            let rest = delete_atoms_masked(q, &blocked);
            match violation(&rest, self.target) {
                None => return count,
                Some(v) => {
                    count += 1;
                    for a in v {
                        blocked[a.index()] = true;
                    }
                }
            }
        }
    }

    /// Extends `deleted` (currently `size` atoms) to a backdoor of at most
    /// `budget` atoms avoiding `excluded`. On success `deleted` holds the
    /// backdoor; otherwise it is unchanged.
    fn extend(&mut self, deleted: &mut [bool], size: usize, excluded: &mut [bool], budget: usize) -> bool {
        self.nodes += 1;
        let q = self.reduced(deleted);
        let Some(v) = violation(&q, self.target) else {
            return true;
        };
        if size >= budget || size + self.packing_bound(&q) > budget {
            return false;
        }
        let mut newly_excluded = Vec::new();
        let mut found = false;
        for a in v {
            let i = a.index();
            if excluded[i] {
                continue;
            }
            deleted[i] = true;
            if self.extend(deleted, size + 1, excluded, budget) {
                found = true;
                break;
            }
            deleted[i] = false;
            // later siblings never use the atoms tried before them
            excluded[i] = true;
            newly_excluded.push(i);
        }
        for i in newly_excluded {
            excluded[i] = false;
        }
        found
    }

    /// Smallest backdoor size, if at most `limit`.
    pub(crate) fn minimum_size(&mut self, limit: usize) -> Option<usize> {
        let n = self.p.num_atoms();
        let mut k = self.packing_bound(&self.reduced(&vec![false; n]));
        while k <= limit {
            if self.extend(&mut vec![false; n], 0, &mut vec![false; n], k) {
                return Some(k);
            }
            k += 1;
        }
        None
    }

    /// The lexicographically smallest minimum backdoor, if its size is at
    /// most `limit`.
    pub(crate) fn lex_min(&mut self, limit: usize) -> Option<AtomSet> {
        let k = self.minimum_size(limit)?;
        let n = self.p.num_atoms();
        let mut chosen = vec![false; n];
        let mut excluded = vec![false; n];
        let mut size = 0;
        for a in self.p.at().iter() {
            if violation(&self.reduced(&chosen), self.target).is_none() {
                break;
            }
            let i = a.index();
            chosen[i] = true;
            let mut trial = chosen.clone();
            if self.extend(&mut trial, size + 1, &mut excluded, k) {
                size += 1;
            } else {
                chosen[i] = false;
                excluded[i] = true;
            }
        }
        Some(AtomSet::from_mask(&chosen))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    #[test]
    fn ex1_strat_deletion() {
        let p = parse_program(crate::EX1).unwrap();
        let mut s = DeletionSearch::new(&p, TargetClass::StratStar);
        assert_eq!(s.lex_min(6).unwrap().render(p.table()), "{w}");
        assert!(s.nodes > 0);
    }

    #[test]
    fn disjunctive_heads_need_deletion() {
        let p = parse_program("a | b | c.").unwrap();
        for target in TargetClass::ACYCLIC {
            let mut s = DeletionSearch::new(&p, target);
            assert_eq!(s.lex_min(3).unwrap().render(p.table()), "{a, b}");
        }
    }

    #[test]
    fn limit_is_respected() {
        let p = parse_program("a :- not a. b :- not b.").unwrap();
        let mut s = DeletionSearch::new(&p, TargetClass::StratStar);
        assert_eq!(s.lex_min(1), None);
        assert_eq!(s.lex_min(2).unwrap().len(), 2);
    }

    #[test]
    fn packing_counts_disjoint_cycles() {
        let p = parse_program("a :- not b. b :- not a. c :- not d. d :- not c.").unwrap();
        let s = DeletionSearch::new(&p, TargetClass::StratStar);
        assert_eq!(s.packing_bound(&p), 2);
    }
}
