//! Ground disjunctive programs.

use std::sync::Arc;

use crate::atoms::{Atom, AtomSet, AtomTable};

fn sorted_unique(atoms: impl IntoIterator<Item = Atom>) -> Vec<Atom> {
    let mut v: Vec<Atom> = atoms.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn intersects(a: &[Atom], b: &[Atom]) -> bool {
    // both sorted
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// A ground rule `h1 | ... | hl :- p1, ..., pn, not n1, ..., not nm.`
///
/// Each part is stored sorted by atom id without duplicates. Parts may
/// overlap, which is how tautological rules are represented.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    head: Vec<Atom>,
    pos: Vec<Atom>,
    neg: Vec<Atom>,
}

impl Rule {
    pub fn new(
        head: impl IntoIterator<Item = Atom>,
        pos: impl IntoIterator<Item = Atom>,
        neg: impl IntoIterator<Item = Atom>,
    ) -> Self {
        Self {
            head: sorted_unique(head),
            pos: sorted_unique(pos),
            neg: sorted_unique(neg),
        }
    }

    pub fn fact(atom: Atom) -> Self {
        Self::new([atom], [], [])
    }

    pub fn head(&self) -> &[Atom] {
        &self.head
    }

    pub fn pos(&self) -> &[Atom] {
        &self.pos
    }

    pub fn neg(&self) -> &[Atom] {
        &self.neg
    }

    /// Every atom of the rule, sorted.
    pub fn atoms(&self) -> AtomSet {
        self.head.iter().chain(&self.pos).chain(&self.neg).copied().collect()
    }

    /// Number of distinct atoms in the rule.
    pub fn atom_count(&self) -> usize {
        self.atoms().len()
    }

    pub fn mentions(&self, atom: Atom) -> bool {
        self.head.binary_search(&atom).is_ok()
            || self.pos.binary_search(&atom).is_ok()
            || self.neg.binary_search(&atom).is_ok()
    }

    pub fn is_negation_free(&self) -> bool {
        self.neg.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.head.len() == 1
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn is_disjunction_free(&self) -> bool {
        self.head.len() <= 1
    }

    pub fn is_horn(&self) -> bool {
        self.is_negation_free() && self.is_disjunction_free()
    }

    pub fn is_tautological(&self) -> bool {
        intersects(&self.pos, &self.head) || intersects(&self.pos, &self.neg)
    }

    /// Atoms of `B+ ∩ (H ∪ B−)`.
    pub fn tautology_witnesses(&self) -> AtomSet {
        self.pos
            .iter()
            .filter(|a| self.head.binary_search(a).is_ok() || self.neg.binary_search(a).is_ok())
            .copied()
            .collect()
    }

    pub fn flags(&self) -> RuleFlags {
        rule_flags(self)
    }

    /// Keeps only the atoms accepted by `keep` in every part.
    pub fn retain_atoms(&self, mut keep: impl FnMut(Atom) -> bool) -> Rule {
        Rule {
            head: self.head.iter().copied().filter(|&a| keep(a)).collect(),
            pos: self.pos.iter().copied().filter(|&a| keep(a)).collect(),
            neg: self.neg.iter().copied().filter(|&a| keep(a)).collect(),
        }
    }

    pub(crate) fn from_parts(head: Vec<Atom>, pos: Vec<Atom>, neg: Vec<Atom>) -> Self {
        debug_assert!(head.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(pos.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(neg.windows(2).all(|w| w[0] < w[1]));
        Rule { head, pos, neg }
    }
}

/// Syntactic classification of a single rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RuleFlags {
    pub negation_free: bool,
    pub normal: bool,
    pub constraint: bool,
    pub disjunction_free: bool,
    pub horn: bool,
    pub tautological: bool,
}

pub fn rule_flags(r: &Rule) -> RuleFlags {
    RuleFlags {
        negation_free: r.is_negation_free(),
        normal: r.is_normal(),
        constraint: r.is_constraint(),
        disjunction_free: r.is_disjunction_free(),
        horn: r.is_horn(),
        tautological: r.is_tautological(),
    }
}

/// An ordered list of rules over a shared atom table.
///
/// Transformations keep the atom table untouched, so atom ids stay valid
/// across reducts of the same program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    table: Arc<AtomTable>,
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(table: AtomTable, rules: Vec<Rule>) -> Self {
        Self::with_table(Arc::new(table), rules)
    }

    pub fn with_table(table: Arc<AtomTable>, rules: Vec<Rule>) -> Self {
        debug_assert!(rules.iter().all(|r| r.atoms().iter().all(|a| table.contains(a))));
        Self { table, rules }
    }

    /// A program over the same atom table with different rules.
    pub fn derive(&self, rules: Vec<Rule>) -> Program {
        Program {
            table: Arc::clone(&self.table),
            rules,
        }
    }

    pub fn table(&self) -> &AtomTable {
        &self.table
    }

    pub fn shared_table(&self) -> &Arc<AtomTable> {
        &self.table
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Size of the atom table (not necessarily `|at(P)|`).
    pub fn num_atoms(&self) -> usize {
        self.table.len()
    }

    /// `at(P)`: atoms occurring in some rule.
    pub fn at(&self) -> AtomSet {
        let mut mask = vec![false; self.table.len()];
        for r in &self.rules {
            for &a in r.head.iter().chain(&r.pos).chain(&r.neg) {
                mask[a.index()] = true;
            }
        }
        AtomSet::from_mask(&mask)
    }

    /// Sum of rule sizes, the usual measure of program length.
    pub fn size(&self) -> usize {
        self.rules
            .iter()
            .map(|r| r.head.len() + r.pos.len() + r.neg.len())
            .sum()
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.table.get(name)
    }

    pub fn name(&self, atom: Atom) -> &str {
        self.table.name(atom)
    }

    pub fn is_horn(&self) -> bool {
        self.rules.iter().all(Rule::is_horn)
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(Rule::is_normal)
    }

    pub fn is_disjunction_free(&self) -> bool {
        self.rules.iter().all(Rule::is_disjunction_free)
    }
}

/// The program without its tautological rules and constraints.
pub fn core(p: &Program) -> Program {
    p.derive(
        p.rules
            .iter()
            .filter(|r| !r.is_tautological() && !r.is_constraint())
            .cloned()
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn rule(text: &str) -> (Program, Rule) {
        let p = parse_program(text).unwrap();
        let r = p.rules()[0].clone();
        (p, r)
    }

    #[test]
    fn flags_of_normal_negative_rule() {
        let (_, r) = rule("t :- not r.");
        let f = r.flags();
        assert!(f.normal && f.disjunction_free);
        assert!(!f.negation_free && !f.horn && !f.tautological && !f.constraint);
    }

    #[test]
    fn flags_of_tautological_disjunction() {
        let (_, r) = rule("a | b :- a.");
        assert!(r.flags().tautological);
        assert!(!r.flags().disjunction_free);
    }

    #[test]
    fn flags_of_constraint() {
        let (_, r) = rule(":- x.");
        let f = r.flags();
        assert!(f.constraint && f.horn && f.disjunction_free && f.negation_free);
        assert!(!f.normal);
    }

    #[test]
    fn core_drops_tautologies_and_constraints() {
        let p = parse_program("a :- a.  :- b.  c.").unwrap();
        let c = core(&p);
        assert_eq!(c.len(), 1);
        assert_eq!(c.rules()[0], Rule::fact(p.atom("c").unwrap()));
        assert_eq!(c.num_atoms(), 3);
    }

    #[test]
    fn core_of_ex1_is_ex1() {
        let p = parse_program(crate::EX1).unwrap();
        assert_eq!(core(&p), p);
    }

    #[test]
    fn core_of_empty_program() {
        let p = parse_program("").unwrap();
        assert!(core(&p).is_empty());
    }

    #[test]
    fn at_skips_unused_table_entries() {
        let p = parse_program("a :- b. c.").unwrap();
        let q = p.derive(vec![p.rules()[1].clone()]);
        assert_eq!(q.at().len(), 1);
        assert_eq!(q.num_atoms(), 3);
    }
}
