//! Program transformations: the Gelfond-Lifschitz reduct, the truth
//! assignment reduct and atom deletion.

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::program::{Program, Rule};

/// A two-valued assignment on a finite set of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthAssignment {
    ones: AtomSet,
    zeros: AtomSet,
}

impl TruthAssignment {
    /// Assigns `true` to `ones` and `false` to the rest of `domain`.
    pub fn new(domain: &AtomSet, ones: &AtomSet) -> Self {
        Self {
            ones: domain.intersection(ones),
            zeros: domain.difference(ones),
        }
    }

    /// The assignment on `domain` whose `i`-th atom is true iff bit `i` is set.
    pub fn from_bits(domain: &AtomSet, bits: u64) -> Self {
        let ones = AtomSet::from_bits(domain.as_slice(), bits);
        Self::new(domain, &ones)
    }

    /// Every assignment on `domain`, in increasing bit order.
    pub fn all(domain: &AtomSet) -> impl Iterator<Item = TruthAssignment> + '_ {
        assert!(domain.len() < 64, "assignment domain too large");
        (0..1u64 << domain.len()).map(move |bits| Self::from_bits(domain, bits))
    }

    pub fn domain(&self) -> AtomSet {
        self.ones.union(&self.zeros)
    }

    /// `τ⁻¹(1)`
    pub fn ones(&self) -> &AtomSet {
        &self.ones
    }

    /// `τ⁻¹(0)`
    pub fn zeros(&self) -> &AtomSet {
        &self.zeros
    }

    pub fn value(&self, atom: Atom) -> Option<bool> {
        if self.ones.contains(atom) {
            Some(true)
        } else if self.zeros.contains(atom) {
            Some(false)
        } else {
            None
        }
    }

    pub fn restrict(&self, to: &AtomSet) -> TruthAssignment {
        Self {
            ones: self.ones.intersection(to),
            zeros: self.zeros.intersection(to),
        }
    }

    /// Dense per-atom values for a table of `n` atoms.
    pub(crate) fn to_values(&self, n: usize) -> Vec<Option<bool>> {
        let mut values = vec![None; n];
        for a in self.ones.iter().filter(|a| a.index() < n) {
            values[a.index()] = Some(true);
        }
        for a in self.zeros.iter().filter(|a| a.index() < n) {
            values[a.index()] = Some(false);
        }
        values
    }
}

/// `P^M`: drops rules whose negative body meets `m`, then drops all
/// negative literals.
pub fn gl_reduct(p: &Program, m: &AtomSet) -> Result<Program> {
    if let Some(a) = m.iter().find(|&a| !p.table().contains(a)) {
        return Err(Error::UnknownAtomId(a.0));
    }
    Ok(gl_reduct_masked(p, &m.to_mask(p.num_atoms())))
}

pub(crate) fn gl_reduct_masked(p: &Program, m: &[bool]) -> Program {
    p.derive(
        p.rules()
            .iter()
            .filter(|r| r.neg().iter().all(|a| !m[a.index()]))
            .map(|r| Rule::from_parts(r.head().to_vec(), r.pos().to_vec(), Vec::new()))
            .collect(),
    )
}

/// `P_τ`: the truth assignment reduct.
///
/// The assignment is restricted to the atoms of the program's table. Rules
/// are removed when (1) their head meets `τ⁻¹(1)` or lies inside the domain,
/// (2) their positive body meets `τ⁻¹(0)`, or (3) their negative body meets
/// `τ⁻¹(1)`; afterwards (4) every domain atom is erased from the survivors.
pub fn ta_reduct(p: &Program, tau: &TruthAssignment) -> Program {
    ta_reduct_values(p, &tau.to_values(p.num_atoms()))
}

pub(crate) fn ta_reduct_values(p: &Program, values: &[Option<bool>]) -> Program {
    let assigned = |a: &Atom| values[a.index()].is_some();
    let is = |a: &Atom, v: bool| values[a.index()] == Some(v);
    let mut rules = Vec::new();
    for r in p.rules() {
        if r.head().iter().any(|a| is(a, true)) || r.head().iter().all(assigned) {
            continue;
        }
        if r.pos().iter().any(|a| is(a, false)) {
            continue;
        }
        if r.neg().iter().any(|a| is(a, true)) {
            continue;
        }
        rules.push(r.retain_atoms(|a| values[a.index()].is_none()));
    }
    p.derive(rules)
}

/// `P − X`: erases every occurrence of the atoms of `x`. No rule is removed.
pub fn delete_atoms(p: &Program, x: &AtomSet) -> Program {
    let mask = x.to_mask(p.num_atoms());
    delete_atoms_masked(p, &mask)
}

pub(crate) fn delete_atoms_masked(p: &Program, deleted: &[bool]) -> Program {
    p.derive(
        p.rules()
            .iter()
            .map(|r| r.retain_atoms(|a| !deleted[a.index()]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_program, render_program};

    fn set(p: &Program, names: &str) -> AtomSet {
        p.table().resolve_names(names).unwrap()
    }

    fn rendered(p: &Program) -> String {
        render_program(p).trim_end().replace('\n', "  ")
    }

    #[test]
    fn gl_keeps_rule_when_negation_is_false() {
        let p = parse_program("x :- not x. y.").unwrap();
        assert_eq!(rendered(&gl_reduct(&p, &set(&p, "y")).unwrap()), "x.  y.");
        assert_eq!(rendered(&gl_reduct(&p, &set(&p, "x y")).unwrap()), "y.");
    }

    #[test]
    fn gl_is_identity_on_negation_free_programs() {
        let p = parse_program("a :- b. b | c. :- a, c.").unwrap();
        for m in ["", "a", "a b c"] {
            assert_eq!(gl_reduct(&p, &set(&p, m)).unwrap(), p);
        }
    }

    #[test]
    fn gl_rejects_unknown_atoms() {
        let p = parse_program("a.").unwrap();
        let m: AtomSet = [Atom(7)].into_iter().collect();
        assert_eq!(gl_reduct(&p, &m), Err(Error::UnknownAtomId(7)));
    }

    fn ex1_reduct(r: bool, s: bool) -> String {
        let p = parse_program(crate::EX1).unwrap();
        let domain = set(&p, "r s");
        let mut ones = AtomSet::new();
        if r {
            ones.insert(p.atom("r").unwrap());
        }
        if s {
            ones.insert(p.atom("s").unwrap());
        }
        rendered(&ta_reduct(&p, &TruthAssignment::new(&domain, &ones)))
    }

    #[test]
    fn ex1_truth_assignment_reducts() {
        assert_eq!(ex1_reduct(false, false), "t.  q :- u.  w :- u.");
        assert_eq!(ex1_reduct(false, true), "u :- q.  t.  w :- u.");
        assert_eq!(ex1_reduct(true, false), "q :- u.");
        assert_eq!(ex1_reduct(true, true), "u :- q.");
    }

    #[test]
    fn ta_reduct_removes_constraints() {
        let p = parse_program(":- a. b :- a.").unwrap();
        let tau = TruthAssignment::new(&AtomSet::new(), &AtomSet::new());
        assert_eq!(rendered(&ta_reduct(&p, &tau)), "b :- a.");
    }

    #[test]
    fn ta_reduct_ignores_foreign_domain_atoms() {
        let p = parse_program("a :- not b.").unwrap();
        let domain: AtomSet = [Atom(1), Atom(40)].into_iter().collect();
        let tau = TruthAssignment::new(&domain, &domain);
        assert!(ta_reduct(&p, &tau).is_empty());
    }

    #[test]
    fn delete_ex1_rs() {
        let p = parse_program(crate::EX1).unwrap();
        let d = delete_atoms(&p, &set(&p, "r s"));
        assert_eq!(rendered(&d), ":- w.  u :- q.  :- w.  t.  q :- u.  w :- u.");
        assert_eq!(d.len(), p.len());
    }

    #[test]
    fn delete_nothing_and_everything() {
        let p = parse_program(crate::EX1).unwrap();
        assert_eq!(delete_atoms(&p, &AtomSet::new()), p);
        let all = delete_atoms(&p, &p.at());
        assert_eq!(all.len(), 6);
        assert!(all.rules().iter().all(|r| r.atoms().is_empty() && r.is_constraint()));
    }

    #[test]
    fn assignment_enumeration() {
        let domain: AtomSet = [Atom(2), Atom(5)].into_iter().collect();
        let all: Vec<_> = TruthAssignment::all(&domain).collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all[1].value(Atom(2)), Some(true));
        assert_eq!(all[1].value(Atom(5)), Some(false));
        assert_eq!(all[3].ones(), &domain);
        assert_eq!(all[0].value(Atom(3)), None);
    }
}
