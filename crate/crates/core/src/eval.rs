//! Answer sets through a strong `Horn*` backdoor.
//!
//! Every truth assignment reduct over the backdoor has at most one answer
//! set. Combining it with the true backdoor atoms gives a candidate, and
//! every answer set of the program is a candidate. Candidates are filtered
//! by a minimality check that enumerates subsets of the backdoor only.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{Atom, AtomSet};
use crate::class::TargetClass;
use crate::detect::STRONG_VERIFY_GUARD;
use crate::error::{Error, Result};
use crate::horn::is_model_mask;
use crate::program::Program;
use crate::reducts::TruthAssignment;

/// One element of `AS(P, X)` with the assignment that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub tau: TruthAssignment,
    /// The answer set of the reduct `P_τ`.
    pub m_reduct: AtomSet,
    /// `m_reduct ∪ τ⁻¹(1)`
    pub combined: AtomSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    /// Sorted.
    pub answer_sets: Vec<AtomSet>,
    pub candidates_total: usize,
    pub candidates_rejected: usize,
    pub backdoor: AtomSet,
}

fn backdoor_domain(p: &Program, x: &AtomSet) -> Result<AtomSet> {
    let domain = x.intersection(&p.at());
    if domain.len() > STRONG_VERIFY_GUARD {
        return Err(Error::GuardExceeded {
            what: "backdoor size",
            actual: domain.len(),
            limit: STRONG_VERIFY_GUARD,
        });
    }
    Ok(domain)
}

/// Least-model propagation over the rules of one program, where each call
/// chooses which rules take part, their single head atom, and how many of
/// their positive body atoms are still missing.
struct Propagator {
    /// Rules by positive body atom.
    watch: Vec<Vec<u32>>,
}

impl Propagator {
    fn new(p: &Program) -> Self {
        let mut watch = vec![Vec::new(); p.num_atoms()];
        for (i, r) in p.rules().iter().enumerate() {
            for a in r.pos() {
                watch[a.index()].push(i as u32);
            }
        }
        Self { watch }
    }

    /// `heads[i]` is the head of rule `i` if it takes part; `missing[i]` is
    /// consumed. Atoms that can never be derived may be counted in
    /// `missing` but must not be heads.
    fn run(&self, heads: &[Option<Atom>], missing: &mut [u32], model: &mut [bool]) {
        let mut queue = Vec::new();
        for (i, h) in heads.iter().enumerate() {
            if let Some(h) = h {
                if missing[i] == 0 && !model[h.index()] {
                    model[h.index()] = true;
                    queue.push(*h);
                }
            }
        }
        while let Some(a) = queue.pop() {
            for &i in &self.watch[a.index()] {
                let i = i as usize;
                let Some(h) = heads[i] else { continue };
                missing[i] -= 1;
                if missing[i] == 0 && !model[h.index()] {
                    model[h.index()] = true;
                    queue.push(h);
                }
            }
        }
    }
}

/// A program prepared for evaluation through the backdoor `x`.
struct Prepared<'a> {
    p: &'a Program,
    domain: AtomSet,
    in_x: Vec<bool>,
    prop: Propagator,
}

impl<'a> Prepared<'a> {
    fn new(p: &'a Program, x: &AtomSet) -> Result<Self> {
        let domain = backdoor_domain(p, x)?;
        Ok(Self {
            p,
            in_x: domain.to_mask(p.num_atoms()),
            domain,
            prop: Propagator::new(p),
        })
    }

    /// The candidate of assignment `bits`: the reduct `P_τ` is evaluated in
    /// place without building it.
    fn candidate(&self, bits: u64) -> Result<Option<Candidate>> {
        let p = self.p;
        let n = p.num_atoms();
        let tau = TruthAssignment::from_bits(&self.domain, bits);
        let mut value = vec![None; n];
        for (i, a) in self.domain.iter().enumerate() {
            value[a.index()] = Some(bits >> i & 1 == 1);
        }
        let free = |a: &Atom| value[a.index()].is_none();
        let is = |a: &Atom, v: bool| value[a.index()] == Some(v);

        let rules = p.rules();
        let mut kept = vec![false; rules.len()];
        let mut heads: Vec<Option<Atom>> = vec![None; rules.len()];
        let mut missing = vec![0u32; rules.len()];
        for (i, r) in rules.iter().enumerate() {
            let removed = r.head().iter().any(|a| is(a, true))
                || !r.head().iter().any(free)
                || r.pos().iter().any(|a| is(a, false))
                || r.neg().iter().any(|a| is(a, true));
            if removed {
                continue;
            }
            kept[i] = true;
            let head: Vec<Atom> = r.head().iter().copied().filter(free).collect();
            let taut = r
                .pos()
                .iter()
                .filter(|a| free(a))
                .any(|a| head.contains(a) || r.neg().binary_search(a).is_ok());
            if taut {
                continue;
            }
            if head.len() >= 2 || r.neg().iter().any(free) {
                return Err(Error::InvalidBackdoor(TargetClass::HornStar));
            }
            heads[i] = Some(head[0]);
            missing[i] = r.pos().iter().filter(|a| free(a)).count() as u32;
        }
        let mut lm = vec![false; n];
        self.prop.run(&heads, &mut missing, &mut lm);

        // lm must model the GL reduct of P_τ with respect to lm
        for (i, r) in rules.iter().enumerate() {
            if !kept[i] {
                continue;
            }
            let blocked = r.neg().iter().any(|a| free(a) && lm[a.index()]);
            let head_in = r.head().iter().any(|a| free(a) && lm[a.index()]);
            let body_in = r.pos().iter().all(|a| !free(a) || lm[a.index()]);
            if !blocked && !head_in && body_in {
                return Ok(None);
            }
        }
        let m_reduct = AtomSet::from_mask(&lm);
        let combined = m_reduct.union(tau.ones());
        Ok(Some(Candidate {
            tau,
            m_reduct,
            combined,
        }))
    }

    fn candidates(&self) -> Result<Vec<Candidate>> {
        let found: Vec<Option<Candidate>> = (0..1u64 << self.domain.len())
            .into_par_iter()
            .map(|bits| self.candidate(bits))
            .collect::<Result<_>>()?;
        Ok(found.into_iter().flatten().collect())
    }

    /// Fails unless every non-tautological rule keeps at most one head atom
    /// outside `x`, which makes every reduct disjunction-free.
    fn check_precondition(&self) -> Result<()> {
        for (i, r) in self.p.rules().iter().enumerate() {
            if r.is_tautological() {
                continue;
            }
            let remaining = r.head().iter().filter(|a| !self.in_x[a.index()]).count();
            if remaining >= 2 {
                return Err(Error::DisjunctiveRemainder { rule: i, remaining });
            }
        }
        Ok(())
    }

    /// The subset loop of the minimality check; assumes the precondition.
    fn is_answer_set(&self, m: &AtomSet, order: &[u64]) -> Result<bool> {
        let p = self.p;
        let n = p.num_atoms();
        if let Some(a) = m.iter().find(|a| a.index() >= n) {
            return Err(Error::UnknownAtomId(a.0));
        }
        let in_m = m.to_mask(n);
        if !is_model_mask(p, &in_m) {
            return Ok(false);
        }
        let rules = p.rules();
        // P^M without tautological rules
        let reduct: Vec<usize> = (0..rules.len())
            .filter(|&i| !rules[i].is_tautological() && rules[i].neg().iter().all(|a| !in_m[a.index()]))
            .collect();
        let shared: Vec<Atom> = m.iter().filter(|a| self.in_x[a.index()]).collect();
        let reduced_head: Vec<Option<Atom>> = rules
            .iter()
            .map(|r| r.head().iter().copied().find(|a| !self.in_x[a.index()]))
            .collect();

        let mut in_x1 = vec![false; n];
        let mut heads: Vec<Option<Atom>> = vec![None; rules.len()];
        let mut missing = vec![0u32; rules.len()];
        let mut l = vec![false; n];
        for &bits in order {
            for (i, a) in shared.iter().enumerate() {
                in_x1[a.index()] = bits >> i & 1 == 1;
            }
            let mut active = Vec::with_capacity(reduct.len());
            for &i in &reduct {
                let r = &rules[i];
                if r.head().iter().any(|a| in_x1[a.index()]) {
                    continue;
                }
                active.push(i);
                heads[i] = reduced_head[i];
                missing[i] = r.pos().iter().filter(|a| !in_x1[a.index()]).count() as u32;
            }
            l.iter_mut().for_each(|b| *b = false);
            self.prop.run(&heads, &mut missing, &mut l);
            for &i in &active {
                heads[i] = None;
            }

            // the Horn program has a model iff its constraints hold in l
            let has_model = active.iter().all(|&i| {
                reduced_head[i].is_some() || rules[i].pos().iter().any(|a| !in_x1[a.index()] && !l[a.index()])
            });
            if !has_model {
                continue;
            }
            let l_size = l.iter().filter(|&&b| b).count();
            let inside = (0..n).all(|i| !l[i] || in_m[i]);
            if !inside || l_size + bits.count_ones() as usize >= m.len() {
                continue;
            }
            let smaller = |a: &Atom| l[a.index()] || in_x1[a.index()];
            let models_reduct = reduct.iter().all(|&i| {
                let r = &rules[i];
                r.head().iter().any(smaller) || !r.pos().iter().all(smaller)
            });
            if models_reduct {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `AS(P, X)`, in increasing assignment order (bit `i` is the `i`-th
/// backdoor atom by id).
pub fn candidate_sets(p: &Program, x: &AtomSet) -> Result<Vec<Candidate>> {
    Prepared::new(p, x)?.candidates()
}

fn popcount_order(k: usize) -> Vec<u64> {
    let mut order: Vec<u64> = (0..1u64 << k).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    order
}

/// Decides whether `m` is an answer set of `p` by enumerating the subsets
/// `X1` of `m ∩ x`.
///
/// For each `X1` the reduct `P^M` is restricted to rules whose head misses
/// `X1`, backdoor atoms are erased from heads and `X1` from positive bodies.
/// The result is Horn; if its least model `L` lies inside `m`, is smaller
/// than `m` together with `X1` and `L ∪ X1` still models `P^M`, then `m` is
/// not minimal.
pub fn check_answer_set(p: &Program, x: &AtomSet, m: &AtomSet) -> Result<bool> {
    let prepared = Prepared::new(p, x)?;
    prepared.check_precondition()?;
    let k = m.intersection(&prepared.domain).len();
    prepared.is_answer_set(m, &popcount_order(k))
}

/// [`check_answer_set`] visiting the subsets of `m ∩ x` in the given order,
/// each encoded as a bit mask over the sorted atoms.
#[cfg(test)]
pub(crate) fn check_answer_set_in_order(p: &Program, x: &AtomSet, m: &AtomSet, order: &[u64]) -> Result<bool> {
    let prepared = Prepared::new(p, x)?;
    prepared.check_precondition()?;
    prepared.is_answer_set(m, order)
}

/// All answer sets of `p` through the strong `Horn*` backdoor `x`.
pub fn answer_sets(p: &Program, x: &AtomSet) -> Result<EvalReport> {
    let prepared = Prepared::new(p, x)?;
    let candidates = prepared.candidates()?;
    prepared.check_precondition()?;
    let orders: Vec<Vec<u64>> = (0..=prepared.domain.len()).map(popcount_order).collect();
    let verdicts: Vec<bool> = candidates
        .par_iter()
        .map(|c| prepared.is_answer_set(&c.combined, &orders[c.tau.ones().len()]))
        .collect::<Result<_>>()?;
    let mut answer_sets: Vec<AtomSet> = candidates
        .iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| ok)
        .map(|(c, _)| c.combined.clone())
        .collect();
    answer_sets.sort();
    Ok(EvalReport {
        candidates_total: candidates.len(),
        candidates_rejected: candidates.len() - answer_sets.len(),
        answer_sets,
        backdoor: prepared.domain,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Consistency,
    Brave,
    Cautious,
    Count,
    Enumerate,
}

impl Mode {
    pub fn needs_atom(self) -> bool {
        matches!(self, Mode::Brave | Mode::Cautious)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Consistency => "consistency",
            Mode::Brave => "brave",
            Mode::Cautious => "cautious",
            Mode::Count => "count",
            Mode::Enumerate => "enumerate",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            Mode::Consistency,
            Mode::Brave,
            Mode::Cautious,
            Mode::Count,
            Mode::Enumerate,
        ]
        .into_iter()
        .find(|m| m.to_string() == s)
        .ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Bool(bool),
    Count(usize),
    Sets(Vec<AtomSet>),
}

/// Answers `mode` from a list of answer sets. Cautious reasoning is true
/// when there are no answer sets.
pub fn answer_from_sets(p: &Program, sets: &[AtomSet], mode: Mode, atom: Option<&str>) -> Result<Answer> {
    let atom = match (mode.needs_atom(), atom) {
        (true, None) => return Err(Error::MissingAtom(mode.to_string())),
        (true, Some(name)) => Some(p.atom(name).ok_or_else(|| Error::UnknownAtom(name.to_owned()))?),
        (false, _) => None,
    };
    Ok(match mode {
        Mode::Consistency => Answer::Bool(!sets.is_empty()),
        Mode::Brave => Answer::Bool(sets.iter().any(|s| s.contains(atom.unwrap()))),
        Mode::Cautious => Answer::Bool(sets.iter().all(|s| s.contains(atom.unwrap()))),
        Mode::Count => Answer::Count(sets.len()),
        Mode::Enumerate => {
            let mut sorted = sets.to_vec();
            sorted.sort();
            Answer::Sets(sorted)
        }
    })
}

/// Answers a reasoning problem through the strong `Horn*` backdoor `x`.
pub fn reason(p: &Program, x: &AtomSet, mode: Mode, atom: Option<&str>) -> Result<Answer> {
    if let (true, Some(name)) = (mode.needs_atom(), atom) {
        if p.atom(name).is_none() {
            return Err(Error::UnknownAtom(name.to_owned()));
        }
    }
    let report = answer_sets(p, x)?;
    answer_from_sets(p, &report.answer_sets, mode, atom)
}
