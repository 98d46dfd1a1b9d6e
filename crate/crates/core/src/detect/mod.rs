//! Backdoor detection and verification.
//!
//! Strong and deletion `Horn*` backdoors are vertex covers of the conflict
//! graph. Deletion backdoors to the acyclicity classes are found by an exact
//! branch-and-bound that repeatedly hits a normality violation or a
//! forbidden cycle. Strong backdoors to the acyclicity classes are found by
//! plain subset search, which is only feasible for small sizes.

mod deletion;
mod vertex_cover;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{Atom, AtomSet};
use crate::class::{in_class, Closure, TargetClass};
use crate::error::{Error, Result};
use crate::program::Program;
use crate::reducts::{delete_atoms, ta_reduct_values};

pub(crate) use deletion::DeletionSearch;
use vertex_cover::{lex_min_cover, VcGraph, VcStats};

/// Largest `|X ∩ at(P)|` accepted by strong verification.
pub const STRONG_VERIFY_GUARD: usize = 30;

/// Largest backdoor size explored by the strong search for acyclicity
/// classes.
pub const STRONG_SEARCH_GUARD: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackdoorKind {
    Strong,
    Deletion,
}

impl fmt::Display for BackdoorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackdoorKind::Strong => "strong",
            BackdoorKind::Deletion => "deletion",
        })
    }
}

impl FromStr for BackdoorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "strong" => Ok(BackdoorKind::Strong),
            "deletion" => Ok(BackdoorKind::Deletion),
            _ => Err(format!("unknown backdoor kind `{s}`")),
        }
    }
}

/// Size requirement of a backdoor query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Any backdoor of at most this many atoms.
    AtMost(usize),
    /// A smallest backdoor.
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BackdoorQuery {
    pub target: TargetClass,
    pub kind: BackdoorKind,
    pub bound: Bound,
}

impl BackdoorQuery {
    pub fn minimize(target: TargetClass, kind: BackdoorKind) -> Self {
        Self {
            target,
            kind,
            bound: Bound::Minimize,
        }
    }

    pub fn at_most(target: TargetClass, kind: BackdoorKind, k: usize) -> Self {
        Self {
            target,
            kind,
            bound: Bound::AtMost(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackdoorResult {
    /// A backdoor within the bound, or `None` if there is none.
    pub witness: Option<AtomSet>,
    /// The witness is known to be of minimum size.
    pub optimal: bool,
    pub nodes_explored: u64,
}

/// Undirected graph on atoms joining `x` and `y` whenever a non-tautological
/// rule has both in its head, or `x` in its head and `y` in its negative
/// body. An atom in both the head and the negative body of a rule gets a
/// self-loop.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictGraph {
    vertices: AtomSet,
    edges: BTreeSet<(Atom, Atom)>,
}

impl ConflictGraph {
    pub fn vertices(&self) -> &AtomSet {
        &self.vertices
    }

    /// Edges as ordered pairs `(x, y)` with `x <= y`.
    pub fn edges(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, x: Atom, y: Atom) -> bool {
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    /// True iff every edge has an endpoint in `x`.
    pub fn is_vertex_cover(&self, x: &AtomSet) -> bool {
        self.edges.iter().all(|&(u, v)| x.contains(u) || x.contains(v))
    }

    fn vc_graph(&self) -> VcGraph {
        let n = self.vertices.iter().last().map_or(0, |a| a.index() + 1);
        VcGraph::new(n, self.edges.iter().map(|&(u, v)| (u.index(), v.index())))
    }
}

pub fn horn_conflict_graph(p: &Program) -> ConflictGraph {
    let mut edges = BTreeSet::new();
    for r in p.rules().iter().filter(|r| !r.is_tautological()) {
        let h = r.head();
        for (i, &x) in h.iter().enumerate() {
            for &y in &h[i + 1..] {
                edges.insert((x, y));
            }
            for &y in r.neg() {
                edges.insert((x.min(y), x.max(y)));
            }
        }
    }
    ConflictGraph {
        vertices: p.at(),
        edges,
    }
}

/// A minimum vertex cover of size at most `k`, the lexicographically
/// smallest by sorted atom ids among all minimum covers.
pub fn vertex_cover_min(g: &ConflictGraph, k: usize) -> Option<AtomSet> {
    vertex_cover_with_stats(g, k).0
}

fn vertex_cover_with_stats(g: &ConflictGraph, k: usize) -> (Option<AtomSet>, u64) {
    let mut stats = VcStats::default();
    let cover = lex_min_cover(&g.vc_graph(), k, &mut stats).map(|c| c.into_iter().map(|i| Atom(i as u32)).collect());
    (cover, stats.nodes)
}

/// Checks a backdoor under the `*` reading of `target`.
pub fn verify_backdoor(p: &Program, x: &AtomSet, target: TargetClass, kind: BackdoorKind) -> Result<bool> {
    verify_backdoor_in(p, x, target, kind, Closure::Star)
}

/// Checks a backdoor with an explicit reading of the target class.
///
/// Strong: every truth assignment reduct over `x ∩ at(p)` is in the class.
/// Deletion: `p − x` is in the class. Atoms of `x` outside `at(p)` are
/// ignored.
pub fn verify_backdoor_in(
    p: &Program,
    x: &AtomSet,
    target: TargetClass,
    kind: BackdoorKind,
    closure: Closure,
) -> Result<bool> {
    match kind {
        BackdoorKind::Deletion => Ok(in_class(&delete_atoms(p, x), target, closure)),
        BackdoorKind::Strong => {
            let domain = x.intersection(&p.at());
            if domain.len() > STRONG_VERIFY_GUARD {
                return Err(Error::GuardExceeded {
                    what: "strong backdoor size",
                    actual: domain.len(),
                    limit: STRONG_VERIFY_GUARD,
                });
            }
            Ok(strong_holds(p, &domain, target, closure))
        }
    }
}

/// Strong check over an already restricted domain.
pub(crate) fn strong_holds(p: &Program, domain: &AtomSet, target: TargetClass, closure: Closure) -> bool {
    let n = p.num_atoms();
    let atoms = domain.as_slice();
    let check = |bits: u64| {
        let mut values = vec![None; n];
        for (i, a) in atoms.iter().enumerate() {
            values[a.index()] = Some(bits >> i & 1 == 1);
        }
        in_class(&ta_reduct_values(p, &values), target, closure)
    };
    let total = 1u64 << atoms.len();
    if atoms.len() >= 10 {
        (0..total).into_par_iter().all(check)
    } else {
        (0..total).all(check)
    }
}

/// Searches for a backdoor as described by `q`.
///
/// With a size bound the smallest backdoor is still computed, so witnesses
/// are canonical: among all minimum backdoors the one with the
/// lexicographically smallest sorted id vector.
pub fn find_backdoor(p: &Program, q: &BackdoorQuery) -> Result<BackdoorResult> {
    let limit = match q.bound {
        Bound::AtMost(k) => k.min(p.at().len()),
        Bound::Minimize => p.at().len(),
    };
    let (witness, nodes) = match (q.target, q.kind) {
        (TargetClass::HornStar, BackdoorKind::Strong) => vertex_cover_with_stats(&horn_conflict_graph(p), limit),
        (TargetClass::HornStar, BackdoorKind::Deletion) => {
            let (cover, nodes) = vertex_cover_with_stats(&horn_conflict_graph(p), limit);
            match cover {
                // a deletion backdoor is a strong one, hence a cover
                None => (None, nodes),
                Some(c) if verify_backdoor(p, &c, TargetClass::HornStar, BackdoorKind::Deletion)? => (Some(c), nodes),
                Some(_) => {
                    let mut search = DeletionSearch::new(p, TargetClass::HornStar);
                    let w = search.lex_min(limit);
                    (w, nodes + search.nodes)
                }
            }
        }
        (target, BackdoorKind::Deletion) => {
            let mut search = DeletionSearch::new(p, target);
            let w = search.lex_min(limit);
            (w, search.nodes)
        }
        (target, BackdoorKind::Strong) => {
            let mut search = DeletionSearch::new(p, target);
            let upper = search.lex_min(limit).map_or(limit, |w| w.len());
            let (w, nodes) = strong_subset_search(p, target, Closure::Star, upper)?;
            (w, search.nodes + nodes)
        }
    };
    Ok(BackdoorResult {
        optimal: q.bound == Bound::Minimize && witness.is_some(),
        witness,
        nodes_explored: nodes,
    })
}

/// First set in (size, lexicographic) order of size at most `limit` that is
/// a strong backdoor.
pub(crate) fn strong_subset_search(
    p: &Program,
    target: TargetClass,
    closure: Closure,
    limit: usize,
) -> Result<(Option<AtomSet>, u64)> {
    let atoms = p.at();
    let atoms = atoms.as_slice();
    let mut nodes = 0u64;
    for size in 0..=limit.min(atoms.len()) {
        if size > STRONG_SEARCH_GUARD {
            return Err(Error::GuardExceeded {
                what: "strong backdoor search size",
                actual: size,
                limit: STRONG_SEARCH_GUARD,
            });
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            nodes += 1;
            let x: AtomSet = idx.iter().map(|&i| atoms[i]).collect();
            if strong_holds(p, &x, target, closure) {
                return Ok((Some(x), nodes));
            }
            if !next_combination(&mut idx, atoms.len()) {
                break;
            }
        }
    }
    Ok((None, nodes))
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn set(p: &Program, names: &str) -> AtomSet {
        p.table().resolve_names(names).unwrap()
    }

    fn ex1() -> Program {
        parse_program(crate::EX1).unwrap()
    }

    #[test]
    fn ex1_conflict_graph() {
        let p = ex1();
        let g = horn_conflict_graph(&p);
        let a = |n| p.atom(n).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert!(g.has_edge(a("t"), a("r")));
        assert!(g.has_edge(a("w"), a("r")));
        assert!(g.has_edge(a("q"), a("s")));
    }

    #[test]
    fn conflict_graph_ignores_tautologies_and_horn_rules() {
        let p = parse_program("a | b :- a.").unwrap();
        assert_eq!(horn_conflict_graph(&p).num_edges(), 0);
        let p = parse_program("a :- b. c. :- a, b.").unwrap();
        assert_eq!(horn_conflict_graph(&p).num_edges(), 0);
    }

    #[test]
    fn ex1_vertex_cover() {
        let p = ex1();
        let g = horn_conflict_graph(&p);
        let c = vertex_cover_min(&g, 2).unwrap();
        assert_eq!(c, set(&p, "r s"));
        assert_eq!(c.render(p.table()), "{r, s}");
        assert_eq!(vertex_cover_min(&g, 1), None);
        assert_eq!(vertex_cover_min(&ConflictGraph::default(), 0), Some(AtomSet::new()));
    }

    #[test]
    fn ex1_verification() {
        let p = ex1();
        let horn = TargetClass::HornStar;
        assert!(verify_backdoor(&p, &set(&p, "r s"), horn, BackdoorKind::Strong).unwrap());
        assert!(!verify_backdoor(&p, &set(&p, "r"), horn, BackdoorKind::Strong).unwrap());
        let q = parse_program("x :- not x. y.").unwrap();
        assert!(verify_backdoor(&q, &set(&q, "x"), horn, BackdoorKind::Strong).unwrap());
    }

    #[test]
    fn strong_verification_guard() {
        let text: String = (0..31).map(|i| format!("a{i} :- not b{i}. ")).collect();
        let p = parse_program(&text).unwrap();
        let x = p.at();
        assert!(matches!(
            verify_backdoor(&p, &x, TargetClass::HornStar, BackdoorKind::Strong),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(verify_backdoor(&p, &x, TargetClass::HornStar, BackdoorKind::Deletion).unwrap());
    }

    #[test]
    fn find_ex1_backdoors() {
        let p = ex1();
        let r = find_backdoor(
            &p,
            &BackdoorQuery::minimize(TargetClass::HornStar, BackdoorKind::Strong),
        )
        .unwrap();
        assert_eq!(r.witness, Some(set(&p, "r s")));
        assert!(r.optimal);
        let r = find_backdoor(
            &p,
            &BackdoorQuery::at_most(TargetClass::StratStar, BackdoorKind::Deletion, 1),
        )
        .unwrap();
        assert_eq!(r.witness, Some(set(&p, "w")));
        assert!(!r.optimal);
        let r = find_backdoor(
            &p,
            &BackdoorQuery::at_most(TargetClass::HornStar, BackdoorKind::Strong, 1),
        )
        .unwrap();
        assert_eq!(r.witness, None);
    }

    #[test]
    fn horn_program_needs_no_backdoor() {
        let p = parse_program("a. b :- a. c :- b. :- c, d.").unwrap();
        for target in TargetClass::ALL {
            for kind in [BackdoorKind::Strong, BackdoorKind::Deletion] {
                let r = find_backdoor(&p, &BackdoorQuery::minimize(target, kind)).unwrap();
                assert_eq!(r.witness, Some(AtomSet::new()), "{target} {kind}");
            }
        }
    }

    #[test]
    fn tautology_revived_by_deletion() {
        // {c} makes every reduct Horn, but deleting c turns the rule into
        // the non-tautological `a :- not b`
        let p = parse_program("a :- c, not b, not c.").unwrap();
        let x = set(&p, "c");
        let horn = TargetClass::HornStar;
        assert!(verify_backdoor(&p, &x, horn, BackdoorKind::Strong).unwrap());
        assert!(horn_conflict_graph(&p).is_vertex_cover(&x));
        assert!(!verify_backdoor(&p, &x, horn, BackdoorKind::Deletion).unwrap());
        let r = find_backdoor(&p, &BackdoorQuery::minimize(horn, BackdoorKind::Deletion)).unwrap();
        assert_eq!(r.witness, Some(AtomSet::new()));

        // the smallest cover {c} is not a deletion backdoor, {d} is
        let p = parse_program("a :- c, not b, not c. c :- not d.").unwrap();
        let r = find_backdoor(&p, &BackdoorQuery::minimize(horn, BackdoorKind::Strong)).unwrap();
        assert_eq!(r.witness, Some(set(&p, "c")));
        let r = find_backdoor(&p, &BackdoorQuery::minimize(horn, BackdoorKind::Deletion)).unwrap();
        assert_eq!(r.witness, Some(set(&p, "d")));
    }

    #[test]
    fn strong_acyclic_search() {
        let p = ex1();
        let r = find_backdoor(
            &p,
            &BackdoorQuery::minimize(TargetClass::StratStar, BackdoorKind::Strong),
        )
        .unwrap();
        let w = r.witness.unwrap();
        assert!(w.len() <= 1);
        assert!(verify_backdoor(&p, &w, TargetClass::StratStar, BackdoorKind::Strong).unwrap());
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn kind_names() {
        assert_eq!("strong".parse::<BackdoorKind>().unwrap(), BackdoorKind::Strong);
        assert_eq!(BackdoorKind::Deletion.to_string(), "deletion");
        assert!("weak".parse::<BackdoorKind>().is_err());
    }
}
