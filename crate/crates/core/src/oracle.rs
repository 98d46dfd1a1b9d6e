//! Brute-force reference implementations.
//!
//! Nothing here reuses the reduct, Horn or graph code of the crate: answer
//! sets come straight from the minimal-model definition, reducts from their
//! set-based definitions, and class membership from naive graph searches.
//! The functions are exponential and guarded by atom counts.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::{Atom, AtomSet};
use crate::class::{Closure, TargetClass};
use crate::detect::BackdoorKind;
use crate::error::{Error, Result};
use crate::program::{Program, Rule};

pub const ANSWER_SET_GUARD: usize = 20;
pub const BACKDOOR_GUARD: usize = 16;

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::GuardExceeded { what, actual, limit });
    }
    Ok(())
}

/// A plain rule as three atom sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct R {
    h: BTreeSet<Atom>,
    p: BTreeSet<Atom>,
    n: BTreeSet<Atom>,
}

impl R {
    fn of(r: &Rule) -> R {
        R {
            h: r.head().iter().copied().collect(),
            p: r.pos().iter().copied().collect(),
            n: r.neg().iter().copied().collect(),
        }
    }

    fn satisfied_by(&self, m: &BTreeSet<Atom>) -> bool {
        self.h.iter().any(|a| m.contains(a))
            || self.n.iter().any(|a| m.contains(a))
            || self.p.iter().any(|a| !m.contains(a))
    }

    fn tautological(&self) -> bool {
        self.p.iter().any(|a| self.h.contains(a) || self.n.contains(a))
    }
}

fn rules_of(p: &Program) -> Vec<R> {
    p.rules().iter().map(R::of).collect()
}

fn gl(rules: &[R], m: &BTreeSet<Atom>) -> Vec<R> {
    rules
        .iter()
        .filter(|r| r.n.iter().all(|a| !m.contains(a)))
        .map(|r| R {
            h: r.h.clone(),
            p: r.p.clone(),
            n: BTreeSet::new(),
        })
        .collect()
}

fn models(rules: &[R], m: &BTreeSet<Atom>) -> bool {
    rules.iter().all(|r| r.satisfied_by(m))
}

fn subset_of(items: &[Atom], bits: u64) -> BTreeSet<Atom> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

fn is_answer_set_rules(rules: &[R], m: &BTreeSet<Atom>) -> bool {
    let reduct = gl(rules, m);
    if !models(&reduct, m) {
        return false;
    }
    let members: Vec<Atom> = m.iter().copied().collect();
    let full = (1u64 << members.len()) - 1;
    (0..full).all(|bits| !models(&reduct, &subset_of(&members, bits)))
}

/// `M` is an answer set iff it is a minimal model of `P^M`; minimality is
/// checked against every proper subset of `M`.
pub fn is_answer_set_direct(p: &Program, m: &AtomSet) -> Result<bool> {
    guard("answer set candidate size", m.len(), ANSWER_SET_GUARD)?;
    Ok(is_answer_set_rules(&rules_of(p), &m.iter().collect()))
}

/// Every answer set, by enumerating all subsets of `at(p)`. Sorted.
pub fn brute_answer_sets(p: &Program) -> Result<Vec<AtomSet>> {
    let atoms: Vec<Atom> = p.at().iter().collect();
    guard("atom count", atoms.len(), ANSWER_SET_GUARD)?;
    let rules = rules_of(p);
    let mut found: Vec<AtomSet> = (0..1u64 << atoms.len())
        .map(|bits| subset_of(&atoms, bits))
        .filter(|m| is_answer_set_rules(&rules, m))
        .map(|m| m.into_iter().collect())
        .collect();
    found.sort();
    Ok(found)
}

/// The truth assignment reduct, straight from its four steps.
fn naive_ta_reduct(rules: &[R], domain: &BTreeSet<Atom>, ones: &BTreeSet<Atom>) -> Vec<R> {
    let zeros: BTreeSet<Atom> = domain.difference(ones).copied().collect();
    rules
        .iter()
        .filter(|r| r.h.is_disjoint(ones) && !r.h.is_subset(domain))
        .filter(|r| r.p.is_disjoint(&zeros))
        .filter(|r| r.n.is_disjoint(ones))
        .map(|r| R {
            h: r.h.difference(domain).copied().collect(),
            p: r.p.difference(domain).copied().collect(),
            n: r.n.difference(domain).copied().collect(),
        })
        .collect()
}

fn naive_delete(rules: &[R], x: &BTreeSet<Atom>) -> Vec<R> {
    rules
        .iter()
        .map(|r| R {
            h: r.h.difference(x).copied().collect(),
            p: r.p.difference(x).copied().collect(),
            n: r.n.difference(x).copied().collect(),
        })
        .collect()
}

/// Directed edges with their sign; an edge is negative if any justification
/// is.
fn naive_ddg(rules: &[R]) -> BTreeMap<(Atom, Atom), bool> {
    let mut edges: BTreeMap<(Atom, Atom), bool> = BTreeMap::new();
    let mut add = |x: Atom, y: Atom, neg: bool| {
        let e = edges.entry((x, y)).or_insert(false);
        *e |= neg;
    };
    for r in rules {
        for &x in &r.h {
            for &y in &r.p {
                add(x, y, false);
            }
            for &y in &r.n {
                add(x, y, true);
            }
            for &y in &r.h {
                if x != y {
                    add(x, y, true);
                }
            }
        }
    }
    edges
}

fn reaches(edges: &BTreeMap<(Atom, Atom), bool>, from: Atom, to: Atom) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for (&(_, b), _) in edges.range((u, Atom(0))..=(u, Atom(u32::MAX))) {
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    false
}

/// Some directed simple cycle of length at least 3 exists.
fn long_directed_cycle(edges: &BTreeMap<(Atom, Atom), bool>) -> bool {
    fn dfs(edges: &BTreeMap<(Atom, Atom), bool>, start: Atom, u: Atom, path: &mut Vec<Atom>) -> bool {
        for (&(_, v), _) in edges.range((u, Atom(0))..=(u, Atom(u32::MAX))) {
            if v == start && path.len() >= 3 {
                return true;
            }
            // only extend through vertices larger than the start
            if v > start && !path.contains(&v) {
                path.push(v);
                if dfs(edges, start, v, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let vertices: BTreeSet<Atom> = edges.keys().map(|&(a, _)| a).collect();
    vertices.into_iter().any(|s| dfs(edges, s, s, &mut vec![s]))
}

/// Undirected graph with one extra vertex per negative edge.
fn naive_udg(edges: &BTreeMap<(Atom, Atom), bool>) -> (BTreeSet<Node>, BTreeSet<(Node, Node)>) {
    let mut vs = BTreeSet::new();
    let mut es = BTreeSet::new();
    let add = |a: Node, b: Node, es: &mut BTreeSet<(Node, Node)>| {
        es.insert((a.min(b), a.max(b)));
    };
    for (&(x, y), &neg) in edges {
        vs.insert(Node::Atom(x));
        vs.insert(Node::Atom(y));
        if neg {
            let v = Node::Neg(x, y);
            vs.insert(v);
            add(Node::Atom(x), v, &mut es);
            add(v, Node::Atom(y), &mut es);
        } else {
            add(Node::Atom(x), Node::Atom(y), &mut es);
        }
    }
    (vs, es)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Atom(Atom),
    Neg(Atom, Atom),
}

fn connected_without(es: &BTreeSet<(Node, Node)>, from: Node, to: Node, removed: Node) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for &(a, b) in es {
            let next = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if next != removed && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    false
}

fn components(vs: &BTreeSet<Node>, es: &BTreeSet<(Node, Node)>) -> usize {
    let mut parent: BTreeMap<Node, Node> = vs.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<Node, Node>, v: Node) -> Node {
        let p = parent[&v];
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    let mut count = vs.len();
    for &(a, b) in es {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
            count -= 1;
        }
    }
    count
}

fn naive_class(rules: &[R], c: TargetClass, closure: Closure) -> bool {
    let kept: Vec<R> = match closure {
        Closure::Star => rules
            .iter()
            .filter(|r| !r.tautological() && !r.h.is_empty())
            .cloned()
            .collect(),
        Closure::Plain => rules.to_vec(),
    };
    if c == TargetClass::HornStar {
        return kept.iter().all(|r| r.n.is_empty() && r.h.len() <= 1);
    }
    if !kept.iter().all(|r| r.h.len() == 1) {
        return false;
    }
    let edges = naive_ddg(&kept);
    let self_loop = edges.keys().any(|&(a, b)| a == b);
    match c {
        TargetClass::HornStar => unreachable!(),
        TargetClass::StratStar => !edges.iter().any(|(&(x, y), &neg)| neg && reaches(&edges, y, x)),
        TargetClass::DCAcycStar => !edges.keys().any(|&(x, y)| reaches(&edges, y, x)),
        TargetClass::DC2AcycStar => {
            if self_loop || long_directed_cycle(&edges) {
                return false;
            }
            // remaining cycles have length 2; they must be positive both ways
            !edges
                .iter()
                .any(|(&(x, y), &neg)| edges.get(&(y, x)).is_some_and(|&back| neg || back))
        }
        TargetClass::CAcycStar | TargetClass::BCAcycStar => {
            let (vs, es) = naive_udg(&edges);
            if c == TargetClass::CAcycStar {
                // a forest has |E| = |V| - #components
                !self_loop && es.len() + components(&vs, &es) == vs.len()
            } else {
                !vs.iter().any(|&v| match v {
                    Node::Neg(x, y) => connected_without(&es, Node::Atom(x), Node::Atom(y), v),
                    Node::Atom(_) => false,
                })
            }
        }
    }
}

/// Class membership by naive graph search.
pub fn naive_in_class(p: &Program, c: TargetClass, closure: Closure) -> bool {
    naive_class(&rules_of(p), c, closure)
}

/// Backdoor check from the definitions, using [`naive_in_class`].
pub fn naive_verify(p: &Program, x: &AtomSet, target: TargetClass, kind: BackdoorKind, closure: Closure) -> bool {
    let rules = rules_of(p);
    let at: BTreeSet<Atom> = p.at().iter().collect();
    let domain: Vec<Atom> = x.iter().filter(|a| at.contains(a)).collect();
    match kind {
        BackdoorKind::Deletion => naive_class(
            &naive_delete(&rules, &domain.iter().copied().collect()),
            target,
            closure,
        ),
        BackdoorKind::Strong => {
            let d: BTreeSet<Atom> = domain.iter().copied().collect();
            (0..1u64 << domain.len())
                .all(|bits| naive_class(&naive_ta_reduct(&rules, &d, &subset_of(&domain, bits)), target, closure))
        }
    }
}

/// Smallest backdoor, lexicographically first among those of minimum size.
pub fn brute_min_backdoor(p: &Program, target: TargetClass, kind: BackdoorKind) -> Result<AtomSet> {
    let n = p.at().len();
    guard("atom count", n, BACKDOOR_GUARD)?;
    Ok(brute_backdoor_up_to(p, target, kind, Closure::Star, n)?.expect("the whole atom set is a backdoor"))
}

/// First backdoor in (size, lexicographic) order with at most `k` atoms.
pub fn brute_backdoor_up_to(
    p: &Program,
    target: TargetClass,
    kind: BackdoorKind,
    closure: Closure,
    k: usize,
) -> Result<Option<AtomSet>> {
    let atoms: Vec<Atom> = p.at().iter().collect();
    if kind == BackdoorKind::Strong {
        guard("strong backdoor size", k.min(atoms.len()), BACKDOOR_GUARD)?;
    }
    for size in 0..=k.min(atoms.len()) {
        // subsets of `size` atoms in lexicographic order
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let x: AtomSet = idx.iter().map(|&i| atoms[i]).collect();
            if naive_verify(p, &x, target, kind, closure) {
                return Ok(Some(x));
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < atoms.len() - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}
