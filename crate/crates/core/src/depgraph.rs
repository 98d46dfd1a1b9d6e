//! Dependency graphs, cycle witnesses and the incidence graph.
//!
//! `D_P` has an edge `(x, y)` whenever some rule has `x` in its head and
//! `y` in its body, or `x` and `y` (distinct) in its head. The edge is
//! negative if any justifying occurrence has `y` in the negative body or is a
//! head-head pair. `U_P` replaces each negative edge `e = (x, y)` by a path
//! `x - v_e - y` through a fresh negative vertex and every other edge by an
//! undirected edge; parallel undirected edges are merged.
//!
//! Self-loops of `D_P` (an atom in both head and body of a rule) are
//! directed cycles of length one. In `U_P` a positive self-loop stays a loop
//! and a negative one becomes the doubled edge `x = v_e`, i.e. a bad cycle of
//! length two.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::atoms::{Atom, AtomSet};
use crate::class::TargetClass;
use crate::error::{Error, Result};
use crate::program::{core, Program};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyDigraph {
    num_atoms: usize,
    /// `(x, y) -> negative`
    edges: BTreeMap<(Atom, Atom), bool>,
    out: Vec<Vec<usize>>,
}

impl DependencyDigraph {
    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn edges(&self) -> impl Iterator<Item = (Atom, Atom, bool)> + '_ {
        self.edges.iter().map(|(&(x, y), &neg)| (x, y, neg))
    }

    pub fn edge(&self, x: Atom, y: Atom) -> Option<bool> {
        self.edges.get(&(x, y)).copied()
    }

    pub fn is_negative(&self, x: Atom, y: Atom) -> bool {
        self.edge(x, y) == Some(true)
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.edges().filter(|e| e.2).map(|(x, y, _)| (x, y))
    }

    pub fn successors(&self, x: Atom) -> impl Iterator<Item = Atom> + '_ {
        self.out[x.index()].iter().map(|&y| Atom(y as u32))
    }
}

pub fn build_ddg(p: &Program) -> DependencyDigraph {
    let n = p.num_atoms();
    let mut edges: BTreeMap<(Atom, Atom), bool> = BTreeMap::new();
    let mut add = |x: Atom, y: Atom, neg: bool| {
        let e = edges.entry((x, y)).or_insert(false);
        *e |= neg;
    };
    for r in p.rules() {
        for &x in r.head() {
            for &y in r.pos() {
                add(x, y, false);
            }
            for &y in r.neg() {
                add(x, y, true);
            }
            for &y in r.head() {
                if x != y {
                    add(x, y, true);
                }
            }
        }
    }
    let mut out = vec![Vec::new(); n];
    for &(x, y) in edges.keys() {
        out[x.index()].push(y.index());
    }
    DependencyDigraph {
        num_atoms: n,
        edges,
        out,
    }
}

/// Vertex of `U_P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UVertex {
    Atom(Atom),
    /// The vertex subdividing the negative edge `(x, y)` of `D_P`.
    Negative(Atom, Atom),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedDepGraph {
    num_atoms: usize,
    /// Negative vertex `num_atoms + i` subdivides `negative[i]`.
    negative: Vec<(Atom, Atom)>,
    /// Edges as ordered vertex-index pairs `u <= v`.
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl UndirectedDepGraph {
    pub fn num_vertices(&self) -> usize {
        self.num_atoms + self.negative.len()
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn negative_vertices(&self) -> impl Iterator<Item = UVertex> + '_ {
        self.negative.iter().map(|&(x, y)| UVertex::Negative(x, y))
    }

    pub fn vertex(&self, index: usize) -> UVertex {
        if index < self.num_atoms {
            UVertex::Atom(Atom(index as u32))
        } else {
            let (x, y) = self.negative[index - self.num_atoms];
            UVertex::Negative(x, y)
        }
    }

    pub fn index(&self, v: UVertex) -> Option<usize> {
        match v {
            UVertex::Atom(a) => (a.index() < self.num_atoms).then_some(a.index()),
            UVertex::Negative(x, y) => self.negative.binary_search(&(x, y)).ok().map(|i| self.num_atoms + i),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (UVertex, UVertex)> + '_ {
        self.edges.iter().map(|&(u, v)| (self.vertex(u), self.vertex(v)))
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: UVertex, v: UVertex) -> bool {
        match (self.index(u), self.index(v)) {
            (Some(a), Some(b)) => self.edges.contains(&(a.min(b), a.max(b))),
            _ => false,
        }
    }

    /// Degree counting the doubled edge of a negative self-loop twice.
    pub fn degree(&self, v: UVertex) -> usize {
        let Some(i) = self.index(v) else { return 0 };
        let loops = match v {
            UVertex::Negative(x, y) if x == y => 1,
            UVertex::Atom(a) => self.negative.iter().filter(|&&(x, y)| x == a && y == a).count(),
            _ => 0,
        };
        self.adj[i].len() + loops
    }

    fn neighbours(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
}

pub fn build_udg(p: &Program) -> UndirectedDepGraph {
    udg_from_ddg(&build_ddg(p))
}

fn udg_from_ddg(d: &DependencyDigraph) -> UndirectedDepGraph {
    let n = d.num_atoms;
    let negative: Vec<(Atom, Atom)> = d.negative_edges().collect();
    let mut edges = BTreeSet::new();
    for (x, y, neg) in d.edges() {
        if !neg {
            let (a, b) = (x.index(), y.index());
            edges.insert((a.min(b), a.max(b)));
        }
    }
    for (i, &(x, y)) in negative.iter().enumerate() {
        let v = n + i;
        edges.insert((x.index(), v));
        edges.insert((y.index(), v));
    }
    let mut adj = vec![Vec::new(); n + negative.len()];
    for &(u, v) in &edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    UndirectedDepGraph {
        num_atoms: n,
        negative,
        edges,
        adj,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    Directed,
    Undirected,
}

/// A forbidden cycle, listed as a cyclic vertex sequence without repeating
/// the first vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub kind: CycleKind,
    pub vertices: Vec<UVertex>,
    pub bad: bool,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The atom vertices of the cycle.
    pub fn atoms(&self) -> AtomSet {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                UVertex::Atom(a) => Some(*a),
                UVertex::Negative(..) => None,
            })
            .collect()
    }

    /// Renders the cycle as `(w, r, w)`, naming negative vertices `v_(x,y)`.
    pub fn render(&self, p: &Program) -> String {
        let names: Vec<String> = self
            .vertices
            .iter()
            .chain(self.vertices.first())
            .map(|v| vertex_name(p, *v))
            .collect();
        format!("({})", names.join(", "))
    }
}

pub fn vertex_name(p: &Program, v: UVertex) -> String {
    match v {
        UVertex::Atom(a) => p.name(a).to_owned(),
        UVertex::Negative(x, y) => format!("v_({},{})", p.name(x), p.name(y)),
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} cycle of length {}", self.kind, self.len())
    }
}

/// A forbidden cycle of `core(p)` for the acyclicity class `c`, or `None`
/// when `core(p)` satisfies the cycle condition of `c`.
pub fn witness_cycle(p: &Program, c: TargetClass) -> Result<Option<CycleWitness>> {
    if !c.is_acyclic() {
        return Err(Error::NotAcyclicClass(c));
    }
    Ok(forbidden_cycle(&core(p), c))
}

/// Like [`witness_cycle`] but on `q` as given. Panics for `HornStar`.
pub(crate) fn forbidden_cycle(q: &Program, c: TargetClass) -> Option<CycleWitness> {
    let d = build_ddg(q);
    match c {
        TargetClass::HornStar => panic!("Horn* is not an acyclicity class"),
        TargetClass::StratStar => shortest_bad_directed(&d),
        TargetClass::DCAcycStar => shortest_directed(&d),
        TargetClass::DC2AcycStar => dc2_cycle(&d),
        TargetClass::CAcycStar => shortest_undirected(&udg_from_ddg(&d), false),
        TargetClass::BCAcycStar => shortest_undirected(&udg_from_ddg(&d), true),
    }
}

fn directed_witness(d: &DependencyDigraph, cycle: Vec<usize>) -> CycleWitness {
    let atoms: Vec<Atom> = cycle.iter().map(|&i| Atom(i as u32)).collect();
    let bad = (0..atoms.len()).any(|i| d.is_negative(atoms[i], atoms[(i + 1) % atoms.len()]));
    CycleWitness {
        kind: CycleKind::Directed,
        vertices: atoms.into_iter().map(UVertex::Atom).collect(),
        bad,
    }
}

/// Shortest path `from -> to` by BFS over `adj`, never entering `blocked`.
/// Returns the vertex sequence including both ends.
fn bfs_path(
    adj: impl Fn(usize) -> Vec<usize>,
    n: usize,
    from: usize,
    to: usize,
    blocked: Option<usize>,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut v = to;
            while v != from {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            return Some(path);
        }
        for v in adj(u) {
            if Some(v) != blocked && parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

fn keep_shorter(best: &mut Option<Vec<usize>>, candidate: Vec<usize>) {
    if best.as_ref().is_none_or(|b| candidate.len() < b.len()) {
        *best = Some(candidate);
    }
}

/// Shortest directed cycle through `(x, y)`: the edge plus a shortest path
/// `y -> x`.
fn cycle_through_edge(d: &DependencyDigraph, x: Atom, y: Atom) -> Option<Vec<usize>> {
    if x == y {
        return Some(vec![x.index()]);
    }
    bfs_path(|u| d.out[u].clone(), d.num_atoms, y.index(), x.index(), None).map(|mut path| {
        // path is y .. x; rotate so the cycle starts at x
        let last = path.pop().unwrap();
        path.insert(0, last);
        path
    })
}

fn shortest_bad_directed(d: &DependencyDigraph) -> Option<CycleWitness> {
    let mut best = None;
    for (x, y) in d.negative_edges() {
        if let Some(c) = cycle_through_edge(d, x, y) {
            keep_shorter(&mut best, c);
        }
    }
    best.map(|c| directed_witness(d, c))
}

fn shortest_directed(d: &DependencyDigraph) -> Option<CycleWitness> {
    let mut best = None;
    for (x, y, _) in d.edges() {
        if best.as_ref().is_some_and(|b: &Vec<usize>| b.len() == 1) {
            break;
        }
        if let Some(c) = cycle_through_edge(d, x, y) {
            keep_shorter(&mut best, c);
        }
    }
    best.map(|c| directed_witness(d, c))
}

/// Directed cycles other than good cycles of length two.
fn dc2_cycle(d: &DependencyDigraph) -> Option<CycleWitness> {
    let mut best: Option<Vec<usize>> = None;
    for (x, y, neg) in d.edges() {
        let reverse = d.edge(y, x);
        if x == y || neg || reverse.is_none() {
            // a self-loop, a bad cycle or a cycle of length >= 3
            if let Some(c) = cycle_through_edge(d, x, y) {
                keep_shorter(&mut best, c);
            }
        } else if reverse == Some(true) {
            keep_shorter(&mut best, vec![x.index(), y.index()]);
        }
    }
    // cycles made only of good two-cycles: undirected cycles of length >= 3
    // in the graph of mutual positive pairs
    let n = d.num_atoms;
    let mut mutual = vec![Vec::new(); n];
    for (x, y, neg) in d.edges() {
        if x < y && !neg && d.edge(y, x) == Some(false) {
            mutual[x.index()].push(y.index());
            mutual[y.index()].push(x.index());
        }
    }
    if let Some(c) = shortest_simple_cycle(&mutual, n, &|_| true) {
        keep_shorter(&mut best, c);
    }
    best.map(|c| directed_witness(d, c))
}

/// Shortest cycle of length >= 3 in a simple undirected graph, restricted
/// to cycles accepted by `accept`.
fn shortest_simple_cycle(adj: &[Vec<usize>], n: usize, accept: &dyn Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if adj[s].is_empty() {
            continue;
        }
        let mut touched = vec![s];
        dist[s] = 0;
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = &best {
                if 2 * dist[u] + 1 >= b.len() {
                    break 'bfs;
                }
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w && dist[w] >= dist[u] {
                    let cycle = tree_cycle(&parent, u, w);
                    if cycle.len() >= 3 && accept(&cycle) && best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    best
}

/// The cycle closed by the non-tree edge `{u, w}` in a BFS tree.
fn tree_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let up = |mut v: usize| {
        let mut path = vec![v];
        while parent[v] != v {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let pu = up(u);
    let pw = up(w);
    let on_pw: BTreeSet<usize> = pw.iter().copied().collect();
    let meet = pu.iter().position(|v| on_pw.contains(v)).unwrap();
    let lca = pu[meet];
    let mut cycle: Vec<usize> = pu[..=meet].iter().rev().copied().collect();
    let wpos = pw.iter().position(|&v| v == lca).unwrap();
    cycle.extend(pw[..wpos].iter().copied());
    // cycle: lca .. u, w .. (child of lca)
    cycle
}

fn undirected_witness(g: &UndirectedDepGraph, cycle: Vec<usize>) -> CycleWitness {
    let bad = cycle.iter().any(|&i| i >= g.num_atoms);
    CycleWitness {
        kind: CycleKind::Undirected,
        vertices: cycle.into_iter().map(|i| g.vertex(i)).collect(),
        bad,
    }
}

fn shortest_undirected(g: &UndirectedDepGraph, bad_only: bool) -> Option<CycleWitness> {
    let n = g.num_atoms;
    // loops first: a negative self-loop is a bad 2-cycle, a positive one a
    // good 1-cycle
    for (i, &(x, y)) in g.negative.iter().enumerate() {
        if x == y {
            return Some(undirected_witness(g, vec![x.index(), n + i]));
        }
    }
    if !bad_only {
        if let Some(&(u, _)) = g.edges.iter().find(|(u, v)| u == v) {
            return Some(undirected_witness(g, vec![u]));
        }
    }
    let best = if bad_only {
        let mut best = None;
        for (i, &(x, y)) in g.negative.iter().enumerate() {
            let v = n + i;
            if let Some(mut path) = bfs_path(
                |u| g.neighbours(u).to_vec(),
                g.num_vertices(),
                x.index(),
                y.index(),
                Some(v),
            ) {
                path.push(v);
                keep_shorter(&mut best, path);
            }
        }
        best
    } else {
        shortest_simple_cycle(&g.adj, g.num_vertices(), &|_| true)
    };
    best.map(|c| undirected_witness(g, c))
}

/// Checks that `w` is a genuine cycle of the graph it claims to live in and
/// that its `bad` flag matches the edge/vertex marks.
pub fn verify_witness(p: &Program, w: &CycleWitness) -> bool {
    let k = w.vertices.len();
    if k == 0 {
        return false;
    }
    let distinct: BTreeSet<&UVertex> = w.vertices.iter().collect();
    if distinct.len() != k {
        return false;
    }
    match w.kind {
        CycleKind::Directed => {
            let d = build_ddg(p);
            let mut bad = false;
            for i in 0..k {
                let (UVertex::Atom(x), UVertex::Atom(y)) = (w.vertices[i], w.vertices[(i + 1) % k]) else {
                    return false;
                };
                match d.edge(x, y) {
                    Some(neg) => bad |= neg,
                    None => return false,
                }
            }
            bad == w.bad
        }
        CycleKind::Undirected => {
            let g = build_udg(p);
            let bad = w.vertices.iter().any(|v| matches!(v, UVertex::Negative(..)));
            let edges_ok = match k {
                1 => g.has_edge(w.vertices[0], w.vertices[0]),
                2 => matches!(
                    (w.vertices[0], w.vertices[1]),
                    (UVertex::Atom(a), UVertex::Negative(x, y)) if a == x && x == y && g.has_edge(w.vertices[0], w.vertices[1])
                ),
                _ => (0..k).all(|i| g.has_edge(w.vertices[i], w.vertices[(i + 1) % k])),
            };
            edges_ok && bad == w.bad
        }
    }
}

/// Bipartite rule/atom incidence graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub num_rules: usize,
    pub atoms: AtomSet,
    /// `(rule index, atom)` for every atom occurring in the rule.
    pub edges: Vec<(usize, Atom)>,
}

pub fn incidence_graph(p: &Program) -> IncidenceGraph {
    let edges = p
        .rules()
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.atoms().iter().map(move |a| (i, a)).collect::<Vec<_>>())
        .collect();
    IncidenceGraph {
        num_rules: p.len(),
        atoms: p.at(),
        edges,
    }
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of `D_P`; negative edges are dashed.
pub fn ddg_dot(p: &Program) -> String {
    let d = build_ddg(p);
    let mut s = String::from("digraph D_P {\n");
    for a in p.at().iter() {
        let _ = writeln!(s, "  {};", dot_id(p.name(a)));
    }
    for (x, y, neg) in d.edges() {
        let style = if neg { " [style=dashed]" } else { "" };
        let _ = writeln!(s, "  {} -> {}{};", dot_id(p.name(x)), dot_id(p.name(y)), style);
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of `U_P`; negative vertices are boxes.
pub fn udg_dot(p: &Program) -> String {
    let g = build_udg(p);
    let mut s = String::from("graph U_P {\n");
    for a in p.at().iter() {
        let _ = writeln!(s, "  {};", dot_id(p.name(a)));
    }
    for v in g.negative_vertices() {
        let _ = writeln!(s, "  {} [shape=box];", dot_id(&vertex_name(p, v)));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {} -- {};", dot_id(&vertex_name(p, u)), dot_id(&vertex_name(p, v)));
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of the incidence graph; rules are named `r<i>` by position.
pub fn incidence_dot(p: &Program) -> String {
    let g = incidence_graph(p);
    let mut s = String::from("graph incidence {\n");
    for i in 0..g.num_rules {
        let _ = writeln!(s, "  \"r{i}\" [shape=box];");
    }
    for a in g.atoms.iter() {
        let _ = writeln!(s, "  {};", dot_id(p.name(a)));
    }
    for (i, a) in &g.edges {
        let _ = writeln!(s, "  \"r{i}\" -- {};", dot_id(p.name(*a)));
    }
    s.push_str("}\n");
    s
}
