//! Exact minimum vertex cover by kernelization and bounded branching.
//!
//! Reduction rules, applied to a fixpoint before every branch:
//! vertices with a self-loop are taken; isolated vertices are dropped; the
//! neighbour of a degree-1 vertex is taken; a vertex of degree larger than
//! the remaining budget is taken. Branching picks a vertex `v` of maximum
//! degree and tries `v` first, then its whole neighbourhood.

use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub(crate) struct VcGraph {
    adj: Vec<BTreeSet<usize>>,
    loops: Vec<bool>,
}

impl VcGraph {
    pub(crate) fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = VcGraph {
            adj: vec![BTreeSet::new(); n],
            loops: vec![false; n],
        };
        for (u, v) in edges {
            if u == v {
                g.loops[u] = true;
            } else {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        g
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn has_edges_at(&self, v: usize) -> bool {
        self.loops[v] || !self.adj[v].is_empty()
    }

    fn remove(&mut self, v: usize) {
        let nbrs = std::mem::take(&mut self.adj[v]);
        for u in nbrs {
            self.adj[u].remove(&v);
        }
        self.loops[v] = false;
    }

    fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2 + self.loops.iter().filter(|&&l| l).count()
    }

    fn is_edgeless(&self) -> bool {
        (0..self.adj.len()).all(|v| !self.has_edges_at(v))
    }

    /// Size of a greedy maximal matching, plus one per self-loop vertex
    /// outside it; a lower bound on any cover.
    fn matching_bound(&self) -> usize {
        let n = self.adj.len();
        let mut matched = vec![false; n];
        let mut size = 0;
        for (m, &l) in matched.iter_mut().zip(&self.loops) {
            if l {
                *m = true;
                size += 1;
            }
        }
        for v in 0..n {
            if matched[v] {
                continue;
            }
            if let Some(&u) = self.adj[v].iter().find(|&&u| !matched[u]) {
                matched[v] = true;
                matched[u] = true;
                size += 1;
            }
        }
        size
    }
}

/// Search statistics.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct VcStats {
    pub nodes: u64,
}

/// A cover of at most `budget` vertices, if one exists.
pub(crate) fn decide(g: &VcGraph, budget: usize, stats: &mut VcStats) -> Option<Vec<usize>> {
    let mut g = g.clone();
    let mut taken = Vec::new();
    if branch(&mut g, budget, &mut taken, stats) {
        taken.sort_unstable();
        Some(taken)
    } else {
        None
    }
}

fn branch(g: &mut VcGraph, mut budget: usize, taken: &mut Vec<usize>, stats: &mut VcStats) -> bool {
    stats.nodes += 1;
    let start = taken.len();
    let undo = |taken: &mut Vec<usize>| taken.truncate(start);

    // kernelize
    loop {
        let mut changed = false;
        for v in 0..g.adj.len() {
            if !g.has_edges_at(v) {
                continue;
            }
            let forced = if g.loops[v] || g.degree(v) > budget {
                Some(v)
            } else if g.degree(v) == 1 {
                g.adj[v].iter().next().copied()
            } else {
                None
            };
            if let Some(u) = forced {
                if budget == 0 {
                    undo(taken);
                    return false;
                }
                g.remove(u);
                taken.push(u);
                budget -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    if g.is_edgeless() {
        return true;
    }
    // every remaining vertex covers at most `budget` edges
    if budget == 0 || g.num_edges() > budget * budget || g.matching_bound() > budget {
        undo(taken);
        return false;
    }

    let v = (0..g.adj.len())
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap();

    let mut with_v = g.clone();
    with_v.remove(v);
    taken.push(v);
    if branch(&mut with_v, budget - 1, taken, stats) {
        *g = with_v;
        return true;
    }
    taken.pop();

    let nbrs: Vec<usize> = g.adj[v].iter().copied().collect();
    if nbrs.len() <= budget {
        let mut without_v = g.clone();
        for &u in &nbrs {
            without_v.remove(u);
        }
        taken.extend(&nbrs);
        if branch(&mut without_v, budget - nbrs.len(), taken, stats) {
            *g = without_v;
            return true;
        }
    }
    undo(taken);
    false
}

/// Size of a minimum cover, searching budgets upward from the matching
/// bound; `None` if it exceeds `limit`.
pub(crate) fn minimum_size(g: &VcGraph, limit: usize, stats: &mut VcStats) -> Option<usize> {
    let mut k = g.matching_bound();
    while k <= limit {
        if decide(g, k, stats).is_some() {
            return Some(k);
        }
        k += 1;
    }
    None
}

/// The minimum cover whose sorted vertex vector is lexicographically
/// smallest, if its size is at most `limit`.
pub(crate) fn lex_min_cover(g: &VcGraph, limit: usize, stats: &mut VcStats) -> Option<Vec<usize>> {
    let k = minimum_size(g, limit, stats)?;
    let mut g = g.clone();
    let mut budget = k;
    let mut cover = Vec::new();
    for v in 0..g.adj.len() {
        if budget == 0 {
            break;
        }
        if !g.has_edges_at(v) {
            continue;
        }
        let include = if g.loops[v] || g.degree(v) > budget {
            true
        } else {
            let mut h = g.clone();
            h.remove(v);
            decide(&h, budget - 1, stats).is_some()
        };
        if include {
            g.remove(v);
            cover.push(v);
            budget -= 1;
        } else {
            let nbrs: Vec<usize> = g.adj[v].iter().copied().collect();
            for &u in &nbrs {
                g.remove(u);
            }
            budget -= nbrs.len();
            cover.extend(nbrs);
        }
    }
    debug_assert!(g.is_edgeless());
    cover.sort_unstable();
    Some(cover)
}
