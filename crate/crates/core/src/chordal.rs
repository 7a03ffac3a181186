//! Chordality recognition, perfect elimination orderings, clique trees and
//! minimal separators.

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::graph::{UndirectedGraph, VertexSet};

/// Largest graph accepted by the brute-force routines in this module.
pub const BRUTE_FORCE_CAP: usize = 10;

/// A permutation of `0..n` read as an elimination order: `order[0]` is
/// eliminated first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EliminationOrdering(Vec<usize>);

impl EliminationOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(EliminationOrdering(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// `positions()[v]` is the index of `v` in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Neighbors of `v` that come after it in the order.
    pub fn later_neighbors(&self, g: &UndirectedGraph, v: usize) -> VertexSet {
        let pos = self.positions();
        later_neighbors(g, &pos, v)
    }

    /// Whether every vertex's later neighbors form a complete set in `g`.
    pub fn is_perfect_for(&self, g: &UndirectedGraph) -> bool {
        if self.0.len() != g.n() {
            return false;
        }
        let pos = self.positions();
        (0..g.n()).all(|v| g.is_complete_unchecked(later_neighbors(g, &pos, v)))
    }
}

fn later_neighbors(g: &UndirectedGraph, pos: &[usize], v: usize) -> VertexSet {
    g.neighbors(v).iter().filter(|&u| pos[u] > pos[v]).collect()
}

/// Maximum-cardinality search visit order, ties broken by lowest identifier.
pub fn maximum_cardinality_search(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .difference(visited)
            .iter()
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited.insert(v);
        order.push(v);
        for u in g.neighbors(v).difference(visited) {
            weight[u] += 1;
        }
    }
    order
}

/// A perfect elimination ordering of `g`, or `None` when `g` is not chordal.
///
/// The candidate is the reverse of the maximum-cardinality search order.
pub fn find_peo(g: &UndirectedGraph) -> Option<EliminationOrdering> {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    let peo = EliminationOrdering(order);
    peo.is_perfect_for(g).then_some(peo)
}

pub fn is_chordal(g: &UndirectedGraph) -> bool {
    find_peo(g).is_some()
}

/// A chordless cycle of length at least four, found by exhaustive search
/// over induced paths.
///
/// The cycle starts at its smallest vertex. Exponential; capped at
/// [`BRUTE_FORCE_CAP`] vertices.
pub fn chordless_cycle_witness(g: &UndirectedGraph) -> Result<Option<Vec<usize>>> {
    check_cap("chordless_cycle_witness", g.n(), BRUTE_FORCE_CAP)?;
    for start in 0..g.n() {
        for second in g.neighbors(start).iter().filter(|&v| v > start) {
            let mut path = vec![start, second];
            if let Some(cycle) = extend_induced_path(g, &mut path) {
                return Ok(Some(cycle));
            }
        }
    }
    Ok(None)
}

/// A chordless cycle of length at least four in polynomial time, with no
/// size cap.
///
/// For a vertex `v` with non-adjacent neighbors `u` and `w`, a shortest
/// `u`–`w` path avoiding the rest of `v`'s closed neighborhood is induced
/// and misses `N(v)` inside, so together with `v` it is chordless. Every
/// chordless cycle yields such a triple, so `None` means `g` is chordal.
pub fn find_chordless_cycle(g: &UndirectedGraph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nbrs = g.neighbors(v);
        for u in nbrs {
            for w in nbrs.iter().filter(|&w| w > u && !g.has_edge(u, w)) {
                let blocked = nbrs.with(v).without(u).without(w);
                if let Some(path) = shortest_path_avoiding(g, u, w, blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path_avoiding(g: &UndirectedGraph, from: usize, to: usize, blocked: VertexSet) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut seen = blocked.with(from);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            while *path.last().unwrap() != from {
                path.push(prev[*path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x).difference(seen) {
            seen.insert(y);
            prev[y] = x;
            queue.push_back(y);
        }
    }
    None
}

fn extend_induced_path(g: &UndirectedGraph, path: &mut Vec<usize>) -> Option<Vec<usize>> {
    let start = path[0];
    let last = *path.last().unwrap();
    let interior: VertexSet = path[1..path.len() - 1].iter().copied().collect();
    let on_path: VertexSet = path.iter().copied().collect();
    for v in g.neighbors(last).difference(on_path) {
        if v < start || !g.neighbors(v).is_disjoint(interior) {
            continue;
        }
        if g.has_edge(v, start) {
            if path.len() >= 3 {
                let mut cycle = path.clone();
                cycle.push(v);
                return Some(cycle);
            }
            // closing here would only make a triangle
            continue;
        }
        path.push(v);
        if let Some(c) = extend_induced_path(g, path) {
            return Some(c);
        }
        path.pop();
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTreeEdge {
    pub a: usize,
    pub b: usize,
    pub separator: VertexSet,
}

/// Maximal cliques of a chordal graph joined into a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTree {
    pub cliques: Vec<VertexSet>,
    pub edges: Vec<CliqueTreeEdge>,
}

impl CliqueTree {
    /// `edges` connect all cliques without a cycle.
    pub fn is_tree(&self) -> bool {
        let k = self.cliques.len();
        if k == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() != k - 1 {
            return false;
        }
        let mut uf = UnionFind::new(k);
        self.edges
            .iter()
            .all(|e| e.a < k && e.b < k && uf.union(e.a, e.b))
    }

    /// For every vertex, the cliques containing it induce a connected subtree.
    pub fn has_running_intersection(&self) -> bool {
        let covered = self
            .cliques
            .iter()
            .fold(VertexSet::EMPTY, |acc, c| acc.union(*c));
        covered.iter().all(|v| {
            let holders: Vec<usize> = (0..self.cliques.len())
                .filter(|&i| self.cliques[i].contains(v))
                .collect();
            let mut uf = UnionFind::new(self.cliques.len());
            let mut merges = 0;
            for e in &self.edges {
                if self.cliques[e.a].contains(v) && self.cliques[e.b].contains(v) && uf.union(e.a, e.b)
                {
                    merges += 1;
                }
            }
            merges + 1 == holders.len()
        })
    }

    pub fn separators_match(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.separator == self.cliques[e.a].intersection(self.cliques[e.b]))
    }
}

/// Clique tree of a chordal graph: maximal cliques read off the perfect
/// elimination ordering, joined by a maximum-weight spanning tree on
/// intersection sizes.
///
/// Cliques are sorted lexicographically. Ties between candidate tree edges
/// go to the lexicographically smaller `(a, b)` index pair.
pub fn clique_tree(g: &UndirectedGraph) -> Result<CliqueTree> {
    let peo = find_peo(g).ok_or_else(|| {
        Error::NotChordal("clique trees exist only for chordal graphs".into())
    })?;
    let pos = peo.positions();
    let candidates: Vec<VertexSet> = peo
        .as_slice()
        .iter()
        .map(|&v| later_neighbors(g, &pos, v).with(v))
        .collect();
    let mut cliques: Vec<VertexSet> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| c.is_proper_subset(*d)))
        .copied()
        .collect();
    cliques.sort_by(|a, b| a.lex_cmp(*b));
    cliques.dedup();

    let k = cliques.len();
    let mut pairs = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for a in 0..k {
        for b in a + 1..k {
            pairs.push((cliques[a].intersection(cliques[b]).len(), a, b));
        }
    }
    // stable sort keeps (a, b) ascending within equal weights
    pairs.sort_by_key(|p| std::cmp::Reverse(p.0));
    let mut uf = UnionFind::new(k);
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    for (_, a, b) in pairs {
        if uf.union(a, b) {
            edges.push(CliqueTreeEdge {
                a,
                b,
                separator: cliques[a].intersection(cliques[b]),
            });
        }
    }
    Ok(CliqueTree { cliques, edges })
}

/// All inclusion-minimal sets separating `a` from `b`, by subset enumeration.
///
/// Adjacent vertices have no separator and yield an empty list.
pub fn minimal_separators(g: &UndirectedGraph, a: usize, b: usize) -> Result<Vec<VertexSet>> {
    check_cap("minimal_separators", g.n(), BRUTE_FORCE_CAP)?;
    if a >= g.n() || b >= g.n() || a == b {
        return Err(Error::InvalidArgument(format!(
            "need two distinct vertices below {}, got {a} and {b}",
            g.n()
        )));
    }
    if g.has_edge(a, b) {
        return Ok(Vec::new());
    }
    let (sa, sb) = (VertexSet::singleton(a), VertexSet::singleton(b));
    let rest = g.vertices().without(a).without(b);
    let mut out: Vec<VertexSet> = rest
        .subsets()
        .filter(|&z| {
            // separation is monotone in z, so single deletions decide minimality
            g.separated_unchecked(sa, sb, z)
                && z.iter().all(|v| !g.separated_unchecked(sa, sb, z.without(v)))
        })
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then(x.lex_cmp(*y)));
    Ok(out)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
