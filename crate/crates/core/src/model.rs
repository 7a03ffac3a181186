//! Dependency models: oracles answering `I(X, Y | Z)` over disjoint vertex
//! sets, and their graph, DAG and tabulated realizations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::chordal::find_peo;
use crate::error::{check_cap, Error, Result};
use crate::graph::{disjoint_tuples, UndirectedGraph, VertexSet};

/// Largest ground set that can be tabulated into an [`ExplicitModel`].
pub const EXPLICIT_CAP: usize = 7;

/// Largest ground set accepted by [`classify_map`].
pub const CLASSIFY_CAP: usize = 6;

/// A three-place independence predicate over the ground set `0..n`.
///
/// `query` is only defined for pairwise-disjoint sets within range; callers
/// that cannot guarantee this should go through [`checked_query`].
/// Implementations must answer `true` whenever `x` or `y` is empty, and must
/// be deterministic and safe to query concurrently.
pub trait DependencyModel: Send + Sync {
    fn n(&self) -> usize;

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool;

    /// Convenience for single-vertex arguments.
    fn query_pair(&self, a: usize, b: usize, z: VertexSet) -> bool {
        self.query(VertexSet::singleton(a), VertexSet::singleton(b), z)
    }
}

impl<M: DependencyModel + ?Sized> DependencyModel for &M {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        (**self).query(x, y, z)
    }
}

impl<M: DependencyModel + ?Sized> DependencyModel for Box<M> {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        (**self).query(x, y, z)
    }
}

/// Validates the arguments before querying.
pub fn checked_query<M: DependencyModel + ?Sized>(
    m: &M,
    x: VertexSet,
    y: VertexSet,
    z: VertexSet,
) -> Result<bool> {
    check_triple(m.n(), x, y, z)?;
    Ok(m.query(x, y, z))
}

fn check_triple(n: usize, x: VertexSet, y: VertexSet, z: VertexSet) -> Result<()> {
    let all = VertexSet::full(n);
    if !x.union(y).union(z).is_subset(all) {
        return Err(Error::InvalidArgument(format!(
            "sets x={x} y={y} z={z} out of range for n = {n}"
        )));
    }
    if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
        return Err(Error::InvalidArgument(format!(
            "sets must be pairwise disjoint, got x={x} y={y} z={z}"
        )));
    }
    Ok(())
}

/// Separation in an undirected graph.
#[derive(Clone, Debug)]
pub struct GraphModel {
    graph: UndirectedGraph,
}

impl GraphModel {
    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }
}

impl DependencyModel for GraphModel {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        self.graph.separated_unchecked(x, y, z)
    }
}

pub fn graph_model(g: &UndirectedGraph) -> GraphModel {
    GraphModel { graph: g.clone() }
}

/// Any closure, for ad-hoc or synthetic models.
pub struct FnModel<F> {
    n: usize,
    f: F,
}

impl<F> FnModel<F>
where
    F: Fn(VertexSet, VertexSet, VertexSet) -> bool + Send + Sync,
{
    pub fn new(n: usize, f: F) -> Self {
        FnModel { n, f }
    }
}

impl<F> DependencyModel for FnModel<F>
where
    F: Fn(VertexSet, VertexSet, VertexSet) -> bool + Send + Sync,
{
    fn n(&self) -> usize {
        self.n
    }

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        x.is_empty() || y.is_empty() || (self.f)(x, y, z)
    }
}

/// Directed acyclic graph stored as parent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    parents: Vec<VertexSet>,
    children: Vec<VertexSet>,
    topo: Vec<usize>,
}

impl Dag {
    pub fn new(parents: Vec<VertexSet>) -> Result<Self> {
        let n = parents.len();
        check_cap("a DAG", n, crate::graph::MAX_VERTICES)?;
        let all = VertexSet::full(n);
        let mut children = vec![VertexSet::EMPTY; n];
        for (v, &ps) in parents.iter().enumerate() {
            if !ps.is_subset(all) {
                return Err(Error::InvalidArgument(format!(
                    "parents {ps} of {v} out of range for n = {n}"
                )));
            }
            if ps.contains(v) {
                return Err(Error::InvalidArgument(format!("{v} is its own parent")));
            }
            for p in ps {
                children[p].insert(v);
            }
        }
        // Kahn's algorithm, lowest identifier first
        let mut indegree: Vec<usize> = parents.iter().map(|p| p.len()).collect();
        let mut ready: VertexSet = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.min() {
            ready.remove(v);
            topo.push(v);
            for c in children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidArgument("parent sets contain a directed cycle".into()));
        }
        Ok(Dag {
            parents,
            children,
            topo,
        })
    }

    /// Builds from `(from, to)` arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut parents = vec![VertexSet::EMPTY; n];
        for &(from, to) in arcs {
            if from >= n || to >= n {
                return Err(Error::InvalidArgument(format!(
                    "arc {from}->{to} out of range for n = {n}"
                )));
            }
            parents[to].insert(from);
        }
        Dag::new(parents)
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self, v: usize) -> VertexSet {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> VertexSet {
        self.children[v]
    }

    /// Topological order, ties broken by lowest identifier.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, ps) in self.parents.iter().enumerate() {
            out.extend(ps.iter().map(|p| (p, v)));
        }
        out.sort_unstable();
        out
    }

    /// `set` together with all its ancestors.
    pub fn ancestral_closure(&self, set: VertexSet) -> VertexSet {
        let mut closed = set;
        let mut frontier = set;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.parents[v]);
            }
            frontier = next.difference(closed);
            closed = closed.union(frontier);
        }
        closed
    }

    /// Proper descendants of `v`.
    pub fn descendants(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::EMPTY;
        let mut frontier = self.children[v];
        while !frontier.is_empty() {
            seen = seen.union(frontier);
            let mut next = VertexSet::EMPTY;
            for c in frontier {
                next = next.union(self.children[c]);
            }
            frontier = next.difference(seen);
        }
        seen
    }

    /// Undirected graph joining each vertex of `within` to its parents and
    /// marrying every pair of co-parents; vertices outside `within` stay
    /// isolated.
    pub fn moral_graph(&self, within: VertexSet) -> UndirectedGraph {
        let mut g = UndirectedGraph::empty(self.n()).expect("n within range");
        for v in within {
            let ps = self.parents[v].intersection(within);
            for p in ps {
                g.add_edge(p, v);
                for q in ps.iter().filter(|&q| q > p) {
                    g.add_edge(p, q);
                }
            }
        }
        g
    }
}

/// d-separation by traversal over (vertex, direction) states.
///
/// A trail may pass a non-collider only outside `z`, and a collider only when
/// the collider or one of its descendants lies in `z`.
pub fn d_separated(d: &Dag, x: VertexSet, y: VertexSet, z: VertexSet) -> Result<bool> {
    check_triple(d.n(), x, y, z)?;
    Ok(d_separated_unchecked(d, x, y, z))
}

pub fn d_separated_unchecked(d: &Dag, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
    if x.is_empty() || y.is_empty() {
        return true;
    }
    // colliders are passable iff they are in z or have a descendant in z,
    // i.e. iff they are ancestors of z
    let opens = d.ancestral_closure(z);
    // visited[0]: entered from a child (moving up); visited[1]: from a parent
    let mut visited = [VertexSet::EMPTY; 2];
    let mut queue: VecDeque<(usize, usize)> = x.iter().map(|v| (v, 0)).collect();
    while let Some((v, dir)) = queue.pop_front() {
        if visited[dir].contains(v) {
            continue;
        }
        visited[dir].insert(v);
        let in_z = z.contains(v);
        if !in_z && y.contains(v) {
            return false;
        }
        if dir == 0 {
            if !in_z {
                queue.extend(d.parents(v).iter().map(|p| (p, 0)));
                queue.extend(d.children(v).iter().map(|c| (c, 1)));
            }
        } else {
            if !in_z {
                queue.extend(d.children(v).iter().map(|c| (c, 1)));
            }
            if opens.contains(v) {
                queue.extend(d.parents(v).iter().map(|p| (p, 0)));
            }
        }
    }
    true
}

/// d-separation as separation in the moral graph of the smallest ancestral
/// set containing `x ∪ y ∪ z`.
pub fn d_separated_moral(d: &Dag, x: VertexSet, y: VertexSet, z: VertexSet) -> Result<bool> {
    check_triple(d.n(), x, y, z)?;
    Ok(d_separated_moral_unchecked(d, x, y, z))
}

pub fn d_separated_moral_unchecked(d: &Dag, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
    let ancestral = d.ancestral_closure(x.union(y).union(z));
    d.moral_graph(ancestral).separated_unchecked(x, y, z)
}

/// d-separation in a DAG.
#[derive(Clone, Debug)]
pub struct DagModel {
    dag: Dag,
}

impl DagModel {
    pub fn new(dag: Dag) -> Self {
        DagModel { dag }
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }
}

impl DependencyModel for DagModel {
    fn n(&self) -> usize {
        self.dag.n()
    }

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        d_separated_unchecked(&self.dag, x, y, z)
    }
}

/// A fully tabulated model, one truth value per ordered disjoint triple.
///
/// Each vertex plays one of four roles (outside, `x`, `y`, `z`), so the table
/// holds `4^n` entries. Both orientations of a pair are stored, which lets
/// hand-authored tables violate symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitModel {
    n: usize,
    table: Vec<bool>,
}

impl ExplicitModel {
    /// Tabulates `f`; entries with an empty `x` or `y` are forced to true.
    pub fn from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(VertexSet, VertexSet, VertexSet) -> bool,
    {
        check_cap("an explicit model", n, EXPLICIT_CAP)?;
        let mut table = vec![true; 4usize.pow(n as u32)];
        for [x, y, z] in disjoint_tuples::<3>(VertexSet::full(n)) {
            if !x.is_empty() && !y.is_empty() {
                table[Self::index(x, y, z)] = f(x, y, z);
            }
        }
        Ok(ExplicitModel { n, table })
    }

    pub fn all_true(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _, _| true)
    }

    pub fn all_false(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _, _| false)
    }

    #[inline]
    fn index(x: VertexSet, y: VertexSet, z: VertexSet) -> usize {
        let mut idx = 0usize;
        for (role, set) in [(1usize, x), (2, y), (3, z)] {
            for v in set {
                idx += role << (2 * v);
            }
        }
        idx
    }

    pub fn get(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> Result<bool> {
        check_triple(self.n, x, y, z)?;
        Ok(self.table[Self::index(x, y, z)])
    }

    /// Overwrites one ordered entry.
    pub fn set(&mut self, x: VertexSet, y: VertexSet, z: VertexSet, independent: bool) -> Result<()> {
        check_triple(self.n, x, y, z)?;
        if (x.is_empty() || y.is_empty()) && !independent {
            return Err(Error::InvalidArgument(
                "statements with an empty argument are always independent".into(),
            ));
        }
        self.table[Self::index(x, y, z)] = independent;
        Ok(())
    }

    /// Overwrites both `(x, y, z)` and `(y, x, z)`.
    pub fn set_symmetric(
        &mut self,
        x: VertexSet,
        y: VertexSet,
        z: VertexSet,
        independent: bool,
    ) -> Result<()> {
        self.set(x, y, z, independent)?;
        self.set(y, x, z, independent)
    }

    /// Number of ordered role assignments, `4^n`.
    pub fn raw_len(&self) -> usize {
        self.table.len()
    }

    /// Number of triples with `x` lexicographically before `y`; empty
    /// arguments included.
    pub fn canonical_len(&self) -> usize {
        disjoint_tuples::<3>(VertexSet::full(self.n))
            .filter(|[x, y, _]| is_canonical(*x, *y))
            .count()
    }

    pub fn to_file(&self) -> ExplicitModelFile {
        let mut records = Vec::new();
        for [x, y, z] in disjoint_tuples::<3>(VertexSet::full(self.n)) {
            if x.is_empty() || y.is_empty() || !is_canonical(x, y) {
                continue;
            }
            let forward = self.table[Self::index(x, y, z)];
            records.push(StatementRecord { x, y, z, independent: forward });
            let backward = self.table[Self::index(y, x, z)];
            if backward != forward {
                records.push(StatementRecord { x: y, y: x, z, independent: backward });
            }
        }
        ExplicitModelFile { n: self.n, records }
    }

    /// Canonical records set both orientations; a record with `x` after `y`
    /// overrides only its own orientation. Every canonical triple with
    /// non-empty `x` and `y` must be present.
    pub fn from_file(file: &ExplicitModelFile) -> Result<Self> {
        let n = file.n;
        let mut m = ExplicitModel::all_true(n)?;
        let mut covered = vec![false; m.table.len()];
        let (canonical, overrides): (Vec<_>, Vec<_>) = file
            .records
            .iter()
            .partition(|r| r.x.is_empty() || r.y.is_empty() || is_canonical(r.x, r.y));
        for r in canonical {
            if covered[Self::index(r.x, r.y, r.z)] {
                return Err(Error::InvalidArgument(format!(
                    "duplicate record for x={} y={} z={}",
                    r.x, r.y, r.z
                )));
            }
            m.set_symmetric(r.x, r.y, r.z, r.independent)?;
            covered[Self::index(r.x, r.y, r.z)] = true;
        }
        for r in overrides {
            m.set(r.x, r.y, r.z, r.independent)?;
        }
        for [x, y, z] in disjoint_tuples::<3>(VertexSet::full(n)) {
            if !x.is_empty() && !y.is_empty() && is_canonical(x, y) && !covered[Self::index(x, y, z)] {
                return Err(Error::InvalidArgument(format!(
                    "model table is missing x={x} y={y} z={z}"
                )));
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }
}

fn is_canonical(x: VertexSet, y: VertexSet) -> bool {
    x.lex_cmp(y).is_lt()
}

impl DependencyModel for ExplicitModel {
    fn n(&self) -> usize {
        self.n
    }

    fn query(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        self.table[Self::index(x, y, z)]
    }
}

/// JSON layout of an [`ExplicitModel`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitModelFile {
    pub n: usize,
    pub records: Vec<StatementRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementRecord {
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub independent: bool,
}

/// Materializes any model by querying every ordered disjoint triple.
pub fn explicit_from_model<M: DependencyModel + ?Sized>(m: &M) -> Result<ExplicitModel> {
    ExplicitModel::from_fn(m.n(), |x, y, z| m.query(x, y, z))
}

/// The graph joining `a` and `b` exactly when they are dependent given
/// everything else.
pub fn model_graph<M: DependencyModel + ?Sized>(m: &M) -> UndirectedGraph {
    let n = m.n();
    let all = VertexSet::full(n);
    let mut g = UndirectedGraph::empty(n).expect("model size within range");
    for a in 0..n {
        for b in a + 1..n {
            if !m.query_pair(a, b, all.without(a).without(b)) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapClass {
    pub i_map: bool,
    pub d_map: bool,
    pub perfect: bool,
}

/// Whether `g`'s separations imply the model's independencies (I-map), are
/// implied by them (D-map), or both.
pub fn classify_map<M: DependencyModel + ?Sized>(g: &UndirectedGraph, m: &M) -> Result<MapClass> {
    check_cap("classify_map", m.n(), CLASSIFY_CAP)?;
    if g.n() != m.n() {
        return Err(Error::InvalidArgument(format!(
            "graph has {} vertices but the model has {}",
            g.n(),
            m.n()
        )));
    }
    let (mut i_map, mut d_map) = (true, true);
    for [x, y, z] in disjoint_tuples::<3>(g.vertices()) {
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let sep = g.separated_unchecked(x, y, z);
        let ind = m.query(x, y, z);
        i_map &= !sep || ind;
        d_map &= !ind || sep;
        if !i_map && !d_map {
            break;
        }
    }
    Ok(MapClass {
        i_map,
        d_map,
        perfect: i_map && d_map,
    })
}

/// Orients a chordal graph along its perfect elimination ordering: every
/// edge points from the later-eliminated endpoint to the earlier one, so the
/// parents of `v` are exactly its later neighbors and form a complete set.
pub fn orient_by_peo(g: &UndirectedGraph) -> Result<Dag> {
    let peo = find_peo(g)
        .ok_or_else(|| Error::NotChordal("orientation needs a perfect elimination ordering".into()))?;
    let pos = peo.positions();
    let parents = (0..g.n())
        .map(|v| g.neighbors(v).iter().filter(|&u| pos[u] > pos[v]).collect())
        .collect();
    Dag::new(parents)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s<const N: usize>(m: [usize; N]) -> VertexSet {
        VertexSet::from(m)
    }

    const E: VertexSet = VertexSet::EMPTY;

    fn g(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, edges).unwrap()
    }

    fn diamond() -> UndirectedGraph {
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    fn collider() -> Dag {
        Dag::from_arcs(3, &[(0, 2), (1, 2)]).unwrap()
    }

    fn chain() -> Dag {
        Dag::from_arcs(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn graph_model_examples() {
        let m = graph_model(&g(3, &[(0, 1), (1, 2)]));
        assert!(m.query(s([0]), s([2]), s([1])));
        assert!(graph_model(&diamond()).query(s([0]), s([2]), s([1, 3])));
        assert!(!m.query(s([0]), s([1]), E));
        assert!(checked_query(&m, s([0]), s([0]), E).is_err());
    }

    #[test]
    fn dag_validation() {
        assert!(Dag::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Dag::from_arcs(2, &[(0, 0)]).is_err());
        assert!(Dag::from_arcs(2, &[(0, 5)]).is_err());
        let d = Dag::from_arcs(4, &[(3, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(d.topological_order(), &[2, 3, 0, 1]);
        assert_eq!(d.descendants(3), s([0, 1]));
        assert_eq!(d.ancestral_closure(s([1])), s([0, 1, 2, 3]));
    }

    #[test]
    fn d_separation_examples() {
        for f in [d_separated, d_separated_moral] {
            assert!(f(&collider(), s([0]), s([1]), E).unwrap());
            assert!(!f(&collider(), s([0]), s([1]), s([2])).unwrap());
            assert!(f(&chain(), s([0]), s([2]), s([1])).unwrap());
            assert!(!f(&chain(), s([0]), s([2]), E).unwrap());
            assert!(f(&chain(), s([0]), s([1]), s([1])).is_err());
        }
    }

    #[test]
    fn descendant_of_collider_opens_it() {
        // 0 -> 2 <- 1, 2 -> 3
        let d = Dag::from_arcs(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        assert!(!d_separated(&d, s([0]), s([1]), s([3])).unwrap());
        assert!(!d_separated_moral(&d, s([0]), s([1]), s([3])).unwrap());
        assert!(d_separated(&d, s([0]), s([1]), E).unwrap());
    }

    #[test]
    fn explicit_examples() {
        let one = explicit_from_model(&graph_model(&UndirectedGraph::empty(1).unwrap())).unwrap();
        assert_eq!(one.raw_len(), 4);
        assert!(one.table.iter().all(|&b| b));

        let two = explicit_from_model(&graph_model(&UndirectedGraph::empty(2).unwrap())).unwrap();
        assert!(two.get(s([0]), s([1]), E).unwrap());

        let path = g(3, &[(0, 1), (1, 2)]);
        let table = explicit_from_model(&graph_model(&path)).unwrap();
        assert_eq!(table.raw_len(), 64);
        let mut checked = 0;
        for [x, y, z] in disjoint_tuples::<3>(VertexSet::full(3)) {
            if !x.is_empty() && !y.is_empty() {
                assert_eq!(table.get(x, y, z).unwrap(), path.separated(x, y, z).unwrap());
                checked += 1;
            }
        }
        assert_eq!(checked, 18);
        assert!(explicit_from_model(&graph_model(&UndirectedGraph::empty(8).unwrap())).is_err());
    }

    #[test]
    fn explicit_rejects_false_empty_statement() {
        let mut m = ExplicitModel::all_true(2).unwrap();
        assert!(m.set(s([0]), E, E, false).is_err());
        assert!(m.set(s([0]), s([1]), E, false).is_ok());
        assert!(!m.query(s([0]), s([1]), E));
        assert!(m.query(s([1]), s([0]), E));
    }

    #[test]
    fn explicit_json_keeps_asymmetry() {
        let mut m = explicit_from_model(&graph_model(&g(3, &[(0, 1)]))).unwrap();
        m.set(s([2]), s([0]), s([1]), false).unwrap();
        let file = m.to_file();
        let canonical = file.records.iter().filter(|r| r.x.lex_cmp(r.y).is_lt()).count();
        // 3 pairs of singletons x 2 conditioning choices + 3 singleton/pair splits
        assert_eq!(canonical, 9);
        assert_eq!(file.records.len(), 10);
        let back = ExplicitModel::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn explicit_json_requires_coverage() {
        let mut file = ExplicitModel::all_true(3).unwrap().to_file();
        file.records.pop();
        assert!(ExplicitModel::from_file(&file).is_err());
        let mut file = ExplicitModel::all_true(3).unwrap().to_file();
        let dup = file.records[0].clone();
        file.records.push(dup);
        assert!(ExplicitModel::from_file(&file).is_err());
    }

    #[test]
    fn model_graph_examples() {
        let d = diamond();
        assert_eq!(model_graph(&graph_model(&d)), d);
        assert_eq!(model_graph(&ExplicitModel::all_true(4).unwrap()), UndirectedGraph::empty(4).unwrap());
        assert_eq!(
            model_graph(&ExplicitModel::all_false(4).unwrap()),
            UndirectedGraph::complete(4).unwrap()
        );
    }

    #[test]
    fn classify_examples() {
        let d = diamond();
        let m = graph_model(&d);
        let c = classify_map(&model_graph(&m), &m).unwrap();
        assert!(c.perfect);

        let k4 = UndirectedGraph::complete(4).unwrap();
        assert!(classify_map(&k4, &m).unwrap().i_map);
        assert!(!classify_map(&k4, &m).unwrap().d_map);

        let empty = UndirectedGraph::empty(4).unwrap();
        assert!(classify_map(&empty, &ExplicitModel::all_true(4).unwrap()).unwrap().perfect);
        assert!(!classify_map(&empty, &m).unwrap().i_map);

        assert!(classify_map(&k4, &graph_model(&UndirectedGraph::complete(3).unwrap())).is_err());
        let big = UndirectedGraph::empty(7).unwrap();
        assert!(matches!(classify_map(&big, &graph_model(&big)), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn orientation_examples() {
        let path = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(orient_by_peo(&path).unwrap().arcs(), vec![(0, 1), (1, 2)]);

        let tri = orient_by_peo(&UndirectedGraph::complete(3).unwrap()).unwrap();
        assert_eq!(tri.arcs().len(), 3);
        for v in 0..3 {
            assert!(UndirectedGraph::complete(3).unwrap().is_complete_unchecked(tri.parents(v)));
        }

        let dc = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]);
        let dag = orient_by_peo(&dc).unwrap();
        for [x, y, z] in disjoint_tuples::<3>(dc.vertices()) {
            assert_eq!(d_separated(&dag, x, y, z).unwrap(), dc.separated(x, y, z).unwrap());
        }

        assert!(matches!(orient_by_peo(&diamond()), Err(Error::NotChordal(_))));
    }
}
