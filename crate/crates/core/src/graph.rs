//! Labeled undirected graphs over at most 64 vertices, vertex-set algebra and
//! the separation criterion.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_cap, Error, Result};

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count accepted by [`enumerate_graphs`].
pub const ENUMERATION_CAP: usize = 7;

/// A set of vertex identifiers packed into one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    #[inline]
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, in ascending bit-mask order, starting with the
    /// empty set and ending with `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Subsets of `self` with exactly `k` members, in lexicographic order of
    /// their sorted member lists.
    pub fn subsets_of_size(self, k: usize) -> Vec<VertexSet> {
        let members = self.to_vec();
        let mut out = Vec::new();
        if k > members.len() {
            return out;
        }
        let m = members.len();
        let mut idx: Vec<usize> = (0..k).collect();
        'outer: loop {
            out.push(idx.iter().map(|&i| members[i]).collect());
            let mut i = k;
            while i > 0 {
                i -= 1;
                if idx[i] < m - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    continue 'outer;
                }
            }
            return out;
        }
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(members: [usize; N]) -> Self {
        members.into_iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex identifier {bad} exceeds {}",
                MAX_VERTICES - 1
            )));
        }
        Ok(members.into_iter().collect())
    }
}

#[derive(Clone, Debug)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl DoubleEndedIterator for Members {
    #[inline]
    fn next_back(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = 63 - self.0.leading_zeros() as usize;
        self.0 &= !(1u64 << v);
        Some(v)
    }
}

impl ExactSizeIterator for Members {}

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(VertexSet(cur))
    }
}

/// Every way to place the members of `universe` into `K` pairwise-disjoint
/// (possibly empty) sets, leaving the rest out.
///
/// There are `(K + 1)^|universe|` such tuples.
pub fn disjoint_tuples<const K: usize>(universe: VertexSet) -> DisjointTuples<K> {
    let members = universe.to_vec();
    DisjointTuples {
        digits: vec![0; members.len()],
        members,
        done: false,
    }
}

pub struct DisjointTuples<const K: usize> {
    members: Vec<usize>,
    digits: Vec<u8>,
    done: bool,
}

impl<const K: usize> Iterator for DisjointTuples<K> {
    type Item = [VertexSet; K];

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut out = [VertexSet::EMPTY; K];
        for (&v, &d) in self.members.iter().zip(&self.digits) {
            if d > 0 {
                out[d as usize - 1].insert(v);
            }
        }
        // odometer, lowest vertex varies fastest
        self.done = true;
        for d in self.digits.iter_mut() {
            if (*d as usize) < K {
                *d += 1;
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    adj: Vec<VertexSet>,
}

impl UndirectedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_cap("a graph", n, MAX_VERTICES)?;
        Ok(UndirectedGraph {
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = all.without(v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}-{v} out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph whose edges are selected by the bits of `mask`, edge `k` being
    /// the `k`-th pair in lexicographic order `(0,1), (0,2), .., (n-2,n-1)`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self> {
        check_cap("an edge-mask graph", n, 11)?;
        let mut g = Self::empty(n)?;
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`UndirectedGraph::from_edge_mask`].
    pub fn edge_mask(&self) -> u64 {
        let n = self.n();
        let mut mask = 0u64;
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    mask |= 1 << k;
                }
                k += 1;
            }
        }
        mask
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Whether `z` separates `x` from `y`.
    ///
    /// Empty `x` or `y` is trivially separated.
    pub fn separated(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> Result<bool> {
        self.check_sets(&[x, y, z])?;
        if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
            return Err(Error::InvalidArgument(format!(
                "sets must be pairwise disjoint, got x={x} y={y} z={z}"
            )));
        }
        Ok(self.separated_unchecked(x, y, z))
    }

    /// [`UndirectedGraph::separated`] without argument validation.
    #[inline]
    pub fn separated_unchecked(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        if x.is_empty() || y.is_empty() {
            return true;
        }
        let allowed = self.vertices().difference(z);
        let mut reached = x;
        let mut frontier = x;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            next = next.intersection(allowed).difference(reached);
            if !next.is_disjoint(y) {
                return false;
            }
            reached = reached.union(next);
            frontier = next;
        }
        true
    }

    /// Whether every distinct pair of `w` is adjacent.
    pub fn is_complete(&self, w: VertexSet) -> Result<bool> {
        self.check_sets(&[w])?;
        Ok(self.is_complete_unchecked(w))
    }

    #[inline]
    pub fn is_complete_unchecked(&self, w: VertexSet) -> bool {
        w.iter().all(|v| w.without(v).is_subset(self.adj[v]))
    }

    fn check_sets(&self, sets: &[VertexSet]) -> Result<()> {
        let all = self.vertices();
        for s in sets {
            if !s.is_subset(all) {
                return Err(Error::InvalidArgument(format!(
                    "vertex set {s} out of range for n = {}",
                    self.n()
                )));
            }
        }
        Ok(())
    }

    /// Parses the `n m` / `u v` edge-list format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (n, m) = loop {
            let Some((i, line)) = lines.next() else {
                return Err(parse_err(1, 1, "missing header line \"n m\""));
            };
            if line.trim().is_empty() {
                continue;
            }
            let fields = fields(line);
            if fields.len() != 2 {
                return Err(parse_err(i + 1, 1, "header must be \"n m\""));
            }
            let n = parse_usize(i, &fields[0])?;
            let m = parse_usize(i, &fields[1])?;
            break (n, m);
        };
        if n > MAX_VERTICES {
            return Err(parse_err(
                1,
                1,
                &format!("n = {n} exceeds {MAX_VERTICES} vertices"),
            ));
        }
        let mut g = UndirectedGraph::empty(n)?;
        let mut seen = 0;
        let mut last_line = 1;
        for (i, line) in lines {
            last_line = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields = fields(line);
            if fields.len() != 2 {
                let col = fields.get(2).map_or(1, |f| f.0);
                return Err(parse_err(i + 1, col, "edge line must be \"u v\""));
            }
            let u = parse_usize(i, &fields[0])?;
            let v = parse_usize(i, &fields[1])?;
            for (id, col) in [(u, fields[0].0), (v, fields[1].0)] {
                if id >= n {
                    return Err(parse_err(
                        i + 1,
                        col,
                        &format!("vertex {id} out of range for n = {n}"),
                    ));
                }
            }
            if u >= v {
                return Err(parse_err(
                    i + 1,
                    fields[1].0,
                    "edge endpoints must satisfy u < v",
                ));
            }
            if g.has_edge(u, v) {
                return Err(parse_err(i + 1, 1, &format!("duplicate edge {u} {v}")));
            }
            if seen == m {
                return Err(parse_err(
                    i + 1,
                    1,
                    &format!("more edge lines than the declared m = {m}"),
                ));
            }
            g.add_edge(u, v);
            seen += 1;
        }
        if seen != m {
            return Err(parse_err(
                last_line + 1,
                1,
                &format!("expected {m} edge lines, found {seen}"),
            ));
        }
        Ok(g)
    }

    /// Writes the edge-list format with edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() {
            out.push_str(&format!("  {v} [label=\"{v}\"];\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UndirectedGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// JSON form: `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for UndirectedGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UndirectedGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        UndirectedGraph::from_edges(repr.n, &repr.edges).map_err(serde::de::Error::custom)
    }
}

fn fields(line: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, line[s..i].to_string()));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_usize(line_idx: usize, field: &(usize, String)) -> Result<usize> {
    field.1.parse::<usize>().map_err(|_| {
        parse_err(
            line_idx + 1,
            field.0,
            &format!("expected a non-negative integer, found {:?}", field.1),
        )
    })
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices in ascending edge-mask order.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumeration> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "graph enumeration needs n >= 1".into(),
        ));
    }
    check_cap("graph enumeration", n, ENUMERATION_CAP)?;
    let total = 1u64 << (n * (n - 1) / 2);
    Ok(GraphEnumeration {
        n,
        next: 0,
        end: total,
    })
}

/// A restartable, splittable stream over a range of edge masks.
#[derive(Clone, Debug)]
pub struct GraphEnumeration {
    n: usize,
    next: u64,
    end: u64,
}

impl GraphEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Remaining edge masks, for partitioning across workers.
    pub fn masks(&self) -> std::ops::Range<u64> {
        self.next..self.end
    }

    /// Restrict to a sub-range of edge masks.
    pub fn restrict(mut self, range: std::ops::Range<u64>) -> Self {
        self.next = self.next.max(range.start);
        self.end = self.end.min(range.end).max(self.next);
        self
    }
}

impl Iterator for GraphEnumeration {
    type Item = UndirectedGraph;

    fn next(&mut self) -> Option<UndirectedGraph> {
        if self.next >= self.end {
            return None;
        }
        let g = UndirectedGraph::from_edge_mask(self.n, self.next).expect("n within cap");
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = (self.end - self.next) as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for GraphEnumeration {}
