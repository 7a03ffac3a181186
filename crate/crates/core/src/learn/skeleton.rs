use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{chordalize, CiSource};
use crate::chordal::is_chordal;
use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnConfig {
    /// Largest conditioning set tried; `None` means `n - 2`.
    pub max_cond: Option<usize>,
    /// Only try separating sets that are complete in the current graph.
    pub c8_pruning: bool,
    /// Fix `γ–δ` when `Z∪γ∪δ` separates but `Z∪γ` and `Z∪δ` did not.
    pub c6_fixing: bool,
    /// Triangulate a non-chordal result.
    pub chordalize: bool,
    /// Ask every CI question twice and fail if the answers differ.
    pub check_consistency: bool,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig {
            max_cond: None,
            c8_pruning: true,
            c6_fixing: true,
            chordalize: false,
            check_consistency: true,
        }
    }
}

impl LearnConfig {
    /// Plain PC skeleton search: no pruning, no fixing.
    pub fn pc_baseline() -> Self {
        LearnConfig {
            c8_pruning: false,
            c6_fixing: false,
            ..LearnConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sepset {
    pub a: usize,
    pub b: usize,
    pub set: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnResult {
    /// Learned graph, including any fill edges.
    pub skeleton: UndirectedGraph,
    /// Separating set of every removed pair, sorted by pair.
    pub sepsets: Vec<Sepset>,
    pub fixed_edges: Vec<(usize, usize)>,
    pub chordalized: bool,
    pub fill_edges: Vec<(usize, usize)>,
    /// CI tests issued at each conditioning-set size.
    pub ci_tests_per_level: Vec<usize>,
    pub ci_tests: usize,
    /// Times the fixing rule pointed at an edge already removed by a test.
    pub fixing_conflicts: usize,
}

impl LearnResult {
    pub fn sepset(&self, a: usize, b: usize) -> Option<VertexSet> {
        let (a, b) = (a.min(b), a.max(b));
        self.sepsets.iter().find(|s| s.a == a && s.b == b).map(|s| s.set)
    }
}

struct Learner<'a, C: ?Sized> {
    ci: &'a C,
    config: &'a LearnConfig,
    cache: RefCell<HashMap<(usize, usize, VertexSet), bool>>,
    graph: UndirectedGraph,
    fixed: UndirectedGraph,
    sepsets: Vec<Sepset>,
    per_level: Vec<usize>,
    conflicts: usize,
}

impl<C: CiSource + ?Sized> Learner<'_, C> {
    fn test(&mut self, a: usize, b: usize, cond: VertexSet) -> Result<bool> {
        let key = (a.min(b), a.max(b), cond);
        if let Some(&known) = self.cache.borrow().get(&key) {
            return Ok(known);
        }
        let answer = self.ci.independent(key.0, key.1, cond)?;
        if self.config.check_consistency {
            let again = self.ci.independent(key.0, key.1, cond)?;
            if again != answer {
                return Err(Error::InconsistentOracle(format!(
                    "I({}, {} | {cond}) answered {answer} then {again}",
                    key.0, key.1
                )));
            }
        }
        *self.per_level.last_mut().expect("level started") += 1;
        self.cache.borrow_mut().insert(key, answer);
        Ok(answer)
    }

    fn cached(&self, a: usize, b: usize, cond: VertexSet) -> Option<bool> {
        self.cache.borrow().get(&(a.min(b), a.max(b), cond)).copied()
    }

    /// Size-`level` subsets of the neighbors of `a`, then of `b`, each in
    /// lexicographic order, without repeats.
    fn candidates(&self, a: usize, b: usize, level: usize) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = Vec::new();
        for side in [self.graph.neighbors(a).without(b), self.graph.neighbors(b).without(a)] {
            for w in side.subsets_of_size(level) {
                if self.config.c8_pruning && !self.graph.is_complete_unchecked(w) {
                    continue;
                }
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// `I(a,b | w)` was just found; look for `γ, δ ∈ w` with both
    /// `I(a,b | w∖δ)` and `I(a,b | w∖γ)` already known to fail.
    fn apply_fixing_rule(&mut self, a: usize, b: usize, w: VertexSet) {
        for g in w {
            for d in w.iter().filter(|&d| d > g) {
                let dependent = |c: Option<bool>| c == Some(false);
                if dependent(self.cached(a, b, w.without(d))) && dependent(self.cached(a, b, w.without(g))) {
                    if self.graph.has_edge(g, d) {
                        self.fixed.add_edge(g, d);
                    } else {
                        self.conflicts += 1;
                    }
                }
            }
        }
    }

    fn run(&mut self, n: usize) -> Result<()> {
        let max_level = self.config.max_cond.unwrap_or(n.saturating_sub(2));
        for level in 0..=max_level {
            let eligible = self.graph.edges().into_iter().any(|(a, b)| {
                self.graph.neighbors(a).len() > level || self.graph.neighbors(b).len() > level
            });
            if !eligible {
                break;
            }
            self.per_level.push(0);
            for (a, b) in self.graph.edges() {
                if !self.graph.has_edge(a, b) || self.fixed.has_edge(a, b) {
                    continue;
                }
                for w in self.candidates(a, b, level) {
                    if self.test(a, b, w)? {
                        self.graph.remove_edge(a, b);
                        self.sepsets.push(Sepset { a, b, set: w });
                        if self.config.c6_fixing {
                            self.apply_fixing_rule(a, b, w);
                        }
                        break;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Learns an undirected skeleton from CI answers.
///
/// Starting from the complete graph, conditioning sets grow one vertex per
/// pass. Each remaining, non-fixed edge `α–β` is tested against candidate
/// sets drawn from the current neighbors of `α` and then `β`; the first
/// independence removes the edge and records its separator. Fixed edges are
/// never tested again.
pub fn learn_skeleton<C: CiSource + ?Sized>(ci: &C, config: &LearnConfig) -> Result<LearnResult> {
    let n = ci.n();
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "learning",
            n,
            cap: MAX_VERTICES,
        });
    }
    let mut learner = Learner {
        ci,
        config,
        cache: RefCell::new(HashMap::new()),
        graph: UndirectedGraph::complete(n)?,
        fixed: UndirectedGraph::empty(n)?,
        sepsets: Vec::new(),
        per_level: Vec::new(),
        conflicts: 0,
    };
    learner.run(n)?;

    let mut skeleton = learner.graph;
    let mut fill_edges = Vec::new();
    let mut chordalized = false;
    if config.chordalize && !is_chordal(&skeleton) {
        let (filled, fill) = chordalize(&skeleton);
        skeleton = filled;
        fill_edges = fill;
        chordalized = true;
    }
    let mut sepsets = learner.sepsets;
    sepsets.sort_by_key(|s| (s.a, s.b));
    let ci_tests = learner.per_level.iter().sum();
    Ok(LearnResult {
        skeleton,
        sepsets,
        fixed_edges: learner.fixed.edges(),
        chordalized,
        fill_edges,
        ci_tests_per_level: learner.per_level,
        ci_tests,
        fixing_conflicts: learner.conflicts,
    })
}

/// F1 score of the learned edge set against the true one; 1 when both are
/// empty.
pub fn skeleton_f1(truth: &UndirectedGraph, learned: &UndirectedGraph) -> f64 {
    let true_edges = truth.edges();
    let found = learned.edges();
    if true_edges.is_empty() && found.is_empty() {
        return 1.0;
    }
    let hits = found.iter().filter(|&&(u, v)| truth.has_edge(u, v)).count() as f64;
    2.0 * hits / (true_edges.len() + found.len()) as f64
}
