//! Model checkers for the independence axioms C1–C9'.
//!
//! Each checker sweeps every instantiation of its quantified variables over
//! pairwise-disjoint vertex sets (or distinct vertices) and records those
//! where the premises hold and the conclusion fails. Sweeps run in a fixed
//! order, so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::graph::{disjoint_tuples, UndirectedGraph, VertexSet};
use crate::model::{model_graph, DependencyModel};

/// Largest ground set any checker accepts.
pub const AXIOM_CAP: usize = 7;

/// Reports keep at most this many violations; the count is always exact.
pub const MAX_REPORTED_VIOLATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "C1")]
    Symmetry,
    #[serde(rename = "C2")]
    Decomposition,
    #[serde(rename = "C3")]
    StrongUnion,
    #[serde(rename = "C4")]
    Intersection,
    #[serde(rename = "C5")]
    Transitivity,
    #[serde(rename = "C6")]
    StrongChordality,
    #[serde(rename = "C7")]
    Chordality,
    #[serde(rename = "C8")]
    CliqueSeparability,
    #[serde(rename = "C9")]
    Completeness,
    #[serde(rename = "C9'")]
    CompletenessPrime,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Symmetry,
        Axiom::Decomposition,
        Axiom::StrongUnion,
        Axiom::Intersection,
        Axiom::Transitivity,
        Axiom::StrongChordality,
        Axiom::Chordality,
        Axiom::CliqueSeparability,
        Axiom::Completeness,
        Axiom::CompletenessPrime,
    ];

    /// C1–C5, the axioms of separation in undirected graphs.
    pub const GRAPH_ISOMORPHISM: [Axiom; 5] = [
        Axiom::Symmetry,
        Axiom::Decomposition,
        Axiom::StrongUnion,
        Axiom::Intersection,
        Axiom::Transitivity,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::Symmetry => "C1",
            Axiom::Decomposition => "C2",
            Axiom::StrongUnion => "C3",
            Axiom::Intersection => "C4",
            Axiom::Transitivity => "C5",
            Axiom::StrongChordality => "C6",
            Axiom::Chordality => "C7",
            Axiom::CliqueSeparability => "C8",
            Axiom::Completeness => "C9",
            Axiom::CompletenessPrime => "C9'",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Symmetry => "symmetry",
            Axiom::Decomposition => "decomposition",
            Axiom::StrongUnion => "strong union",
            Axiom::Intersection => "intersection",
            Axiom::Transitivity => "transitivity",
            Axiom::StrongChordality => "strong chordality",
            Axiom::Chordality => "chordality",
            Axiom::CliqueSeparability => "clique-separability",
            Axiom::Completeness => "completeness",
            Axiom::CompletenessPrime => "completeness (separator form)",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase();
        Axiom::ALL
            .into_iter()
            .find(|a| a.label() == key || a.label().replace('\'', "P") == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown axiom {s:?} (expected C1..C9, C9')")))
    }
}

/// The variables an axiom instance binds. Unused fields stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bindings {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    #[serde(flatten)]
    pub bindings: Bindings,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub violations: Vec<AxiomViolation>,
    pub violation_count: usize,
}

impl AxiomReport {
    pub fn is_truncated(&self) -> bool {
        self.violations.len() < self.violation_count
    }
}

/// Reports for several axioms over the same model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSuite {
    pub n: usize,
    pub reports: Vec<AxiomReport>,
}

impl AxiomSuite {
    pub fn report(&self, axiom: Axiom) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| r.axiom == axiom)
    }

    /// `None` when `axiom` was not checked.
    pub fn holds(&self, axiom: Axiom) -> Option<bool> {
        self.report(axiom).map(|r| r.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(|r| r.holds)
    }
}

/// Model-level adjacency: `γ–δ` present iff `¬I(γ, δ | U ∖ {γ, δ})`.
struct Context<'a, M: ?Sized> {
    m: &'a M,
    all: VertexSet,
    adjacency: UndirectedGraph,
}

impl<'a, M: DependencyModel + ?Sized> Context<'a, M> {
    fn new(m: &'a M, needs_adjacency: bool) -> Self {
        let adjacency = if needs_adjacency {
            model_graph(m)
        } else {
            UndirectedGraph::empty(m.n()).expect("n within cap")
        };
        Context {
            m,
            all: VertexSet::full(m.n()),
            adjacency,
        }
    }

    #[inline]
    fn i(&self, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
        self.m.query(x, y, z)
    }

    #[inline]
    fn ip(&self, a: usize, b: usize, z: VertexSet) -> bool {
        self.m.query_pair(a, b, z)
    }

    /// `|w| <= 1` or every pair in `w` is model-adjacent.
    fn complete(&self, w: VertexSet) -> bool {
        self.adjacency.is_complete_unchecked(w)
    }
}

fn needs_adjacency(axiom: Axiom) -> bool {
    matches!(
        axiom,
        Axiom::StrongChordality
            | Axiom::CliqueSeparability
            | Axiom::Completeness
            | Axiom::CompletenessPrime
    )
}

/// Evaluates one instantiation; `Some(detail)` when it is a violation.
fn evaluate<M: DependencyModel + ?Sized>(
    axiom: Axiom,
    b: &Bindings,
    cx: &Context<'_, M>,
) -> Option<String> {
    let set = |s: Option<VertexSet>| s.unwrap_or_default();
    let (x, y, z, w) = (set(b.x), set(b.y), set(b.z), set(b.w));
    match axiom {
        Axiom::Symmetry => (cx.i(x, y, z) && !cx.i(y, x, z))
            .then(|| "I(X,Y|Z) holds but I(Y,X|Z) fails".into()),
        Axiom::Decomposition => (cx.i(x, y.union(w), z) && !cx.i(x, y, z))
            .then(|| "I(X,Y∪W|Z) holds but I(X,Y|Z) fails".into()),
        Axiom::StrongUnion => (cx.i(x, y, z) && !cx.i(x, y, z.union(w)))
            .then(|| "I(X,Y|Z) holds but I(X,Y|Z∪W) fails".into()),
        Axiom::Intersection => (cx.i(x, y, z.union(w))
            && cx.i(x, w, z.union(y))
            && !cx.i(x, y.union(w), z))
        .then(|| "I(X,Y|Z∪W) and I(X,W|Z∪Y) hold but I(X,Y∪W|Z) fails".into()),
        Axiom::Transitivity => {
            let g = VertexSet::singleton(b.gamma?);
            (cx.i(x, y, z) && !cx.i(x, g, z) && !cx.i(g, y, z))
                .then(|| "I(X,Y|Z) holds but both I(X,γ|Z) and I(γ,Y|Z) fail".into())
        }
        Axiom::StrongChordality => {
            let (a, bb, g, d) = (b.alpha?, b.beta?, b.gamma?, b.delta?);
            (cx.ip(a, bb, z.with(g).with(d))
                && !cx.adjacency.has_edge(g, d)
                && !cx.ip(a, bb, z.with(g))
                && !cx.ip(a, bb, z.with(d)))
            .then(|| {
                "I(α,β|Z∪γ∪δ) and I(γ,δ|U∖{γ,δ}) hold but both I(α,β|Z∪γ) and I(α,β|Z∪δ) fail"
                    .into()
            })
        }
        Axiom::Chordality => {
            let (a, bb, g, d) = (b.alpha?, b.beta?, b.gamma?, b.delta?);
            let gd = VertexSet::from([g, d]);
            let ab = VertexSet::from([a, bb]);
            (cx.ip(a, bb, gd)
                && cx.ip(g, d, ab)
                && !cx.ip(a, bb, VertexSet::singleton(g))
                && !cx.ip(a, bb, VertexSet::singleton(d)))
            .then(|| {
                "I(α,β|γ∪δ) and I(γ,δ|α∪β) hold but both I(α,β|γ) and I(α,β|δ) fail".into()
            })
        }
        Axiom::CliqueSeparability => {
            let (a, bb) = (b.alpha?, b.beta?);
            let rest = cx.all.without(a).without(bb);
            (cx.ip(a, bb, rest)
                && !rest.subsets().any(|w| cx.complete(w) && cx.ip(a, bb, w)))
            .then(|| "α,β are separable but no complete set separates them".into())
        }
        Axiom::Completeness => {
            let (a, bb) = (b.alpha?, b.beta?);
            (!cx.complete(z)
                && cx.ip(a, bb, z)
                && !z.subsets().any(|s| s != z && cx.ip(a, bb, s)))
            .then(|| "Z is a minimal separator of α,β but is not complete".into())
        }
        Axiom::CompletenessPrime => {
            let (a, bb, g, d) = (b.alpha?, b.beta?, b.gamma?, b.delta?);
            let sep = z.with(g).with(d);
            (cx.ip(a, bb, sep)
                && !cx.adjacency.has_edge(g, d)
                && !sep.subsets().any(|s| s != sep && cx.ip(a, bb, s)))
            .then(|| {
                "I(α,β|Z∪γ∪δ) and I(γ,δ|U∖{γ,δ}) hold but no proper subset of Z∪γ∪δ separates α,β"
                    .into()
            })
        }
    }
}

/// Every instantiation of `axiom`'s quantifiers over a ground set of size `n`.
fn instantiations(axiom: Axiom, n: usize) -> Box<dyn Iterator<Item = Bindings>> {
    let all = VertexSet::full(n);
    match axiom {
        Axiom::Symmetry => Box::new(disjoint_tuples::<3>(all).map(|[x, y, z]| Bindings {
            x: Some(x),
            y: Some(y),
            z: Some(z),
            ..Default::default()
        })),
        Axiom::Decomposition | Axiom::StrongUnion | Axiom::Intersection => {
            Box::new(disjoint_tuples::<4>(all).map(|[x, y, z, w]| Bindings {
                x: Some(x),
                y: Some(y),
                z: Some(z),
                w: Some(w),
                ..Default::default()
            }))
        }
        Axiom::Transitivity => Box::new(disjoint_tuples::<3>(all).flat_map(move |[x, y, z]| {
            all.difference(x.union(y).union(z)).iter().map(move |g| Bindings {
                x: Some(x),
                y: Some(y),
                z: Some(z),
                gamma: Some(g),
                ..Default::default()
            })
        })),
        Axiom::StrongChordality | Axiom::CompletenessPrime => {
            Box::new(quadruples(n).flat_map(move |[a, b, g, d]| {
                let rest = all.difference(VertexSet::from([a, b, g, d]));
                rest.subsets().map(move |z| Bindings {
                    z: Some(z),
                    alpha: Some(a),
                    beta: Some(b),
                    gamma: Some(g),
                    delta: Some(d),
                    ..Default::default()
                })
            }))
        }
        Axiom::Chordality => Box::new(quadruples(n).map(|[a, b, g, d]| Bindings {
            alpha: Some(a),
            beta: Some(b),
            gamma: Some(g),
            delta: Some(d),
            ..Default::default()
        })),
        Axiom::CliqueSeparability => Box::new(pairs(n).map(|(a, b)| Bindings {
            alpha: Some(a),
            beta: Some(b),
            ..Default::default()
        })),
        Axiom::Completeness => Box::new(pairs(n).flat_map(move |(a, b)| {
            all.without(a).without(b).subsets().map(move |z| Bindings {
                z: Some(z),
                alpha: Some(a),
                beta: Some(b),
                ..Default::default()
            })
        })),
    }
}

/// Ordered pairs of distinct vertices.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
}

/// Ordered quadruples of distinct vertices.
fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    pairs(n).flat_map(move |(a, b)| {
        pairs(n)
            .filter(move |&(g, d)| g != a && g != b && d != a && d != b)
            .map(move |(g, d)| [a, b, g, d])
    })
}

/// Runs one checker.
pub fn check<M: DependencyModel + ?Sized>(m: &M, axiom: Axiom) -> Result<AxiomReport> {
    check_cap("axiom checking", m.n(), AXIOM_CAP)?;
    let cx = Context::new(m, needs_adjacency(axiom));
    Ok(sweep(axiom, &cx))
}

fn sweep<M: DependencyModel + ?Sized>(axiom: Axiom, cx: &Context<'_, M>) -> AxiomReport {
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for b in instantiations(axiom, cx.m.n()) {
        if let Some(detail) = evaluate(axiom, &b, cx) {
            violation_count += 1;
            if violations.len() < MAX_REPORTED_VIOLATIONS {
                violations.push(AxiomViolation { bindings: b, detail });
            }
        }
    }
    AxiomReport {
        axiom,
        holds: violation_count == 0,
        violations,
        violation_count,
    }
}

/// Re-evaluates a reported instantiation; true when it is still violated.
pub fn replay<M: DependencyModel + ?Sized>(m: &M, axiom: Axiom, violation: &AxiomViolation) -> bool {
    let cx = Context::new(m, needs_adjacency(axiom));
    evaluate(axiom, &violation.bindings, &cx).is_some()
}

/// C1: `I(X,Y|Z) ⇒ I(Y,X|Z)`.
pub fn check_symmetry<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::Symmetry)
}

/// C2: `I(X,Y∪W|Z) ⇒ I(X,Y|Z)`.
pub fn check_decomposition<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::Decomposition)
}

/// C3: `I(X,Y|Z) ⇒ I(X,Y|Z∪W)`.
pub fn check_strong_union<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::StrongUnion)
}

/// C4: `I(X,Y|Z∪W) ∧ I(X,W|Z∪Y) ⇒ I(X,Y∪W|Z)`.
pub fn check_intersection<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::Intersection)
}

/// C5: `I(X,Y|Z) ⇒ I(X,γ|Z) ∨ I(γ,Y|Z)` for every `γ` outside `X∪Y∪Z`.
pub fn check_transitivity<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::Transitivity)
}

/// C6, strong chordality: a separator containing a non-adjacent pair `γ,δ`
/// still separates after dropping one of them.
pub fn check_strong_chordality<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::StrongChordality)
}

/// C7: the `Z = ∅` special case of C6 with the adjacency premise replaced by
/// `I(γ,δ|α∪β)`.
pub fn check_chordality_c7<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::Chordality)
}

/// C8: separable pairs have a complete separator.
pub fn check_clique_separability<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::CliqueSeparability)
}

/// C9: every minimal separator is complete.
pub fn check_completeness_c9<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::Completeness)
}

/// C9': an incomplete separator has a proper subset that still separates.
pub fn check_c9prime<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomReport> {
    check(m, Axiom::CompletenessPrime)
}

/// Runs the selected checkers, sharing the model-adjacency computation.
pub fn check_axioms<M: DependencyModel + ?Sized>(m: &M, axioms: &[Axiom]) -> Result<AxiomSuite> {
    check_cap("axiom checking", m.n(), AXIOM_CAP)?;
    let cx = Context::new(m, axioms.iter().any(|&a| needs_adjacency(a)));
    Ok(AxiomSuite {
        n: m.n(),
        reports: axioms.iter().map(|&a| sweep(a, &cx)).collect(),
    })
}

pub fn check_all<M: DependencyModel + ?Sized>(m: &M) -> Result<AxiomSuite> {
    check_axioms(m, &Axiom::ALL)
}
