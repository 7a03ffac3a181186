//! Exhaustive sweeps over every labeled graph on `n` vertices, checking the
//! characterization results graph by graph.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{check_axioms, Axiom};
use crate::chordal::is_chordal;
use crate::error::{check_cap, Error, Result};
use crate::graph::{disjoint_tuples, enumerate_graphs, UndirectedGraph};
use crate::model::{
    d_separated_moral_unchecked, d_separated_unchecked, graph_model, model_graph, orient_by_peo,
};

/// Cap for sweeps that run the full C1–C5 battery (or several axioms) per graph.
pub const FULL_SWEEP_CAP: usize = 5;

/// Cap for sweeps that run one axiom per graph.
pub const SINGLE_AXIOM_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub edge_mask: u64,
    pub edges: Vec<(usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Witness {
    fn of(name: &str, g: &UndirectedGraph) -> Self {
        Witness {
            name: name.to_string(),
            n: g.n(),
            edges: g.edges(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub property: String,
    pub n: usize,
    pub graphs_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chordal_count: Option<usize>,
    pub discrepancies: Vec<Discrepancy>,
    pub witnesses: Vec<Witness>,
    /// Wall-clock cost of the sweep.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Per-graph outcome of a sweep.
#[derive(Default)]
struct Outcome {
    chordal: Option<bool>,
    discrepancy: Option<String>,
    witness: Option<&'static str>,
}

/// Applies `check` to every labeled graph on `n` vertices, optionally on a
/// dedicated pool of `workers` threads, and aggregates in edge-mask order.
fn sweep<F>(property: &str, n: usize, workers: usize, check: F) -> Result<VerificationSummary>
where
    F: Fn(&UndirectedGraph) -> Outcome + Sync + Send,
{
    let graphs = enumerate_graphs(n)?;
    let started = Instant::now();
    let masks = graphs.masks();
    let run = |mask: u64| {
        let g = UndirectedGraph::from_edge_mask(n, mask).expect("n within cap");
        let outcome = check(&g);
        (g, outcome)
    };
    let results: Vec<(UndirectedGraph, Outcome)> = if workers <= 1 {
        masks.map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))?;
        pool.install(|| masks.into_par_iter().map(run).collect())
    };

    let mut summary = VerificationSummary {
        property: property.to_string(),
        n,
        graphs_checked: results.len(),
        chordal_count: None,
        discrepancies: Vec::new(),
        witnesses: Vec::new(),
        elapsed_ms: None,
    };
    for (g, outcome) in results {
        if let Some(c) = outcome.chordal {
            *summary.chordal_count.get_or_insert(0) += c as usize;
        }
        if let Some(detail) = outcome.discrepancy {
            summary.discrepancies.push(Discrepancy {
                edge_mask: g.edge_mask(),
                edges: g.edges(),
                detail,
            });
        }
        if let Some(name) = outcome.witness {
            if !summary.witnesses.iter().any(|w| w.name == name) {
                summary.witnesses.push(Witness::of(name, &g));
            }
        }
    }
    summary.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    Ok(summary)
}

fn check_range(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} needs n >= 1")));
    }
    check_cap(what, n, cap)
}

/// Every separation model satisfies C1–C5 and is reconstructed exactly by
/// the `¬I(α, β | U ∖ {α, β})` edge rule.
pub fn verify_theorem1(n: usize, workers: usize) -> Result<VerificationSummary> {
    check_range("verify_theorem1", n, FULL_SWEEP_CAP)?;
    sweep("separation models satisfy C1-C5 and are rebuilt by model_graph", n, workers, |g| {
        let m = graph_model(g);
        let suite = check_axioms(&m, &Axiom::GRAPH_ISOMORPHISM).expect("n within cap");
        let failing: Vec<&str> = suite
            .reports
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.axiom.label())
            .collect();
        let mut problems = Vec::new();
        if !failing.is_empty() {
            problems.push(format!("axioms fail: {}", failing.join(",")));
        }
        if model_graph(&m) != *g {
            problems.push("model_graph does not reconstruct the graph".to_string());
        }
        Outcome {
            discrepancy: (!problems.is_empty()).then(|| problems.join("; ")),
            ..Default::default()
        }
    })
}

fn chordal_iff_axiom(
    property: &str,
    axiom: Axiom,
    n: usize,
    workers: usize,
) -> Result<VerificationSummary> {
    sweep(property, n, workers, |g| {
        let chordal = is_chordal(g);
        let holds = check_axioms(&graph_model(g), &[axiom])
            .expect("n within cap")
            .all_hold();
        Outcome {
            chordal: Some(chordal),
            discrepancy: (chordal != holds)
                .then(|| format!("chordal = {chordal} but {axiom} holds = {holds}")),
            witness: (!chordal).then_some("first non-chordal graph"),
        }
    })
}

/// `g` is chordal iff its separation model satisfies C6.
pub fn verify_theorem2(n: usize, workers: usize) -> Result<VerificationSummary> {
    check_range("verify_theorem2", n, SINGLE_AXIOM_CAP)?;
    chordal_iff_axiom("chordal <=> C6", Axiom::StrongChordality, n, workers)
}

/// `g` is chordal iff its separation model satisfies C8.
pub fn verify_theorem3(n: usize, workers: usize) -> Result<VerificationSummary> {
    check_range("verify_theorem3", n, SINGLE_AXIOM_CAP)?;
    chordal_iff_axiom("chordal <=> C8", Axiom::CliqueSeparability, n, workers)
}

/// C6, C8, C9 and C9' give the same verdict on every separation model.
pub fn verify_equivalences(n: usize, workers: usize) -> Result<VerificationSummary> {
    check_range("verify_equivalences", n, FULL_SWEEP_CAP)?;
    let axioms = [
        Axiom::StrongChordality,
        Axiom::CliqueSeparability,
        Axiom::Completeness,
        Axiom::CompletenessPrime,
    ];
    sweep("C6 = C8 = C9 = C9'", n, workers, |g| {
        let suite = check_axioms(&graph_model(g), &axioms).expect("n within cap");
        let verdicts: Vec<bool> = suite.reports.iter().map(|r| r.holds).collect();
        let agree = verdicts.iter().all(|&v| v == verdicts[0]);
        Outcome {
            chordal: Some(is_chordal(g)),
            discrepancy: (!agree).then(|| {
                let parts: Vec<String> = suite
                    .reports
                    .iter()
                    .map(|r| format!("{}={}", r.axiom, r.holds))
                    .collect();
                format!("verdicts differ: {}", parts.join(" "))
            }),
            witness: None,
        }
    })
}

/// The first graph, in edge-mask order, that is not chordal yet whose
/// separation model satisfies C7.
pub fn find_c7_witness(n: usize) -> Result<Option<UndirectedGraph>> {
    check_range("find_c7_witness", n, SINGLE_AXIOM_CAP)?;
    Ok(enumerate_graphs(n)?.find(|g| {
        !is_chordal(g)
            && check_axioms(&graph_model(g), &[Axiom::Chordality])
                .expect("n within cap")
                .all_hold()
    }))
}

/// Runs [`find_c7_witness`] and reports it as a summary.
pub fn verify_c7_strictness(n: usize) -> Result<VerificationSummary> {
    let started = Instant::now();
    let witness = find_c7_witness(n)?;
    let mut summary = VerificationSummary {
        property: "non-chordal graph satisfying C7".to_string(),
        n,
        graphs_checked: match &witness {
            Some(g) => g.edge_mask() as usize + 1,
            None => enumerate_graphs(n)?.len(),
        },
        chordal_count: None,
        discrepancies: Vec::new(),
        witnesses: witness.iter().map(|g| Witness::of("C7 witness", g)).collect(),
        elapsed_ms: None,
    };
    if let Some(g) = &witness {
        let suite = check_axioms(&graph_model(g), &Axiom::ALL)?;
        let mut required = Axiom::GRAPH_ISOMORPHISM.to_vec();
        required.push(Axiom::Chordality);
        for a in required {
            if suite.holds(a) != Some(true) {
                summary.discrepancies.push(Discrepancy {
                    edge_mask: g.edge_mask(),
                    edges: g.edges(),
                    detail: format!("witness violates {a}"),
                });
            }
        }
        if suite.holds(Axiom::StrongChordality) != Some(false) {
            summary.discrepancies.push(Discrepancy {
                edge_mask: g.edge_mask(),
                edges: g.edges(),
                detail: "witness satisfies C6".to_string(),
            });
        }
    }
    summary.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    Ok(summary)
}

/// For every chordal graph the PEO-oriented DAG d-separates exactly the
/// triples the graph separates, and both d-separation routes agree.
pub fn verify_perfect_maps(n: usize, workers: usize) -> Result<VerificationSummary> {
    check_range("verify_perfect_maps", n, FULL_SWEEP_CAP)?;
    sweep("PEO orientation is a perfect map", n, workers, |g| {
        if !is_chordal(g) {
            return Outcome {
                chordal: Some(false),
                ..Default::default()
            };
        }
        let dag = orient_by_peo(g).expect("chordal");
        let mut problems = Vec::new();
        for [x, y, z] in disjoint_tuples::<3>(g.vertices()) {
            let sep = g.separated_unchecked(x, y, z);
            let dsep = d_separated_unchecked(&dag, x, y, z);
            let moral = d_separated_moral_unchecked(&dag, x, y, z);
            if sep != dsep {
                problems.push(format!("x={x} y={y} z={z}: separated={sep} d-separated={dsep}"));
            }
            if dsep != moral {
                problems.push(format!("x={x} y={y} z={z}: d-separated={dsep} moral={moral}"));
            }
        }
        Outcome {
            chordal: Some(true),
            discrepancy: (!problems.is_empty()).then(|| problems.join("; ")),
            witness: None,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem1_small() {
        for (n, count) in [(1, 1), (3, 8), (4, 64)] {
            let s = verify_theorem1(n, 1).unwrap();
            assert_eq!(s.graphs_checked, count);
            assert!(s.passed(), "{:?}", s.discrepancies);
        }
        assert!(matches!(verify_theorem1(6, 1), Err(Error::CapExceeded { .. })));
        assert!(verify_theorem1(0, 1).is_err());
    }

    #[test]
    fn theorem2_n4() {
        let s = verify_theorem2(4, 1).unwrap();
        assert_eq!(s.graphs_checked, 64);
        assert_eq!(s.chordal_count, Some(61));
        assert!(s.passed());
        // mask 0b011110 over pairs 01,02,03,12,13,23 is the first 4-cycle
        assert_eq!(s.witnesses[0].edges, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn theorem3_n4() {
        let s = verify_theorem3(4, 1).unwrap();
        assert_eq!(s.chordal_count, Some(61));
        assert!(s.passed());
    }

    #[test]
    fn equivalences_n4() {
        let s = verify_equivalences(4, 1).unwrap();
        assert_eq!(s.graphs_checked, 64);
        assert!(s.passed());
    }

    #[test]
    fn no_c7_witness_on_four_vertices() {
        assert_eq!(find_c7_witness(4).unwrap(), None);
    }

    #[test]
    fn perfect_maps_n3() {
        let s = verify_perfect_maps(3, 1).unwrap();
        assert_eq!(s.chordal_count, Some(8));
        assert!(s.passed());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut a = verify_theorem2(5, 1).unwrap();
        let mut b = verify_theorem2(5, 4).unwrap();
        a.elapsed_ms = None;
        b.elapsed_ms = None;
        assert_eq!(a, b);
    }
}
