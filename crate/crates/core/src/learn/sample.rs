use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use super::{chordalize, Dataset};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::model::orient_by_peo;

/// Draws `n_rows` observations from a random distribution that factorizes
/// along `g`.
///
/// `g` is oriented by its perfect elimination ordering; every conditional
/// table row is drawn from a flat Dirichlet, then rows are generated by
/// ancestral sampling. Variables are named `v0, v1, ..`.
pub fn sample_dataset(
    g: &UndirectedGraph,
    arities: &[usize],
    n_rows: usize,
    seed: u64,
) -> Result<Dataset> {
    let n = g.n();
    if arities.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} arities given for {n} variables",
            arities.len()
        )));
    }
    if let Some(&a) = arities.iter().find(|&&a| a < 2) {
        return Err(Error::InvalidArgument(format!("arities must be at least 2, got {a}")));
    }
    if n_rows == 0 {
        return Err(Error::InvalidArgument("n_rows must be at least 1".into()));
    }
    let dag = orient_by_peo(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // cumulative conditional tables, one row per parent configuration
    let mut tables: Vec<Vec<Vec<f64>>> = Vec::with_capacity(n);
    for v in 0..n {
        let configs: usize = dag.parents(v).iter().map(|p| arities[p]).product();
        let table = (0..configs)
            .map(|_| {
                let weights: Vec<f64> = (0..arities[v]).map(|_| Exp1.sample(&mut rng)).collect();
                let total: f64 = weights.iter().sum();
                weights
                    .iter()
                    .scan(0.0, |acc, w| {
                        *acc += w / total;
                        Some(*acc)
                    })
                    .collect()
            })
            .collect();
        tables.push(table);
    }

    let mut columns = vec![Vec::with_capacity(n_rows); n];
    let mut row = vec![0u32; n];
    for _ in 0..n_rows {
        for &v in dag.topological_order() {
            let mut config = 0usize;
            for p in dag.parents(v).iter().rev() {
                config = config * arities[p] + row[p] as usize;
            }
            let u: f64 = rng.random();
            let cdf = &tables[v][config];
            let value = cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1);
            row[v] = value as u32;
        }
        for v in 0..n {
            columns[v].push(row[v]);
        }
    }
    let names = (0..n).map(|v| format!("v{v}")).collect();
    Ok(Dataset::from_columns(names, arities.to_vec(), columns))
}

/// A random chordal graph: each edge kept with probability `edge_prob`, then
/// triangulated by minimum-degree elimination.
pub fn random_chordal_graph<R: Rng + ?Sized>(n: usize, edge_prob: f64, rng: &mut R) -> Result<UndirectedGraph> {
    let mut g = UndirectedGraph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_prob.clamp(0.0, 1.0)) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(chordalize(&g).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::is_chordal;
    use crate::graph::VertexSet;
    use crate::learn::g2_test;

    #[test]
    fn empty_graph_sample_is_reproducible() {
        let g = UndirectedGraph::empty(3).unwrap();
        let a = sample_dataset(&g, &[2, 2, 2], 4, 11).unwrap();
        let b = sample_dataset(&g, &[2, 2, 2], 4, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_rows(), 4);
        assert!((0..3).all(|v| a.column(v).iter().all(|&c| c < 2)));
        assert_ne!(a, sample_dataset(&g, &[2, 2, 2], 4, 12).unwrap());
    }

    #[test]
    fn chain_sample_shows_the_right_independences() {
        let chain = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d = sample_dataset(&chain, &[2, 2, 2], 50_000, 3).unwrap();
        assert!(!g2_test(&d, 0, 1, VertexSet::EMPTY, 0.05).unwrap().independent);
        assert!(g2_test(&d, 0, 2, VertexSet::singleton(1), 0.05).unwrap().independent);
    }

    #[test]
    fn sampler_argument_errors() {
        let diamond = UndirectedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(matches!(sample_dataset(&diamond, &[2; 4], 10, 0), Err(Error::NotChordal(_))));
        let g = UndirectedGraph::empty(2).unwrap();
        assert!(sample_dataset(&g, &[2, 1], 10, 0).is_err());
        assert!(sample_dataset(&g, &[2], 10, 0).is_err());
        assert!(sample_dataset(&g, &[2, 2], 0, 0).is_err());
    }

    #[test]
    fn random_chordal_graphs_are_chordal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            assert!(is_chordal(&random_chordal_graph(7, 0.4, &mut rng).unwrap()));
        }
    }
}
