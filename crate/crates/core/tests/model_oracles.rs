//! Dependency models against definitional references: d-separation by
//! explicit path enumeration, map classification by edge containment.

use std::collections::HashMap;

use decomposable::chordal::is_chordal;
use decomposable::graph::{disjoint_tuples, enumerate_graphs};
use decomposable::model::{
    classify_map, d_separated, d_separated_moral, explicit_from_model, graph_model, model_graph,
    orient_by_peo, Dag, DagModel, DependencyModel, ExplicitModel, FnModel,
};
use decomposable::{UndirectedGraph, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every DAG whose arcs respect the order `perm[0] < perm[1] < ..`, one per
/// subset of the forward pairs.
fn dags(n: usize, perm: &[usize]) -> impl Iterator<Item = Dag> + '_ {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j))| (perm[i], perm[j]))
            .collect();
        Dag::from_arcs(n, &arcs).unwrap()
    })
}

fn reach_down(d: &Dag, v: usize) -> VertexSet {
    let mut seen = VertexSet::singleton(v);
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for c in d.children(u) {
            if !seen.contains(c) {
                seen.insert(c);
                stack.push(c);
            }
        }
    }
    seen
}

/// Some simple path between `a` and `b` is active given `z`: every collider
/// on it has itself or a descendant in `z`, and no other interior vertex is
/// in `z`.
fn active_path_exists(d: &Dag, a: usize, b: usize, z: VertexSet) -> bool {
    fn go(d: &Dag, path: &mut Vec<usize>, b: usize, z: VertexSet) -> bool {
        let v = *path.last().unwrap();
        if v == b {
            return path.windows(3).all(|w| {
                let collider = d.parents(w[1]).contains(w[0]) && d.parents(w[1]).contains(w[2]);
                if collider {
                    !reach_down(d, w[1]).is_disjoint(z)
                } else {
                    !z.contains(w[1])
                }
            });
        }
        let adjacent = d.parents(v).union(d.children(v));
        for w in adjacent {
            if path.contains(&w) {
                continue;
            }
            path.push(w);
            if go(d, path, b, z) {
                return true;
            }
            path.pop();
        }
        false
    }
    go(d, &mut vec![a], b, z)
}

#[test]
fn d_separation_routes_match_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=5 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        for dag in dags(n, &perm) {
            let mut pair_sep: HashMap<(usize, usize, VertexSet), bool> = HashMap::new();
            let all = VertexSet::full(n);
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    for z in all.without(a).without(b).subsets() {
                        pair_sep.insert((a, b, z), !active_path_exists(&dag, a, b, z));
                    }
                }
            }
            for [x, y, z] in disjoint_tuples::<3>(all) {
                let expected = x.iter().all(|a| y.iter().all(|b| pair_sep[&(a, b, z)]));
                assert_eq!(d_separated(&dag, x, y, z).unwrap(), expected, "{dag:?} {x} {y} {z}");
                assert_eq!(d_separated_moral(&dag, x, y, z).unwrap(), expected, "{dag:?} {x} {y} {z}");
            }
        }
    }
}

#[test]
fn model_graph_rebuilds_every_separation_model() {
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap() {
            assert_eq!(model_graph(&graph_model(&g)), g);
        }
    }
}

#[test]
fn map_classes_follow_edge_containment() {
    let graphs: Vec<UndirectedGraph> = enumerate_graphs(4).unwrap().collect();
    for g in &graphs {
        let m = graph_model(g);
        for h in &graphs {
            let class = classify_map(h, &m).unwrap();
            let h_covers_g = g.edges().iter().all(|&(u, v)| h.has_edge(u, v));
            let g_covers_h = h.edges().iter().all(|&(u, v)| g.has_edge(u, v));
            assert_eq!(class.i_map, h_covers_g, "h={h:?} g={g:?}");
            assert_eq!(class.d_map, g_covers_h, "h={h:?} g={g:?}");
            assert_eq!(class.perfect, g == h);
        }
    }
}

#[test]
fn peo_orientation_has_complete_parent_sets() {
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap().filter(is_chordal) {
            let dag = orient_by_peo(&g).unwrap();
            assert_eq!(dag.arcs().len(), g.edge_count());
            for (u, v) in dag.arcs() {
                assert!(g.has_edge(u, v));
            }
            for v in 0..n {
                assert!(g.is_complete(dag.parents(v)).unwrap(), "{g:?} parents of {v}");
            }
            assert_eq!(dag.moral_graph(g.vertices()), g);
        }
    }
}

#[test]
fn explicit_tables_agree_with_their_source() {
    for g in enumerate_graphs(4).unwrap() {
        let m = graph_model(&g);
        let table = explicit_from_model(&m).unwrap();
        for [x, y, z] in disjoint_tuples::<3>(g.vertices()) {
            assert_eq!(table.get(x, y, z).unwrap(), m.query(x, y, z));
        }
        let back = ExplicitModel::from_json(&table.to_json()).unwrap();
        assert_eq!(back, table);
    }
}

#[test]
fn asymmetric_tables_survive_json() {
    // independent only when the smaller vertex is on the left
    let m = FnModel::new(4, |x: VertexSet, y: VertexSet, _| x.min() < y.min());
    let table = explicit_from_model(&m).unwrap();
    let back = ExplicitModel::from_json(&table.to_json()).unwrap();
    for [x, y, z] in disjoint_tuples::<3>(VertexSet::full(4)) {
        assert_eq!(back.get(x, y, z).unwrap(), m.query(x, y, z));
    }
}

#[test]
fn dag_model_of_a_collider_is_not_graph_isomorphic() {
    let m = DagModel::new(Dag::from_arcs(3, &[(0, 2), (1, 2)]).unwrap());
    let g = model_graph(&m);
    // 0 and 1 are dependent given 2, so model_graph joins them
    assert!(g.has_edge(0, 1));
    assert!(!classify_map(&g, &m).unwrap().perfect);
}
