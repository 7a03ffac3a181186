use crate::chordal::is_chordal;
use crate::graph::{UndirectedGraph, VertexSet};

/// Triangulates `g` by minimum-degree elimination (ties to the lowest
/// identifier), returning the filled graph and the added edges in
/// lexicographic order. Chordal input is returned unchanged.
pub fn chordalize(g: &UndirectedGraph) -> (UndirectedGraph, Vec<(usize, usize)>) {
    if is_chordal(g) {
        return (g.clone(), Vec::new());
    }
    let mut filled = g.clone();
    let mut remaining = g.vertices();
    let mut fill = Vec::new();
    while let Some(v) = remaining
        .iter()
        .min_by_key(|&v| (filled.neighbors(v).intersection(remaining).len(), v))
    {
        let nbrs: VertexSet = filled.neighbors(v).intersection(remaining);
        for a in nbrs {
            for b in nbrs.iter().filter(|&b| b > a) {
                if !filled.has_edge(a, b) {
                    filled.add_edge(a, b);
                    fill.push((a, b));
                }
            }
        }
        remaining.remove(v);
    }
    fill.sort_unstable();
    (filled, fill)
}
