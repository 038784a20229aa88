//! Degree extraction in nearly complete oriented graphs.

use crate::graph::{Digraph, Vertex};
use crate::traversal::adjacent_pairs;

/// The vertex maximising `min(indeg, outdeg)` (smallest id on ties) and that value.
///
/// An oriented graph with `(1 - ε)n²/2` edges always has such a vertex with both
/// degrees at least `(1 - 2ε)n/4`.
pub fn max_balanced_degree(g: &Digraph) -> Option<(Vertex, usize)> {
    (0..g.n())
        .map(|v| (v, g.in_degree(v).min(g.out_degree(v))))
        .fold(None, |best, cur| match best {
            Some((_, d)) if d >= cur.1 => best,
            _ => Some(cur),
        })
}

/// Number of distinct neighbours of `v`, ignoring direction.
pub fn total_degree(g: &Digraph, v: Vertex) -> usize {
    let ins = g.in_neighbors(v);
    ins.len()
        + g.out_neighbors(v)
            .iter()
            .filter(|w| ins.binary_search(w).is_err())
            .count()
}

/// Start vertex for a fidelity sweep: a vertex of total degree at least
/// `(1 - 4α)n` with in- and outdegree at least `n/10`, where `γ = αn²`.
///
/// Falls back to the vertex with the largest `min(indeg, outdeg)` and then largest
/// total degree when no vertex meets both thresholds (possible when the graph is
/// not nearly complete).
pub fn high_degree_start(g: &Digraph) -> Option<Vertex> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let gamma = n * (n - 1) / 2 - adjacent_pairs(g);
    // total ≥ (1 - 4γ/n²) n  ⇔  total·n ≥ n² - 4γ
    let qualifies = |v: Vertex| {
        let total = total_degree(g, v);
        (total * n + 4 * gamma >= n * n)
            && 10 * g.in_degree(v) >= n
            && 10 * g.out_degree(v) >= n
    };
    (0..n).find(|&v| qualifies(v)).or_else(|| {
        (0..n).max_by_key(|&v| {
            (
                g.in_degree(v).min(g.out_degree(v)),
                total_degree(g, v),
                std::cmp::Reverse(v),
            )
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_degree_on_cycle() {
        let g = Digraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(max_balanced_degree(&g), Some((0, 1)));
        assert_eq!(max_balanced_degree(&Digraph::empty(0)), None);
    }

    #[test]
    fn total_degree_counts_pairs() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 0), (2, 0)]).unwrap();
        assert_eq!(total_degree(&g, 0), 2);
        assert_eq!(total_degree(&g, 2), 1);
    }

    #[test]
    fn start_vertex_in_regular_tournament() {
        // rotational tournament on 7 vertices: i -> i+1, i+2, i+3
        let edges = (0..7).flat_map(|i| (1..=3).map(move |d| (i, (i + d) % 7)));
        let g = Digraph::from_edges(7, edges).unwrap();
        assert_eq!(high_degree_start(&g), Some(0));
    }
}
