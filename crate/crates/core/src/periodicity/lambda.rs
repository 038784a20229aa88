//! Fewest edge deletions that leave every strong component periodic.

use serde::{Deserialize, Serialize};

use super::{pseudoperiodicity, PeriodicityError};
use crate::expansion::next_combination;
use crate::graph::{Digraph, Edge};
use crate::scc::strong_components;

pub const DEFAULT_LAMBDA_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaResult {
    /// A minimum deletion set, lexicographically first among those of its size.
    pub removed: Vec<Edge>,
    /// Deletion sets tested.
    pub checked: u64,
}

impl LambdaResult {
    pub fn lambda(&self) -> usize {
        self.removed.len()
    }
}

pub fn is_pseudoperiodic(g: &Digraph) -> bool {
    pseudoperiodicity(g).pseudoperiodic
}

/// Exact `λ(G)` by trying deletion sets of increasing size. Only edges inside
/// strong components are candidates; `limit` bounds the edge count `m`.
pub fn lambda_exact(g: &Digraph, limit: usize) -> Result<LambdaResult, PeriodicityError> {
    if g.m() > limit {
        return Err(PeriodicityError::OverLimit { size: g.m(), limit });
    }
    let scc = strong_components(g);
    let candidates: Vec<Edge> = g
        .edges()
        .filter(|&(u, v)| scc.component_of[u] == scc.component_of[v])
        .collect();
    let mut checked = 0u64;
    for k in 0..=candidates.len() {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let removed: Vec<Edge> = combo.iter().map(|&i| candidates[i]).collect();
            checked += 1;
            if is_pseudoperiodic(&g.without_edges(&removed)) {
                return Ok(LambdaResult { removed, checked });
            }
            if k == 0 || !next_combination(&mut combo, candidates.len()) {
                break;
            }
        }
    }
    unreachable!("deleting every intra-component edge leaves an acyclic graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{blowup_cycle, directed_cycle, transitive_tournament};
    use crate::fas::exact_min_fas;

    #[test]
    fn periodic_inputs_need_nothing() {
        assert_eq!(lambda_exact(&directed_cycle(3).unwrap(), 20).unwrap().lambda(), 0);
        assert_eq!(lambda_exact(&transitive_tournament(5), 20).unwrap().lambda(), 0);
        assert_eq!(lambda_exact(&blowup_cycle(3, &[2, 2, 2]).unwrap(), 20).unwrap().lambda(), 0);
    }

    #[test]
    fn triangle_and_square_needs_one() {
        let g = Digraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let res = lambda_exact(&g, 20).unwrap();
        assert_eq!(res.removed, vec![(0, 1)]);
    }

    #[test]
    fn bounded_by_beta() {
        let g = crate::constructions::complete_digraph(4);
        let lam = lambda_exact(&g, 20).unwrap().lambda();
        let beta = exact_min_fas(&g, 20).unwrap().size();
        assert!(lam <= beta);
        assert!(is_pseudoperiodic(&g.without_edges(&lambda_exact(&g, 20).unwrap().removed)));
    }

    #[test]
    fn over_limit() {
        let g = crate::constructions::complete_digraph(5);
        assert!(matches!(lambda_exact(&g, 10), Err(PeriodicityError::OverLimit { size: 20, limit: 10 })));
    }
}
