//! Breadth-first distance layers, girth, acyclicity and summary statistics.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Digraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Follow edges forwards (outdistance).
    Out,
    /// Follow edges backwards (indistance).
    In,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

pub(crate) fn neighbors(g: &Digraph, v: Vertex, dir: Direction) -> &[Vertex] {
    match dir {
        Direction::Out => g.out_neighbors(v),
        Direction::In => g.in_neighbors(v),
    }
}

/// BFS distances and parents from `source`. Unreached vertices are `None`.
pub fn bfs(g: &Digraph, source: Vertex, dir: Direction) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
    bfs_bounded(g, source, dir, usize::MAX)
}

/// BFS that does not expand past `radius`.
pub fn bfs_bounded(
    g: &Digraph,
    source: Vertex,
    dir: Direction,
    radius: usize,
) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
    let mut dist = vec![None; g.n()];
    let mut parent = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        if du >= radius {
            continue;
        }
        for &w in neighbors(g, u, dir) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Vertices grouped by exact distance from a source; `layers[i]` is the set at
/// distance `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceLayers {
    pub source: Vertex,
    pub direction: Direction,
    pub layers: Vec<Vec<Vertex>>,
}

impl DistanceLayers {
    /// `|M_i|`, the number of vertices within distance `i`.
    pub fn prefix_sizes(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0, |acc, l| {
                *acc += l.len();
                Some(*acc)
            })
            .collect()
    }

    pub fn reached(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

pub fn bfs_layers(g: &Digraph, source: Vertex, dir: Direction) -> DistanceLayers {
    let (dist, _) = bfs(g, source, dir);
    let depth = dist.iter().flatten().max().copied().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = d {
            layers[*d].push(v);
        }
    }
    let layers = DistanceLayers {
        source,
        direction: dir,
        layers,
    };
    debug_assert!(layers_are_closed(g, &layers));
    layers
}

/// Every edge leaving the ball `M_i` must land in layer `i + 1`.
pub(crate) fn layers_are_closed(g: &Digraph, layers: &DistanceLayers) -> bool {
    let mut level = vec![usize::MAX; g.n()];
    for (i, layer) in layers.layers.iter().enumerate() {
        for &v in layer {
            level[v] = i;
        }
    }
    layers.layers.iter().enumerate().all(|(i, layer)| {
        layer.iter().all(|&v| {
            neighbors(g, v, layers.direction)
                .iter()
                .all(|&w| level[w] <= i + 1)
        })
    })
}

/// A shortest directed cycle through `v`, as a vertex list starting at `v`.
pub fn shortest_cycle_at(g: &Digraph, v: Vertex) -> Option<Vec<Vertex>> {
    let (dist, parent) = bfs(g, v, Direction::Out);
    let closing = g
        .in_neighbors(v)
        .iter()
        .filter_map(|&u| dist[u].map(|d| (d, u)))
        .min()?;
    let mut path = vec![closing.1];
    let mut cur = closing.1;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    Some(path)
}

/// Length of the shortest directed cycle, or `None` for acyclic graphs.
pub fn girth(g: &Digraph) -> Option<usize> {
    girth_with_witness(g).map(|c| c.len())
}

/// A shortest directed cycle of the whole graph.
pub fn girth_with_witness(g: &Digraph) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    for v in 0..g.n() {
        if let Some(c) = shortest_cycle_at(g, v) {
            if best.as_ref().map_or(true, |b| c.len() < b.len()) {
                let done = c.len() == 2;
                best = Some(c);
                if done {
                    break;
                }
            }
        }
    }
    best
}

/// Kahn topological order, or `None` when a cycle exists.
pub fn topological_order(g: &Digraph) -> Option<Vec<Vertex>> {
    let mut indeg: Vec<usize> = (0..g.n()).map(|v| g.in_degree(v)).collect();
    let mut queue: VecDeque<Vertex> = (0..g.n()).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in g.out_neighbors(u) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == g.n()).then_some(order)
}

pub fn is_acyclic(g: &Digraph) -> bool {
    topological_order(g).is_some()
}

/// Some directed cycle, if one exists (not necessarily shortest).
pub fn find_cycle(g: &Digraph) -> Option<Vec<Vertex>> {
    // 0 = unvisited, 1 = on stack, 2 = finished
    let mut state = vec![0u8; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    for root in 0..g.n() {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            let out = g.out_neighbors(u);
            if *idx < out.len() {
                let w = out[*idx];
                *idx += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = u;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![u];
                        let mut cur = u;
                        while cur != w {
                            cur = parent[cur];
                            cycle.push(cur);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// True when consecutive vertices (cyclically) are joined by edges and no vertex repeats.
pub fn is_simple_cycle(g: &Digraph, cycle: &[Vertex]) -> bool {
    if cycle.len() < 2 {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in cycle {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Unordered pairs with no edge in either direction.
    pub gamma: usize,
    /// `None` when the graph is acyclic.
    pub girth: Option<usize>,
    pub is_oriented: bool,
}

impl GraphStats {
    /// Largest `r` for which the graph is r-free (`girth - 1`); `None` when acyclic.
    pub fn r_free_level(&self) -> Option<usize> {
        self.girth.map(|g| g - 1)
    }
}

pub fn adjacent_pairs(g: &Digraph) -> usize {
    g.edges().filter(|&(u, v)| u < v || !g.has_edge(v, u)).count()
}

pub fn stats(g: &Digraph) -> GraphStats {
    let n = g.n();
    let pairs = n * n.saturating_sub(1) / 2;
    GraphStats {
        n,
        m: g.m(),
        gamma: pairs - adjacent_pairs(g),
        girth: girth(g),
        is_oriented: g.is_oriented(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn transitive(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn triangle_stats() {
        let s = stats(&cycle(3));
        assert_eq!(
            s,
            GraphStats { n: 3, m: 3, gamma: 0, girth: Some(3), is_oriented: true }
        );
    }

    #[test]
    fn transitive_tournament_is_acyclic() {
        let g = transitive(5);
        let s = stats(&g);
        assert_eq!(s.girth, None);
        assert_eq!(s.gamma, 0);
        assert!(is_acyclic(&g));
        assert!(find_cycle(&g).is_none());
    }

    #[test]
    fn triangle_minus_edge() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(is_acyclic(&g));
        assert!(!is_acyclic(&cycle(3)));
        let c = find_cycle(&cycle(3)).unwrap();
        assert!(is_simple_cycle(&cycle(3), &c));
    }

    #[test]
    fn two_cycles_count_as_cycles() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 0)]).unwrap();
        assert_eq!(girth(&g), Some(2));
        assert!(!stats(&g).is_oriented);
        assert_eq!(stats(&g).gamma, 0);
    }

    #[test]
    fn cycle_layers_are_singletons() {
        let l = bfs_layers(&cycle(8), 0, Direction::Out);
        assert_eq!(l.layers, (0..8).map(|i| vec![i]).collect::<Vec<_>>());
        assert_eq!(l.prefix_sizes(), (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn edgeless_layers() {
        let l = bfs_layers(&Digraph::empty(4), 2, Direction::In);
        assert_eq!(l.layers, vec![vec![2]]);
    }

    #[test]
    fn blowup_triangle_layers() {
        // parts {0,1} -> {2,3} -> {4,5} -> {0,1}
        let parts = [[0, 1], [2, 3], [4, 5]];
        let mut edges = Vec::new();
        for i in 0..3 {
            for &u in &parts[i] {
                for &v in &parts[(i + 1) % 3] {
                    edges.push((u, v));
                }
            }
        }
        let g = Digraph::from_edges(6, edges).unwrap();
        let l = bfs_layers(&g, 0, Direction::Out);
        let sizes: Vec<usize> = l.layers.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        assert_eq!(l.layers[3], vec![1]);
    }

    #[test]
    fn shortest_cycle_at_vertex() {
        let g = Digraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 0), (3, 4)]).unwrap();
        assert_eq!(shortest_cycle_at(&g, 0).unwrap().len(), 2);
        assert_eq!(shortest_cycle_at(&g, 1).unwrap(), vec![1, 2, 0]);
        assert!(shortest_cycle_at(&g, 4).is_none());
    }
}
