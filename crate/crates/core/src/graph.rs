//! Simple directed graphs on dense vertex ids and the edge-list text format.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertices are dense ids `0..n`.
pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: loop on vertex {vertex}")]
    Loop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: vertex {vertex} out of range for n={n}")]
    OutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("vertex {vertex} does not occur in any edge; declare isolated vertices with an `n=` header")]
    Gap { vertex: Vertex },
}

/// A loopless directed graph without parallel edges. Opposite edges `(u, v)` and
/// `(v, u)` may both be present.
///
/// Immutable after construction; adjacency lists are sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    edge_set: HashSet<Edge>,
    // per-vertex neighbour bitmasks, only when n <= 64
    out_masks: Vec<u64>,
    in_masks: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Self::build(n, Vec::new())
    }

    /// Builds a digraph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (idx, (u, v)) in edges.into_iter().enumerate() {
            let line = idx + 1;
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { line, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { line, vertex: u });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            list.push((u, v));
        }
        Ok(Self::build(n, list))
    }

    fn build(n: usize, edges: Vec<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        let (out_masks, in_masks) = if n <= 64 {
            let to_mask = |adj: &Vec<Vec<Vertex>>| {
                adj.iter()
                    .map(|l| l.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                    .collect::<Vec<_>>()
            };
            (to_mask(&out_adj), to_mask(&in_adj))
        } else {
            (Vec::new(), Vec::new())
        };
        Digraph {
            n,
            out_adj,
            in_adj,
            edge_set: edges.into_iter().collect(),
            out_masks,
            in_masks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edge_set.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_set.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    /// Out-neighbourhood as a bitmask; `None` when `n > 64`.
    pub fn out_mask(&self, v: Vertex) -> Option<u64> {
        self.out_masks.get(v).copied()
    }

    pub fn in_mask(&self, v: Vertex) -> Option<u64> {
        self.in_masks.get(v).copied()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// True when no pair carries edges in both directions.
    pub fn is_oriented(&self) -> bool {
        self.edges().all(|(u, v)| !self.has_edge(v, u))
    }

    /// Restriction to `vertices`, relabelled `0..k` in the given order. The returned
    /// vector maps new ids back to ids of `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> (Digraph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.out_adj[v] {
                if local[w] != usize::MAX {
                    edges.push((i, local[w]));
                }
            }
        }
        (Self::build(vertices.len(), edges), vertices.to_vec())
    }

    /// Copy of the graph with the listed edges deleted. Edges not present are ignored.
    pub fn without_edges(&self, removed: &[Edge]) -> Digraph {
        let removed: HashSet<Edge> = removed.iter().copied().collect();
        let edges = self.edges().filter(|e| !removed.contains(e)).collect();
        Self::build(self.n, edges)
    }

    /// Parses the edge-list format: optional `n=<int>` header, one `u v` pair per
    /// line, `#` starts a comment. Without a header every id in `0..=max` must occur.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<usize> = None;
        let mut edges: Vec<(usize, Edge)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("n=") {
                if header.is_some() || !edges.is_empty() {
                    return Err(GraphError::Malformed {
                        line,
                        message: "header must precede all edges and appear once".into(),
                    });
                }
                let n = rest.trim().parse::<usize>().map_err(|_| GraphError::Malformed {
                    line,
                    message: format!("bad vertex count `{}`", rest.trim()),
                })?;
                header = Some(n);
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(GraphError::Malformed {
                    line,
                    message: format!("expected `u v`, found `{content}`"),
                });
            }
            let parse = |t: &str| {
                t.parse::<usize>().map_err(|_| GraphError::Malformed {
                    line,
                    message: format!("bad vertex id `{t}`"),
                })
            };
            let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
            edges.push((line, (u, v)));
        }

        let max_id = edges.iter().map(|&(_, (u, v))| u.max(v)).max();
        let n = match (header, max_id) {
            (Some(n), _) => n,
            (None, Some(max)) => max + 1,
            (None, None) => 0,
        };
        let mut seen = HashSet::new();
        let mut used = vec![false; n];
        for &(line, (u, v)) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { line, vertex: w, n });
                }
                used[w] = true;
            }
            if u == v {
                return Err(GraphError::Loop { line, vertex: u });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
        }
        if header.is_none() {
            if let Some(vertex) = used.iter().position(|&b| !b) {
                return Err(GraphError::Gap { vertex });
            }
        }
        Ok(Self::build(n, edges.into_iter().map(|(_, e)| e).collect()))
    }

    /// Renders the edge-list format, always with an `n=` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DigraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = DigraphRepr::deserialize(d)?;
        Digraph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = Digraph::parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn rejects_duplicate_with_line_number() {
        let err = Digraph::parse_edge_list("0 1\n0 1").unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge { line: 2, u: 0, v: 1 });
    }

    #[test]
    fn header_only_gives_edgeless_graph() {
        let g = Digraph::parse_edge_list("n=4\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 0));
    }

    #[test]
    fn rejects_loops_and_garbage() {
        assert!(matches!(
            Digraph::parse_edge_list("# c\n1 1\n"),
            Err(GraphError::Loop { line: 2, vertex: 1 })
        ));
        assert!(matches!(
            Digraph::parse_edge_list("0 x"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            Digraph::parse_edge_list("0 1 2"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            Digraph::parse_edge_list("n=2\n0 5"),
            Err(GraphError::OutOfRange { line: 2, vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn rejects_gaps_without_header() {
        assert_eq!(
            Digraph::parse_edge_list("0 2\n"),
            Err(GraphError::Gap { vertex: 1 })
        );
        assert!(Digraph::parse_edge_list("n=3\n0 2\n").is_ok());
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "n=5 # five\n# nothing\n0 1 # edge\n3 4\n";
        let g = Digraph::parse_edge_list(text).unwrap();
        let back = Digraph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn adjacency_views_agree() {
        let g = Digraph::from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 1)]).unwrap();
        for (u, v) in g.edges() {
            assert!(g.in_neighbors(v).contains(&u));
            assert_eq!(g.out_mask(u).unwrap() >> v & 1, 1);
            assert_eq!(g.in_mask(v).unwrap() >> u & 1, 1);
        }
        assert!(!g.is_oriented());
        let (h, map) = g.induced(&[3, 1, 0]);
        assert_eq!(map, vec![3, 1, 0]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn serde_rejects_invalid() {
        let bad = r#"{"n":2,"edges":[[0,0]]}"#;
        assert!(serde_json::from_str::<Digraph>(bad).is_err());
    }
}
