//! Closed walks of length `1 mod r` inside an aperiodic strong component.
//!
//! For every prime `f | r` a cycle `D_i` with `f ∤ l(D_i)` is picked. The cycles
//! are threaded from the anchor by shortest paths `Q'_i` out and `Q''_i` back, and
//! `D_i` is repeated `a_i ∈ [0, r)` times where the `a_i` solve
//! `l(W') + Σ a_i·l(D_i) ≡ 1 (mod r)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::numbers::{crt_combine, prime_factors};
use super::{component_period, PeriodicityError};
use crate::graph::{Digraph, Vertex};
use crate::traversal::{bfs, Direction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("r must be at least 2, got {0}")]
    InvalidR(usize),
    #[error("anchor {0} is not in the component")]
    AnchorOutside(Vertex),
    #[error("component has period {0}; every closed walk length is a multiple of it")]
    Periodic(usize),
    #[error(transparent)]
    Component(#[from] PeriodicityError),
    #[error("constructed walk is invalid: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeWalk {
    pub r: usize,
    /// Closed vertex sequence, first equal to last.
    pub walk: Vec<Vertex>,
    pub length: usize,
    /// Visits per vertex, the closing repeat of the anchor not counted.
    pub visit_counts: BTreeMap<Vertex, usize>,
    /// The cycles `D_i`, each rotated to start at its junction vertex `d_i`.
    pub cycles: Vec<Vec<Vertex>>,
    /// Repeat counts `a_i`.
    pub repeats: Vec<u64>,
}

impl CoprimeWalk {
    pub fn max_visits(&self) -> usize {
        self.visit_counts.values().copied().max().unwrap_or(0)
    }

    pub fn check(&self, g: &Digraph) -> Result<(), String> {
        let w = &self.walk;
        if w.len() < 2 || w.first() != w.last() {
            return Err("walk is not closed".into());
        }
        if let Some(p) = w.windows(2).find(|p| !g.has_edge(p[0], p[1])) {
            return Err(format!("({}, {}) is not an edge", p[0], p[1]));
        }
        if self.length != w.len() - 1 {
            return Err(format!("stored length {} but walk has {}", self.length, w.len() - 1));
        }
        if self.length % self.r != 1 % self.r || self.length.gcd(&self.r) != 1 {
            return Err(format!("length {} is not 1 mod {}", self.length, self.r));
        }
        let mut counts = BTreeMap::new();
        for &v in &w[..w.len() - 1] {
            *counts.entry(v).or_insert(0usize) += 1;
        }
        if counts != self.visit_counts {
            return Err("visit counts do not match the walk".into());
        }
        if self.max_visits() > 2 * self.r * self.r {
            return Err(format!("a vertex is visited {} > 2r^2 times", self.max_visits()));
        }
        Ok(())
    }
}

// shortest path from -> to, inclusive
fn shortest_path(h: &Digraph, from: Vertex, to: Vertex) -> Vec<Vertex> {
    let (_, parent) = bfs(h, from, Direction::Out);
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur].expect("strongly connected");
        path.push(cur);
    }
    path.reverse();
    path
}

// splits a closed walk (first == last) into simple cycles
fn simple_cycles(walk: &[Vertex], n: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut pos: Vec<Option<usize>> = vec![None; n];
    let mut stack: Vec<Vertex> = Vec::new();
    for &v in walk {
        if let Some(i) = pos[v] {
            let cycle: Vec<Vertex> = stack.drain(i..).collect();
            for &u in &cycle {
                pos[u] = None;
            }
            out.push(cycle);
        }
        pos[v] = Some(stack.len());
        stack.push(v);
    }
    out
}

// a simple cycle whose length is not a multiple of f; needs gcd of cycle lengths coprime to f
fn cycle_avoiding(h: &Digraph, root: Vertex, dist: &[usize], tree: &[Option<Vertex>], f: usize) -> Vec<Vertex> {
    let tree_path = |to: Vertex| {
        let mut p = vec![to];
        let mut cur = to;
        while let Some(q) = tree[cur] {
            p.push(q);
            cur = q;
        }
        p.reverse();
        p
    };
    let (v, w) = h
        .edges()
        .find(|&(v, w)| (dist[v] + 1).abs_diff(dist[w]) % f != 0)
        .expect("aperiodic component has an edge off the level structure");
    let back = shortest_path(h, w, root);
    let mut a = tree_path(v);
    a.extend_from_slice(&back);
    let mut b = tree_path(w);
    b.extend_from_slice(&back[1..]);
    let closed = if (a.len() - 1) % f != 0 { a } else { b };
    simple_cycles(&closed, h.n())
        .into_iter()
        .find(|c| c.len() % f != 0)
        .expect("cycle lengths sum to the walk length")
}

/// Builds a closed walk through `anchor` in `component` with length `≡ 1 (mod r)`.
pub fn build_coprime_walk(
    g: &Digraph,
    component: &[Vertex],
    r: usize,
    anchor: Vertex,
) -> Result<CoprimeWalk, WalkError> {
    if r < 2 {
        return Err(WalkError::InvalidR(r));
    }
    let period = component_period(g, component)?;
    let mut comp = component.to_vec();
    comp.sort_unstable();
    comp.dedup();
    let Ok(root) = comp.binary_search(&anchor) else {
        return Err(WalkError::AnchorOutside(anchor));
    };
    if period != 1 {
        return Err(WalkError::Periodic(period));
    }
    let (h, map) = g.induced(&comp);
    let (dist, tree) = bfs(&h, root, Direction::Out);
    let dist: Vec<usize> = dist.into_iter().map(|d| d.expect("strong")).collect();

    let mut cycles: Vec<Vec<Vertex>> = Vec::new();
    for f in prime_factors(r as u64) {
        let f = f as usize;
        if cycles.iter().any(|c| c.len() % f != 0) {
            continue;
        }
        cycles.push(cycle_avoiding(&h, root, &dist, &tree, f));
    }

    let mut prev = root;
    let mut outward: Vec<Vec<Vertex>> = Vec::new();
    let mut inward: Vec<Vec<Vertex>> = Vec::new();
    for c in cycles.iter_mut() {
        let (d, _) = bfs(&h, prev, Direction::Out);
        let pos = (0..c.len())
            .min_by_key(|&i| (d[c[i]].expect("strong"), c[i]))
            .expect("nonempty cycle");
        c.rotate_left(pos);
        let junction = c[0];
        outward.push(shortest_path(&h, prev, junction));
        inward.push(shortest_path(&h, junction, prev));
        prev = junction;
    }
    let base_len: usize = outward.iter().chain(&inward).map(|p| p.len() - 1).sum();
    let lengths: Vec<u64> = cycles.iter().map(|c| c.len() as u64).collect();
    let target = (1 + r - base_len % r) % r;
    let repeats = crt_combine(&lengths, target as u64, r as u64)
        .map_err(|e| WalkError::Invalid(e.to_string()))?;

    let mut walk = vec![root];
    for (i, c) in cycles.iter().enumerate() {
        walk.extend_from_slice(&outward[i][1..]);
        for _ in 0..repeats[i] {
            walk.extend_from_slice(&c[1..]);
            walk.push(c[0]);
        }
    }
    for p in inward.iter().rev() {
        walk.extend_from_slice(&p[1..]);
    }

    let walk: Vec<Vertex> = walk.into_iter().map(|v| map[v]).collect();
    let mut visit_counts = BTreeMap::new();
    for &v in &walk[..walk.len() - 1] {
        *visit_counts.entry(v).or_insert(0) += 1;
    }
    let result = CoprimeWalk {
        r,
        length: walk.len() - 1,
        walk,
        visit_counts,
        cycles: cycles
            .into_iter()
            .map(|c| c.into_iter().map(|v| map[v]).collect())
            .collect(),
        repeats,
    };
    result.check(g).map_err(WalkError::Invalid)?;
    Ok(result)
}
