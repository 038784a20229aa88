//! Brute-force reference implementations for small inputs. They share no code
//! with the algorithms they check beyond the graph type itself.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::graph::{Digraph, Edge, Vertex};
use crate::rational::{ratio, Rational};

/// Boolean transitive closure (paths of length ≥ 1).
pub fn reachability(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut r = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        r[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Strong components as sorted vertex lists, ordered by smallest vertex.
pub fn reachability_components(g: &Digraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let r = reachability(g);
    let mut done = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if done[v] {
            continue;
        }
        let comp: Vec<Vertex> = (0..n).filter(|&u| u == v || (r[v][u] && r[u][v])).collect();
        comp.iter().for_each(|&u| done[u] = true);
        out.push(comp);
    }
    out
}

pub fn is_acyclic_closure(g: &Digraph) -> bool {
    let r = reachability(g);
    (0..g.n()).all(|v| !r[v][v])
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Minimum number of backward edges over all vertex orders. Practical for n ≤ 8.
pub fn permutation_min_fas(g: &Digraph) -> usize {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    loop {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        best = best.min(g.edges().filter(|&(u, v)| pos[u] > pos[v]).count());
        if !next_permutation(&mut order) {
            break;
        }
    }
    best
}

/// Smallest edge subset whose removal leaves an acyclic graph, by subset size.
pub fn edge_subset_min_fas(g: &Digraph) -> Vec<Edge> {
    let edges: Vec<Edge> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 24, "edge-subset oracle is limited to 24 edges");
    let mut masks: Vec<u32> = (0..1u32 << m).collect();
    masks.sort_by_key(|x| (x.count_ones(), *x));
    for mask in masks {
        let removed: Vec<Edge> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if is_acyclic_closure(&g.without_edges(&removed)) {
            return removed;
        }
    }
    unreachable!("removing every edge is acyclic")
}

/// `μ(G)` over every vertex subset of size `1..=n/2`. Needs `n ≤ 20`.
pub fn brute_mu(g: &Digraph) -> Option<Rational> {
    let n = g.n();
    assert!(n <= 20);
    let mut best: Option<Rational> = None;
    for mask in 1u32..1 << n {
        let k = mask.count_ones() as usize;
        if k > n / 2 {
            continue;
        }
        let inside = |v: Vertex| mask >> v & 1 == 1;
        let e_out = g.edges().filter(|&(u, v)| inside(u) && !inside(v)).count();
        let e_in = g.edges().filter(|&(u, v)| !inside(u) && inside(v)).count();
        let mu = ratio(e_out.min(e_in) as i128, k as i128);
        if best.map_or(true, |b| mu < b) {
            best = Some(mu);
        }
    }
    best
}

/// Lengths of all simple cycles, found by extending every simple path from every start.
pub fn naive_spectrum(g: &Digraph) -> BTreeSet<usize> {
    fn extend(g: &Digraph, start: Vertex, path: &mut Vec<Vertex>, out: &mut BTreeSet<usize>) {
        let last = *path.last().unwrap();
        for &w in g.out_neighbors(last) {
            if w == start {
                out.insert(path.len());
            } else if !path.contains(&w) {
                path.push(w);
                extend(g, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        extend(g, s, &mut vec![s], &mut out);
    }
    out
}

/// Gcd of the simple-cycle lengths of `g`; 0 when acyclic.
pub fn naive_period(g: &Digraph) -> usize {
    naive_spectrum(g).into_iter().fold(0, |a, l| a.gcd(&l))
}

/// Shortest closed walk through `v` by iterating the adjacency relation.
pub fn shortest_closed_walk(g: &Digraph, v: Vertex) -> Option<usize> {
    let n = g.n();
    let mut frontier = vec![false; n];
    frontier[v] = true;
    for len in 1..=n {
        let mut next = vec![false; n];
        for (a, b) in g.edges() {
            if frontier[a] {
                next[b] = true;
            }
        }
        if next[v] {
            return Some(len);
        }
        frontier = next;
    }
    None
}

pub fn brute_girth(g: &Digraph) -> Option<usize> {
    (0..g.n()).filter_map(|v| shortest_closed_walk(g, v)).min()
}

/// Non-adjacent unordered pairs by direct count.
pub fn brute_gamma(g: &Digraph) -> usize {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v) && !g.has_edge(v, u))
        .count()
}
