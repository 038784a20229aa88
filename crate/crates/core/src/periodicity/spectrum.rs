//! Set of simple-cycle lengths with one witness per length.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::PeriodicityError;
use crate::graph::{Digraph, Vertex};
use crate::scc::strong_components;

pub const DEFAULT_SPECTRUM_LIMIT: usize = 18;
pub const MAX_SPECTRUM_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    SubsetDp,
    DfsEnumeration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub length: usize,
    /// Simple cycle of this length, starting at its smallest vertex.
    pub witness: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Sorted by length.
    pub entries: Vec<SpectrumEntry>,
    pub method: SpectrumMethod,
    pub exact: bool,
    /// DP transitions or DFS steps performed.
    pub work: u64,
}

impl SpectrumReport {
    pub fn lengths(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.length).collect()
    }

    pub fn contains(&self, length: usize) -> bool {
        self.entries.binary_search_by_key(&length, |e| e.length).is_ok()
    }

    pub fn has_length_in(&self, lo: usize, hi: usize) -> bool {
        self.entries.iter().any(|e| (lo..=hi).contains(&e.length))
    }

    pub fn girth(&self) -> Option<usize> {
        self.entries.first().map(|e| e.length)
    }

    pub fn gcd(&self) -> usize {
        self.entries.iter().fold(0, |acc, e| acc.gcd(&e.length))
    }

    /// Most consecutive missing lengths between two present ones.
    pub fn largest_gap(&self) -> usize {
        self.entries
            .windows(2)
            .map(|w| w[1].length - w[0].length - 1)
            .max()
            .unwrap_or(0)
    }

    /// Longest run of consecutive present lengths.
    pub fn longest_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        let mut prev: Option<usize> = None;
        for e in &self.entries {
            run = if prev == Some(e.length - 1) { run + 1 } else { 1 };
            best = best.max(run);
            prev = Some(e.length);
        }
        best
    }
}

fn canonical(mut cycle: Vec<Vertex>) -> Vec<Vertex> {
    let pos = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(pos);
    cycle
}

fn largest_component(g: &Digraph) -> usize {
    strong_components(g).components.iter().map(Vec::len).max().unwrap_or(0)
}

/// Exact spectrum by a subset DP over simple paths, one pass per anchor vertex.
/// Each cycle is found from its smallest vertex, using only larger vertices of the
/// same strong component. `limit` bounds the largest strong component.
pub fn cycle_spectrum(g: &Digraph, limit: usize) -> Result<SpectrumReport, PeriodicityError> {
    let limit = limit.min(MAX_SPECTRUM_LIMIT);
    let largest = largest_component(g);
    if largest > limit {
        return Err(PeriodicityError::OverLimit { size: largest, limit });
    }
    let scc = strong_components(g);
    let mut found: Vec<Option<Vec<Vertex>>> = vec![None; g.n() + 1];
    let mut work = 0u64;
    for comp in scc.nontrivial() {
        for (ai, &anchor) in comp.iter().enumerate() {
            let cand = &comp[ai + 1..];
            let k = cand.len();
            if k == 0 {
                continue;
            }
            let local: Vec<u32> = cand
                .iter()
                .map(|&u| {
                    cand.iter()
                        .enumerate()
                        .filter(|&(_, &w)| g.has_edge(u, w))
                        .fold(0u32, |acc, (j, _)| acc | 1 << j)
                })
                .collect();
            let start: u32 = cand
                .iter()
                .enumerate()
                .filter(|&(_, &w)| g.has_edge(anchor, w))
                .fold(0, |acc, (j, _)| acc | 1 << j);
            let close: u32 = cand
                .iter()
                .enumerate()
                .filter(|&(_, &w)| g.has_edge(w, anchor))
                .fold(0, |acc, (j, _)| acc | 1 << j);
            // reach[mask]: ends of simple paths anchor -> .. -> end covering exactly mask
            let mut reach = vec![0u32; 1 << k];
            for j in 0..k {
                if start >> j & 1 == 1 {
                    reach[1 << j] = 1 << j;
                }
            }
            let mut hits: Vec<(usize, u32)> = Vec::new();
            for mask in 1usize..1 << k {
                let ends = reach[mask];
                if ends == 0 {
                    continue;
                }
                let len = mask.count_ones() as usize + 1;
                if ends & close != 0 && found[len].is_none() {
                    hits.push((mask, ends & close));
                    found[len] = Some(Vec::new());
                }
                let mut rest = ends;
                while rest != 0 {
                    let j = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let mut next = local[j] & !(mask as u32);
                    while next != 0 {
                        let l = next.trailing_zeros() as usize;
                        next &= next - 1;
                        reach[mask | 1 << l] |= 1 << l;
                        work += 1;
                    }
                }
            }
            for (mask, ends) in hits {
                let mut cur = ends.trailing_zeros() as usize;
                let mut m = mask;
                let mut path = vec![cand[cur]];
                while m.count_ones() > 1 {
                    m ^= 1 << cur;
                    let prev = (0..k)
                        .find(|&j| reach[m] >> j & 1 == 1 && local[j] >> cur & 1 == 1)
                        .expect("predecessor exists");
                    path.push(cand[prev]);
                    cur = prev;
                }
                path.push(anchor);
                path.reverse();
                let len = path.len();
                found[len] = Some(path);
            }
        }
    }
    Ok(report(found, SpectrumMethod::SubsetDp, work))
}

fn report(found: Vec<Option<Vec<Vertex>>>, method: SpectrumMethod, work: u64) -> SpectrumReport {
    let entries = found
        .into_iter()
        .enumerate()
        .filter_map(|(length, w)| {
            w.map(|w| SpectrumEntry {
                length,
                witness: canonical(w),
            })
        })
        .collect();
    SpectrumReport {
        entries,
        method,
        exact: true,
        work,
    }
}

/// Spectrum by enumerating every simple cycle from its smallest vertex.
pub fn cycle_spectrum_dfs(g: &Digraph) -> SpectrumReport {
    let n = g.n();
    let mut found: Vec<Option<Vec<Vertex>>> = vec![None; n + 1];
    let mut work = 0u64;
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        // explicit stack of (vertex, next neighbour index)
        let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            let nbrs = g.out_neighbors(v);
            if *idx < nbrs.len() {
                let w = nbrs[*idx];
                *idx += 1;
                work += 1;
                if w == s {
                    if found[path.len()].is_none() {
                        found[path.len()] = Some(path.clone());
                    }
                } else if w > s && !on_path[w] {
                    on_path[w] = true;
                    path.push(w);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                on_path[v] = false;
                path.pop();
            }
        }
    }
    report(found, SpectrumMethod::DfsEnumeration, work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{blowup_cycle, complete_digraph, random_digraph, transitive_tournament};
    use crate::traversal::{girth, is_simple_cycle};

    #[test]
    fn complete_three() {
        let s = cycle_spectrum(&complete_digraph(3), DEFAULT_SPECTRUM_LIMIT).unwrap();
        assert_eq!(s.lengths(), vec![2, 3]);
        assert_eq!(s.method, SpectrumMethod::SubsetDp);
    }

    #[test]
    fn blowup_three() {
        let g = blowup_cycle(3, &[2, 2, 2]).unwrap();
        let s = cycle_spectrum(&g, DEFAULT_SPECTRUM_LIMIT).unwrap();
        assert_eq!(s.lengths(), vec![3, 6]);
        assert_eq!(cycle_spectrum_dfs(&g).lengths(), vec![3, 6]);
    }

    #[test]
    fn acyclic_empty() {
        let s = cycle_spectrum(&transitive_tournament(6), DEFAULT_SPECTRUM_LIMIT).unwrap();
        assert!(s.entries.is_empty());
        assert_eq!(s.girth(), None);
    }

    #[test]
    fn blowup_four() {
        let g = blowup_cycle(4, &[2, 2, 2, 2]).unwrap();
        assert_eq!(cycle_spectrum(&g, 18).unwrap().lengths(), vec![4, 8]);
    }

    #[test]
    fn over_limit() {
        assert_eq!(
            cycle_spectrum(&complete_digraph(6), 5),
            Err(PeriodicityError::OverLimit { size: 6, limit: 5 })
        );
    }

    #[test]
    fn witnesses_and_girth() {
        for seed in 0..40 {
            let g = random_digraph(9, 0.25, seed).unwrap();
            let s = cycle_spectrum(&g, 18).unwrap();
            assert_eq!(s.girth(), girth(&g));
            for e in &s.entries {
                assert_eq!(e.witness.len(), e.length);
                assert!(is_simple_cycle(&g, &e.witness));
            }
            assert_eq!(s.lengths(), cycle_spectrum_dfs(&g).lengths(), "seed {seed}");
        }
    }

    #[test]
    fn gaps_and_runs() {
        let g = Digraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let s = cycle_spectrum(&g, 18).unwrap();
        assert_eq!(s.lengths(), vec![3, 4]);
        assert_eq!(s.longest_run(), 2);
        assert_eq!(s.largest_gap(), 0);
        assert_eq!(s.gcd(), 1);
        assert!(s.has_length_in(4, 9));
        assert!(!s.has_length_in(5, 9));
    }

    #[test]
    fn json_witnesses_are_lists() {
        let s = cycle_spectrum(&complete_digraph(3), 18).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["method"], "subset-dp");
        assert_eq!(v["entries"][0]["witness"], serde_json::json!([0, 1]));
    }
}
