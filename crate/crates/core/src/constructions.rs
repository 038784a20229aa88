//! Deterministic and seeded generators for the graph families used as examples,
//! extremal witnesses and test corpora.
//!
//! Random families use ChaCha8 seeded from a `u64`, so a `(spec, seed)` pair
//! always produces the same edge set.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, Edge, Vertex};
use crate::rational::Rational;
use crate::traversal::stats;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generated graph has {property} = {actual}, expected {expected}")]
    PropertyMismatch {
        property: &'static str,
        expected: String,
        actual: String,
    },
}

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidParameters(msg.into())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parts `V_0..V_{p-1}` of the given sizes (consecutive ids) with every edge
/// `V_i → V_{i+1 mod p}`.
pub fn blowup_cycle(p: usize, part_sizes: &[usize]) -> Result<Digraph, ConstructionError> {
    if p < 2 {
        return Err(invalid("blowup needs p >= 2"));
    }
    if part_sizes.len() != p {
        return Err(invalid(format!("expected {p} part sizes, got {}", part_sizes.len())));
    }
    if part_sizes.contains(&0) {
        return Err(invalid("part sizes must be positive"));
    }
    let starts: Vec<usize> = part_sizes
        .iter()
        .scan(0, |acc, &s| {
            let st = *acc;
            *acc += s;
            Some(st)
        })
        .collect();
    let n: usize = part_sizes.iter().sum();
    let mut edges = Vec::new();
    for i in 0..p {
        let j = (i + 1) % p;
        for u in starts[i]..starts[i] + part_sizes[i] {
            for v in starts[j]..starts[j] + part_sizes[j] {
                edges.push((u, v));
            }
        }
    }
    Ok(Digraph::from_edges(n, edges).expect("blowup edges are simple"))
}

/// Part sizes for a blowup of a `p`-cycle on `n` vertices: `⌊n/p⌋` each, with the
/// remainder spread over the earliest parts.
pub fn balanced_parts(n: usize, p: usize) -> Vec<usize> {
    (0..p).map(|i| n / p + usize::from(i < n % p)).collect()
}

/// Two halves `V_1 = 0..n/2`, `V_2 = n/2..n`; every edge `V_1 → V_2`, and inside each
/// half the circulant `i → i+1, …, i+d (mod n/2)` with `d = (1 - 2ε)n/4`.
pub fn two_block_regular(n: usize, eps: Rational) -> Result<Digraph, ConstructionError> {
    if n == 0 || n % 2 != 0 {
        return Err(invalid("n must be positive and even"));
    }
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if eps < zero || eps > one / 2 {
        return Err(invalid("eps must lie in [0, 1/2]"));
    }
    let d = (one - eps * 2) * Rational::from_integer(n as i128) / 4;
    if !d.is_integer() {
        return Err(invalid(format!("(1 - 2eps)n/4 = {d} is not an integer")));
    }
    let d = d.to_integer() as usize;
    let half = n / 2;
    if 2 * d >= half && d > 0 {
        return Err(invalid(format!(
            "circulant degree {d} on {half} vertices is not oriented"
        )));
    }
    let mut edges = Vec::new();
    for base in [0, half] {
        for i in 0..half {
            for k in 1..=d {
                edges.push((base + i, base + (i + k) % half));
            }
        }
    }
    for u in 0..half {
        for v in half..n {
            edges.push((u, v));
        }
    }
    Ok(Digraph::from_edges(n, edges).expect("circulant edges are simple"))
}

pub fn complete_digraph(n: usize) -> Digraph {
    let edges = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
    Digraph::from_edges(n, edges).expect("complete digraph is simple")
}

pub fn transitive_tournament(n: usize) -> Digraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Digraph::from_edges(n, edges).expect("transitive tournament is simple")
}

pub fn directed_cycle(n: usize) -> Result<Digraph, ConstructionError> {
    if n < 2 {
        return Err(invalid("a directed cycle needs n >= 2"));
    }
    Ok(Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple"))
}

/// Each unordered pair oriented by a fair coin.
pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Digraph::from_edges(n, edges).expect("tournament is simple")
}

/// Every ordered pair present independently with probability `density`
/// (2-cycles allowed).
pub fn random_digraph(n: usize, density: f64, seed: u64) -> Result<Digraph, ConstructionError> {
    check_density(density)?;
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Ok(Digraph::from_edges(n, edges).expect("random digraph is simple"))
}

/// Random oriented graph with exactly `m` edges (uniform among pair choices and
/// orientations).
pub fn random_oriented(n: usize, m: usize, seed: u64) -> Result<Digraph, ConstructionError> {
    let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if m > pairs.len() {
        return Err(invalid(format!("{m} edges do not fit in {} pairs", pairs.len())));
    }
    let mut rng = rng(seed);
    let chosen = pairs.choose_multiple(&mut rng, m).copied().collect::<Vec<_>>();
    let edges = chosen
        .into_iter()
        .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    Ok(Digraph::from_edges(n, edges).expect("oriented graph is simple"))
}

fn check_density(density: f64) -> Result<(), ConstructionError> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(invalid(format!("density {density} outside [0, 1]")))
    }
}

/// Seeded r-free digraph (girth > r).
///
/// For `n > r`: a blowup of an `(r+1)`-cycle with random part sizes (each ≥ 1) and
/// random vertex labels, keeping each blowup edge with probability
/// `(1 + density)/2`; then `⌊density·C(n,2)⌋` random non-adjacent ordered pairs
/// are offered and an edge `u → v` is kept only when every `v → u` path has
/// length ≥ r, so no cycle of length ≤ r appears. For `n ≤ r` the output is a
/// random acyclic graph with forward-edge probability `density`.
pub fn random_r_free(n: usize, r: usize, density: f64, seed: u64) -> Result<Digraph, ConstructionError> {
    if r < 2 {
        return Err(invalid("r must be at least 2"));
    }
    check_density(density)?;
    let mut rng = rng(seed);
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(&mut rng);

    if n <= r {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    edges.push((labels[i], labels[j]));
                }
            }
        }
        return Ok(Digraph::from_edges(n, edges).expect("random DAG is simple"));
    }

    let p = r + 1;
    let mut sizes = vec![1usize; p];
    for _ in p..n {
        sizes[rng.gen_range(0..p)] += 1;
    }
    let keep = (1.0 + density) / 2.0;
    let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut present: HashSet<Edge> = HashSet::new();
    let mut start = 0;
    let starts: Vec<usize> = sizes
        .iter()
        .map(|&s| {
            let st = start;
            start += s;
            st
        })
        .collect();
    for i in 0..p {
        let j = (i + 1) % p;
        for a in starts[i]..starts[i] + sizes[i] {
            for b in starts[j]..starts[j] + sizes[j] {
                if rng.gen_bool(keep) {
                    let (u, v) = (labels[a], labels[b]);
                    out[u].push(v);
                    present.insert((u, v));
                }
            }
        }
    }

    let attempts = (density * (n * (n - 1) / 2) as f64).floor() as usize;
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || present.contains(&(u, v)) || present.contains(&(v, u)) {
            continue;
        }
        // adding u -> v closes a cycle of length dist(v, u) + 1
        if distance_at_most(&out, v, u, r - 1) {
            continue;
        }
        out[u].push(v);
        present.insert((u, v));
    }

    let mut edges: Vec<Edge> = present.into_iter().collect();
    edges.sort_unstable();
    let g = Digraph::from_edges(n, edges).expect("generated edges are simple");
    debug_assert!(stats(&g).girth.map_or(true, |gi| gi > r));
    Ok(g)
}

fn distance_at_most(out: &[Vec<Vertex>], from: Vertex, to: Vertex, limit: usize) -> bool {
    let mut dist = vec![usize::MAX; out.len()];
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        if dist[u] == limit {
            continue;
        }
        for &w in &out[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    false
}

fn default_density() -> f64 {
    0.3
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    BlowupCycle {
        p: usize,
        parts: Vec<usize>,
    },
    TwoBlockRegular {
        n: usize,
        /// Rational written as `"a/b"`.
        eps: String,
    },
    CompleteDigraph {
        n: usize,
    },
    TransitiveTournament {
        n: usize,
    },
    DirectedCycle {
        n: usize,
    },
    RandomTournament {
        n: usize,
        seed: u64,
    },
    RandomRFree {
        n: usize,
        r: usize,
        #[serde(default = "default_density")]
        density: f64,
        seed: u64,
    },
    RandomDigraph {
        n: usize,
        density: f64,
        seed: u64,
    },
}

/// Properties a family guarantees analytically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedProperties {
    pub m: Option<usize>,
    pub gamma: Option<usize>,
    /// `Some(None)` means "acyclic".
    pub girth: Option<Option<usize>>,
    /// Lower bound on girth, exclusive (`girth > r`).
    pub girth_above: Option<usize>,
    /// Lower bound on the minimum feedback arc set.
    pub beta_lower: Option<usize>,
}

fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn parse_rational(text: &str) -> Result<Rational, ConstructionError> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| invalid(format!("cannot parse rational `{text}`")))
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::BlowupCycle { .. } => "blowup-cycle",
            GeneratorSpec::TwoBlockRegular { .. } => "two-block-regular",
            GeneratorSpec::CompleteDigraph { .. } => "complete-digraph",
            GeneratorSpec::TransitiveTournament { .. } => "transitive-tournament",
            GeneratorSpec::DirectedCycle { .. } => "directed-cycle",
            GeneratorSpec::RandomTournament { .. } => "random-tournament",
            GeneratorSpec::RandomRFree { .. } => "random-r-free",
            GeneratorSpec::RandomDigraph { .. } => "random-digraph",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            GeneratorSpec::RandomTournament { seed, .. }
            | GeneratorSpec::RandomRFree { seed, .. }
            | GeneratorSpec::RandomDigraph { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// Short stable label, e.g. `blowup-cycle(p=4,parts=2,2,2,2)`.
    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::BlowupCycle { p, parts } => {
                let parts: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                format!("blowup-cycle(p={p},parts={})", parts.join(","))
            }
            GeneratorSpec::TwoBlockRegular { n, eps } => format!("two-block-regular(n={n},eps={eps})"),
            GeneratorSpec::CompleteDigraph { n }
            | GeneratorSpec::TransitiveTournament { n }
            | GeneratorSpec::DirectedCycle { n } => format!("{}(n={n})", self.family()),
            GeneratorSpec::RandomTournament { n, seed } => format!("random-tournament(n={n},seed={seed})"),
            GeneratorSpec::RandomRFree { n, r, density, seed } => {
                format!("random-r-free(n={n},r={r},density={density},seed={seed})")
            }
            GeneratorSpec::RandomDigraph { n, density, seed } => {
                format!("random-digraph(n={n},density={density},seed={seed})")
            }
        }
    }

    pub fn expected(&self) -> ExpectedProperties {
        match self {
            GeneratorSpec::BlowupCycle { p, parts } => {
                let n: usize = parts.iter().sum();
                let adjacent: usize = if *p == 2 {
                    parts[0] * parts[1]
                } else {
                    (0..*p).map(|i| parts[i] * parts[(i + 1) % p]).sum()
                };
                let m = if *p == 2 { 2 * adjacent } else { adjacent };
                let equal = parts.windows(2).all(|w| w[0] == w[1]);
                ExpectedProperties {
                    m: Some(m),
                    gamma: Some(pairs(n) - adjacent),
                    girth: Some(Some(*p)),
                    girth_above: None,
                    beta_lower: equal.then(|| parts[0] * parts[0]),
                }
            }
            GeneratorSpec::TwoBlockRegular { n, eps } => {
                let m = parse_rational(eps).ok().and_then(|e| {
                    let v = (Rational::from_integer(1) - e) * Rational::from_integer((n * n) as i128) / 2;
                    v.is_integer().then(|| v.to_integer() as usize)
                });
                ExpectedProperties { m, ..Default::default() }
            }
            GeneratorSpec::CompleteDigraph { n } => ExpectedProperties {
                m: Some(n * n.saturating_sub(1)),
                gamma: Some(0),
                girth: Some((*n >= 2).then_some(2)),
                ..Default::default()
            },
            GeneratorSpec::TransitiveTournament { n } => ExpectedProperties {
                m: Some(pairs(*n)),
                gamma: Some(0),
                girth: Some(None),
                beta_lower: Some(0),
                ..Default::default()
            },
            GeneratorSpec::DirectedCycle { n } => ExpectedProperties {
                m: Some(*n),
                gamma: Some(if *n == 2 { 0 } else { pairs(*n) - n }),
                girth: Some(Some(*n)),
                beta_lower: Some(1),
                ..Default::default()
            },
            GeneratorSpec::RandomTournament { n, .. } => ExpectedProperties {
                m: Some(pairs(*n)),
                gamma: Some(0),
                ..Default::default()
            },
            GeneratorSpec::RandomRFree { r, .. } => ExpectedProperties {
                girth_above: Some(*r),
                ..Default::default()
            },
            GeneratorSpec::RandomDigraph { .. } => ExpectedProperties::default(),
        }
    }

    /// Builds the graph without checking its expected properties.
    pub fn build(&self) -> Result<Digraph, ConstructionError> {
        Ok(match self {
            GeneratorSpec::BlowupCycle { p, parts } => blowup_cycle(*p, parts)?,
            GeneratorSpec::TwoBlockRegular { n, eps } => two_block_regular(*n, parse_rational(eps)?)?,
            GeneratorSpec::CompleteDigraph { n } => complete_digraph(*n),
            GeneratorSpec::TransitiveTournament { n } => transitive_tournament(*n),
            GeneratorSpec::DirectedCycle { n } => directed_cycle(*n)?,
            GeneratorSpec::RandomTournament { n, seed } => random_tournament(*n, *seed),
            GeneratorSpec::RandomRFree { n, r, density, seed } => random_r_free(*n, *r, *density, *seed)?,
            GeneratorSpec::RandomDigraph { n, density, seed } => random_digraph(*n, *density, *seed)?,
        })
    }

    /// Builds the graph and checks every analytically known property.
    pub fn generate(&self) -> Result<Digraph, ConstructionError> {
        let g = self.build()?;
        check_expected(&g, &self.expected())?;
        Ok(g)
    }
}

fn mismatch<T: std::fmt::Debug>(property: &'static str, expected: T, actual: T) -> ConstructionError {
    ConstructionError::PropertyMismatch {
        property,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}

pub fn check_expected(g: &Digraph, expected: &ExpectedProperties) -> Result<(), ConstructionError> {
    let s = stats(g);
    if let Some(m) = expected.m {
        if m != s.m {
            return Err(mismatch("m", m, s.m));
        }
    }
    if let Some(gamma) = expected.gamma {
        if gamma != s.gamma {
            return Err(mismatch("gamma", gamma, s.gamma));
        }
    }
    if let Some(girth) = expected.girth {
        if girth != s.girth {
            return Err(mismatch("girth", girth, s.girth));
        }
    }
    if let Some(r) = expected.girth_above {
        if s.girth.is_some_and(|gi| gi <= r) {
            return Err(mismatch("girth", Some(r + 1), s.girth));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::traversal::{girth, is_acyclic};

    #[test]
    fn blowup_four_cycle() {
        let g = blowup_cycle(4, &[2, 2, 2, 2]).unwrap();
        let s = stats(&g);
        assert_eq!((s.n, s.m, s.girth, s.gamma), (8, 16, Some(4), 12));
    }

    #[test]
    fn blowup_degenerates_to_triangle() {
        let g = blowup_cycle(3, &[1, 1, 1]).unwrap();
        assert_eq!(g, directed_cycle(3).unwrap());
    }

    #[test]
    fn blowup_two_cycle() {
        let spec = GeneratorSpec::BlowupCycle { p: 2, parts: vec![2, 3] };
        let g = spec.generate().unwrap();
        assert_eq!(g.m(), 12);
        assert_eq!(girth(&g), Some(2));
    }

    #[test]
    fn blowup_rejects_bad_sizes() {
        assert!(blowup_cycle(1, &[3]).is_err());
        assert!(blowup_cycle(3, &[1, 0, 1]).is_err());
        assert!(blowup_cycle(3, &[1, 1]).is_err());
    }

    #[test]
    fn balanced_parts_spread_remainder_first() {
        assert_eq!(balanced_parts(10, 4), vec![3, 3, 2, 2]);
    }

    #[test]
    fn two_block_examples() {
        let g = two_block_regular(8, ratio(1, 2)).unwrap();
        assert_eq!(g.m(), 16);
        let g = two_block_regular(8, ratio(1, 4)).unwrap();
        assert_eq!(g.m(), 24);
        assert!(g.is_oriented());
        let best = crate::degree::max_balanced_degree(&g).unwrap().1;
        assert_eq!(best, 1);
        assert!(two_block_regular(8, ratio(0, 1)).is_err());
        assert!(two_block_regular(8, ratio(1, 3)).is_err());
        assert!(two_block_regular(7, ratio(1, 2)).is_err());
    }

    #[test]
    fn plain_families() {
        assert_eq!(complete_digraph(3).m(), 6);
        let t = transitive_tournament(4);
        assert!(is_acyclic(&t));
        assert_eq!(t.m(), 6);
        assert_eq!(girth(&directed_cycle(5).unwrap()), Some(5));
        assert!(directed_cycle(1).is_err());
    }

    #[test]
    fn random_families_are_deterministic() {
        assert_eq!(random_tournament(9, 4), random_tournament(9, 4));
        assert_eq!(random_r_free(12, 3, 0.4, 1).unwrap(), random_r_free(12, 3, 0.4, 1).unwrap());
        assert_eq!(random_tournament(1, 0).m(), 0);
        let t = random_tournament(7, 11);
        let s = stats(&t);
        assert!(s.is_oriented);
        assert_eq!(s.gamma, 0);
    }

    #[test]
    fn random_r_free_respects_girth() {
        for seed in 0..20 {
            let g = random_r_free(12, 3, 0.5, seed).unwrap();
            assert!(girth(&g).map_or(true, |gi| gi >= 4), "seed {seed}");
            let h = random_r_free(10, 9, 0.5, seed).unwrap();
            assert!(matches!(girth(&h), None | Some(10)));
        }
    }

    #[test]
    fn random_oriented_has_exact_edge_count() {
        let g = random_oriented(10, 30, 5).unwrap();
        assert_eq!(g.m(), 30);
        assert!(g.is_oriented());
        assert!(random_oriented(4, 7, 0).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"[{"family":"blowup-cycle","p":4,"parts":[2,2,2,2]},
                       {"family":"random-r-free","n":20,"r":5,"seed":3},
                       {"family":"two-block-regular","n":8,"eps":"1/4"}]"#;
        let specs: Vec<GeneratorSpec> = serde_json::from_str(json).unwrap();
        assert_eq!(specs[1], GeneratorSpec::RandomRFree { n: 20, r: 5, density: 0.3, seed: 3 });
        for s in &specs {
            s.generate().unwrap();
        }
        assert_eq!(specs[0].label(), "blowup-cycle(p=4,parts=2,2,2,2)");
    }
}
