//! Edge expansion of vertex sets, BFS sweep cuts, and short cycles through a vertex.
//!
//! For `S` with `1 ≤ |S| ≤ ⌊n/2⌋` the expansion is
//! `μ(S) = min(e(S, V∖S), e(V∖S, S)) / |S|`, kept as an exact rational. A sweep
//! grows the BFS balls `M_0 ⊂ M_1 ⊂ …` around a vertex and evaluates each ball
//! as a candidate low-expansion set.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::high_degree_start;
use crate::graph::{Digraph, Vertex};
use crate::rational::{ratio, Rational};
use crate::traversal::{bfs_bounded, bfs_layers, Direction};

/// Largest `n` accepted by [`exact_mu`] unless the caller overrides it.
pub const DEFAULT_MU_LIMIT: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("vertex set is empty")]
    EmptySet,
    #[error("|S| = {size} exceeds floor(n/2) = {half}")]
    SetTooLarge { size: usize, half: usize },
    #[error("vertex {0} out of range or repeated in S")]
    BadVertex(Vertex),
    #[error("n = {n} exceeds the exhaustive limit {limit}; use the sweep upper bound")]
    OverLimit { n: usize, limit: usize },
    #[error("no admissible set: n = {0} < 2")]
    NoAdmissibleSet(usize),
    #[error("sweep from {start} ({direction:?}) has no prefix of size <= floor(n/2)")]
    NoEligiblePrefix { start: Vertex, direction: Direction },
    #[error("reference expansion must be positive")]
    NonPositiveReference,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Exhaustive,
    Sweep { source: Vertex, direction: Direction },
    Supplied,
}

/// A vertex set with both directed cut sizes and its exact expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    /// Sorted vertex set.
    pub s: Vec<Vertex>,
    pub e_out: usize,
    pub e_in: usize,
    pub mu_num: i128,
    pub mu_den: i128,
    pub provenance: Provenance,
}

impl CutResult {
    fn new(mut s: Vec<Vertex>, e_out: usize, e_in: usize, provenance: Provenance) -> Self {
        s.sort_unstable();
        let mu = ratio(e_out.min(e_in) as i128, s.len() as i128);
        CutResult {
            s,
            e_out,
            e_in,
            mu_num: *mu.numer(),
            mu_den: *mu.denom(),
            provenance,
        }
    }

    pub fn mu(&self) -> Rational {
        ratio(self.mu_num, self.mu_den)
    }

    /// `min(e_out, e_in)`, i.e. `μ(S)·|S|`.
    pub fn smaller_cut(&self) -> usize {
        self.e_out.min(self.e_in)
    }
}

/// `(e(S, V∖S), e(V∖S, S))` for a membership vector.
pub fn cut_sizes(g: &Digraph, member: &[bool]) -> (usize, usize) {
    let mut out = 0;
    let mut inn = 0;
    for (u, v) in g.edges() {
        match (member[u], member[v]) {
            (true, false) => out += 1,
            (false, true) => inn += 1,
            _ => {}
        }
    }
    (out, inn)
}

pub fn expansion_of_set(g: &Digraph, s: &[Vertex]) -> Result<CutResult, ExpansionError> {
    if s.is_empty() {
        return Err(ExpansionError::EmptySet);
    }
    let half = g.n() / 2;
    if s.len() > half {
        return Err(ExpansionError::SetTooLarge { size: s.len(), half });
    }
    let mut member = vec![false; g.n()];
    for &v in s {
        if v >= g.n() || std::mem::replace(&mut member[v], true) {
            return Err(ExpansionError::BadVertex(v));
        }
    }
    let (e_out, e_in) = cut_sizes(g, &member);
    Ok(CutResult::new(s.to_vec(), e_out, e_in, Provenance::Supplied))
}

/// `μ(G)` by enumerating every admissible set. Ties go to the smaller set, then to
/// the lexicographically smaller sorted vertex list.
pub fn exact_mu(g: &Digraph, limit: usize) -> Result<CutResult, ExpansionError> {
    let n = g.n();
    if n > limit.min(63) {
        return Err(ExpansionError::OverLimit { n, limit });
    }
    if n < 2 {
        return Err(ExpansionError::NoAdmissibleSet(n));
    }
    let outs: Vec<u64> = (0..n).map(|v| g.out_mask(v).unwrap()).collect();
    let ins: Vec<u64> = (0..n).map(|v| g.in_mask(v).unwrap()).collect();
    let all = (1u64 << n) - 1;

    // best = (min cut, size, set)
    let mut best: Option<(usize, usize, Vec<Vertex>)> = None;
    for k in 1..=n / 2 {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let mask = combo.iter().fold(0u64, |m, &v| m | 1 << v);
            let outside = all & !mask;
            let (mut e_out, mut e_in) = (0u32, 0u32);
            for &v in &combo {
                e_out += (outs[v] & outside).count_ones();
                e_in += (ins[v] & outside).count_ones();
            }
            let cut = e_out.min(e_in) as usize;
            let better = match &best {
                None => true,
                Some((bc, bk, _)) => cut * bk < bc * k,
            };
            if better {
                best = Some((cut, k, combo.clone()));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    let (_, _, s) = best.expect("n >= 2 gives at least one admissible set");
    let mut member = vec![false; n];
    s.iter().for_each(|&v| member[v] = true);
    let (e_out, e_in) = cut_sizes(g, &member);
    Ok(CutResult::new(s, e_out, e_in, Provenance::Exhaustive))
}

/// Advances `combo` to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One BFS level of a sweep: `N_i`, the ball `M_i` and its two cut sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepLevel {
    pub i: usize,
    pub layer_size: usize,
    pub prefix_size: usize,
    pub e_out: usize,
    pub e_in: usize,
    /// `|M_i| ≤ ⌊n/2⌋`, so `μ(M_i)` is defined.
    pub eligible: bool,
}

impl SweepLevel {
    pub fn smaller_cut(&self) -> usize {
        self.e_out.min(self.e_in)
    }

    pub fn mu(&self) -> Rational {
        ratio(self.smaller_cut() as i128, self.prefix_size as i128)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTrace {
    pub source: Vertex,
    pub direction: Direction,
    pub n: usize,
    pub levels: Vec<SweepLevel>,
}

impl SweepTrace {
    /// `|N_i|`, zero past the last layer.
    pub fn layer(&self, i: usize) -> usize {
        self.levels.get(i).map_or(0, |l| l.layer_size)
    }

    /// The sequences `a_i = (|N_i| + |N_{i+1}|)/μ` and `b_i = Σ_{1≤j≤i} a_j` for
    /// `i = 1..levels`, relative to a reference expansion `μ > 0`.
    pub fn growth_sequences(&self, mu_ref: Rational) -> Vec<(Rational, Rational)> {
        let mut b = Rational::from_integer(0);
        (1..self.levels.len())
            .map(|i| {
                let a = Rational::from_integer((self.layer(i) + self.layer(i + 1)) as i128) / mu_ref;
                b += a;
                (a, b)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub cut: CutResult,
    pub trace: SweepTrace,
}

/// Sweeps the BFS balls around `source` and returns the admissible ball of least
/// expansion (earliest ball on ties) with the full trace.
pub fn sweep_low_expansion(
    g: &Digraph,
    source: Vertex,
    direction: Direction,
) -> Result<SweepOutcome, ExpansionError> {
    let n = g.n();
    let half = n / 2;
    let layers = bfs_layers(g, source, direction);
    let mut member = vec![false; n];
    let (mut e_out, mut e_in) = (0usize, 0usize);
    let mut prefix = 0;
    let mut levels = Vec::with_capacity(layers.layers.len());
    let mut best: Option<usize> = None;

    for (i, layer) in layers.layers.iter().enumerate() {
        for &u in layer {
            // edges u -> outside become out-cut, edges u -> inside leave the in-cut
            for &w in g.out_neighbors(u) {
                if member[w] {
                    e_in -= 1;
                } else {
                    e_out += 1;
                }
            }
            for &w in g.in_neighbors(u) {
                if member[w] {
                    e_out -= 1;
                } else {
                    e_in += 1;
                }
            }
            member[u] = true;
        }
        prefix += layer.len();
        let level = SweepLevel {
            i,
            layer_size: layer.len(),
            prefix_size: prefix,
            e_out,
            e_in,
            eligible: prefix <= half,
        };
        if level.eligible {
            let improves = best.map_or(true, |b| {
                let cur: &SweepLevel = &levels[b];
                level.smaller_cut() * cur.prefix_size < cur.smaller_cut() * level.prefix_size
            });
            if improves {
                best = Some(i);
            }
        }
        levels.push(level);
    }

    let trace = SweepTrace {
        source,
        direction,
        n,
        levels,
    };
    debug_assert!(boundary_is_next_layer(g, &layers.layers, &trace));
    let best = best.ok_or(ExpansionError::NoEligiblePrefix { start: source, direction })?;
    let s: Vec<Vertex> = layers.layers[..=best].concat();
    let lvl = &trace.levels[best];
    let cut = CutResult::new(
        s,
        lvl.e_out,
        lvl.e_in,
        Provenance::Sweep { source, direction },
    );
    Ok(SweepOutcome { cut, trace })
}

// The cut leaving M_i in the sweep direction consists of edges from N_i to N_{i+1}.
fn boundary_is_next_layer(g: &Digraph, layers: &[Vec<Vertex>], trace: &SweepTrace) -> bool {
    let mut level = vec![usize::MAX; g.n()];
    for (i, l) in layers.iter().enumerate() {
        l.iter().for_each(|&v| level[v] = i);
    }
    trace.levels.iter().all(|lv| {
        let forward = match trace.direction {
            Direction::Out => lv.e_out,
            Direction::In => lv.e_in,
        };
        let between = g
            .edges()
            .filter(|&(u, v)| match trace.direction {
                Direction::Out => level[u] == lv.i && level[v] == lv.i + 1,
                Direction::In => level[v] == lv.i && level[u] == lv.i + 1,
            })
            .count();
        forward == between && between <= lv.layer_size * trace.layer(lv.i + 1)
    })
}

/// Every sweep the search would run, in order (vertex ascending, out before in).
pub fn all_sweeps(g: &Digraph) -> Vec<SweepOutcome> {
    (0..g.n())
        .flat_map(|v| [Direction::Out, Direction::In].map(|d| (v, d)))
        .filter_map(|(v, d)| sweep_low_expansion(g, v, d).ok())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepStrategy {
    /// Sweep from every vertex in both directions.
    #[default]
    AllVertices,
    /// Sweep only from the high-degree start vertex (both directions).
    DegreeGuided,
}

/// Minimum-expansion sweep cut over the chosen start vertices. The result is an
/// upper bound on `μ(G)`.
pub fn best_sweep_cut(g: &Digraph, strategy: SweepStrategy) -> Result<SweepOutcome, ExpansionError> {
    if g.n() < 2 {
        return Err(ExpansionError::NoAdmissibleSet(g.n()));
    }
    let sources: Vec<Vertex> = match strategy {
        SweepStrategy::AllVertices => (0..g.n()).collect(),
        SweepStrategy::DegreeGuided => high_degree_start(g).into_iter().collect(),
    };
    let mut best: Option<SweepOutcome> = None;
    for v in sources {
        for d in [Direction::Out, Direction::In] {
            let Ok(found) = sweep_low_expansion(g, v, d) else {
                continue;
            };
            let improves = best.as_ref().map_or(true, |b| {
                found.cut.smaller_cut() * b.cut.s.len() < b.cut.smaller_cut() * found.cut.s.len()
            });
            if improves {
                best = Some(found);
            }
        }
    }
    Ok(best.expect("n >= 2 makes {v} admissible in every sweep"))
}

/// A shortest directed cycle through `v`, provided its length is at most `r`.
///
/// Meets an out-ball of radius `⌊r/2⌋` with an in-ball of radius `⌈r/2⌉`; the
/// shortest closed walk through `v` in a loopless digraph is a simple cycle.
pub fn short_cycle_through(g: &Digraph, v: Vertex, r: usize) -> Option<Vec<Vertex>> {
    if r < 2 {
        return None;
    }
    let (d_out, p_out) = bfs_bounded(g, v, Direction::Out, r / 2);
    let (d_in, p_in) = bfs_bounded(g, v, Direction::In, r.div_ceil(2));
    let (len, w) = (0..g.n())
        .filter(|&w| w != v)
        .filter_map(|w| Some((d_out[w]? + d_in[w]?, w)))
        .min()?;
    if len > r {
        return None;
    }
    let mut forward = vec![w];
    let mut cur = w;
    while let Some(p) = p_out[cur] {
        forward.push(p);
        cur = p;
    }
    forward.reverse();
    let mut cur = w;
    while let Some(next) = p_in[cur] {
        if next == v {
            break;
        }
        forward.push(next);
        cur = next;
    }
    debug_assert_eq!(forward.len(), len);
    Some(forward)
}

/// Outcome of checking a sweep trace against the layer-growth argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerGrowthReport {
    /// First level where `|N_i| + |N_{i+1}| < 2√(μ(M_i)|M_i|)`. Never expected.
    pub amgm_violation: Option<usize>,
    /// First level whose ball is inadmissible or has `μ(M_i) < μ_ref`; the growth
    /// bound is only claimed below it.
    pub premise_failure: Option<usize>,
    /// Levels `i ≥ 1` where `b_i ≥ (2/5)i²` was checked.
    pub growth_checked: usize,
    /// First checked level where `b_i < (2/5)i²`.
    pub growth_violation: Option<usize>,
}

impl LayerGrowthReport {
    pub fn passed(&self) -> bool {
        self.amgm_violation.is_none() && self.growth_violation.is_none()
    }
}

/// `(|N_i| + |N_{i+1}|)² ≥ 4 μ(M_i)|M_i|` in integers.
pub fn amgm_holds(trace: &SweepTrace, i: usize) -> bool {
    let s = (trace.layer(i) + trace.layer(i + 1)) as u128;
    s * s >= 4 * trace.levels[i].smaller_cut() as u128
}

pub fn check_layer_growth(trace: &SweepTrace, mu_ref: Rational) -> Result<LayerGrowthReport, ExpansionError> {
    if mu_ref <= Rational::from_integer(0) {
        return Err(ExpansionError::NonPositiveReference);
    }
    let (p, q) = (*mu_ref.numer(), *mu_ref.denom());
    let amgm_violation = (0..trace.levels.len()).find(|&i| !amgm_holds(trace, i));
    let premise_failure = trace.levels.iter().position(|lv| {
        // μ(M_i) ≥ p/q  ⇔  cut·q ≥ p·|M_i|
        !lv.eligible || (lv.smaller_cut() as i128) * q < p * lv.prefix_size as i128
    });
    let valid = premise_failure.unwrap_or(trace.levels.len());

    let mut growth_checked = 0;
    let mut growth_violation = None;
    let mut total: i128 = 0;
    for i in 1..valid {
        total += (trace.layer(i) + trace.layer(i + 1)) as i128;
        growth_checked += 1;
        // b_i = total/μ_ref ≥ 2i²/5  ⇔  5·total·q ≥ 2·i²·p
        let i2 = (i * i) as i128;
        if growth_violation.is_none() && 5 * total * q < 2 * i2 * p {
            growth_violation = Some(i);
        }
    }
    Ok(LayerGrowthReport {
        amgm_violation,
        premise_failure,
        growth_checked,
        growth_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{blowup_cycle, complete_digraph, directed_cycle};

    #[test]
    fn four_cycle_consecutive_pair() {
        let c = expansion_of_set(&directed_cycle(4).unwrap(), &[0, 1]).unwrap();
        assert_eq!((c.e_out, c.e_in), (1, 1));
        assert_eq!(c.mu(), ratio(1, 2));
    }

    #[test]
    fn complete_four_half() {
        let c = expansion_of_set(&complete_digraph(4), &[1, 3]).unwrap();
        assert_eq!((c.e_out, c.e_in), (4, 4));
        assert_eq!(c.mu(), ratio(2, 1));
    }

    #[test]
    fn set_validation() {
        let g = directed_cycle(5).unwrap();
        assert_eq!(expansion_of_set(&g, &[]), Err(ExpansionError::EmptySet));
        assert_eq!(
            expansion_of_set(&g, &[0, 1, 2]),
            Err(ExpansionError::SetTooLarge { size: 3, half: 2 })
        );
        assert_eq!(expansion_of_set(&g, &[1, 1]), Err(ExpansionError::BadVertex(1)));
        let edgeless = expansion_of_set(&Digraph::empty(4), &[2]).unwrap();
        assert_eq!(edgeless.mu(), ratio(0, 1));
    }

    #[test]
    fn exact_mu_examples() {
        assert_eq!(exact_mu(&directed_cycle(4).unwrap(), 22).unwrap().mu(), ratio(1, 2));
        let k4 = exact_mu(&complete_digraph(4), 22).unwrap();
        assert_eq!(k4.mu(), ratio(2, 1));
        assert_eq!(k4.s, vec![0, 1]);
        let g = Digraph::from_edges(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let iso = exact_mu(&g, 22).unwrap();
        assert_eq!((iso.mu(), iso.s.clone()), (ratio(0, 1), vec![3]));
        assert!(matches!(
            exact_mu(&Digraph::empty(23), 22),
            Err(ExpansionError::OverLimit { .. })
        ));
        assert_eq!(exact_mu(&Digraph::empty(1), 22), Err(ExpansionError::NoAdmissibleSet(1)));
    }

    #[test]
    fn exact_mu_tie_break_is_lexicographic() {
        // directed 6-cycle: every arc of consecutive vertices has cut 1 each way,
        // so the best is a 3-set; the first in lex order is {0,1,2}
        let c = exact_mu(&directed_cycle(6).unwrap(), 22).unwrap();
        assert_eq!(c.s, vec![0, 1, 2]);
        assert_eq!(c.mu(), ratio(1, 3));
    }

    #[test]
    fn sweep_on_eight_cycle() {
        let out = sweep_low_expansion(&directed_cycle(8).unwrap(), 0, Direction::Out).unwrap();
        assert_eq!(out.cut.s, vec![0, 1, 2, 3]);
        assert_eq!(out.cut.mu(), ratio(1, 4));
        assert_eq!(out.trace.levels.len(), 8);
        assert!(out.trace.levels[4..].iter().all(|l| !l.eligible));
    }

    #[test]
    fn sweep_on_complete_six() {
        let out = sweep_low_expansion(&complete_digraph(6), 0, Direction::Out).unwrap();
        assert_eq!(out.cut.s, vec![0]);
        assert_eq!(out.cut.mu(), ratio(5, 1));
    }

    #[test]
    fn sweep_on_blowup_eight_cycle() {
        let g = blowup_cycle(8, &[2; 8]).unwrap();
        let out = sweep_low_expansion(&g, 0, Direction::Out).unwrap();
        assert!(out.cut.mu() <= ratio(1, 1));
        // balls have sizes 1,3,5,7 with cut 2,4,4,4
        assert_eq!(out.cut.s.len(), 7);
        assert_eq!(out.cut.mu(), ratio(4, 7));
    }

    #[test]
    fn single_vertex_has_no_sweep() {
        assert!(matches!(
            sweep_low_expansion(&Digraph::empty(1), 0, Direction::Out),
            Err(ExpansionError::NoEligiblePrefix { .. })
        ));
        assert!(best_sweep_cut(&Digraph::empty(1), SweepStrategy::AllVertices).is_err());
    }

    #[test]
    fn best_sweep_examples() {
        let c8 = best_sweep_cut(&directed_cycle(8).unwrap(), SweepStrategy::AllVertices).unwrap();
        assert!(c8.cut.mu() <= ratio(1, 4));
        let e = best_sweep_cut(&Digraph::empty(5), SweepStrategy::AllVertices).unwrap();
        assert_eq!(e.cut.mu(), ratio(0, 1));
        let guided = best_sweep_cut(&complete_digraph(6), SweepStrategy::DegreeGuided).unwrap();
        assert_eq!(guided.cut.mu(), ratio(5, 1));
    }

    #[test]
    fn short_cycles() {
        let t = directed_cycle(3).unwrap();
        assert_eq!(short_cycle_through(&t, 0, 3), Some(vec![0, 1, 2]));
        assert_eq!(short_cycle_through(&t, 0, 2), None);
        let b = blowup_cycle(4, &[2; 4]).unwrap();
        for v in 0..8 {
            let c = short_cycle_through(&b, v, 4).unwrap();
            assert_eq!(c.len(), 4);
            assert_eq!(c[0], v);
            assert!(crate::traversal::is_simple_cycle(&b, &c));
        }
        assert_eq!(short_cycle_through(&b, 0, 3), None);
    }

    #[test]
    fn layer_growth_on_eight_cycle() {
        let out = sweep_low_expansion(&directed_cycle(8).unwrap(), 0, Direction::Out).unwrap();
        let rep = check_layer_growth(&out.trace, ratio(1, 1)).unwrap();
        assert_eq!(rep.amgm_violation, None);
        assert_eq!(rep.premise_failure, Some(1));
        assert!(rep.passed());
        assert_eq!(
            check_layer_growth(&out.trace, ratio(0, 1)),
            Err(ExpansionError::NonPositiveReference)
        );
    }

    #[test]
    fn layer_growth_single_vertex_vacuous() {
        let trace = SweepTrace {
            source: 0,
            direction: Direction::Out,
            n: 1,
            levels: vec![SweepLevel { i: 0, layer_size: 1, prefix_size: 1, e_out: 0, e_in: 0, eligible: false }],
        };
        let rep = check_layer_growth(&trace, ratio(1, 1)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.growth_checked, 0);
    }

    #[test]
    fn growth_sequences_sum() {
        let out = sweep_low_expansion(&complete_digraph(6), 0, Direction::Out).unwrap();
        let seq = out.trace.growth_sequences(ratio(1, 1));
        // layers 1,5: a_1 = 5 + 0
        assert_eq!(seq, vec![(ratio(5, 1), ratio(5, 1))]);
    }
}
