//! Feedback arc sets: exact minimum by ordering DP, the forward/backward ordering
//! heuristic, the recursive expansion-cut construction for r-free digraphs, and
//! the bound report comparing `β(G)` with the known upper bounds.
//!
//! Every certificate is re-verified against the input graph before it is handed
//! out: the removed edges must exist and their removal must leave an acyclic graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expansion::{best_sweep_cut, ExpansionError, SweepOutcome, SweepStrategy};
use crate::graph::{Digraph, Edge, Vertex};
use crate::rational::{int, ratio, Rational};
use crate::scc::strong_components;
use crate::traversal::{find_cycle, girth_with_witness, stats};

/// Largest strong component handled by [`exact_min_fas`] by default.
pub const DEFAULT_EXACT_LIMIT: usize = 20;
/// Hard cap on the DP size regardless of the requested limit (2^24 table entries).
pub const MAX_EXACT_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FasError {
    #[error("component of size {size} exceeds the exact limit {limit}")]
    OverLimit { size: usize, limit: usize },
    #[error("order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("r = {0} is below 2")]
    InvalidR(usize),
    #[error("graph is not {r}-free: cycle {cycle:?} has length {}", cycle.len())]
    NotRFree { r: usize, cycle: Vec<Vertex> },
    #[error(
        "sweep cut on {n} vertices has mu = {cut}/{size}, not below 25n/r^2 for r = {r}; \
         this contradicts r-freeness"
    )]
    ExpansionBoundViolated { n: usize, r: usize, cut: usize, size: usize },
    #[error("certificate edge {0:?} is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("certificate lists edge {0:?} twice")]
    RepeatedEdge(Edge),
    #[error("graph minus certificate still has cycle {cycle:?}")]
    NotAcyclic { cycle: Vec<Vertex> },
    #[error("certificate removes {removed} edges, above its bound {bound}")]
    BoundExceeded { removed: usize, bound: Rational },
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FasMethod {
    ExactDp,
    Ordering,
    RecursiveExpansion,
    Supplied,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundFormula {
    #[serde(rename = "25n^2/r^2")]
    QuadraticGirth,
    #[serde(rename = "800gamma/r^2")]
    GammaLinear,
    #[serde(rename = "800(gamma-gamma^2/n^2)/r^2")]
    GammaInduction,
    #[serde(rename = "m/2")]
    HalfEdges,
}

impl BoundFormula {
    pub fn tag(self) -> &'static str {
        match self {
            BoundFormula::QuadraticGirth => "25n^2/r^2",
            BoundFormula::GammaLinear => "800gamma/r^2",
            BoundFormula::GammaInduction => "800(gamma-gamma^2/n^2)/r^2",
            BoundFormula::HalfEdges => "m/2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedBound {
    pub formula: BoundFormula,
    pub value: Rational,
}

/// An edge set whose removal was checked to leave the graph acyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CertificateRepr", from = "CertificateRepr")]
pub struct FasCertificate {
    pub method: FasMethod,
    /// Sorted, in the ids of the input graph.
    pub removed_edges: Vec<Edge>,
    pub bound: Option<CertifiedBound>,
    pub r_used: Option<usize>,
    pub verified_acyclic: bool,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    method: FasMethod,
    removed_edges: Vec<Edge>,
    bound_formula: Option<BoundFormula>,
    bound_num: Option<i128>,
    bound_den: Option<i128>,
    r_used: Option<usize>,
    verified_acyclic: bool,
}

impl From<FasCertificate> for CertificateRepr {
    fn from(c: FasCertificate) -> Self {
        CertificateRepr {
            method: c.method,
            removed_edges: c.removed_edges,
            bound_formula: c.bound.as_ref().map(|b| b.formula),
            bound_num: c.bound.as_ref().map(|b| *b.value.numer()),
            bound_den: c.bound.as_ref().map(|b| *b.value.denom()),
            r_used: c.r_used,
            verified_acyclic: c.verified_acyclic,
        }
    }
}

impl From<CertificateRepr> for FasCertificate {
    fn from(r: CertificateRepr) -> Self {
        let bound = match (r.bound_formula, r.bound_num, r.bound_den) {
            (Some(formula), Some(num), Some(den)) if den != 0 => Some(CertifiedBound {
                formula,
                value: ratio(num, den),
            }),
            _ => None,
        };
        FasCertificate {
            method: r.method,
            removed_edges: r.removed_edges,
            bound,
            r_used: r.r_used,
            // never trusted from input; `verify` re-establishes it
            verified_acyclic: false,
        }
    }
}

impl FasCertificate {
    pub fn size(&self) -> usize {
        self.removed_edges.len()
    }

    /// Checks membership, uniqueness, acyclicity of the remainder and the attached bound.
    pub fn verify(&self, g: &Digraph) -> Result<(), FasError> {
        let mut sorted = self.removed_edges.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(FasError::RepeatedEdge(w[0]));
            }
        }
        if let Some(&e) = sorted.iter().find(|&&(u, v)| u >= g.n() || v >= g.n() || !g.has_edge(u, v)) {
            return Err(FasError::UnknownEdge(e));
        }
        if let Some(cycle) = find_cycle(&g.without_edges(&sorted)) {
            return Err(FasError::NotAcyclic { cycle });
        }
        if let Some(b) = &self.bound {
            if int(sorted.len()) > b.value {
                return Err(FasError::BoundExceeded {
                    removed: sorted.len(),
                    bound: b.value,
                });
            }
        }
        Ok(())
    }

    /// Builds a certificate and verifies it against `g`.
    pub fn certify(
        g: &Digraph,
        method: FasMethod,
        mut removed_edges: Vec<Edge>,
        bound: Option<CertifiedBound>,
        r_used: Option<usize>,
    ) -> Result<Self, FasError> {
        removed_edges.sort_unstable();
        let mut cert = FasCertificate {
            method,
            removed_edges,
            bound,
            r_used,
            verified_acyclic: false,
        };
        cert.verify(g)?;
        cert.verified_acyclic = true;
        Ok(cert)
    }
}

/// Minimum backward-edge count over all orderings of a graph with `n ≤ MAX_EXACT_LIMIT`, and an
/// optimal ordering. Subset DP: `best(U) = min_{v∈U} best(U∖v) + |out(v) ∩ (U∖v)|`,
/// where `v` is placed last among `U`.
pub fn ordering_dp(h: &Digraph) -> (usize, Vec<Vertex>) {
    let k = h.n();
    if k == 0 {
        return (0, Vec::new());
    }
    assert!(k <= MAX_EXACT_LIMIT, "ordering DP table of 2^{k} entries is not supported");
    let outs: Vec<u64> = (0..k).map(|v| h.out_mask(v).unwrap()).collect();
    let size = 1usize << k;
    let mut best = vec![u32::MAX; size];
    let mut last = vec![0u8; size];
    best[0] = 0;
    for set in 1..size {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = set & !(1 << v);
            let cost = best[without] + (outs[v] & without as u64).count_ones();
            if cost < best[set] {
                best[set] = cost;
                last[set] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut set = size - 1;
    while set != 0 {
        let v = last[set] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    (best[size - 1] as usize, order)
}

fn backward_edges(g: &Digraph, order: &[Vertex]) -> Vec<Edge> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    g.edges().filter(|&(u, v)| pos[u] > pos[v]).collect()
}

/// Minimum feedback arc set, solved per strong component (β is additive over them).
pub fn exact_min_fas(g: &Digraph, limit: usize) -> Result<FasCertificate, FasError> {
    let limit = limit.min(MAX_EXACT_LIMIT);
    let scc = strong_components(g);
    if let Some(big) = scc.components.iter().find(|c| c.len() > limit) {
        return Err(FasError::OverLimit { size: big.len(), limit });
    }
    let mut removed = Vec::new();
    for comp in scc.nontrivial() {
        let (h, map) = g.induced(comp);
        let (_, order) = ordering_dp(&h);
        removed.extend(backward_edges(&h, &order).into_iter().map(|(u, v)| (map[u], map[v])));
    }
    FasCertificate::certify(g, FasMethod::ExactDp, removed, None, None)
}

/// Minimum feedback arc set from a single DP over the whole vertex set, without
/// splitting into strong components.
pub fn exact_min_fas_unsplit(g: &Digraph, limit: usize) -> Result<FasCertificate, FasError> {
    let limit = limit.min(MAX_EXACT_LIMIT);
    if g.n() > limit {
        return Err(FasError::OverLimit { size: g.n(), limit });
    }
    let (_, order) = ordering_dp(g);
    FasCertificate::certify(g, FasMethod::ExactDp, backward_edges(g, &order), None, None)
}

fn half_edges(g: &Digraph) -> CertifiedBound {
    CertifiedBound {
        formula: BoundFormula::HalfEdges,
        value: ratio(g.m() as i128, 2),
    }
}

/// Removes the smaller of the backward and forward edge sets of a linear order
/// (backward on ties). Defaults to the identity order.
pub fn ordering_fas(g: &Digraph, order: Option<&[Vertex]>) -> Result<FasCertificate, FasError> {
    let identity: Vec<Vertex>;
    let order = match order {
        Some(o) => {
            let mut seen = vec![false; g.n()];
            let ok = o.len() == g.n()
                && o.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true));
            if !ok {
                return Err(FasError::InvalidPermutation(g.n()));
            }
            o
        }
        None => {
            identity = (0..g.n()).collect();
            &identity
        }
    };
    let backward = backward_edges(g, order);
    let removed = if 2 * backward.len() <= g.m() {
        backward
    } else {
        let back: std::collections::HashSet<Edge> = backward.into_iter().collect();
        g.edges().filter(|e| !back.contains(e)).collect()
    };
    FasCertificate::certify(g, FasMethod::Ordering, removed, Some(half_edges(g)), None)
}

/// `25n²/r²`.
pub fn quadratic_girth_bound(n: usize, r: usize) -> Rational {
    ratio(25 * (n * n) as i128, (r * r) as i128)
}

/// One cut made by the recursive construction.
#[derive(Debug, Clone)]
pub struct RecursionStep<'a> {
    pub depth: usize,
    /// The subgraph being split, relabelled `0..n`.
    pub graph: &'a Digraph,
    pub sweep: &'a SweepOutcome,
    /// Edges deleted at this step, in subgraph ids.
    pub deleted: usize,
}

/// Feedback arc set for an r-free digraph with at most `25n²/r²` edges.
///
/// For `r ≤ 10` this is the ordering heuristic (already below `n²/4`). Otherwise
/// the graph is split along a sweep cut `S` with `μ(S) < 25n/r²`, the smaller
/// directed cut is deleted (the `S → V∖S` side on ties) and both sides are solved
/// recursively; graphs on at most `r` vertices need nothing.
pub fn recursive_expansion_fas(g: &Digraph, r: usize) -> Result<FasCertificate, FasError> {
    recursive_expansion_fas_with(g, r, SweepStrategy::AllVertices, &mut |_| {})
}

pub fn recursive_expansion_fas_with(
    g: &Digraph,
    r: usize,
    strategy: SweepStrategy,
    observer: &mut dyn FnMut(&RecursionStep<'_>),
) -> Result<FasCertificate, FasError> {
    if r < 2 {
        return Err(FasError::InvalidR(r));
    }
    if let Some(cycle) = girth_with_witness(g) {
        if cycle.len() <= r {
            return Err(FasError::NotRFree { r, cycle });
        }
    }
    let bound = CertifiedBound {
        formula: BoundFormula::QuadraticGirth,
        value: quadratic_girth_bound(g.n(), r),
    };
    let removed = if g.n() <= r {
        Vec::new()
    } else if r <= 10 {
        ordering_fas(g, None)?.removed_edges
    } else {
        let mut out = Vec::new();
        let ids: Vec<Vertex> = (0..g.n()).collect();
        split_recursively(g, &ids, r, strategy, 0, &mut out, observer)?;
        out
    };
    FasCertificate::certify(g, FasMethod::RecursiveExpansion, removed, Some(bound), Some(r))
}

fn split_recursively(
    h: &Digraph,
    ids: &[Vertex],
    r: usize,
    strategy: SweepStrategy,
    depth: usize,
    out: &mut Vec<Edge>,
    observer: &mut dyn FnMut(&RecursionStep<'_>),
) -> Result<usize, FasError> {
    let n = h.n();
    if n <= r {
        return Ok(0);
    }
    let sweep = best_sweep_cut(h, strategy)?;
    let cut = sweep.cut.smaller_cut();
    let size = sweep.cut.s.len();
    // μ(S) < 25n/r²  ⇔  cut·r² < 25·n·|S|
    if cut * r * r >= 25 * n * size {
        return Err(FasError::ExpansionBoundViolated { n, r, cut, size });
    }
    let mut member = vec![false; n];
    sweep.cut.s.iter().for_each(|&v| member[v] = true);
    let delete_outgoing = sweep.cut.e_out <= sweep.cut.e_in;
    let before = out.len();
    for (u, v) in h.edges() {
        let crossing = if delete_outgoing {
            member[u] && !member[v]
        } else {
            !member[u] && member[v]
        };
        if crossing {
            out.push((ids[u], ids[v]));
        }
    }
    let deleted = out.len() - before;
    observer(&RecursionStep {
        depth,
        graph: h,
        sweep: &sweep,
        deleted,
    });

    let inside: Vec<Vertex> = (0..n).filter(|&v| member[v]).collect();
    let outside: Vec<Vertex> = (0..n).filter(|&v| !member[v]).collect();
    let mut total = deleted;
    for part in [inside, outside] {
        let (sub, local) = h.induced(&part);
        let sub_ids: Vec<Vertex> = local.iter().map(|&v| ids[v]).collect();
        total += split_recursively(&sub, &sub_ids, r, strategy, depth + 1, out, observer)?;
    }
    let bound = quadratic_girth_bound(n, r);
    if int(total) > bound {
        return Err(FasError::BoundExceeded { removed: total, bound });
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The bound does not apply at this `r`.
    OutOfScope,
    /// Only an upper bound on β was available and it exceeds the bound.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub formula: String,
    pub value_num: Option<i128>,
    pub value_den: Option<i128>,
    pub status: CheckStatus,
}

impl BoundCheck {
    fn evaluate(formula: &str, value: Option<Rational>, beta: usize, exact: bool) -> Self {
        let status = match &value {
            None => CheckStatus::OutOfScope,
            Some(v) if int(beta) <= *v => CheckStatus::Pass,
            Some(_) if exact => CheckStatus::Fail,
            Some(_) => CheckStatus::Inconclusive,
        };
        BoundCheck {
            formula: formula.to_string(),
            value_num: value.map(|v| *v.numer()),
            value_den: value.map(|v| *v.denom()),
            status,
        }
    }

    pub fn value(&self) -> Option<Rational> {
        Some(ratio(self.value_num?, self.value_den?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaMode {
    Exact,
    UpperBound,
}

/// `β(G)` against the girth/non-adjacency upper bounds, all in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    /// Largest r with the graph r-free (`girth - 1`); `None` for acyclic graphs.
    pub r: Option<usize>,
    pub gamma: usize,
    pub beta: usize,
    pub beta_mode: BetaMode,
    /// Acyclic input: β = 0 and no bound is evaluated.
    pub degenerate: bool,
    pub quadratic: BoundCheck,
    pub gamma_linear: BoundCheck,
    pub gamma_induction: BoundCheck,
    /// Conjectured bound `2γ/((r+1)(r-2))`; a failure is a finding, not an error.
    pub sullivan: BoundCheck,
}

impl BoundReport {
    /// Proven bounds that failed with an exact β.
    pub fn theorem_violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.quadratic.status == CheckStatus::Fail {
            v.push("25n^2/r^2");
        }
        if self.gamma_linear.status == CheckStatus::Fail {
            v.push("800gamma/r^2");
        }
        if self.gamma_induction.status == CheckStatus::Fail {
            v.push("800(gamma-gamma^2/n^2)/r^2");
        }
        v
    }

    pub fn sullivan_violated(&self) -> bool {
        self.sullivan.status == CheckStatus::Fail
    }
}

/// Evaluates all bounds for `g`. β is exact when every strong component has at most
/// `exact_limit` vertices, otherwise a certified upper bound.
pub fn bound_report(g: &Digraph, exact_limit: usize) -> Result<BoundReport, FasError> {
    let st = stats(g);
    let n = g.n();
    let (beta, beta_mode) = match exact_min_fas(g, exact_limit) {
        Ok(c) => (c.size(), BetaMode::Exact),
        Err(FasError::OverLimit { .. }) => {
            let cert = match st.r_free_level() {
                Some(r) if r >= 2 => recursive_expansion_fas(g, r)?,
                _ => ordering_fas(g, None)?,
            };
            (cert.size(), BetaMode::UpperBound)
        }
        Err(e) => return Err(e),
    };
    let exact = beta_mode == BetaMode::Exact;
    let gamma = st.gamma as i128;
    let r = st.r_free_level();
    let scope = |min_r: usize| r.filter(|&r| r >= min_r).map(|r| r as i128);

    let quadratic = scope(2).map(|r| ratio(25 * (n * n) as i128, r * r));
    let gamma_linear = scope(3).map(|r| ratio(800 * gamma, r * r));
    let gamma_induction = scope(3).and_then(|r| {
        let nn = (n * n) as i128;
        (nn > 0).then(|| ratio(800 * (gamma * nn - gamma * gamma), r * r * nn))
    });
    let sullivan = scope(3).map(|r| ratio(2 * gamma, (r + 1) * (r - 2)));

    Ok(BoundReport {
        n,
        r,
        gamma: st.gamma,
        beta,
        beta_mode,
        degenerate: r.is_none(),
        quadratic: BoundCheck::evaluate("25n^2/r^2", quadratic, beta, exact),
        gamma_linear: BoundCheck::evaluate("800gamma/r^2", gamma_linear, beta, exact),
        gamma_induction: BoundCheck::evaluate("800(gamma-gamma^2/n^2)/r^2", gamma_induction, beta, exact),
        sullivan: BoundCheck::evaluate("2gamma/((r+1)(r-2))", sullivan, beta, exact),
    })
}
