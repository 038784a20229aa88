//! Periods of strong components, pseudoperiodicity, `λ(G)`, cycle-length spectra
//! and the coprime closed-walk construction.
//!
//! The period of a strong component is the gcd of its directed cycle lengths. It
//! is computed from one BFS: with distances `d` from a root, the period is the gcd
//! of `|d(v) + 1 - d(w)|` over the component's edges `(v, w)`, and the classes
//! `d mod p` partition the component so that every edge advances the class by one.

mod lambda;
mod numbers;
mod spectrum;
mod walk;

pub use lambda::{is_pseudoperiodic, lambda_exact, LambdaResult, DEFAULT_LAMBDA_LIMIT};
pub use numbers::{coin_represent, crt_combine, prime_factors, CoinRepresentation, NumberError};
pub use spectrum::{
    cycle_spectrum, cycle_spectrum_dfs, SpectrumEntry, SpectrumMethod, SpectrumReport,
    DEFAULT_SPECTRUM_LIMIT, MAX_SPECTRUM_LIMIT,
};
pub use walk::{build_coprime_walk, CoprimeWalk, WalkError};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, Vertex};
use crate::scc::{is_strong_set, strong_components};
use crate::traversal::{bfs, Direction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicityError {
    #[error("vertex set {0:?} is not strongly connected")]
    NotStrong(Vec<Vertex>),
    #[error("size {size} exceeds the limit {limit}")]
    OverLimit { size: usize, limit: usize },
}

/// Period of a strong component: 0 for a single vertex, otherwise the gcd of all
/// cycle lengths inside it.
pub fn component_period(g: &Digraph, component: &[Vertex]) -> Result<usize, PeriodicityError> {
    Ok(period_and_levels(g, component)?.0)
}

// (period, sorted component, BFS distance of each component vertex from its smallest id)
fn period_and_levels(
    g: &Digraph,
    component: &[Vertex],
) -> Result<(usize, Vec<Vertex>, Vec<usize>), PeriodicityError> {
    let mut sorted = component.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !is_strong_set(g, &sorted) {
        return Err(PeriodicityError::NotStrong(sorted));
    }
    let (h, _) = g.induced(&sorted);
    let (dist, _) = bfs(&h, 0, Direction::Out);
    let levels: Vec<usize> = dist.into_iter().map(|d| d.expect("strong component")).collect();
    let period = h
        .edges()
        .map(|(v, w)| (levels[v] + 1).abs_diff(levels[w]))
        .fold(0usize, |acc, x| acc.gcd(&x));
    Ok((period, sorted, levels))
}

/// Period of one strong component with its class partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPeriod {
    pub vertices: Vec<Vertex>,
    /// 0 for trivial components.
    pub period: usize,
    /// For `period ≥ 2`: classes `V_0..V_{p-1}` with every edge `V_i → V_{i+1 mod p}`;
    /// class 0 holds the smallest vertex.
    pub classes: Option<Vec<Vec<Vertex>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    /// Components in condensation order.
    pub components: Vec<ComponentPeriod>,
    /// Every component containing a cycle has period at least 2.
    pub pseudoperiodic: bool,
}

impl PeriodReport {
    pub fn nontrivial(&self) -> impl Iterator<Item = &ComponentPeriod> {
        self.components.iter().filter(|c| c.period > 0)
    }

    pub fn aperiodic_components(&self) -> impl Iterator<Item = &ComponentPeriod> {
        self.components.iter().filter(|c| c.period == 1)
    }
}

/// Period and class partition of a strong vertex set.
pub fn component_structure(g: &Digraph, component: &[Vertex]) -> Result<ComponentPeriod, PeriodicityError> {
    let (period, vertices, levels) = period_and_levels(g, component)?;
    let classes = (period >= 2).then(|| {
        let mut classes = vec![Vec::new(); period];
        for (i, &v) in vertices.iter().enumerate() {
            classes[levels[i] % period].push(v);
        }
        classes
    });
    Ok(ComponentPeriod {
        vertices,
        period,
        classes,
    })
}

pub fn pseudoperiodicity(g: &Digraph) -> PeriodReport {
    let scc = strong_components(g);
    let components: Vec<ComponentPeriod> = scc
        .components
        .iter()
        .map(|c| component_structure(g, c).expect("strong components are strong"))
        .collect();
    let pseudoperiodic = components.iter().all(|c| c.period != 1);
    PeriodReport {
        components,
        pseudoperiodic,
    }
}

/// True when every edge with both ends in `classes` goes from class `i` to `i+1 mod p`.
pub fn partition_is_valid(g: &Digraph, classes: &[Vec<Vertex>]) -> bool {
    let p = classes.len();
    let mut class_of = vec![usize::MAX; g.n()];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    g.edges()
        .filter(|&(u, v)| class_of[u] != usize::MAX && class_of[v] != usize::MAX)
        .all(|(u, v)| (class_of[u] + 1) % p == class_of[v])
}
