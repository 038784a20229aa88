//! Single-graph analysis: statistics, components, periods, expansion, feedback
//! arc set and cycle spectrum, each exact when within its size limit.

use anyhow::{bail, Result};
use girthcut_core::expansion::{best_sweep_cut, exact_mu, CutResult, SweepStrategy, DEFAULT_MU_LIMIT};
use girthcut_core::fas::{
    bound_report, exact_min_fas, ordering_fas, recursive_expansion_fas, BoundReport, FasCertificate, FasError,
    DEFAULT_EXACT_LIMIT, MAX_EXACT_LIMIT,
};
use girthcut_core::periodicity::{
    cycle_spectrum, pseudoperiodicity, PeriodReport, PeriodicityError, SpectrumReport, DEFAULT_SPECTRUM_LIMIT,
    MAX_SPECTRUM_LIMIT,
};
use girthcut_core::rational::ratio;
use girthcut_core::scc::strong_components;
use girthcut_core::traversal::{stats, GraphStats};
use girthcut_core::{Digraph, Vertex};
use serde::{Deserialize, Serialize};

/// Largest `n` the exhaustive expansion search accepts.
pub const MAX_MU_LIMIT: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest strong component for the exact feedback arc set.
    pub exact_limit: usize,
    /// Largest `n` for the exhaustive `μ` search.
    pub mu_limit: usize,
    /// Largest strong component for the cycle spectrum.
    pub spectrum_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact_limit: DEFAULT_EXACT_LIMIT,
            mu_limit: DEFAULT_MU_LIMIT,
            spectrum_limit: DEFAULT_SPECTRUM_LIMIT,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        if self.exact_limit > MAX_EXACT_LIMIT {
            bail!("exact limit {} is above the maximum {MAX_EXACT_LIMIT}", self.exact_limit);
        }
        if self.mu_limit > MAX_MU_LIMIT {
            bail!("mu limit {} is above the maximum {MAX_MU_LIMIT}", self.mu_limit);
        }
        if self.spectrum_limit > MAX_SPECTRUM_LIMIT {
            bail!("spectrum limit {} is above the maximum {MAX_SPECTRUM_LIMIT}", self.spectrum_limit);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    Sweep,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSummary {
    pub method: Exactness,
    pub cut: CutResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FasSummary {
    pub method: Exactness,
    pub beta: usize,
    pub certificate: FasCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub stats: GraphStats,
    pub components: Vec<Vec<Vertex>>,
    pub periods: PeriodReport,
    /// Absent for `n < 2`.
    pub expansion: Option<CutSummary>,
    pub fas: FasSummary,
    pub bounds: BoundReport,
    /// `β/n²` (or the upper bound's), as `"a/b"`.
    pub beta_density: String,
    /// Absent when a strong component exceeds the spectrum limit.
    pub spectrum: Option<SpectrumReport>,
}

pub fn expansion(g: &Digraph, limits: &Limits) -> Result<Option<CutSummary>> {
    if g.n() < 2 {
        return Ok(None);
    }
    Ok(Some(if g.n() <= limits.mu_limit {
        CutSummary {
            method: Exactness::Exact,
            cut: exact_mu(g, limits.mu_limit)?,
        }
    } else {
        CutSummary {
            method: Exactness::Sweep,
            cut: best_sweep_cut(g, SweepStrategy::AllVertices)?.cut,
        }
    }))
}

/// Exact minimum when every strong component fits the limit, otherwise the
/// recursive construction (r-free inputs) or the ordering heuristic.
pub fn feedback_arc_set(g: &Digraph, limits: &Limits) -> Result<FasSummary> {
    let (method, certificate) = match exact_min_fas(g, limits.exact_limit) {
        Ok(c) => (Exactness::Exact, c),
        Err(FasError::OverLimit { .. }) => {
            let c = match stats(g).r_free_level() {
                Some(r) if r >= 2 => recursive_expansion_fas(g, r)?,
                _ => ordering_fas(g, None)?,
            };
            (Exactness::Heuristic, c)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(FasSummary {
        method,
        beta: certificate.size(),
        certificate,
    })
}

pub fn spectrum(g: &Digraph, limits: &Limits) -> Result<Option<SpectrumReport>> {
    match cycle_spectrum(g, limits.spectrum_limit) {
        Ok(s) => Ok(Some(s)),
        Err(PeriodicityError::OverLimit { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn beta_density(beta: usize, n: usize) -> String {
    if n == 0 {
        return "0".into();
    }
    ratio(beta as i128, (n * n) as i128).to_string()
}

pub fn analyze(g: &Digraph, limits: &Limits) -> Result<Analysis> {
    limits.validate()?;
    let fas = feedback_arc_set(g, limits)?;
    Ok(Analysis {
        stats: stats(g),
        components: strong_components(g).components,
        periods: pseudoperiodicity(g),
        expansion: expansion(g, limits)?,
        bounds: bound_report(g, limits.exact_limit)?,
        beta_density: beta_density(fas.beta, g.n()),
        fas,
        spectrum: spectrum(g, limits)?,
    })
}
