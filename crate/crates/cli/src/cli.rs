//! Argument parsing and subcommand dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use girthcut_core::constructions::GeneratorSpec;
use girthcut_core::expansion::{best_sweep_cut, exact_mu, SweepStrategy, DEFAULT_MU_LIMIT};
use girthcut_core::fas::{exact_min_fas, ordering_fas, recursive_expansion_fas, DEFAULT_EXACT_LIMIT};
use girthcut_core::periodicity::{cycle_spectrum, cycle_spectrum_dfs, DEFAULT_SPECTRUM_LIMIT};
use girthcut_core::traversal::stats;
use serde::Serialize;

use crate::analyze::{analyze, Limits};
use crate::campaign::{run_campaign, CampaignConfig, TrialCounts};
use crate::corpus::{default_manifest, load_manifest, read_graph};
use crate::render::to_text;

#[derive(Debug, Parser)]
#[command(name = "girthcut", version, about = "Feedback arc sets, expansion and cycle structure of digraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Largest strong component solved exactly for the feedback arc set
    #[arg(long, global = true, env = "GIRTHCUT_EXACT_LIMIT", default_value_t = DEFAULT_EXACT_LIMIT)]
    pub exact_limit: usize,
    /// Largest n for the exhaustive expansion search
    #[arg(long, global = true, env = "GIRTHCUT_MU_LIMIT", default_value_t = DEFAULT_MU_LIMIT)]
    pub mu_limit: usize,
    /// Largest strong component for the cycle spectrum
    #[arg(long, global = true, env = "GIRTHCUT_SPECTRUM_LIMIT", default_value_t = DEFAULT_SPECTRUM_LIMIT)]
    pub spectrum_limit: usize,
    #[arg(long, global = true, env = "GIRTHCUT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = "GIRTHCUT_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Output file; for `verify`, the output directory
    #[arg(long, global = true, env = "GIRTHCUT_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "GIRTHCUT_FORMAT", value_enum)]
    pub format: Option<Format>,
}

impl GlobalArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            exact_limit: self.exact_limit,
            mu_limit: self.mu_limit,
            spectrum_limit: self.spectrum_limit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FasMethodArg {
    Exact,
    Ordering,
    Recursive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one edge-list file (`-` reads stdin)
    Analyze { input: PathBuf },
    /// Run the verification campaign over a corpus
    Verify(VerifyArgs),
    /// Generate a graph family member as an edge list
    Construct(ConstructArgs),
    /// Feedback arc set certificate
    Fas {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FasMethodArg::Exact)]
        method: FasMethodArg,
        /// r for the recursive method; defaults to girth - 1
        #[arg(long)]
        r: Option<usize>,
    },
    /// Low-expansion vertex set
    Cut {
        input: PathBuf,
        #[arg(long, conflicts_with = "sweep")]
        exact: bool,
        #[arg(long)]
        sweep: bool,
    },
    /// Lengths of simple cycles
    Spectrum {
        input: PathBuf,
        /// Enumerate cycles by DFS instead of the subset DP
        #[arg(long)]
        dfs: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Corpus manifest (JSON array of generator specs or edge-list paths); the
    /// built-in 40-graph corpus when omitted
    #[arg(long, env = "GIRTHCUT_MANIFEST")]
    pub manifest: Option<PathBuf>,
    #[arg(long, default_value_t = TrialCounts::default().fas_oracle)]
    pub fas_trials: usize,
    #[arg(long, default_value_t = TrialCounts::default().spectrum_oracle)]
    pub spectrum_trials: usize,
    #[arg(long, default_value_t = TrialCounts::default().mu_oracle)]
    pub mu_trials: usize,
    #[arg(long, default_value_t = TrialCounts::default().r_free)]
    pub r_free_trials: usize,
    #[arg(long, default_value_t = TrialCounts::default().oriented)]
    pub oriented_trials: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    /// Cycle length of a blowup
    #[arg(long)]
    pub p: Option<usize>,
    /// Comma-separated part sizes of a blowup
    #[arg(long, value_delimiter = ',')]
    pub parts: Vec<usize>,
    /// Rational such as `1/4`
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub density: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    BlowupCycle,
    TwoBlockRegular,
    CompleteDigraph,
    TransitiveTournament,
    DirectedCycle,
    RandomTournament,
    RandomRFree,
    RandomDigraph,
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("--{flag} is required for this family"))
}

impl ConstructArgs {
    pub fn spec(&self, seed: u64) -> Result<GeneratorSpec> {
        Ok(match self.family {
            Family::BlowupCycle => {
                let p = need(self.p, "p")?;
                let parts = if self.parts.is_empty() { vec![1; p] } else { self.parts.clone() };
                GeneratorSpec::BlowupCycle { p, parts }
            }
            Family::TwoBlockRegular => GeneratorSpec::TwoBlockRegular {
                n: need(self.n, "n")?,
                eps: need(self.eps.clone(), "eps")?,
            },
            Family::CompleteDigraph => GeneratorSpec::CompleteDigraph { n: need(self.n, "n")? },
            Family::TransitiveTournament => GeneratorSpec::TransitiveTournament { n: need(self.n, "n")? },
            Family::DirectedCycle => GeneratorSpec::DirectedCycle { n: need(self.n, "n")? },
            Family::RandomTournament => GeneratorSpec::RandomTournament { n: need(self.n, "n")?, seed },
            Family::RandomRFree => GeneratorSpec::RandomRFree {
                n: need(self.n, "n")?,
                r: need(self.r, "r")?,
                density: self.density.unwrap_or(0.3),
                seed,
            },
            Family::RandomDigraph => GeneratorSpec::RandomDigraph {
                n: need(self.n, "n")?,
                density: need(self.density, "density")?,
                seed,
            },
        })
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit<T: Serialize>(global: &GlobalArgs, value: &T) -> Result<()> {
    let json = serde_json::to_value(value)?;
    let text = match global.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&json)? + "\n",
        Format::Text => to_text(&json),
    };
    write_output(global.out.as_deref(), &text)
}

/// Runs the command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let g = &cli.global;
    let limits = g.limits();
    limits.validate()?;
    match &cli.command {
        Command::Analyze { input } => {
            let graph = read_graph(input)?;
            emit(g, &analyze(&graph, &limits)?)?;
        }
        Command::Verify(args) => return verify(g, args),
        Command::Construct(args) => {
            let graph = args.spec(g.seed)?.generate()?;
            match g.format {
                Some(Format::Json) => emit(g, &graph)?,
                _ => write_output(g.out.as_deref(), &graph.to_edge_list())?,
            }
        }
        Command::Fas { input, method, r } => {
            let graph = read_graph(input)?;
            let cert = match method {
                FasMethodArg::Exact => exact_min_fas(&graph, limits.exact_limit)?,
                FasMethodArg::Ordering => ordering_fas(&graph, None)?,
                FasMethodArg::Recursive => {
                    let r = match r {
                        Some(r) => *r,
                        None => stats(&graph).r_free_level().unwrap_or(graph.n().max(2)),
                    };
                    recursive_expansion_fas(&graph, r)?
                }
            };
            emit(g, &cert)?;
        }
        Command::Cut { input, exact, sweep } => {
            let graph = read_graph(input)?;
            let use_exact = *exact || (!*sweep && graph.n() <= limits.mu_limit);
            let cut = if use_exact {
                exact_mu(&graph, limits.mu_limit)?
            } else {
                best_sweep_cut(&graph, SweepStrategy::AllVertices)?.cut
            };
            emit(g, &cut)?;
        }
        Command::Spectrum { input, dfs } => {
            let graph = read_graph(input)?;
            let report = if *dfs {
                cycle_spectrum_dfs(&graph)
            } else {
                cycle_spectrum(&graph, limits.spectrum_limit)?
            };
            emit(g, &report)?;
        }
    }
    Ok(0)
}

fn verify(g: &GlobalArgs, args: &VerifyArgs) -> Result<i32> {
    let (manifest, base_dir) = match &args.manifest {
        Some(p) => (load_manifest(p)?, p.parent().map(Path::to_path_buf)),
        None => (default_manifest(), None),
    };
    let config = CampaignConfig {
        manifest,
        base_dir,
        limits: g.limits(),
        trials: TrialCounts {
            fas_oracle: args.fas_trials,
            spectrum_oracle: args.spectrum_trials,
            mu_oracle: args.mu_trials,
            r_free: args.r_free_trials,
            oriented: args.oriented_trials,
        },
        seed: g.seed,
        workers: g.workers,
    };
    let (report, timing) = run_campaign(&config)?;
    match &g.out {
        Some(dir) => {
            if dir.exists() && !dir.is_dir() {
                bail!("{} is not a directory", dir.display());
            }
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
            std::fs::write(dir.join("timing.json"), serde_json::to_string_pretty(&timing)? + "\n")?;
            std::fs::write(
                dir.join("findings.json"),
                serde_json::to_string_pretty(&report.sullivan_findings)? + "\n",
            )?;
            if g.format == Some(Format::Text) {
                std::fs::write(dir.join("report.txt"), to_text(&serde_json::to_value(&report)?))?;
            }
            eprintln!(
                "{} graphs, {} checks failed, {} findings; written to {}",
                report.graphs.len(),
                report.failures.len(),
                report.sullivan_findings.len(),
                dir.display()
            );
        }
        None => emit(&GlobalArgs { out: None, ..g.clone() }, &report)?,
    }
    Ok(report.exit_code())
}
