//! Corpus manifests: a JSON array whose items are generator specs or paths to
//! edge-list files (relative paths resolve against the manifest's directory).

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use girthcut_core::constructions::GeneratorSpec;
use girthcut_core::Digraph;
use serde::{Deserialize, Serialize};

const DEFAULT_MANIFEST: &str = include_str!("../corpus/default.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CorpusEntry {
    Spec(GeneratorSpec),
    File(PathBuf),
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        match self {
            CorpusEntry::Spec(s) => s.label(),
            CorpusEntry::File(p) => p.display().to_string(),
        }
    }

    pub fn spec(&self) -> Option<&GeneratorSpec> {
        match self {
            CorpusEntry::Spec(s) => Some(s),
            CorpusEntry::File(_) => None,
        }
    }

    /// Builds or reads the graph. Generated graphs are not yet checked against
    /// their expected properties.
    pub fn load(&self, base: Option<&Path>) -> Result<Digraph> {
        match self {
            CorpusEntry::Spec(s) => s.build().with_context(|| format!("generating {}", s.label())),
            CorpusEntry::File(p) => {
                let path = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.clone(),
                };
                read_graph(&path)
            }
        }
    }
}

pub fn default_manifest() -> Vec<CorpusEntry> {
    serde_json::from_str(DEFAULT_MANIFEST).expect("embedded manifest is valid")
}

pub fn parse_manifest(text: &str) -> Result<Vec<CorpusEntry>> {
    serde_json::from_str(text).context("manifest must be a JSON array of generator specs or file paths")
}

pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_manifest(&text).with_context(|| format!("in {}", path.display()))
}

/// Reads an edge list from a file, or from stdin for `-`.
pub fn read_graph(path: &Path) -> Result<Digraph> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Digraph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}
