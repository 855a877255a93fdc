//! File formats: graphs, words, experiment manifests, and output plumbing.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use raaglab::graph::{Presentation, SimpleGraph, WeightedGraph};
use raaglab::words::NormalForm;

use crate::CliError;

/// Graph file: {"vertices": [..], "edges": [[u,v],..], "weights": {u: n}}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, u32>,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<(SimpleGraph, BTreeMap<String, u32>), CliError> {
    let file: GraphFile = read_json(path)?;
    let graph = SimpleGraph::new(&file.vertices, &file.edges)?;
    Ok((graph, file.weights))
}

/// Merges file weights with a --weights override: either one value per
/// vertex in declaration order ("3,3") or name=value entries ("a=3,b=2").
pub fn resolve_weights(
    graph: &SimpleGraph,
    file_weights: &BTreeMap<String, u32>,
    flag: Option<&str>,
) -> Result<BTreeMap<String, u32>, CliError> {
    let Some(flag) = flag else {
        return Ok(file_weights.clone());
    };
    let entries: Vec<&str> = flag.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut out = file_weights.clone();
    if entries.iter().all(|e| e.contains('=')) {
        for e in entries {
            let (name, value) = e.split_once('=').expect("checked");
            let value: u32 = value
                .parse()
                .map_err(|_| CliError::Input(format!("bad weight value {value:?}")))?;
            graph.index_of(name)?;
            out.insert(name.to_owned(), value);
        }
    } else {
        if entries.len() != graph.vertex_count() {
            return Err(CliError::Input(format!(
                "--weights lists {} values for {} vertices",
                entries.len(),
                graph.vertex_count()
            )));
        }
        for (name, e) in graph.names().iter().zip(entries) {
            let value: u32 =
                e.parse().map_err(|_| CliError::Input(format!("bad weight value {e:?}")))?;
            out.insert(name.clone(), value);
        }
    }
    Ok(out)
}

pub fn weighted_graph(
    graph: SimpleGraph,
    weights: &BTreeMap<String, u32>,
) -> Result<WeightedGraph, CliError> {
    Ok(WeightedGraph::new(graph, weights)?)
}

/// Word file: {"graph": "relative/path.json", "syllables": [["a", 2], ..]}.
/// The graph path resolves relative to the word file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordFile {
    pub graph: String,
    pub syllables: Vec<(String, i64)>,
}

pub fn load_word(
    path: &Path,
    graph_override: Option<&Path>,
) -> Result<(Arc<Presentation>, NormalForm), CliError> {
    let file: WordFile = read_json(path)?;
    let graph_path = match graph_override {
        Some(p) => p.to_path_buf(),
        None => resolve_relative(path, &file.graph),
    };
    let (graph, weights) = load_graph(&graph_path)?;
    let pres = Arc::new(Presentation::new(graph, &weights)?);
    let word = NormalForm::from_named(&pres, &file.syllables)?;
    Ok((pres, word))
}

pub fn resolve_relative(base_file: &Path, relative: &str) -> PathBuf {
    let relative = Path::new(relative);
    if relative.is_absolute() {
        relative.to_path_buf()
    } else {
        base_file.parent().unwrap_or(Path::new(".")).join(relative)
    }
}

/// Experiment manifest for the `separate` verb; a file may hold one
/// manifest or an array of them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationManifest {
    pub graph: String,
    #[serde(default)]
    pub ambient: Vec<String>,
    pub separator: Vec<String>,
    pub k: u64,
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "D")]
    pub d: u64,
    /// Claimed components; when present the manifest is checked as a
    /// witness, otherwise the components are computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deep_points: Option<Vec<String>>,
    /// Measure deep-point distance to the thickened separator instead of
    /// the separator itself.
    #[serde(default)]
    pub distance_to_thickened: bool,
    /// Optional relative-growth request: family of vertex sets and radii.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthRequest>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthRequest {
    pub family: Vec<Vec<String>>,
    pub radii: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ManifestFile {
    One(Box<SeparationManifest>),
    Many(Vec<SeparationManifest>),
}

/// Obstruction set file for `ray-find`: a JSON list of heap vertex ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionFile(pub Vec<u64>);

pub fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
