//! Batch front-end: parse graph/word/manifest files, run the analyses,
//! emit JSON certificates or human-readable reports.
//!
//! Exit codes separate mathematics from operations: 0 on success, 1 on a
//! negative mathematical verdict callers may branch on (no abelian
//! splitting, no ray, failed verification), 2 on input errors, 3 when a
//! resource cap is exceeded.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use raaglab::graph::Presentation;
use raaglab::qm;
use raaglab::separation::{self, MetricGraph, SeparationWitness};
use raaglab::splitting::{self, validate_cut_tree};
use raaglab::thickness::{self, ChainFile};
use raaglab::tree_ray;
use raaglab::words::NormalForm;
use raaglab::Error as LibError;

use io::{
    load_graph, load_word, read_json, resolve_relative, resolve_weights, weighted_graph,
    write_output, ManifestFile, ObstructionFile, SeparationManifest,
};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
    Negative(String),
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Input(msg) => CliError::Input(msg),
            LibError::Resource { .. } => CliError::Resource(e.to_string()),
            LibError::ChainFailure { .. } | LibError::NotRegular { .. } => {
                CliError::Negative(e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "raaglab", version, about = "Splitting analysis and graph-product geometry lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether A(Γ) splits over an abelian subgroup.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Complete-cut decomposition of a connected graph.
    CutTree {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decomposition of a triangle-free unpinched graph.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical normal form of a word file.
    NormalForm {
        #[arg(long)]
        word: PathBuf,
        /// Override the graph file referenced by the word file.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate a quasi-median ball.
    Ball {
        #[arg(long)]
        graph: PathBuf,
        /// Weights per vertex: "3,3" (declaration order) or "a=3,b=3".
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        radius: u32,
        /// Vertex cap override.
        #[arg(long)]
        cap: Option<usize>,
        /// Include the hyperplane partition.
        #[arg(long)]
        hyperplanes: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate a ball and its hyperplanes.
    Hyperplanes {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run coarse-separation experiments from a manifest (JSON object or array).
    Separate {
        #[arg(long)]
        manifest: PathBuf,
        /// Override the manifest's coarse-connectivity constant.
        #[arg(short = 'k', long)]
        k: Option<u64>,
        /// Override the manifest's separator thickening radius.
        #[arg(short = 'L', long)]
        l: Option<u64>,
        /// Override the manifest's deep-point distance.
        #[arg(short = 'D', long)]
        d: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify a thickness chain between two group elements.
    ThickChain {
        #[arg(long)]
        graph: PathBuf,
        /// Start element as a JSON syllable list, e.g. '[["a",1],["b",-2]]'.
        #[arg(long, default_value = "[]")]
        x: String,
        /// End element in the same format.
        #[arg(long, default_value = "[]")]
        y: String,
        /// Build a generic coset walk over this parabolic (CSV of vertices)
        /// instead of the cycle chain.
        #[arg(long)]
        parabolic: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare complete-cut pieces of two graphs for coarse-embedding obstructions.
    Obstruct {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find a ray through an obstructed binary tree.
    RayFind {
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        r0: u32,
        /// JSON file with the obstruction set as heap vertex ids.
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-validate an emitted certificate.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// Check a splitting certificate against its graph.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Check the three cut-tree invariants.
    CutTree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Check the case invariants of an unpinched decomposition.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Replay a serialized thickness chain.
    Chain {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
}

fn emit<T: Serialize>(output: &OutputArgs, value: &T, text: String) -> Result<(), CliError> {
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable output"),
        Format::Text => text,
    };
    write_output(output.out.as_deref(), &body)
}

#[derive(Serialize)]
struct CutTreeFile {
    nodes: Vec<CutTreeNode>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct CutTreeNode {
    id: usize,
    piece: Vec<String>,
}

#[derive(Serialize)]
struct BallFile {
    vertices: Vec<Vec<(String, i64)>>,
    edges: Vec<(usize, usize, String, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyperplanes: Option<Vec<HyperplaneFile>>,
}

#[derive(Serialize)]
struct HyperplaneFile {
    label: String,
    edges: Vec<usize>,
    sectors: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct SeparationResult {
    manifest: SeparationManifest,
    components: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    growth: Option<separation::GrowthProfile>,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Classify { graph, output } => {
            let (g, _) = load_graph(&graph)?;
            let cert = splitting::classify_splitting(&g)?;
            let text = match &cert.witness {
                Some(w) => format!("verdict: {:?}\nwitness: {:?}", cert.verdict, w),
                None => format!("verdict: {:?}", cert.verdict),
            };
            emit(&output, &cert, text)?;
            Ok(if cert.verdict == splitting::SplitVerdict::NoAbelianSplitting { 1 } else { 0 })
        }
        Command::CutTree { graph, output } => {
            let (g, _) = load_graph(&graph)?;
            let tree = splitting::complete_cut_decomposition(&g)?;
            let file = CutTreeFile {
                nodes: tree
                    .nodes
                    .iter()
                    .enumerate()
                    .map(|(id, piece)| CutTreeNode { id, piece: piece.clone() })
                    .collect(),
                edges: tree.edges.clone(),
            };
            let text = format!(
                "{} pieces, {} tree edges\n{}",
                tree.nodes.len(),
                tree.edges.len(),
                tree.nodes
                    .iter()
                    .enumerate()
                    .map(|(i, p)| format!("piece {i}: {p:?}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            emit(&output, &file, text)?;
            Ok(0)
        }
        Command::Decompose { graph, output } => {
            let (g, _) = load_graph(&graph)?;
            let d = splitting::unpinched_decomposition(&g)?;
            let text = format!("{d:?}");
            emit(&output, &d, text)?;
            Ok(0)
        }
        Command::NormalForm { word, graph, output } => {
            let (pres, nf) = load_word(&word, graph.as_deref())?;
            #[derive(Serialize)]
            struct NormalFormFile {
                syllables: Vec<(String, i64)>,
                syllable_length: usize,
                word_metric_length: u64,
                canonical: bool,
            }
            let file = NormalFormFile {
                syllables: nf.to_named(&pres),
                syllable_length: nf.syllable_length(),
                word_metric_length: nf.standard_length(&pres),
                canonical: true,
            };
            let text = format!(
                "normal form: {:?} (syllables {}, standard length {})",
                file.syllables, file.syllable_length, file.word_metric_length
            );
            emit(&output, &file, text)?;
            Ok(0)
        }
        Command::Ball { graph, weights, radius, cap, hyperplanes, output } => {
            ball_command(&graph, weights.as_deref(), radius, cap, hyperplanes, &output)
        }
        Command::Hyperplanes { graph, weights, radius, cap, output } => {
            ball_command(&graph, weights.as_deref(), radius, cap, true, &output)
        }
        Command::Separate { manifest, k, l, d, output } => {
            separate_command(&manifest, (k, l, d), &output)
        }
        Command::ThickChain { graph, x, y, parabolic, output } => {
            let (g, weights) = load_graph(&graph)?;
            let pres = Arc::new(Presentation::new(g, &weights)?);
            let parse_word = |text: &str| -> Result<NormalForm, CliError> {
                let pairs: Vec<(String, i64)> = serde_json::from_str(text)
                    .map_err(|e| CliError::Input(format!("malformed word: {e}")))?;
                Ok(NormalForm::from_named(&pres, &pairs)?)
            };
            let x = parse_word(&x)?;
            let y = parse_word(&y)?;
            let chain = match parabolic {
                Some(csv) => {
                    let names: Vec<&str> =
                        csv.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    let mask = pres.graph().mask_of(&names)?;
                    thickness::coset_chain(&pres, mask, &x, &y)?
                }
                None => thickness::thick_chain_raag(&pres, &x, &y)?,
            };
            let verified = thickness::verify_chain(&pres, &chain);
            #[derive(Serialize)]
            struct ChainOutput {
                verified: bool,
                minimal_verified_radius: Option<u32>,
                chain: ChainFile,
            }
            let out = ChainOutput {
                verified,
                minimal_verified_radius: chain.minimal_verified_radius(&pres),
                chain: chain.to_file(&pres),
            };
            let text = format!(
                "chain with {} pieces, {} junctions; verified: {verified}",
                out.chain.pieces.len(),
                out.chain.junctions.len()
            );
            emit(&output, &out, text)?;
            Ok(if verified { 0 } else { 1 })
        }
        Command::Obstruct { source, target, output } => {
            let (s, _) = load_graph(&source)?;
            let (t, _) = load_graph(&target)?;
            let report = splitting::embedding_obstruction(&s, &t)?;
            let text = if report.embedding_excluded() {
                format!("embedding excluded:\n{}", report.findings.join("\n"))
            } else {
                "no obstruction found at this invariant level".to_owned()
            };
            let excluded = report.embedding_excluded();
            emit(&output, &report, text)?;
            Ok(if excluded { 1 } else { 0 })
        }
        Command::RayFind { depth, r0, set, output } => {
            let ObstructionFile(ids) = read_json(&set)?;
            let s: std::collections::BTreeSet<u64> = ids.into_iter().collect();
            let margin = tree_ray::spectral_margin(depth, &s, r0)?;
            let ray = tree_ray::tree_ray_finder(depth, &s, r0)?;
            #[derive(Serialize)]
            struct RayOutput {
                ray: Option<Vec<u64>>,
                spectral_margin: f64,
                safe_threshold_met: bool,
                paper_threshold_met: bool,
            }
            let out = RayOutput {
                spectral_margin: margin,
                safe_threshold_met: margin <= tree_ray::SAFE_MARGIN,
                paper_threshold_met: margin <= tree_ray::BOUNDARY_MARGIN,
                ray: ray.clone(),
            };
            let text = match &ray {
                Some(r) => format!("ray found ({} vertices); margin {margin}", r.len()),
                None => format!("no admissible ray; margin {margin}"),
            };
            emit(&output, &out, text)?;
            Ok(if ray.is_some() { 0 } else { 1 })
        }
        Command::Verify { kind } => verify_command(kind),
    }
}

fn ball_command(
    graph: &std::path::Path,
    weights: Option<&str>,
    radius: u32,
    cap: Option<usize>,
    with_hyperplanes: bool,
    output: &OutputArgs,
) -> Result<i32, CliError> {
    let (g, file_weights) = load_graph(graph)?;
    let weights = resolve_weights(&g, &file_weights, weights)?;
    let weighted = weighted_graph(g, &weights)?;
    let ball = qm::build_ball(&weighted, radius, cap)?;
    let pres = ball.weighted().presentation();
    let hyperplane_files = with_hyperplanes.then(|| {
        qm::hyperplanes(&ball)
            .iter()
            .map(|h| HyperplaneFile {
                label: ball.weighted().graph().name(h.label).to_owned(),
                edges: h.edges.clone(),
                sectors: h.sectors.clone(),
            })
            .collect::<Vec<_>>()
    });
    let file = BallFile {
        vertices: ball.vertices().iter().map(|v| v.to_named(pres)).collect(),
        edges: ball
            .edges()
            .iter()
            .map(|e| (e.a, e.b, ball.weighted().graph().name(e.label).to_owned(), e.weight))
            .collect(),
        hyperplanes: hyperplane_files,
    };
    let text = format!(
        "{} vertices, {} edges{}",
        file.vertices.len(),
        file.edges.len(),
        match &file.hyperplanes {
            Some(h) => format!(", {} hyperplanes", h.len()),
            None => String::new(),
        }
    );
    emit(output, &file, text)?;
    Ok(0)
}

fn separate_command(
    manifest: &std::path::Path,
    overrides: (Option<u64>, Option<u64>, Option<u64>),
    output: &OutputArgs,
) -> Result<i32, CliError> {
    let file: ManifestFile = read_json(manifest)?;
    let mut manifests = match file {
        ManifestFile::One(m) => vec![*m],
        ManifestFile::Many(ms) => ms,
    };
    for m in &mut manifests {
        if let Some(k) = overrides.0 {
            m.k = k;
        }
        if let Some(l) = overrides.1 {
            m.l = l;
        }
        if let Some(d) = overrides.2 {
            m.d = d;
        }
    }
    let mut lines = Vec::new();
    let mut all_positive = true;
    for m in manifests {
        let graph_path = resolve_relative(manifest, &m.graph);
        let (g, _) = load_graph(&graph_path)?;
        let metric = MetricGraph::from_simple(&g);
        let to_ids = |names: &[String]| -> Result<Vec<usize>, CliError> {
            names.iter().map(|n| Ok(metric.index_of(n)?)).collect()
        };
        let ambient: Vec<usize> = if m.ambient.is_empty() {
            (0..metric.vertex_count()).collect()
        } else {
            to_ids(&m.ambient)?
        };
        let separator = to_ids(&m.separator)?;
        let components = separation::coarse_components(&metric, &ambient, &separator, m.k, m.l);
        let witness_valid = match (&m.components, &m.deep_points) {
            (Some(comps), Some(deep)) => {
                let witness = SeparationWitness {
                    separator: separator.clone(),
                    k: m.k,
                    l: m.l,
                    d: m.d,
                    components: comps
                        .iter()
                        .map(|c| to_ids(c))
                        .collect::<Result<Vec<_>, CliError>>()?,
                    deep_points: to_ids(deep)?,
                };
                Some(separation::check_witness(
                    &metric,
                    &witness,
                    &ambient,
                    m.distance_to_thickened,
                )?)
            }
            _ => None,
        };
        let growth = match &m.growth {
            Some(req) => {
                let family = req
                    .family
                    .iter()
                    .map(|s| to_ids(s))
                    .collect::<Result<Vec<_>, CliError>>()?;
                Some(separation::relative_growth(&metric, &family, &req.radii)?)
            }
            None => None,
        };
        let positive = match witness_valid {
            Some(valid) => valid,
            None => components.len() >= 2,
        };
        all_positive &= positive;
        let result = SeparationResult {
            manifest: m,
            components: components
                .iter()
                .map(|c| c.iter().map(|&v| metric.names()[v].clone()).collect())
                .collect(),
            witness_valid,
            growth,
        };
        lines.push(serde_json::to_string(&result).expect("serializable result"));
    }
    // batch results as JSON lines
    write_output(output.out.as_deref(), &lines.join("\n"))?;
    Ok(if all_positive { 0 } else { 1 })
}

fn verify_command(kind: VerifyKind) -> Result<i32, CliError> {
    let valid = match kind {
        VerifyKind::Classify { graph, certificate } => {
            let (g, _) = load_graph(&graph)?;
            let cert: splitting::SplitCertificate = read_json(&certificate)?;
            splitting::validate_certificate(&g, &cert).is_ok()
        }
        VerifyKind::CutTree { graph, certificate } => {
            let (g, _) = load_graph(&graph)?;
            #[derive(serde::Deserialize)]
            struct CutTreeIn {
                nodes: Vec<CutTreeNodeIn>,
                edges: Vec<(usize, usize)>,
            }
            #[derive(serde::Deserialize)]
            struct CutTreeNodeIn {
                #[allow(dead_code)]
                id: usize,
                piece: Vec<String>,
            }
            let file: CutTreeIn = read_json(&certificate)?;
            let tree = splitting::CutTree {
                nodes: file.nodes.into_iter().map(|n| n.piece).collect(),
                edges: file.edges,
            };
            validate_cut_tree(&g, &tree).is_ok()
        }
        VerifyKind::Decompose { graph, certificate } => {
            let (g, _) = load_graph(&graph)?;
            let d: splitting::UnpinchedDecomposition = read_json(&certificate)?;
            splitting::validate_decomposition(&g, &d).is_ok()
        }
        VerifyKind::Chain { graph, certificate } => {
            let (g, weights) = load_graph(&graph)?;
            let pres = Presentation::new(g, &weights)?;
            #[derive(serde::Deserialize)]
            struct ChainIn {
                chain: ChainFile,
            }
            // accept either a bare chain file or the thick-chain output
            let text = std::fs::read_to_string(&certificate)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", certificate.display())))?;
            let file: ChainFile = match serde_json::from_str::<ChainIn>(&text) {
                Ok(wrapped) => wrapped.chain,
                Err(_) => serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("malformed chain file: {e}")))?,
            };
            let chain = thickness::ThickChain::from_file(&pres, &file)?;
            thickness::verify_chain(&pres, &chain)
        }
    };
    println!("{}", serde_json::json!({ "valid": valid }));
    Ok(if valid { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("resource error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
