//! Command-line front end: builds walk models from JSON descriptions, runs
//! evolutions and search experiments, converts between families with
//! certification, and dumps spectra and matrices.
//!
//! Exit codes: 0 on success, 2 on validation failure (bad configuration,
//! malformed JSON, model errors), 3 on certification failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_core::config::{build_model, parse_model_config, BuiltModel, ModelConfig, TypedWalk};
use qwalk_core::equivalence::{
    bipartite_to_twostep_coined, certify, coined_square_to_bipartite, partition_to_bipartite,
    partition_to_staggered, szegedy_search_equivalence, twostep_as_two_partition,
    vertex_arc_intertwine, BasisBijection, EquivalenceCertificate,
};
use qwalk_core::models::{BipartiteWalk, CaseOneStyle};
use qwalk_core::sim::{class_trace_csv, evolve, search_csv, search_trace, trace_csv};
use qwalk_core::spectral::spectral_map;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qwalk",
    about = "Discrete-time quantum walks: build, evolve, convert, certify, analyze"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ModelArgs {
    /// Model config JSON file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Partition-pair JSON file (two {"classes": ...} objects).
    #[arg(long)]
    partitions: Option<PathBuf>,
    #[arg(long)]
    coin: Option<String>,
    #[arg(long)]
    shift: Option<String>,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    theta2: Option<f64>,
    /// Comma-separated marked vertex ids.
    #[arg(long, value_delimiter = ',')]
    marked: Vec<String>,
    /// Comma-separated real Verblunsky parameters (CMV chain).
    #[arg(long, value_delimiter = ',')]
    verblunsky: Vec<f64>,
    /// Torus axis lengths for the lattice family.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    /// Staggered generators: adjacency or reflection.
    #[arg(long)]
    hamiltonian: Option<String>,
    /// Staggered search variant: none, query or sandwich.
    #[arg(long = "search")]
    search_variant: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a model and print a summary.
    Build {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a model between families; `--certify` emits the certificate.
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert and certify; exits 3 when the residual exceeds the tolerance.
    Verify {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve the walk and emit per-step probabilities.
    Evolve {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral map of a coined walk: discriminant and walk eigenvalues.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a search experiment and report the success trace.
    Search {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the evolution operator as row-major coordinate CSV.
    Dump {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad input: exit 2.
    Validation(String),
    /// Certification failure: exit 3.
    Certification(String),
}

impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

impl ModelArgs {
    fn to_config(&self) -> CliResult<ModelConfig> {
        let cfg = self.to_config_raw()?;
        if cfg.family.is_empty() {
            return Err(CliError::Validation(
                "no family given (use --family or a config file)".into(),
            ));
        }
        Ok(cfg)
    }

    /// Like `to_config` but tolerates a missing family (conversions take it
    /// from `--from`).
    fn to_config_raw(&self) -> CliResult<ModelConfig> {
        let mut cfg: ModelConfig = match &self.config {
            Some(path) => parse_model_config(&read_file(path)?)?,
            None => ModelConfig::default(),
        };
        if let Some(f) = &self.family {
            cfg.family = f.clone();
        }
        if let Some(path) = &self.graph {
            let text = read_file(path)?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                CliError::Validation(format!("malformed JSON in {}: {e}", path.display()))
            })?;
            cfg.graph = Some(value);
        }
        if let Some(path) = &self.partitions {
            let text = read_file(path)?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                CliError::Validation(format!("malformed JSON in {}: {e}", path.display()))
            })?;
            let parts = match value {
                serde_json::Value::Array(items) => items,
                other => vec![other],
            };
            cfg.partitions = Some(parts);
        }
        if let Some(c) = &self.coin {
            cfg.coin = Some(c.clone());
        }
        if let Some(s) = &self.shift {
            cfg.shift = Some(s.clone());
        }
        if self.theta1.is_some() {
            cfg.theta1 = self.theta1;
        }
        if self.theta2.is_some() {
            cfg.theta2 = self.theta2;
        }
        if !self.marked.is_empty() {
            cfg.marked = Some(
                self.marked
                    .iter()
                    .map(|s| serde_json::Value::String(s.clone()))
                    .collect(),
            );
        }
        if !self.verblunsky.is_empty() {
            cfg.verblunsky = Some(
                self.verblunsky
                    .iter()
                    .map(|&x| serde_json::json!(x))
                    .collect(),
            );
        }
        if !self.dims.is_empty() {
            cfg.dims = Some(self.dims.clone());
        }
        if let Some(h) = &self.hamiltonian {
            cfg.hamiltonian = Some(h.clone());
        }
        if let Some(s) = &self.search_variant {
            cfg.search = Some(s.clone());
        }
        Ok(cfg)
    }

    fn build(&self) -> CliResult<BuiltModel> {
        let cfg = self.to_config()?;
        Ok(build_model(&cfg, seed_from_env())?)
    }
}

fn seed_from_env() -> u64 {
    std::env::var("QWALK_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn emit(text: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn certificate_json(cert: &EquivalenceCertificate) -> serde_json::Value {
    serde_json::json!({
        "residual": cert.residual,
        "tolerance": cert.tolerance,
        "verdict": cert.verdict(),
    })
}

/// Run the conversion named by a family pair, returning the certificate and
/// a summary of the converted model.
fn run_conversion(
    from: &str,
    to: &str,
    model: &ModelArgs,
    tol: Option<f64>,
) -> CliResult<(EquivalenceCertificate, serde_json::Value)> {
    let mut cfg = model.to_config_raw()?;
    cfg.family = from.to_string();

    // the search correspondence pairs the coined Case-I walk with the
    // sink-based Szegedy walk and runs off the base graph directly
    if (from == "coined" && to == "szegedy") || (from == "szegedy" && to == "coined") {
        let graph_value = cfg
            .graph
            .clone()
            .ok_or_else(|| CliError::Validation("conversion needs --graph".into()))?;
        let h = match qwalk_core::config::parse_graph_value(&graph_value)? {
            qwalk_core::config::ParsedGraph::Multi(g) => g,
            _ => {
                return Err(CliError::Validation(
                    "search equivalence needs a multigraph".into(),
                ))
            }
        };
        let marked: Vec<usize> = match &cfg.marked {
            Some(ids) => {
                let names: Vec<String> = h.vertex_names().to_vec();
                let mut out = Vec::new();
                for v in ids {
                    let s = match v {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(n) => n.to_string(),
                        other => {
                            return Err(CliError::Validation(format!("bad marked id {other}")))
                        }
                    };
                    let idx = names.iter().position(|n| *n == s).ok_or_else(|| {
                        CliError::Validation(format!("marked vertex {s:?} does not exist"))
                    })?;
                    out.push(idx);
                }
                out
            }
            None => Vec::new(),
        };
        let (mut cert, sz, coined) =
            szegedy_search_equivalence(&h, cfg.p.clone(), &marked, CaseOneStyle::FlipMarked)?;
        if let Some(t) = tol {
            cert.tolerance = t;
        }
        let summary = serde_json::json!({
            "conversion": "search equivalence (sink-based vs Case-I coined)",
            "reduced_dimension": sz.reduced.dim(),
            "coined_dimension": coined.dim(),
        });
        return Ok((cert, summary));
    }

    let built = {
        let mut args_cfg = cfg.clone();
        args_cfg.family = from.to_string();
        build_model(&args_cfg, seed_from_env())?
    };
    let adjust = |mut cert: EquivalenceCertificate| {
        if let Some(t) = tol {
            cert.tolerance = t;
        }
        cert
    };
    match (&built.typed, to) {
        (TypedWalk::TwoPartition(w), "staggered") | (TypedWalk::Hypergraph(w), "staggered") => {
            let (stag, _, cert) = partition_to_staggered(w)?;
            Ok((
                adjust(cert),
                serde_json::json!({
                    "conversion": "two-partition to staggered",
                    "vertices": stag.dim(),
                    "polygons": [stag.cover.tess1.class_count(), stag.cover.tess2.class_count()],
                }),
            ))
        }
        (TypedWalk::TwoPartition(w), "bipartite") | (TypedWalk::Hypergraph(w), "bipartite") => {
            let (bip, _, cert) = partition_to_bipartite(w)?;
            Ok((
                adjust(cert),
                serde_json::json!({
                    "conversion": "two-partition to bipartite",
                    "edges": bip.graph.edge_count(),
                    "x": bip.graph.x_count(),
                    "y": bip.graph.y_count(),
                }),
            ))
        }
        (TypedWalk::TwoPartition(w), "coined") | (TypedWalk::Hypergraph(w), "coined") => {
            let (bip, to_edges, _) = partition_to_bipartite(w)?;
            let (coined, to_x_arcs, _) = bipartite_to_twostep_coined(&bip)?;
            let composite = to_edges.compose(&to_x_arcs)?;
            let squared = coined.squared()?;
            let cert = certify(&w.walk, &squared, &composite, tol.unwrap_or(1e-10))?;
            Ok((
                cert,
                serde_json::json!({
                    "conversion": "two-partition to two-step coined",
                    "arcs": coined.dim(),
                }),
            ))
        }
        (TypedWalk::Szegedy(sz), "coined" | "two_step_coined") => {
            let bip = BipartiteWalk {
                graph: sz.graph.clone(),
                walk: sz.walk.clone(),
            };
            let (coined, _, cert) = bipartite_to_twostep_coined(&bip)?;
            Ok((
                adjust(cert),
                serde_json::json!({
                    "conversion": "bipartite to two-step coined",
                    "arcs": coined.dim(),
                }),
            ))
        }
        (TypedWalk::Coined(u), "bipartite" | "szegedy_shape") => {
            let (bip, _, cert) = coined_square_to_bipartite(u)?;
            Ok((
                adjust(cert),
                serde_json::json!({
                    "conversion": "two-step coined to bipartite on the duplicated graph",
                    "edges": bip.graph.edge_count(),
                }),
            ))
        }
        (TypedWalk::Coined(u), "two_partition") => {
            let tp = twostep_as_two_partition(u)?;
            let squared = u.squared()?;
            let cert = certify(
                &tp.walk,
                &squared,
                &BasisBijection::identity(tp.basis.clone()),
                tol.unwrap_or(1e-14),
            )?;
            Ok((
                cert,
                serde_json::json!({
                    "conversion": "two-step coined as a two-partition walk",
                    "dimension": tp.dim(),
                }),
            ))
        }
        (TypedWalk::Lattice(lw), "coined") => {
            let (coined, _, cert) = vertex_arc_intertwine(lw)?;
            Ok((
                adjust(cert),
                serde_json::json!({
                    "conversion": "vertex-based lattice to arc-based coined",
                    "arcs": coined.dim(),
                }),
            ))
        }
        _ => Err(CliError::Validation(format!(
            "no conversion from {from:?} to {to:?}"
        ))),
    }
}

fn spectrum_json(built: &BuiltModel) -> CliResult<serde_json::Value> {
    let coined = built.coined().ok_or_else(|| {
        CliError::Validation(
            "the spectrum subcommand needs a coined-family model with involutive coins".into(),
        )
    })?;
    let map = spectral_map(coined)?;
    let mut u_eigs = Vec::new();
    for inh in &map.inherited {
        u_eigs.push(serde_json::json!({
            "phase": inh.phase,
            "mult": inh.vectors.ncols(),
            "origin": "inherited",
        }));
    }
    if map.dims.birth_plus > 0 {
        u_eigs.push(serde_json::json!({
            "phase": 0.0,
            "mult": map.dims.birth_plus,
            "origin": "birth",
        }));
    }
    if map.dims.birth_minus > 0 {
        u_eigs.push(serde_json::json!({
            "phase": std::f64::consts::PI,
            "mult": map.dims.birth_minus,
            "origin": "birth",
        }));
    }
    Ok(serde_json::json!({
        "T_eigs": map.t_eigenvalues,
        "U_eigs": u_eigs,
        "dims": {
            "total": map.dims.total,
            "inherited": map.dims.inherited,
            "birth_plus": map.dims.birth_plus,
            "birth_minus": map.dims.birth_minus,
        },
    }))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Build { model, out } => {
            let built = model.build()?;
            let text = serde_json::to_string_pretty(&serde_json::json!({
                "family": built.family,
                "dimension": built.walk.dim(),
                "unitarity_residual": built.walk.unitarity_residual(),
                "nonzeros": built.walk.matrix.nnz(),
                "details": built.summary,
            }))
            .expect("serializable");
            emit(&text, &out)
        }
        Command::Convert {
            from,
            to,
            model,
            certify: want_cert,
            tol,
            out,
        } => {
            let (cert, summary) = run_conversion(&from, &to, &model, tol)?;
            if want_cert {
                let text =
                    serde_json::to_string_pretty(&certificate_json(&cert)).expect("serializable");
                emit(&text, &out)?;
                if !cert.verdict() {
                    return Err(CliError::Certification(format!(
                        "residual {} exceeds tolerance {}",
                        cert.residual, cert.tolerance
                    )));
                }
            } else {
                let text = serde_json::to_string_pretty(&summary).expect("serializable");
                emit(&text, &out)?;
            }
            Ok(())
        }
        Command::Verify {
            from,
            to,
            model,
            tol,
            out,
        } => {
            let (cert, _) = run_conversion(&from, &to, &model, tol)?;
            let text =
                serde_json::to_string_pretty(&certificate_json(&cert)).expect("serializable");
            emit(&text, &out)?;
            if !cert.verdict() {
                return Err(CliError::Certification(format!(
                    "residual {} exceeds tolerance {}",
                    cert.residual, cert.tolerance
                )));
            }
            Ok(())
        }
        Command::Evolve {
            model,
            steps,
            format,
            out,
        } => {
            let built = model.build()?;
            let run = evolve(&built.walk, &built.initial, steps, built.classes.as_ref())?;
            match format {
                Format::Csv => {
                    emit(&trace_csv(&run), &out)?;
                    if let (Some(path), Some(ccsv)) = (&out, class_trace_csv(&run)) {
                        let mut classes_path = path.clone();
                        classes_path.set_extension("classes.csv");
                        std::fs::write(&classes_path, ccsv).map_err(|e| {
                            CliError::Validation(format!(
                                "cannot write {}: {e}",
                                classes_path.display()
                            ))
                        })?;
                    }
                    Ok(())
                }
                Format::Json => {
                    let text = serde_json::to_string_pretty(&serde_json::json!({
                        "labels": run.labels,
                        "probabilities": run.probabilities,
                        "class_probabilities": run.class_probabilities,
                    }))
                    .expect("serializable");
                    emit(&text, &out)
                }
            }
        }
        Command::Spectrum { model, out } => {
            let built = model.build()?;
            let text = serde_json::to_string_pretty(&spectrum_json(&built)?).expect("serializable");
            emit(&text, &out)
        }
        Command::Search {
            model,
            steps,
            format,
            out,
        } => {
            let built = model.build()?;
            let run = evolve(&built.walk, &built.initial, steps, built.classes.as_ref())?;
            let trace = search_trace(run, built.target.clone())?;
            match format {
                Format::Csv => emit(&search_csv(&trace), &out),
                Format::Json => {
                    let text = serde_json::to_string_pretty(&serde_json::json!({
                        "target_size": trace.target.len(),
                        "success": trace.success,
                        "peak": trace.peak,
                        "peak_step": trace.peak_step,
                    }))
                    .expect("serializable");
                    emit(&text, &out)
                }
            }
        }
        Command::Dump { model, out } => {
            let built = model.build()?;
            emit(&built.walk.dump_csv(), &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Certification(msg)) => {
            eprintln!("certification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
