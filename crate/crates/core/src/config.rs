//! JSON descriptions of graphs, partitions and walk models. This is the
//! surface the CLI drives; ids may be strings or integers and list order is
//! significant everywhere.

use crate::error::{Error, Result};
use crate::graph::{
    BipartiteMultiGraph, Hypergraph, MultiGraph, Partition, SimpleGraph, TessellationCover,
};
use crate::linalg::{c, cr, random_unitary, CMatrix, C64};
use crate::models::{
    build_cmv, build_coined, build_hypergraph_walk, build_lattice_walk, build_staggered,
    build_szegedy_search, build_two_partition, CaseOneStyle, CoinField, CoinSpec, CoinedWalk,
    HamiltonianSpec, SearchCase, ShiftSpec, StaggeredSearch,
};
use crate::operator::{IndexedBasis, StateVector, WalkOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::Value;

fn id_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Config(format!(
            "vertex id must be a string or integer, got {other}"
        ))),
    }
}

#[derive(Debug, Clone, Deserialize)]
struct GraphJson {
    #[serde(rename = "type")]
    kind: Option<String>,
    vertices: Option<Vec<Value>>,
    x: Option<Vec<Value>>,
    y: Option<Vec<Value>>,
    edges: Vec<Vec<Value>>,
}

/// A parsed graph of any supported kind.
#[derive(Debug, Clone)]
pub enum ParsedGraph {
    Multi(MultiGraph),
    Bipartite(BipartiteMultiGraph),
    Hyper(Hypergraph),
}

/// Parse the graph schema: `{"type": ..., "vertices": [...], "edges":
/// [[u, v], ...]}` with optional `x`/`y` lists for bipartite graphs. When
/// `vertices` is omitted the ids are collected from the edges in order of
/// appearance.
pub fn parse_graph_value(value: &Value) -> Result<ParsedGraph> {
    let g: GraphJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Config(format!("graph object: {e}")))?;
    let kind = g.kind.as_deref().unwrap_or("multigraph");
    match kind {
        "multigraph" | "simple" => {
            let mut names: Vec<String> = Vec::new();
            if let Some(vs) = &g.vertices {
                for v in vs {
                    names.push(id_string(v)?);
                }
            } else {
                for e in &g.edges {
                    for v in e {
                        let s = id_string(v)?;
                        if !names.contains(&s) {
                            names.push(s);
                        }
                    }
                }
            }
            let lookup = |v: &Value| -> Result<usize> {
                let s = id_string(v)?;
                names
                    .iter()
                    .position(|n| *n == s)
                    .ok_or_else(|| Error::Config(format!("unknown vertex id {s:?} in edges")))
            };
            let mut edges = Vec::new();
            for (i, e) in g.edges.iter().enumerate() {
                if e.len() != 2 {
                    return Err(Error::Config(format!(
                        "edge {i} must name exactly two endpoints"
                    )));
                }
                edges.push((lookup(&e[0])?, lookup(&e[1])?));
            }
            Ok(ParsedGraph::Multi(MultiGraph::new(names, edges)?))
        }
        "bipartite" => {
            let xs =
                g.x.as_ref()
                    .ok_or_else(|| Error::Config("bipartite graph needs an \"x\" list".into()))?;
            let ys =
                g.y.as_ref()
                    .ok_or_else(|| Error::Config("bipartite graph needs a \"y\" list".into()))?;
            let x_names: Vec<String> = xs.iter().map(id_string).collect::<Result<_>>()?;
            let y_names: Vec<String> = ys.iter().map(id_string).collect::<Result<_>>()?;
            let mut edges = Vec::new();
            for (i, e) in g.edges.iter().enumerate() {
                if e.len() != 2 {
                    return Err(Error::Config(format!(
                        "edge {i} must name exactly two endpoints"
                    )));
                }
                let xs_id = id_string(&e[0])?;
                let ys_id = id_string(&e[1])?;
                let xi = x_names
                    .iter()
                    .position(|n| *n == xs_id)
                    .ok_or_else(|| Error::Config(format!("unknown x vertex {xs_id:?}")))?;
                let yi = y_names
                    .iter()
                    .position(|n| *n == ys_id)
                    .ok_or_else(|| Error::Config(format!("unknown y vertex {ys_id:?}")))?;
                edges.push((xi, yi));
            }
            Ok(ParsedGraph::Bipartite(BipartiteMultiGraph::new(
                x_names, y_names, edges,
            )?))
        }
        "hypergraph" => {
            let vs = g
                .vertices
                .as_ref()
                .ok_or_else(|| Error::Config("hypergraph needs a \"vertices\" list".into()))?;
            let names: Vec<String> = vs.iter().map(id_string).collect::<Result<_>>()?;
            let mut hyperedges = Vec::new();
            for (i, e) in g.edges.iter().enumerate() {
                let mut he = Vec::new();
                for v in e {
                    let s = id_string(v)?;
                    let idx = names.iter().position(|n| *n == s).ok_or_else(|| {
                        Error::Config(format!("unknown vertex {s:?} in hyperedge {i}"))
                    })?;
                    he.push(idx);
                }
                hyperedges.push(he);
            }
            Ok(ParsedGraph::Hyper(Hypergraph::new(names, hyperedges)?))
        }
        other => Err(Error::Config(format!("unknown graph type {other:?}"))),
    }
}

pub fn parse_graph_json(text: &str) -> Result<ParsedGraph> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed JSON: {e}")))?;
    parse_graph_value(&value)
}

#[derive(Debug, Clone, Deserialize)]
struct PartitionJson {
    classes: Vec<Vec<usize>>,
}

/// Parse one partition object `{"classes": [[...], ...]}` against a ground
/// set size.
pub fn parse_partition_value(value: &Value, size: usize) -> Result<Partition> {
    let p: PartitionJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Config(format!("partition object: {e}")))?;
    Partition::new(size, p.classes)
}

/// Parse a two-partition file: either `[pi1, pi2]` or `{"pi1": ..., "pi2":
/// ...}`. The ground size is the total element count of the first entry.
pub fn parse_partition_pair(text: &str) -> Result<(Partition, Partition)> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed JSON: {e}")))?;
    let (a, b) = match &value {
        Value::Array(items) if items.len() == 2 => (items[0].clone(), items[1].clone()),
        Value::Object(map) => {
            let a = map.get("pi1").or_else(|| map.get("tess1")).ok_or_else(|| {
                Error::Config("expected keys pi1/pi2 or a two-entry array".into())
            })?;
            let b = map.get("pi2").or_else(|| map.get("tess2")).ok_or_else(|| {
                Error::Config("expected keys pi1/pi2 or a two-entry array".into())
            })?;
            (a.clone(), b.clone())
        }
        _ => {
            return Err(Error::Config(
                "expected a two-entry array of partitions or {pi1, pi2}".into(),
            ))
        }
    };
    let first: PartitionJson = serde_json::from_value(a.clone())
        .map_err(|e| Error::Config(format!("partition object: {e}")))?;
    let size = first.classes.iter().map(|c| c.len()).sum();
    Ok((
        parse_partition_value(&a, size)?,
        parse_partition_value(&b, size)?,
    ))
}

/// Model description: family name plus the knobs that family understands.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ModelConfig {
    pub family: String,
    pub graph: Option<Value>,
    pub partitions: Option<Vec<Value>>,
    #[serde(alias = "coins")]
    pub coin: Option<String>,
    pub shift: Option<String>,
    pub marked: Option<Vec<Value>>,
    pub theta: Option<f64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub verblunsky: Option<Vec<Value>>,
    pub dims: Option<Vec<usize>>,
    pub p: Option<Vec<f64>>,
    pub q: Option<Vec<f64>>,
    pub hamiltonian: Option<String>,
    pub search: Option<String>,
}

pub fn parse_model_config(text: &str) -> Result<ModelConfig> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed JSON: {e}")))
}

/// The typed walk behind a built model, for conversion and spectral entry
/// points that need more than the bare operator.
pub enum TypedWalk {
    TwoPartition(crate::models::TwoPartitionWalk),
    Szegedy(crate::models::SzegedyWalk),
    Coined(CoinedWalk),
    Staggered(crate::models::StaggeredWalk),
    Hypergraph(crate::models::TwoPartitionWalk),
    Lattice(crate::models::LatticeWalk),
    Cmv(crate::models::CmvOperators),
}

/// A constructed model ready for the CLI: the evolution operator, a default
/// initial state, aggregation classes, and the search target when marked
/// vertices were given.
pub struct BuiltModel {
    pub family: String,
    pub walk: WalkOperator,
    pub classes: Option<Partition>,
    pub initial: StateVector,
    pub target: Vec<usize>,
    pub typed: TypedWalk,
    pub summary: Value,
}

impl BuiltModel {
    pub fn coined(&self) -> Option<&CoinedWalk> {
        match &self.typed {
            TypedWalk::Coined(w) => Some(w),
            _ => None,
        }
    }
}

fn resolve_marked(marked: &Option<Vec<Value>>, names: &[String]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if let Some(ids) = marked {
        for v in ids {
            let s = id_string(v)?;
            let idx = names
                .iter()
                .position(|n| *n == s)
                .ok_or_else(|| Error::Config(format!("marked vertex {s:?} does not exist")))?;
            out.push(idx);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_verblunsky(values: &[Value]) -> Result<Vec<C64>> {
    values
        .iter()
        .map(|v| match v {
            Value::Number(n) => Ok(cr(n.as_f64().unwrap_or(f64::NAN))),
            Value::Array(pair) if pair.len() == 2 => {
                let re = pair[0].as_f64().ok_or_else(|| {
                    Error::Config("verblunsky entries must be numbers or [re, im]".into())
                })?;
                let im = pair[1].as_f64().ok_or_else(|| {
                    Error::Config("verblunsky entries must be numbers or [re, im]".into())
                })?;
                Ok(c(re, im))
            }
            other => Err(Error::Config(format!(
                "verblunsky entry must be a number or [re, im], got {other}"
            ))),
        })
        .collect()
}

fn need_multigraph(cfg: &ModelConfig) -> Result<MultiGraph> {
    let value = cfg
        .graph
        .as_ref()
        .ok_or_else(|| Error::Config(format!("family {:?} needs a graph", cfg.family)))?;
    match parse_graph_value(value)? {
        ParsedGraph::Multi(g) => Ok(g),
        _ => Err(Error::Config(format!(
            "family {:?} needs a multigraph",
            cfg.family
        ))),
    }
}

fn custom_random_blocks(classes: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<CMatrix> {
    classes
        .iter()
        .map(|c| random_unitary(c.len(), rng))
        .collect()
}

fn identity_blocks(classes: &[Vec<usize>]) -> Vec<CMatrix> {
    classes
        .iter()
        .map(|c| CMatrix::identity(c.len(), c.len()))
        .collect()
}

fn grover_blocks(classes: &[Vec<usize>]) -> Vec<CMatrix> {
    classes
        .iter()
        .map(|c| crate::linalg::grover_block(c.len()))
        .collect()
}

/// Build the model a config describes. `seed` drives every randomized block
/// deterministically.
pub fn build_model(cfg: &ModelConfig, seed: u64) -> Result<BuiltModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta1 = cfg
        .theta1
        .or(cfg.theta)
        .unwrap_or(std::f64::consts::FRAC_PI_2);
    let theta2 = cfg
        .theta2
        .or(cfg.theta)
        .unwrap_or(std::f64::consts::FRAC_PI_2);
    match cfg.family.as_str() {
        "two_partition" => {
            let parts = cfg
                .partitions
                .as_ref()
                .ok_or_else(|| Error::Config("two_partition needs a \"partitions\" pair".into()))?;
            if parts.len() != 2 {
                return Err(Error::Config("expected exactly two partitions".into()));
            }
            let size_of = |v: &Value| -> Result<usize> {
                let p: PartitionJson = serde_json::from_value(v.clone())
                    .map_err(|e| Error::Config(format!("partition object: {e}")))?;
                Ok(p.classes.iter().map(|c| c.len()).sum())
            };
            let size = size_of(&parts[0])?;
            let pi1 = parse_partition_value(&parts[0], size)?;
            let pi2 = parse_partition_value(&parts[1], size)?;
            let coin = cfg.coin.as_deref().unwrap_or("random");
            let (blocks_e, blocks_f) = match coin {
                "random" => (
                    custom_random_blocks(pi1.classes(), &mut rng),
                    custom_random_blocks(pi2.classes(), &mut rng),
                ),
                "identity" => (
                    identity_blocks(pi1.classes()),
                    identity_blocks(pi2.classes()),
                ),
                "grover" => (grover_blocks(pi1.classes()), grover_blocks(pi2.classes())),
                other => {
                    return Err(Error::Config(format!(
                        "two_partition coin must be random/identity/grover, got {other:?}"
                    )))
                }
            };
            let basis = IndexedBasis::indexed("w", size);
            let w = build_two_partition(basis, pi1, pi2, blocks_e, blocks_f)?;
            let marked = resolve_marked(
                &cfg.marked,
                &(0..size).map(|i| format!("w{i}")).collect::<Vec<_>>(),
            )?;
            Ok(BuiltModel {
                family: cfg.family.clone(),
                initial: StateVector::uniform(w.basis.clone()),
                classes: Some(w.pi1.clone()),
                target: marked,
                summary: serde_json::json!({
                    "dimension": w.dim(),
                    "classes_pi1": w.pi1.class_count(),
                    "classes_pi2": w.pi2.class_count(),
                }),
                walk: w.walk.clone(),
                typed: TypedWalk::TwoPartition(w),
            })
        }
        "szegedy" => {
            let h = need_multigraph(cfg)?;
            let marked = resolve_marked(&cfg.marked, &h.vertex_names().to_vec())?;
            let sz = build_szegedy_search(&h, cfg.p.clone(), cfg.q.clone(), &marked)?;
            // run on the full walk; the initial state lives on the plain
            // duplicated edges and the sinks stay dark
            let full_dim = sz.walk.dim();
            let mut amps = crate::linalg::CVector::zeros(full_dim);
            for e in 0..sz.reduced.dim() {
                amps[e] = sz.initial.amplitudes[e];
            }
            let initial = StateVector::new(sz.walk.basis.clone(), amps)?;
            let target: Vec<usize> = (0..full_dim)
                .filter(|&e| {
                    let xm = marked.binary_search(&sz.graph.x_end(e)).is_ok();
                    let ym = marked.binary_search(&sz.graph.y_end(e)).is_ok();
                    xm || ym
                })
                .collect();
            Ok(BuiltModel {
                family: cfg.family.clone(),
                initial,
                classes: Some(sz.walk.pi1.clone()),
                target,
                summary: serde_json::json!({
                    "dimension": full_dim,
                    "duplicated_edges": sz.reduced.dim(),
                    "sink_edges": sz.sink_edges.len(),
                    "marked": sz.marked,
                }),
                walk: sz.walk.walk.clone(),
                typed: TypedWalk::Szegedy(sz),
            })
        }
        "coined" => {
            if let Some(vs) = &cfg.verblunsky {
                let gammas = parse_verblunsky(vs)?;
                let cmv = build_cmv(&gammas)?;
                return Ok(BuiltModel {
                    family: cfg.family.clone(),
                    initial: StateVector::delta(cmv.basis.clone(), 0),
                    classes: Some(cmv.coin.partition.clone()),
                    target: Vec::new(),
                    summary: serde_json::json!({
                        "dimension": cmv.basis.len(),
                        "bandwidth": cmv.cmv.bandwidth(),
                    }),
                    walk: cmv.walk.clone(),
                    typed: TypedWalk::Cmv(cmv),
                });
            }
            let g = need_multigraph(cfg)?;
            let marked = resolve_marked(&cfg.marked, &g.vertex_names().to_vec())?;
            let coin = match cfg.coin.as_deref().unwrap_or("grover") {
                "grover" if marked.is_empty() => CoinSpec::Grover,
                "grover" | "case1" => CoinSpec::Search {
                    case: SearchCase::One,
                    marked: marked.clone(),
                    style: CaseOneStyle::FlipMarked,
                },
                "case2" => CoinSpec::Search {
                    case: SearchCase::Two,
                    marked: marked.clone(),
                    style: CaseOneStyle::FlipMarked,
                },
                "identity" => CoinSpec::Identity,
                "random" => {
                    let arcs = g.arcs();
                    let keys: Vec<usize> = (0..arcs.len()).map(|a| arcs.terminus(a)).collect();
                    let pi1 = Partition::from_keys(&keys);
                    CoinSpec::Custom(custom_random_blocks(pi1.classes(), &mut rng))
                }
                other => {
                    return Err(Error::Config(format!(
                        "coin must be grover/identity/random/case1/case2, got {other:?}"
                    )))
                }
            };
            let shift = match cfg.shift.as_deref().unwrap_or("flipflop") {
                "flipflop" => ShiftSpec::FlipFlop,
                "extended" => {
                    let blocks = (0..g.edge_count())
                        .map(|_| random_unitary(2, &mut rng))
                        .collect();
                    ShiftSpec::Extended(blocks)
                }
                other => {
                    return Err(Error::Config(format!(
                        "shift must be flipflop or extended, got {other:?}"
                    )))
                }
            };
            let w = build_coined(&g, coin, shift)?;
            let target: Vec<usize> = (0..w.arcs.len())
                .filter(|&a| marked.binary_search(&w.arcs.terminus(a)).is_ok())
                .collect();
            Ok(BuiltModel {
                family: cfg.family.clone(),
                initial: StateVector::uniform(w.basis.clone()),
                classes: Some(w.pi1.clone()),
                target,
                summary: serde_json::json!({
                    "dimension": w.dim(),
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "flip_flop": w.flip_flop,
                }),
                walk: w.walk.clone(),
                typed: TypedWalk::Coined(w),
            })
        }
        "staggered" => {
            let g = match parse_graph_value(
                cfg.graph
                    .as_ref()
                    .ok_or_else(|| Error::Config("staggered needs a graph".into()))?,
            )? {
                ParsedGraph::Multi(m) => {
                    SimpleGraph::new(m.vertex_names().to_vec(), m.edges().to_vec())?
                }
                _ => return Err(Error::Config("staggered needs a simple graph".into())),
            };
            let parts = cfg.partitions.as_ref().ok_or_else(|| {
                Error::Config("staggered needs a \"partitions\" pair of tessellations".into())
            })?;
            if parts.len() != 2 {
                return Err(Error::Config("expected exactly two tessellations".into()));
            }
            let n = g.vertex_count();
            let tess1 = parse_partition_value(&parts[0], n)?;
            let tess2 = parse_partition_value(&parts[1], n)?;
            let marked = resolve_marked(&cfg.marked, &g.vertex_names().to_vec())?;
            let cover = TessellationCover::new(g, tess1, tess2)?;
            let ham = match cfg.hamiltonian.as_deref().unwrap_or("adjacency") {
                "adjacency" => HamiltonianSpec::Adjacency,
                "reflection" => HamiltonianSpec::Reflection,
                other => {
                    return Err(Error::Config(format!(
                        "hamiltonian must be adjacency or reflection, got {other:?}"
                    )))
                }
            };
            let search = match cfg.search.as_deref().unwrap_or(if marked.is_empty() {
                "none"
            } else {
                "query"
            }) {
                "none" => StaggeredSearch::None,
                "query" => StaggeredSearch::Query,
                "sandwich" => StaggeredSearch::QuerySandwich,
                other => {
                    return Err(Error::Config(format!(
                        "search must be none/query/sandwich, got {other:?}"
                    )))
                }
            };
            let w = build_staggered(cover, ham, theta1, theta2, search, &marked)?;
            Ok(BuiltModel {
                family: cfg.family.clone(),
                initial: StateVector::uniform(w.basis.clone()),
                classes: Some(w.cover.tess1.clone()),
                target: marked,
                summary: serde_json::json!({
                    "dimension": w.dim(),
                    "polygons": [w.cover.tess1.class_count(), w.cover.tess2.class_count()],
                    "theta": [w.theta1, w.theta2],
                }),
                walk: w.walk.clone(),
                typed: TypedWalk::Staggered(w),
            })
        }
        "hypergraph" => {
            let h = match parse_graph_value(
                cfg.graph
                    .as_ref()
                    .ok_or_else(|| Error::Config("hypergraph walk needs a graph".into()))?,
            )? {
                ParsedGraph::Hyper(h) => h,
                _ => return Err(Error::Config("graph type must be \"hypergraph\"".into())),
            };
            let incidence = crate::graph::hypergraph_incidence(&h);
            let (vb, eb) = match cfg.coin.as_deref().unwrap_or("grover") {
                "grover" => (
                    grover_blocks(incidence.by_vertex.classes()),
                    grover_blocks(incidence.by_hyperedge.classes()),
                ),
                "identity" => (
                    identity_blocks(incidence.by_vertex.classes()),
                    identity_blocks(incidence.by_hyperedge.classes()),
                ),
                "random" => (
                    custom_random_blocks(incidence.by_vertex.classes(), &mut rng),
                    custom_random_blocks(incidence.by_hyperedge.classes(), &mut rng),
                ),
                other => {
                    return Err(Error::Config(format!(
                        "hypergraph coin must be grover/identity/random, got {other:?}"
                    )))
                }
            };
            let w = build_hypergraph_walk(&h, vb, eb)?;
            let marked = resolve_marked(
                &cfg.marked,
                &(0..h.vertex_count())
                    .map(|v| h.vertex_name(v).to_string())
                    .collect::<Vec<_>>(),
            )?;
            let target: Vec<usize> = incidence
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, &(_, u))| marked.binary_search(&u).is_ok())
                .map(|(i, _)| i)
                .collect();
            Ok(BuiltModel {
                family: cfg.family.clone(),
                initial: StateVector::uniform(w.basis.clone()),
                classes: Some(w.pi1.clone()),
                target,
                summary: serde_json::json!({
                    "dimension": w.dim(),
                    "hyperedges": h.hyperedge_count(),
                }),
                walk: w.walk.clone(),
                typed: TypedWalk::Hypergraph(w),
            })
        }
        "lattice" => {
            let dims = cfg
                .dims
                .clone()
                .ok_or_else(|| Error::Config("lattice needs \"dims\"".into()))?;
            let coins = match cfg.coin.as_deref().unwrap_or("grover") {
                "grover" => CoinField::Grover,
                "identity" => CoinField::Identity,
                "random" => {
                    let sites: usize = dims.iter().product();
                    let comp = 2 * dims.len();
                    CoinField::PerSite((0..sites).map(|_| random_unitary(comp, &mut rng)).collect())
                }
                other => {
                    return Err(Error::Config(format!(
                        "lattice coin must be grover/identity/random, got {other:?}"
                    )))
                }
            };
            if cfg.marked.is_some() {
                return Err(Error::Config(
                    "the lattice family defines no search variant".into(),
                ));
            }
            let w = build_lattice_walk(&dims, coins)?;
            let sites = w.site_count();
            let comp = w.component_count();
            let classes = Partition::new(
                w.dim(),
                (0..sites)
                    .map(|v| (0..comp).map(|k| v * comp + k).collect())
                    .collect(),
            )?;
            Ok(BuiltModel {
                family: cfg.family.clone(),
                initial: StateVector::uniform(w.basis.clone()),
                classes: Some(classes),
                target: Vec::new(),
                summary: serde_json::json!({
                    "dimension": w.dim(),
                    "dims": w.dims.clone(),
                }),
                walk: w.walk.clone(),
                typed: TypedWalk::Lattice(w),
            })
        }
        other => Err(Error::Config(format!("unknown family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_multigraph_with_mixed_ids() {
        let g = parse_graph_json(
            r#"{"type":"multigraph","vertices":[0,1,"z"],"edges":[[0,1],[1,"z"],[0,"z"],[0,1]]}"#,
        )
        .unwrap();
        match g {
            ParsedGraph::Multi(m) => {
                assert_eq!(m.vertex_count(), 3);
                assert_eq!(m.edge_count(), 4);
                assert_eq!(m.vertex_name(2), "z");
            }
            _ => panic!("expected multigraph"),
        }
    }

    #[test]
    fn vertices_default_to_appearance_order() {
        let g = parse_graph_json(r#"{"edges":[["b","a"],["a","c"]]}"#).unwrap();
        match g {
            ParsedGraph::Multi(m) => {
                assert_eq!(m.vertex_names(), &["b", "a", "c"]);
            }
            _ => panic!("expected multigraph"),
        }
    }

    #[test]
    fn parse_bipartite() {
        let g = parse_graph_json(
            r#"{"type":"bipartite","x":["u","v"],"y":["u'","v'"],"edges":[["u","v'"],["v","u'"]]}"#,
        )
        .unwrap();
        match g {
            ParsedGraph::Bipartite(b) => {
                assert_eq!(b.x_count(), 2);
                assert_eq!(b.edge_count(), 2);
            }
            _ => panic!("expected bipartite"),
        }
    }

    #[test]
    fn parse_hypergraph() {
        let g =
            parse_graph_json(r#"{"type":"hypergraph","vertices":[1,2,3],"edges":[[1,2,3],[1,2]]}"#)
                .unwrap();
        match g {
            ParsedGraph::Hyper(h) => {
                assert_eq!(h.hyperedge_count(), 2);
                assert_eq!(h.hyperedge(0), &[0, 1, 2]);
            }
            _ => panic!("expected hypergraph"),
        }
    }

    #[test]
    fn malformed_json_reports_the_location() {
        let err = parse_graph_json(r#"{"edges": [[0, 1], }"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("malformed JSON"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
    }

    #[test]
    fn unknown_vertex_in_edges_is_reported() {
        let err = parse_graph_json(r#"{"vertices":[0,1],"edges":[[0,2]]}"#).unwrap_err();
        assert!(err.to_string().contains("unknown vertex"), "{err}");
    }

    fn c4_json() -> Value {
        serde_json::json!({"vertices":[0,1,2,3],"edges":[[0,1],[1,2],[2,3],[3,0]]})
    }

    #[test]
    fn build_coined_model_from_config() {
        let cfg = ModelConfig {
            family: "coined".into(),
            graph: Some(c4_json()),
            coin: Some("grover".into()),
            ..Default::default()
        };
        let m = build_model(&cfg, 0).unwrap();
        assert_eq!(m.walk.dim(), 8);
        assert!(m.coined().is_some());
        assert!(m.target.is_empty());
    }

    #[test]
    fn build_szegedy_model_with_marked_vertex() {
        let cfg = ModelConfig {
            family: "szegedy".into(),
            graph: Some(c4_json()),
            marked: Some(vec![serde_json::json!(2)]),
            ..Default::default()
        };
        let m = build_model(&cfg, 0).unwrap();
        // 8 duplicated edges plus one sink edge
        assert_eq!(m.walk.dim(), 9);
        assert!(!m.target.is_empty());
        assert!((m.initial.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn build_staggered_model_from_config() {
        let cfg = ModelConfig {
            family: "staggered".into(),
            graph: Some(c4_json()),
            partitions: Some(vec![
                serde_json::json!({"classes": [[0, 1], [2, 3]]}),
                serde_json::json!({"classes": [[1, 2], [3, 0]]}),
            ]),
            theta: Some(std::f64::consts::FRAC_PI_2),
            ..Default::default()
        };
        let m = build_model(&cfg, 0).unwrap();
        assert_eq!(m.walk.dim(), 4);
    }

    #[test]
    fn build_cmv_model_from_verblunsky_list() {
        let cfg = ModelConfig {
            family: "coined".into(),
            verblunsky: Some(vec![
                serde_json::json!(0.3),
                serde_json::json!([0.1, 0.2]),
                serde_json::json!(0.5),
            ]),
            ..Default::default()
        };
        let m = build_model(&cfg, 0).unwrap();
        assert_eq!(m.walk.dim(), 4);
    }

    #[test]
    fn random_blocks_reproduce_under_a_fixed_seed() {
        let cfg = ModelConfig {
            family: "coined".into(),
            graph: Some(c4_json()),
            coin: Some("random".into()),
            ..Default::default()
        };
        let a = build_model(&cfg, 42).unwrap();
        let b = build_model(&cfg, 42).unwrap();
        assert_eq!(a.walk.matrix.max_abs_diff(&b.walk.matrix), 0.0);
        let c = build_model(&cfg, 43).unwrap();
        assert!(a.walk.matrix.max_abs_diff(&c.walk.matrix) > 1e-3);
    }

    #[test]
    fn unknown_family_is_rejected() {
        let cfg = ModelConfig {
            family: "continuous".into(),
            ..Default::default()
        };
        assert!(build_model(&cfg, 0).is_err());
    }

    #[test]
    fn partition_pair_file_formats() {
        let (a, b) =
            parse_partition_pair(r#"[{"classes":[[0,1],[2]]},{"classes":[[0],[1,2]]}]"#).unwrap();
        assert_eq!(a.class_count(), 2);
        assert_eq!(b.class_count(), 2);
        let (a2, _) = parse_partition_pair(
            r#"{"pi1":{"classes":[[0,1],[2]]},"pi2":{"classes":[[0],[1,2]]}}"#,
        )
        .unwrap();
        assert_eq!(a.classes(), a2.classes());
    }
}
