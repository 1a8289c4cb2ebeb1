//! Command-line front end: builds Sierpinski products, runs structural
//! and metric analyses, and reports symmetry structure, all as
//! deterministic JSON run reports.

mod inputs;
mod output;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use sierpinski::analysis::{
    connecting_edge_cycle_check, diameter_bound, genus_lower_bound, is_outerplanar,
    product_planarity,
};
use sierpinski::graph::{Diameter, Graph};
use sierpinski::limits::Limits;
use sierpinski::planarity::is_planar;
use sierpinski::product::{
    chain_product, generalized_sierpinski_with, predicted_counts, ChainSpec, ProductResult,
    VertexMap,
};
use sierpinski::symmetry::{
    conjecture_scan, partition_forced_case, symmetry_groups, verify_decomposition, ScanConfig,
};

use inputs::{resolve_graph, resolve_map, InputDigest};
use output::OutFormat;

const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Parser)]
#[command(name = "sierp", about = "Sierpinski products of graphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a product and export it.
    Build(BuildArgs),
    /// Run structural and metric checks.
    Analyze(AnalyzeArgs),
    /// Symmetry groups, decomposition and counterexample scans.
    Autos(AutosArgs),
}

#[derive(Args)]
struct FactorArgs {
    /// Factors, outermost first: built-in names (K5, C6, P4, K2,3,
    /// house, 2K3+e) or file paths (.g6 for graph6, else edge list).
    factors: Vec<String>,
    /// Map for a two-factor product: id, mod<k>, or a map file.
    #[arg(long)]
    map: Option<String>,
    /// Maps for a chain, one per consecutive factor pair, left to right.
    #[arg(long, num_args = 1.., conflicts_with = "map")]
    maps: Vec<String>,
    /// Build the n-fold self-product of this base graph instead.
    #[arg(long, conflicts_with_all = ["factors", "map", "maps"])]
    generalized: Option<String>,
    /// Iteration count for --generalized.
    #[arg(long, requires = "generalized")]
    n: Option<usize>,
    /// Separator joining factor labels in composite vertex labels.
    #[arg(long, default_value = ".")]
    separator: String,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    spec: FactorArgs,
    /// Export format for --output.
    #[arg(long, value_enum, default_value = "edgelist")]
    out: OutFormat,
    /// Write the product graph here.
    #[arg(long)]
    output: Option<String>,
    /// Write the embedding table ("g phi(g)" per line) here.
    #[arg(long)]
    phi_output: Option<String>,
    /// Exclude timings from the report for byte-stable output.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    spec: FactorArgs,
    /// Comma-separated checks: connectivity,planarity,girth,diameter,bounds.
    #[arg(long, value_delimiter = ',', required = true)]
    checks: Vec<String>,
    /// Known genus of the left factor, for the genus bound.
    #[arg(long)]
    genus_g: Option<u64>,
    /// Known genus of the right factor, for the genus bound.
    #[arg(long)]
    genus_h: Option<u64>,
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct AutosArgs {
    #[command(flatten)]
    spec: FactorArgs,
    /// Verify the diagonal/per-copy decomposition of the self-product.
    #[arg(long)]
    decompose: bool,
    /// Run the counterexample scan up to this factor size.
    #[arg(long)]
    scan_max: Option<usize>,
    /// Seed for sampled maps in the scan.
    #[arg(long, default_value = "0")]
    seed: u64,
    #[arg(long)]
    no_timings: bool,
}

#[derive(Serialize)]
struct RunReport {
    schema_version: &'static str,
    command: Vec<String>,
    inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<BTreeMap<String, u128>>,
}

fn limits_from_env() -> Limits {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("SIERP_MAX_AUT") {
        match v.parse::<usize>() {
            Ok(n) => limits.max_aut_vertices = n,
            Err(_) => eprintln!("warning: ignoring unparsable SIERP_MAX_AUT={v:?}"),
        }
    }
    limits
}

struct ResolvedSpec {
    factors: Vec<Graph>,
    maps: Vec<VertexMap>,
    inputs: Vec<InputDigest>,
    product: ProductResult,
    predicted: (u128, u128),
}

fn resolve_spec(spec: &FactorArgs) -> Result<ResolvedSpec, String> {
    if let Some(base) = &spec.generalized {
        let n = spec.n.ok_or("--generalized needs --n")?;
        let (g, digest) = resolve_graph(base)?;
        let product = generalized_sierpinski_with(&g, n, &spec.separator)
            .map_err(|e| e.to_string())?;
        let id = VertexMap::identity(&g, &g).map_err(|e| e.to_string())?;
        let chain = ChainSpec::new(vec![g.clone(); n], vec![id.clone(); n - 1], &spec.separator)
            .map_err(|e| e.to_string())?;
        let predicted = predicted_counts(&chain);
        return Ok(ResolvedSpec {
            factors: vec![g; n],
            maps: vec![id; n.saturating_sub(1)],
            inputs: vec![digest],
            product,
            predicted,
        });
    }

    if spec.factors.is_empty() {
        return Err("no factors given".into());
    }
    let mut factors = Vec::new();
    let mut inputs = Vec::new();
    for arg in &spec.factors {
        let (g, digest) = resolve_graph(arg)?;
        factors.push(g);
        inputs.push(digest);
    }
    let map_args: Vec<String> = match (&spec.map, &spec.maps[..]) {
        (Some(m), []) => vec![m.clone()],
        (None, ms) => ms.to_vec(),
        (Some(_), _) => unreachable!("clap conflict"),
    };
    if map_args.len() + 1 != factors.len() {
        return Err(format!(
            "{} factors need {} map(s), got {}",
            factors.len(),
            factors.len() - 1,
            map_args.len()
        ));
    }
    let mut maps = Vec::new();
    for (i, arg) in map_args.iter().enumerate() {
        let (m, digest) = resolve_map(arg, &factors[i], &factors[i + 1])?;
        maps.push(m);
        inputs.push(digest);
    }
    let chain = ChainSpec::new(factors.clone(), maps.clone(), &spec.separator)
        .map_err(|e| e.to_string())?;
    let product = chain_product(&chain).map_err(|e| e.to_string())?;
    let predicted = predicted_counts(&chain);
    Ok(ResolvedSpec { factors, maps, inputs, product, predicted })
}

fn finish(report: RunReport) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    ExitCode::SUCCESS
}

fn cmd_build(args: &BuildArgs, command: Vec<String>) -> Result<RunReport, String> {
    let start = Instant::now();
    let spec = resolve_spec(&args.spec)?;
    let product = &spec.product;

    let mut written = Vec::new();
    if let Some(path) = &args.output {
        fs::write(path, output::render(product, args.out))
            .map_err(|e| format!("cannot write {path:?}: {e}"))?;
        written.push(path.clone());
    }
    if let Some(path) = &args.phi_output {
        let mut text = String::from("# phi\n");
        for (g, pg) in product.phi_label_pairs() {
            text.push_str(&format!("{g} {pg}\n"));
        }
        fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}"))?;
        written.push(path.clone());
    }

    let mut results = json!({
        "order": product.graph.order(),
        "size": product.graph.size(),
        "inner_edges": product.inner_edges().len(),
        "connecting_edges": product.connecting_edges().len(),
        "predicted_order": spec.predicted.0.to_string(),
        "predicted_size": spec.predicted.1.to_string(),
        "phi": product.phi_label_pairs(),
        "outputs_written": written,
    });
    if args.out == OutFormat::Json && args.output.is_none() {
        results["graph"] = output::graph_json(product);
    }

    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command,
        inputs: spec.inputs,
        seed: None,
        results,
        timings_ms: timings(args.no_timings, start),
    })
}

fn timings(suppress: bool, start: Instant) -> Option<BTreeMap<String, u128>> {
    if suppress {
        None
    } else {
        let mut t = BTreeMap::new();
        t.insert("total".to_string(), start.elapsed().as_millis());
        Some(t)
    }
}

fn check_connectivity(spec: &ResolvedSpec) -> Value {
    let product_connected = spec.product.graph.is_connected();
    let factors: Vec<bool> = spec.factors.iter().map(Graph::is_connected).collect();
    json!({
        "rule": "connected-iff-all-factors-connected",
        "connected": product_connected,
        "factors_connected": factors,
        "consistent": product_connected == factors.iter().all(|&c| c),
    })
}

fn check_planarity(spec: &ResolvedSpec) -> Result<Value, String> {
    if spec.factors.len() == 2 {
        let report = product_planarity(&spec.factors[0], &spec.factors[1], &spec.maps[0])
            .map_err(|e| e.to_string())?;
        let mut value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        value["rule"] = json!("product-planarity-characterization");
        value["conditions_match_verdict"] = json!(report.consistent());
        Ok(value)
    } else {
        let verdict = is_planar(&spec.product.graph);
        Ok(json!({
            "rule": "direct-planarity",
            "planar": verdict.is_planar(),
            "outerplanar": spec.factors.len() == 1 && is_outerplanar(&spec.factors[0]),
            "kuratowski": verdict.witness(),
        }))
    }
}

fn check_girth(spec: &ResolvedSpec) -> Result<Value, String> {
    let girth = spec.product.graph.girth();
    let cycles = if spec.factors.len() == 2 {
        Some(connecting_edge_cycle_check(&spec.product).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(json!({
        "rule": "girth-and-connecting-edge-cycles",
        "girth": girth,
        "connecting_edge_cycles": cycles,
    }))
}

fn diameter_json(d: Diameter) -> Value {
    match d {
        Diameter::Finite(x) => json!(x),
        Diameter::Infinite => json!("infinite"),
    }
}

fn factor_diameters(spec: &ResolvedSpec) -> Option<Vec<u64>> {
    spec.factors
        .iter()
        .map(|g| g.diameter().finite().map(|d| d as u64))
        .collect()
}

fn check_diameter(spec: &ResolvedSpec) -> Value {
    let measured = spec.product.graph.diameter();
    let bound = factor_diameters(spec).map(|d| diameter_bound(&d));
    let holds = match (measured, &bound) {
        (Diameter::Finite(m), Some(b)) => Some((m as u128) <= *b),
        _ => None,
    };
    json!({
        "rule": "diameter-with-chain-upper-bound",
        "diameter": diameter_json(measured),
        "bound": bound.map(|b| b.to_string()),
        "bound_holds": holds,
    })
}

fn check_bounds(spec: &ResolvedSpec, args: &AnalyzeArgs) -> Value {
    let bound = factor_diameters(spec).map(|d| diameter_bound(&d));
    let genus = match (args.genus_g, args.genus_h) {
        (Some(gg), Some(gh)) if spec.factors.len() == 2 => Some(genus_lower_bound(
            gg,
            spec.factors[0].order() as u64,
            gh,
        )),
        _ => None,
    };
    json!({
        "rule": "diameter-and-genus-bounds",
        "diameter_bound": bound.map(|b| b.to_string()),
        "genus_lower_bound": genus,
    })
}

fn cmd_analyze(args: &AnalyzeArgs, command: Vec<String>) -> Result<RunReport, String> {
    let start = Instant::now();
    let spec = resolve_spec(&args.spec)?;
    let mut results = serde_json::Map::new();
    for check in &args.checks {
        let value = match check.as_str() {
            "connectivity" => check_connectivity(&spec),
            "planarity" => check_planarity(&spec)?,
            "girth" => check_girth(&spec)?,
            "diameter" => check_diameter(&spec),
            "bounds" => check_bounds(&spec, args),
            other => return Err(format!("unknown check {other:?}")),
        };
        results.insert(check.clone(), value);
    }
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command,
        inputs: spec.inputs,
        seed: None,
        results: Value::Object(results),
        timings_ms: timings(args.no_timings, start),
    })
}

fn cmd_autos(args: &AutosArgs, command: Vec<String>) -> Result<RunReport, String> {
    let start = Instant::now();
    let limits = limits_from_env();
    let mut results = serde_json::Map::new();
    let mut inputs = Vec::new();

    let needs_product = !args.spec.factors.is_empty() || args.spec.generalized.is_some();
    if needs_product {
        let spec = resolve_spec(&args.spec)?;
        if spec.factors.len() < 2 {
            return Err("symmetry analysis needs at least two factors".into());
        }
        inputs = spec.inputs;
        let product = &spec.product;
        let groups = symmetry_groups(product, &limits).map_err(|e| e.to_string())?;
        let labels = product.graph.labels();
        let gens: Vec<String> = groups
            .partition_preserving
            .small_generating_set(&limits)
            .iter()
            .map(|p| p.cycle_string(labels))
            .collect();
        let witness = groups
            .partition_breaking_witness()
            .map(|p| p.cycle_string(labels));
        results.insert(
            "groups".into(),
            json!({
                "full_order": groups.full.order(),
                "partition_preserving_order": groups.partition_preserving.order(),
                "per_copy_order": groups.per_copy.order(),
                "diagonal_order": groups.diagonal.as_ref().map(|d| d.order()),
                "partition_is_everything": groups.partition_is_everything(),
                "forced_case": partition_forced_case(product).map_err(|e| e.to_string())?,
                "partition_breaking_witness": witness,
                "partition_preserving_generators": gens,
            }),
        );

        if args.decompose {
            let pair = product.pair().map_err(|e| e.to_string())?;
            let report = verify_decomposition(&pair.left, &pair.map, &limits)
                .map_err(|e| e.to_string())?;
            results.insert(
                "decomposition".into(),
                serde_json::to_value(&report).map_err(|e| e.to_string())?,
            );
        }
    } else if args.decompose {
        return Err("--decompose needs two factors".into());
    }

    if let Some(max_n) = args.scan_max {
        let cfg = ScanConfig { max_n, seed: args.seed, limits, ..ScanConfig::default() };
        let report = conjecture_scan(&cfg).map_err(|e| e.to_string())?;
        results.insert(
            "scan".into(),
            serde_json::to_value(&report).map_err(|e| e.to_string())?,
        );
    }

    if results.is_empty() {
        return Err("nothing to do: give factors, --decompose or --scan-max".into());
    }

    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command,
        inputs,
        seed: Some(args.seed),
        results: Value::Object(results),
        timings_ms: timings(args.no_timings, start),
    })
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build(args) => cmd_build(args, command),
        Command::Analyze(args) => cmd_analyze(args, command),
        Command::Autos(args) => cmd_autos(args, command),
    };
    match outcome {
        Ok(report) => finish(report),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
