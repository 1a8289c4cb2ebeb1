//! Resolution of factor and map arguments: built-in names, map rules and
//! files, with input digests for the run report.

use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use sierpinski::graph::Graph;
use sierpinski::product::VertexMap;
use sierpinski::{families, graph6};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub kind: &'static str,
    pub sha256: String,
}

fn hex_digest(payload: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(payload);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn resolve_graph(arg: &str) -> Result<(Graph, InputDigest), String> {
    if let Some(g) = families::by_name(arg) {
        let digest = hex_digest(format!("named:{arg}:{}", g.to_edge_list()).as_bytes());
        return Ok((g, InputDigest { name: arg.into(), kind: "named", sha256: digest }));
    }
    let path = Path::new(arg);
    let bytes = fs::read(path).map_err(|e| format!("cannot read graph {arg:?}: {e}"))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| format!("graph file {arg:?} is not valid UTF-8"))?;
    let graph = if path.extension().is_some_and(|e| e == "g6") {
        graph6::parse(&text).map_err(|e| format!("{arg}: {e}"))?
    } else {
        Graph::parse_edge_list(&text).map_err(|e| format!("{arg}: {e}"))?
    };
    Ok((
        graph,
        InputDigest { name: arg.into(), kind: "file", sha256: hex_digest(&bytes) },
    ))
}

/// Map arguments: `id`, `mod<k>` (1-based residue on integer labels), or
/// a path to a map file.
pub fn resolve_map(
    arg: &str,
    source: &Graph,
    target: &Graph,
) -> Result<(VertexMap, InputDigest), String> {
    if arg == "id" {
        let map = VertexMap::identity(source, target)
            .map_err(|e| format!("map id does not fit: {e}"))?;
        let digest = hex_digest(format!("map:id:{:?}", map.table()).as_bytes());
        return Ok((map, InputDigest { name: arg.into(), kind: "named-map", sha256: digest }));
    }
    if let Some(k) = arg.strip_prefix("mod") {
        let k: usize = k.parse().map_err(|_| format!("bad modulus in {arg:?}"))?;
        if k == 0 {
            return Err("modulus must be positive".into());
        }
        let pairs: Vec<(String, String)> = source
            .labels()
            .iter()
            .map(|l| {
                let i: usize = l
                    .parse()
                    .map_err(|_| format!("map {arg} needs integer labels, found {l:?}"))?;
                if i == 0 {
                    return Err(format!("map {arg} needs 1-based labels, found {l:?}"));
                }
                Ok((l.clone(), (((i - 1) % k) + 1).to_string()))
            })
            .collect::<Result<_, String>>()?;
        let map = VertexMap::from_label_pairs(
            source,
            target,
            pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .map_err(|e| format!("map {arg} does not fit: {e}"))?;
        let digest = hex_digest(format!("map:{arg}:{:?}", map.table()).as_bytes());
        return Ok((map, InputDigest { name: arg.into(), kind: "named-map", sha256: digest }));
    }
    let bytes = fs::read(arg).map_err(|e| format!("cannot read map {arg:?}: {e}"))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| format!("map file {arg:?} is not valid UTF-8"))?;
    let map = VertexMap::parse(&text, source, target).map_err(|e| format!("{arg}: {e}"))?;
    Ok((
        map,
        InputDigest { name: arg.into(), kind: "map-file", sha256: hex_digest(&bytes) },
    ))
}
