//! Export formats for product graphs.

use serde_json::{json, Value};

use sierpinski::graph6;
use sierpinski::product::{EdgeClass, ProductResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Edgelist,
    Graph6,
    Dot,
    Json,
}

pub fn render(product: &ProductResult, format: OutFormat) -> String {
    match format {
        OutFormat::Edgelist => product.graph.to_edge_list(),
        OutFormat::Graph6 => {
            let mut s = graph6::emit(&product.graph);
            s.push('\n');
            s
        }
        OutFormat::Dot => render_dot(product),
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(&graph_json(product)).unwrap();
            s.push('\n');
            s
        }
    }
}

/// Connecting edges carry a distinct class attribute and color so the
/// two edge families are visible downstream.
fn render_dot(product: &ProductResult) -> String {
    let g = &product.graph;
    let mut out = String::from("graph product {\n");
    for v in 0..g.order() {
        out.push_str(&format!("  \"{}\";\n", g.label(v)));
    }
    for &(u, v) in g.edges() {
        let class = product.classify_edge(u, v).expect("edge of the product");
        let attrs = match class {
            EdgeClass::Inner => "[class=\"inner\"]",
            EdgeClass::Connecting => "[class=\"connecting\", color=\"red\", penwidth=2]",
        };
        out.push_str(&format!("  \"{}\" -- \"{}\" {};\n", g.label(u), g.label(v), attrs));
    }
    out.push_str("}\n");
    out
}

pub fn graph_json(product: &ProductResult) -> Value {
    let g = &product.graph;
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let class = match product.classify_edge(u, v).unwrap() {
                EdgeClass::Inner => "inner",
                EdgeClass::Connecting => "connecting",
            };
            json!({
                "u": g.label(u),
                "v": g.label(v),
                "class": class,
            })
        })
        .collect();
    json!({
        "vertices": g.labels(),
        "edges": edges,
        "phi": product.phi_label_pairs(),
    })
}
