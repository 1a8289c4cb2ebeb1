//! Built-in named graphs. All families use 1-based labels `"1".."n"` so
//! that small instances can be spelled on the command line.

use crate::graph::Graph;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::with_vertices(labels(n)).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Cycle `1-2-...-n-1`; requires `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut g = Graph::with_vertices(labels(n)).unwrap();
    for u in 0..n {
        g.add_edge(u, (u + 1) % n).unwrap();
    }
    g
}

/// Path `1-2-...-n`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::with_vertices(labels(n)).unwrap();
    for u in 0..n.saturating_sub(1) {
        g.add_edge(u, u + 1).unwrap();
    }
    g
}

/// Complete bipartite graph with parts `{1..a}` and `{a+1..a+b}`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::with_vertices(labels(a + b)).unwrap();
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// The house graph: the 5-cycle `1-2-3-4-5-1` with the chord `{2,5}`.
pub fn house() -> Graph {
    let mut g = cycle(5);
    g.add_edge_by_labels("2", "5").unwrap();
    g
}

/// Two triangles joined by a bridge: triangles `{1,2,6}` and `{3,4,5}`
/// with the bridge `{5,6}`.
pub fn two_triangles_bridge() -> Graph {
    Graph::parse_edge_list("1 2\n1 6\n2 6\n3 4\n3 5\n4 5\n5 6").unwrap()
}

/// Parses a built-in name: `K5`, `C6`, `P4`, `K2,3`, `house`, `2K3+e`.
pub fn by_name(name: &str) -> Option<Graph> {
    match name {
        "house" => return Some(house()),
        "2K3+e" => return Some(two_triangles_bridge()),
        _ => {}
    }
    let (kind, rest) = name.split_at(1);
    match kind {
        "K" => {
            if let Some((a, b)) = rest.split_once(',') {
                let a: usize = a.parse().ok()?;
                let b: usize = b.parse().ok()?;
                (a >= 1 && b >= 1).then(|| complete_bipartite(a, b))
            } else {
                let n: usize = rest.parse().ok()?;
                (n >= 1).then(|| complete(n))
            }
        }
        "C" => {
            let n: usize = rest.parse().ok()?;
            (n >= 3).then(|| cycle(n))
        }
        "P" => {
            let n: usize = rest.parse().ok()?;
            (n >= 1).then(|| path(n))
        }
        _ => None,
    }
}
