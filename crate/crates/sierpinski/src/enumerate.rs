//! Exhaustive enumeration of small graphs up to isomorphism, by
//! canonical upper-triangle bitmask (minimum over all vertex
//! permutations). Feasible up to seven vertices.

use std::collections::BTreeSet;
use std::sync::{Mutex, OnceLock};

use crate::graph::Graph;

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut pos = vec![vec![0; n]; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            pos[u][v] = k;
            pos[v][u] = k;
            k += 1;
        }
    }
    pos
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn canonical_mask(mask: u32, n: usize, pos: &[Vec<usize>], perms: &[Vec<usize>]) -> u32 {
    let mut best = u32::MAX;
    for p in perms {
        let mut out = 0u32;
        for u in 0..n {
            for v in u + 1..n {
                if mask & (1 << pos[u][v]) != 0 {
                    out |= 1 << pos[p[u]][p[v]];
                }
            }
        }
        best = best.min(out);
    }
    best
}

fn mask_is_connected(mask: u32, n: usize, pos: &[Vec<usize>]) -> bool {
    if n == 0 {
        return true;
    }
    let mut reached = 1u32;
    let mut frontier = vec![0usize];
    while let Some(u) = frontier.pop() {
        for v in 0..n {
            if v != u && reached & (1 << v) == 0 && mask & (1 << pos[u][v]) != 0 {
                reached |= 1 << v;
                frontier.push(v);
            }
        }
    }
    reached.count_ones() as usize == n
}

fn graph_from_mask(mask: u32, n: usize, pos: &[Vec<usize>]) -> Graph {
    let mut g = Graph::with_vertices((1..=n).map(|i| i.to_string())).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if mask & (1 << pos[u][v]) != 0 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn connected_masks(n: usize) -> Vec<u32> {
    assert!((1..=7).contains(&n), "enumeration supports 1..=7 vertices");
    static CACHE: OnceLock<Mutex<Vec<Option<Vec<u32>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![None; 8]));
    if let Some(masks) = &cache.lock().unwrap()[n] {
        return masks.clone();
    }
    let pos = pair_index(n);
    let perms = permutations_of(n);
    let nbits = n * (n - 1) / 2;
    let mut canon: BTreeSet<u32> = BTreeSet::new();
    for mask in 0..(1u32 << nbits) {
        if mask_is_connected(mask, n, &pos) {
            canon.insert(canonical_mask(mask, n, &pos, &perms));
        }
    }
    let masks: Vec<u32> = canon.into_iter().collect();
    cache.lock().unwrap()[n] = Some(masks.clone());
    masks
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class,
/// labels `"1".."n"`, in canonical order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pos = pair_index(n);
    connected_masks(n)
        .into_iter()
        .map(|m| graph_from_mask(m, n, &pos))
        .collect()
}

/// Connected graphs with between 1 and `max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Biconnected graphs (no cut vertex, at least three vertices) on
/// exactly `n` vertices, one per isomorphism class.
pub fn biconnected_graphs(n: usize) -> Vec<Graph> {
    connected_graphs(n)
        .into_iter()
        .filter(Graph::is_biconnected)
        .collect()
}
