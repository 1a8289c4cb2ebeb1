//! Cross-checks the planarity engine against an independent brute-force
//! search for K5 / K3,3 subdivisions on small random graphs, plus the
//! Euler edge-count bound.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sierpinski::graph::Graph;
use sierpinski::planarity::is_planar;

/// Enumerates simple paths between the next unconnected branch pair,
/// interior vertices drawn from the unused non-branch pool, recursing
/// over the remaining pairs.
fn connect_pairs(
    g: &Graph,
    pairs: &[(usize, usize)],
    branch: &[usize],
    used: &mut Vec<bool>,
) -> bool {
    let Some(&(a, b)) = pairs.first() else {
        return true;
    };
    let rest = &pairs[1..];
    // Iterative deepening over simple paths from a to b.
    fn dfs(
        g: &Graph,
        cur: usize,
        target: usize,
        branch: &[usize],
        used: &mut Vec<bool>,
        rest: &[(usize, usize)],
    ) -> bool {
        for &w in g.neighbors(cur) {
            if w == target {
                if connect_pairs(g, rest, branch, used) {
                    return true;
                }
                continue;
            }
            if used[w] || branch.contains(&w) {
                continue;
            }
            used[w] = true;
            if dfs(g, w, target, branch, used, rest) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    dfs(g, a, b, branch, used, rest)
}

fn has_subdivision_on(g: &Graph, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut used = vec![false; g.order()];
    connect_pairs(g, pairs, branch, &mut used)
}

fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let n = g.order();
    // K5 subdivisions.
    for branch in (0..n).combinations(5) {
        let pairs: Vec<(usize, usize)> = branch
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| branch[i + 1..].iter().map(move |&b| (a, b)))
            .collect();
        if has_subdivision_on(g, &branch, &pairs) {
            return true;
        }
    }
    // K3,3 subdivisions.
    for six in (0..n).combinations(6) {
        for left in six.iter().copied().combinations(3) {
            if !left.contains(&six[0]) {
                continue; // fix one side to avoid the mirror split
            }
            let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let branch: Vec<usize> = six.clone();
            let pairs: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                .collect();
            if has_subdivision_on(g, &branch, &pairs) {
                return true;
            }
        }
    }
    false
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::with_vertices((1..=n).map(|i| i.to_string())).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[test]
fn planarity_matches_subdivision_search_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..400 {
        let n = 5 + round % 4; // 5..=8 vertices
        let p = [0.3, 0.5, 0.7, 0.9][(round / 4) % 4];
        let g = random_graph(&mut rng, n, p);
        let fast = is_planar(&g).is_planar();
        let brute = !has_kuratowski_subdivision(&g);
        assert_eq!(
            fast,
            brute,
            "disagreement on n={} edges={:?}",
            n,
            g.edges()
        );
        if g.order() >= 3 && g.size() > 3 * g.order() - 6 {
            assert!(!fast, "Euler bound violated on {:?}", g.edges());
        }
    }
}

/// Every labeled graph on six vertices, no sampling.
#[test]
fn planarity_matches_subdivision_search_exhaustively_on_six_vertices() {
    let n = 6;
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for mask in 0u32..(1 << pairs.len()) {
        let mut g = Graph::with_vertices((1..=n).map(|i| i.to_string())).unwrap();
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                g.add_edge(u, v).unwrap();
            }
        }
        let fast = is_planar(&g).is_planar();
        let brute = !has_kuratowski_subdivision(&g);
        assert_eq!(fast, brute, "disagreement on edges {:?}", g.edges());
    }
}

#[test]
fn kuratowski_witnesses_are_subdivisions() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    for _ in 0..200 {
        let g = random_graph(&mut rng, 8, 0.6);
        let verdict = is_planar(&g);
        if let Some(w) = verdict.witness() {
            let wg = Graph::from_edge_labels(
                w.edges.iter().map(|(a, b)| (a.clone(), b.clone())),
            )
            .unwrap();
            assert!(has_kuratowski_subdivision(&wg));
            // Suppressing degree-2 vertices must leave K5 or K3,3.
            let branch: Vec<usize> =
                (0..wg.order()).filter(|&v| wg.degree(v) >= 3).collect();
            let degs: Vec<usize> = branch.iter().map(|&v| wg.degree(v)).collect();
            assert!(
                degs.iter().all(|&d| d == 4) && branch.len() == 5
                    || degs.iter().all(|&d| d == 3) && branch.len() == 6,
                "witness branch degrees {degs:?}"
            );
            checked += 1;
        }
    }
    assert!(checked > 20, "too few non-planar samples: {checked}");
}
