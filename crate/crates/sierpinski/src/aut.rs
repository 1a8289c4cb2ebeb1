//! Automorphism and isomorphism search: iterated degree-partition
//! refinement to seed color classes, then backtracking over color-preserving
//! adjacency-consistent assignments.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};

/// Full automorphism group; elements come back in canonical
/// lexicographic order. Errors with `Overflow` above the vertex limit or
/// when the group would exceed the group-order limit.
pub fn automorphism_group(g: &Graph, limits: &Limits) -> Result<PermGroup> {
    check_size(g.order(), limits)?;
    let maps = search(g, g, false, limits)?;
    Ok(PermGroup::from_elements(
        g.order(),
        maps.into_iter()
            .map(|m| Permutation::from_images(m).expect("bijection"))
            .collect(),
    ))
}

/// A witnessing label bijection from `a` to `b`, or `None`.
pub fn find_isomorphism(
    a: &Graph,
    b: &Graph,
    limits: &Limits,
) -> Result<Option<Vec<(String, String)>>> {
    check_size(a.order(), limits)?;
    check_size(b.order(), limits)?;
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(None);
    }
    let maps = search(a, b, true, limits)?;
    Ok(maps.into_iter().next().map(|m| {
        (0..a.order())
            .map(|v| (a.label(v).to_string(), b.label(m[v]).to_string()))
            .collect()
    }))
}

pub fn are_isomorphic(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(a, b, limits)?.is_some())
}

fn check_size(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_aut_vertices {
        return Err(Error::Overflow {
            what: format!("automorphism search on {n} vertices"),
            limit: limits.max_aut_vertices,
        });
    }
    Ok(())
}

/// Word-blocked bitset rows, one per vertex.
struct BitRows {
    words: usize,
    rows: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitRows { words, rows: vec![0; n * words] }
    }

    fn from_graph(g: &Graph) -> Self {
        let mut b = BitRows::new(g.order());
        for &(u, v) in g.edges() {
            b.set(u, v);
            b.set(v, u);
        }
        b
    }

    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }
}

/// Stable vertex coloring of a single graph under iterated neighborhood
/// refinement. Colors are invariant under automorphisms.
pub fn stable_colors(g: &Graph) -> Vec<usize> {
    joint_refinement(g, g).0
}

/// Stable vertex coloring under iterated neighborhood refinement, computed
/// jointly for both graphs so colors are comparable across them.
fn joint_refinement(a: &Graph, b: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut cb: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    loop {
        let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut next = |sig: (usize, Vec<usize>)| {
            let id = palette.len();
            *palette.entry(sig).or_insert(id)
        };
        let sig_of = |g: &Graph, colors: &[usize], v: usize| {
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            nb.sort_unstable();
            (colors[v], nb)
        };
        let na: Vec<usize> = (0..a.order()).map(|v| next(sig_of(a, &ca, v))).collect();
        let nb: Vec<usize> = (0..b.order()).map(|v| next(sig_of(b, &cb, v))).collect();
        let classes_before = count_distinct(ca.iter().chain(cb.iter()));
        let classes_after = count_distinct(na.iter().chain(nb.iter()));
        ca = na;
        cb = nb;
        if classes_after == classes_before {
            return (ca, cb);
        }
    }
}

fn count_distinct<'a, I: Iterator<Item = &'a usize>>(it: I) -> usize {
    let mut v: Vec<usize> = it.copied().collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Enumerates isomorphisms `a -> b` as image vectors. With `first_only`
/// the search stops at the first witness. Overflows when the number of
/// witnesses would exceed the group-order limit.
fn search(a: &Graph, b: &Graph, first_only: bool, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let n = a.order();
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    let (ca, cb) = joint_refinement(a, b);
    let mut class_a: BTreeMap<usize, usize> = BTreeMap::new();
    let mut class_b: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &ca {
        *class_a.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *class_b.entry(c).or_insert(0) += 1;
    }
    if class_a != class_b {
        return Ok(Vec::new());
    }

    let adj_b = BitRows::from_graph(b);
    let words = adj_b.words;

    let mut state = State {
        a,
        ca: &ca,
        cb: &cb,
        adj_b: &adj_b,
        image: vec![usize::MAX; n],
        used_b: vec![false; n],
        assigned_b_mask: vec![0u64; words],
        found: Vec::new(),
        first_only,
        cap: if first_only { 1 } else { limits.max_group_order },
        overflowed: false,
    };
    state.dfs(0);
    if state.overflowed {
        return Err(Error::Overflow {
            what: "automorphism enumeration".into(),
            limit: limits.max_group_order,
        });
    }
    let mut found = state.found;
    found.sort();
    Ok(found)
}

struct State<'a> {
    a: &'a Graph,
    ca: &'a [usize],
    cb: &'a [usize],
    adj_b: &'a BitRows,
    image: Vec<usize>,
    used_b: Vec<bool>,
    assigned_b_mask: Vec<u64>,
    found: Vec<Vec<usize>>,
    first_only: bool,
    cap: usize,
    overflowed: bool,
}

impl<'a> State<'a> {
    fn candidates_of(&self, v: usize) -> Vec<usize> {
        let n = self.image.len();
        let mut req = vec![0u64; self.adj_b.words];
        for &u in self.a.neighbors(v) {
            if self.image[u] != usize::MAX {
                let w = self.image[u];
                req[w / 64] |= 1 << (w % 64);
            }
        }
        (0..n)
            .filter(|&w| {
                !self.used_b[w]
                    && self.cb[w] == self.ca[v]
                    && self
                        .adj_b
                        .row(w)
                        .iter()
                        .zip(self.assigned_b_mask.iter())
                        .zip(req.iter())
                        .all(|((&row, &mask), &r)| row & mask == r)
            })
            .collect()
    }

    fn dfs(&mut self, depth: usize) {
        let n = self.image.len();
        if depth == n {
            if self.found.len() >= self.cap {
                self.overflowed = true;
            } else {
                self.found.push(self.image.clone());
            }
            return;
        }
        // Most constrained unassigned vertex, ties by index.
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in 0..n {
            if self.image[v] != usize::MAX {
                continue;
            }
            let cand = self.candidates_of(v);
            let better = match &best {
                None => true,
                Some((_, c)) => cand.len() < c.len(),
            };
            if better {
                let empty = cand.is_empty();
                best = Some((v, cand));
                if empty {
                    break;
                }
            }
        }
        let (v, cands) = best.expect("depth < n leaves an unassigned vertex");
        for w in cands {
            self.image[v] = w;
            self.used_b[w] = true;
            self.assigned_b_mask[w / 64] |= 1 << (w % 64);
            self.dfs(depth + 1);
            self.image[v] = usize::MAX;
            self.used_b[w] = false;
            self.assigned_b_mask[w / 64] &= !(1 << (w % 64));
            if self.overflowed || (self.first_only && !self.found.is_empty()) {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn triangle_has_six_automorphisms() {
        let g = families::complete(3);
        let auts = automorphism_group(&g, &Limits::default()).unwrap();
        assert_eq!(auts.order(), 6);
    }

    #[test]
    fn square_has_dihedral_symmetry() {
        let g = families::cycle(4);
        let auts = automorphism_group(&g, &Limits::default()).unwrap();
        assert_eq!(auts.order(), 8);
    }

    #[test]
    fn petersen_like_bipartite() {
        let g = families::complete_bipartite(3, 3);
        let auts = automorphism_group(&g, &Limits::default()).unwrap();
        // Two S3 factors and the part swap.
        assert_eq!(auts.order(), 72);
    }

    #[test]
    fn size_limit_is_loud() {
        let limits = Limits::default().with_max_aut_vertices(3);
        let err = automorphism_group(&families::cycle(5), &limits).unwrap_err();
        assert!(matches!(err, Error::Overflow { .. }));
    }

    #[test]
    fn k3_isomorphic_to_c3() {
        let iso = find_isomorphism(&families::complete(3), &families::cycle(3), &Limits::default())
            .unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn k3_not_isomorphic_to_p3() {
        let iso = find_isomorphism(&families::complete(3), &families::path(3), &Limits::default())
            .unwrap();
        assert!(iso.is_none());
    }

    #[test]
    fn witness_is_a_real_bijection() {
        let a = Graph::parse_edge_list("x y\ny z\nz x\nx w").unwrap();
        let b = Graph::parse_edge_list("1 2\n2 3\n3 1\n3 4").unwrap();
        let iso = find_isomorphism(&a, &b, &Limits::default()).unwrap().unwrap();
        assert_eq!(iso.len(), 4);
        for (la, lb) in &iso {
            assert!(a.vertex(la).is_some());
            assert!(b.vertex(lb).is_some());
        }
        // Edge preservation under the witness.
        let to_b: std::collections::HashMap<&str, &str> =
            iso.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        for (u, v) in a.edge_labels() {
            let bu = b.vertex(to_b[u]).unwrap();
            let bv = b.vertex(to_b[v]).unwrap();
            assert!(b.has_edge(bu, bv));
        }
    }

    #[test]
    fn automorphisms_are_canonically_ordered() {
        let g = families::cycle(5);
        let auts = automorphism_group(&g, &Limits::default()).unwrap();
        let mut sorted = auts.elements().to_vec();
        sorted.sort();
        assert_eq!(auts.elements(), &sorted[..]);
    }

    #[test]
    fn empty_graph_has_trivial_group() {
        let g = Graph::new();
        let auts = automorphism_group(&g, &Limits::default()).unwrap();
        assert_eq!(auts.order(), 1);
    }
}
