//! Planarity with witnesses.
//!
//! The decision procedure embeds each biconnected block incrementally:
//! start from a cycle, then repeatedly route a path of some unembedded
//! fragment through a face whose boundary contains all of the fragment's
//! attachment vertices. A fragment with no admissible face certifies
//! non-planarity. Block embeddings merge at cut vertices into a rotation
//! system for the whole graph; for a non-planar graph a Kuratowski
//! subgraph is extracted by deleting every edge whose removal keeps the
//! graph non-planar.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

type Dart = (usize, usize);

/// Cyclic orders of neighbors around every vertex, witnessing an
/// embedding. Face tracing follows `(u, v)` with `(v, w)` where `w`
/// precedes `u` in the rotation at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> Self {
        RotationSystem { order }
    }

    pub fn neighbors_around(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn order(&self) -> &[Vec<usize>] {
        &self.order
    }

    /// Every incident edge must appear exactly once around each endpoint.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.order.len() != g.order() {
            return Err(Error::InvalidArgument("rotation has wrong vertex count".into()));
        }
        for v in 0..g.order() {
            let mut rot = self.order[v].clone();
            rot.sort_unstable();
            if rot != g.neighbors(v) {
                return Err(Error::InvalidArgument(format!(
                    "rotation at {:?} does not list its neighbors exactly once",
                    g.label(v)
                )));
            }
        }
        Ok(())
    }

    /// Traces all faces; isolated vertices are not represented here.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = self.order.len();
        let mut pos: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for v in 0..n {
            for (i, &w) in self.order[v].iter().enumerate() {
                pos[v].insert(w, i);
            }
        }
        let mut seen: BTreeMap<Dart, bool> = BTreeMap::new();
        let mut faces = Vec::new();
        for u in 0..n {
            for &v in &self.order[u] {
                if seen.contains_key(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    face.push((a, b));
                    seen.insert((a, b), true);
                    let i = pos[b][&a];
                    let deg = self.order[b].len();
                    let w = self.order[b][(i + deg - 1) % deg];
                    a = b;
                    b = w;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// True iff every connected component satisfies `V - E + F = 2` under
    /// this rotation, i.e. the rotation witnesses a genus-0 embedding.
    /// Isolated vertices count one face of their own.
    pub fn is_spherical(&self, g: &Graph) -> bool {
        if self.validate(g).is_err() {
            return false;
        }
        let n = g.order();
        let comp = components(g);
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut v_cnt = vec![0isize; ncomp];
        let mut e_cnt = vec![0isize; ncomp];
        let mut f_cnt = vec![0isize; ncomp];
        for v in 0..n {
            v_cnt[comp[v]] += 1;
            if g.degree(v) == 0 {
                f_cnt[comp[v]] += 1;
            }
        }
        for &(u, _) in g.edges() {
            e_cnt[comp[u]] += 1;
        }
        for face in self.faces() {
            f_cnt[comp[face[0].0]] += 1;
        }
        (0..ncomp).all(|c| v_cnt[c] - e_cnt[c] + f_cnt[c] == 2)
    }

    pub fn as_labels(&self, g: &Graph) -> Vec<(String, Vec<String>)> {
        (0..g.order())
            .map(|v| {
                (
                    g.label(v).to_string(),
                    self.order[v].iter().map(|&w| g.label(w).to_string()).collect(),
                )
            })
            .collect()
    }
}

fn components(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        comp[s] = next;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Result of the planarity decision, with a witness either way.
#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(&self) -> Option<&RotationSystem> {
        match self {
            Planarity::Planar(r) => Some(r),
            Planarity::NonPlanar(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&KuratowskiWitness> {
        match self {
            Planarity::Planar(_) => None,
            Planarity::NonPlanar(w) => Some(w),
        }
    }
}

/// Edges of a subgraph that is a subdivision of K5 or K3,3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub edges: Vec<(String, String)>,
}

/// Deterministic planarity test with an embedding or Kuratowski witness.
pub fn is_planar(g: &Graph) -> Planarity {
    match planar_embedding(g) {
        Some(rs) => Planarity::Planar(rs),
        None => Planarity::NonPlanar(kuratowski_witness(g)),
    }
}

/// The embedding half of [`is_planar`]; `None` means non-planar.
pub fn planar_embedding(g: &Graph) -> Option<RotationSystem> {
    let n = g.order();
    let mut merged: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let rotations = embed_block(&block)?;
        for (v, rot) in rotations {
            merged[v].extend(rot);
        }
    }
    let rs = RotationSystem::new(merged);
    debug_assert!(rs.is_spherical(g));
    Some(rs)
}

/// Keeps deleting edges whose removal leaves the graph non-planar; what
/// remains is a Kuratowski subdivision.
fn kuratowski_witness(g: &Graph) -> KuratowskiWitness {
    let mut kept: Vec<(usize, usize)> = g.edges().to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if planar_embedding(&graph_from_edges(g, &trial)).is_none() {
            kept = trial;
        } else {
            i += 1;
        }
    }
    KuratowskiWitness {
        edges: kept
            .into_iter()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect(),
    }
}

fn graph_from_edges(g: &Graph, edges: &[(usize, usize)]) -> Graph {
    let mut out = Graph::with_vertices(g.labels().iter().cloned()).expect("labels unique");
    for &(u, v) in edges {
        out.add_edge(u, v).expect("edge");
    }
    out
}

/// Biconnected components as edge lists (lowpoint algorithm, iterative).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.order();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut time = 1usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != 0 {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == 0 {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut blk = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            blk.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(blk);
                    }
                }
            }
        }
    }
    out
}

struct BlockGraph {
    vertices: Vec<usize>,
    adj: BTreeMap<usize, Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl BlockGraph {
    fn new(edges: &[(usize, usize)]) -> Self {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut norm_edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
            norm_edges.push(norm(u, v));
        }
        for nb in adj.values_mut() {
            nb.sort_unstable();
        }
        norm_edges.sort_unstable();
        let vertices = adj.keys().copied().collect();
        BlockGraph { vertices, adj, edges: norm_edges }
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Embeds one biconnected block; returns per-vertex rotations or `None`
/// when the block is non-planar.
fn embed_block(block_edges: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    let bg = BlockGraph::new(block_edges);
    if bg.edges.len() == 1 {
        let (u, v) = bg.edges[0];
        return Some(vec![(u, vec![v]), (v, vec![u])]);
    }
    let nb = bg.vertices.len();
    if bg.edges.len() > 3 * nb - 6 {
        return None;
    }

    let cycle = initial_cycle(&bg);
    let mut embedded_v: BTreeMap<usize, bool> =
        bg.vertices.iter().map(|&v| (v, false)).collect();
    let mut embedded_e: BTreeMap<(usize, usize), bool> =
        bg.edges.iter().map(|&e| (e, false)).collect();
    for &v in &cycle {
        embedded_v.insert(v, true);
    }
    for k in 0..cycle.len() {
        embedded_e.insert(norm(cycle[k], cycle[(k + 1) % cycle.len()]), true);
    }
    let forward: Vec<Dart> = (0..cycle.len())
        .map(|k| (cycle[k], cycle[(k + 1) % cycle.len()]))
        .collect();
    let backward: Vec<Dart> = (0..cycle.len())
        .rev()
        .map(|k| (cycle[(k + 1) % cycle.len()], cycle[k]))
        .collect();
    let mut faces: Vec<Vec<Dart>> = vec![forward, backward];

    while embedded_e.values().any(|&done| !done) {
        let fragments = find_fragments(&bg, &embedded_v, &embedded_e);
        debug_assert!(!fragments.is_empty());

        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| {
                    frag.attachments
                        .iter()
                        .all(|a| face.iter().any(|d| d.0 == *a))
                })
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("some fragment remains");
        let path = fragment_path(&bg, &fragments[fi], &embedded_v);

        for w in path.iter() {
            embedded_v.insert(*w, true);
        }
        for k in 0..path.len() - 1 {
            embedded_e.insert(norm(path[k], path[k + 1]), true);
        }

        let face = faces[face_idx].clone();
        let i = face.iter().position(|d| d.0 == path[0]).expect("attachment on face");
        let j = face
            .iter()
            .position(|d| d.0 == *path.last().unwrap())
            .expect("attachment on face");
        let len = face.len();
        let take = |from: usize, to: usize| -> Vec<Dart> {
            let mut out = Vec::new();
            let mut k = from;
            while k != to {
                out.push(face[k]);
                k = (k + 1) % len;
            }
            out
        };
        let mut f1 = take(i, j);
        f1.extend(path.windows(2).rev().map(|w| (w[1], w[0])));
        let mut f2 = take(j, i);
        f2.extend(path.windows(2).map(|w| (w[0], w[1])));
        faces[face_idx] = f1;
        faces.push(f2);
    }

    Some(rotations_from_faces(&bg, &faces))
}

/// Any cycle through the block, found by depth-first search.
fn initial_cycle(bg: &BlockGraph) -> Vec<usize> {
    let start = bg.vertices[0];
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut order: BTreeMap<usize, usize> = BTreeMap::new();
    let mut stack = vec![start];
    parent.insert(start, usize::MAX);
    order.insert(start, 0);
    let mut time = 1;
    while let Some(v) = stack.pop() {
        for &w in &bg.adj[&v] {
            if !order.contains_key(&w) {
                parent.insert(w, v);
                order.insert(w, time);
                time += 1;
                stack.push(w);
            } else if parent[&v] != w && parent[&w] != v {
                // Non-tree edge: close a cycle through the lowest common
                // ancestor of v and w in the search tree.
                let mut chain_v = vec![v];
                let mut x = v;
                while parent[&x] != usize::MAX {
                    x = parent[&x];
                    chain_v.push(x);
                }
                let mut chain_w = vec![w];
                let mut y = w;
                while !chain_v.contains(&y) {
                    y = parent[&y];
                    chain_w.push(y);
                }
                let lca_pos = chain_v.iter().position(|&t| t == y).unwrap();
                let mut cycle = chain_v[..=lca_pos].to_vec();
                cycle.extend(chain_w[..chain_w.len() - 1].iter().rev());
                return cycle;
            }
        }
    }
    unreachable!("a biconnected block with two or more edges contains a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior (unembedded) vertices; empty for a chord fragment.
    interior: Vec<usize>,
    /// Set when the fragment is a single embedded-to-embedded edge.
    chord: Option<(usize, usize)>,
}

fn find_fragments(
    bg: &BlockGraph,
    embedded_v: &BTreeMap<usize, bool>,
    embedded_e: &BTreeMap<(usize, usize), bool>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    let mut seen: BTreeMap<usize, bool> = BTreeMap::new();
    for &s in &bg.vertices {
        if embedded_v[&s] || *seen.get(&s).unwrap_or(&false) {
            continue;
        }
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        seen.insert(s, true);
        while let Some(u) = queue.pop_front() {
            for &w in &bg.adj[&u] {
                if !embedded_v[&w] && !*seen.get(&w).unwrap_or(&false) {
                    seen.insert(w, true);
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        let mut attachments: Vec<usize> = Vec::new();
        for &u in &comp {
            for &w in &bg.adj[&u] {
                if embedded_v[&w] && !attachments.contains(&w) {
                    attachments.push(w);
                }
            }
        }
        attachments.sort_unstable();
        comp.sort_unstable();
        fragments.push(Fragment { attachments, interior: comp, chord: None });
    }
    for (&(u, v), &done) in embedded_e {
        if !done && embedded_v[&u] && embedded_v[&v] {
            fragments.push(Fragment {
                attachments: vec![u, v],
                interior: vec![],
                chord: Some((u, v)),
            });
        }
    }
    fragments
}

/// A path between two distinct attachment vertices whose interior lies in
/// the fragment.
fn fragment_path(
    bg: &BlockGraph,
    frag: &Fragment,
    embedded_v: &BTreeMap<usize, bool>,
) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a1 = frag.attachments[0];
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &w in &bg.adj[&a1] {
        if frag.interior.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, a1);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in &bg.adj[&u] {
            if embedded_v[&w] && w != a1 && frag.attachments.contains(&w) {
                let mut path = vec![w, u];
                let mut x = u;
                while x != a1 {
                    x = parent[&x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            if !embedded_v[&w] && frag.interior.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("every fragment in a biconnected block joins two attachments")
}

/// Recovers rotations from the face set: if `(u, v)` is followed by
/// `(v, w)` in a face, then `u` follows `w` in the rotation at `v`.
fn rotations_from_faces(bg: &BlockGraph, faces: &[Vec<Dart>]) -> Vec<(usize, Vec<usize>)> {
    let mut succ: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for face in faces {
        for k in 0..face.len() {
            let (u, v) = face[k];
            let (_, w) = face[(k + 1) % face.len()];
            succ.entry(v).or_default().insert(w, u);
        }
    }
    let mut out = Vec::new();
    for &v in &bg.vertices {
        let next = &succ[&v];
        let start = *next.keys().next().expect("vertex has neighbors");
        let mut rot = vec![start];
        let mut cur = next[&start];
        while cur != start {
            rot.push(cur);
            cur = next[&cur];
        }
        debug_assert_eq!(rot.len(), bg.adj[&v].len());
        out.push((v, rot));
    }
    out
}
