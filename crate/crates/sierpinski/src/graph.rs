use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple undirected graph with stable vertex labels.
///
/// Vertices are identified by label; indices are an internal detail and
/// follow insertion order. No loops, no parallel edges.
#[derive(Clone, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// Diameter of a graph: finite for connected graphs, infinite otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn with_vertices<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph::new();
        for l in labels {
            g.add_vertex(l.into())?;
        }
        Ok(g)
    }

    /// Builds a graph from `(u, v)` label pairs, creating vertices in
    /// first-appearance order. Duplicate edges collapse silently.
    pub fn from_edge_labels<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut g = Graph::new();
        for (a, b) in pairs {
            let u = g.ensure_vertex(a.into());
            let v = g.ensure_vertex(b.into());
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: String) -> Result<usize> {
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        Ok(self.push_vertex(label))
    }

    pub fn ensure_vertex(&mut self, label: String) -> usize {
        match self.index.get(&label) {
            Some(&i) => i,
            None => self.push_vertex(label),
        }
    }

    fn push_vertex(&mut self, label: String) -> usize {
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.adj.push(Vec::new());
        i
    }

    /// Adds an edge between existing vertices. Returns `false` when the
    /// edge was already present. Loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        assert!(u < self.order() && v < self.order(), "vertex out of range");
        if u == v {
            return Err(Error::Loop(self.labels[u].clone()));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.adj[u].sort_unstable();
        self.adj[v].sort_unstable();
        let pos = self.edges.partition_point(|&e| e < (a, b));
        self.edges.insert(pos, (a, b));
        Ok(true)
    }

    pub fn add_edge_by_labels(&mut self, a: &str, b: &str) -> Result<bool> {
        let u = self.vertex(a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
        let v = self.vertex(b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
        self.add_edge(u, v)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require_vertex(&self, label: &str) -> Result<usize> {
        self.vertex(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as normalized index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|&(u, v)| (self.label(u), self.label(v)))
    }

    /// Parses the plain edge-list format: one `u v` label pair per line,
    /// `#` starts a comment line, blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut g = Graph::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let a = it.next();
            let b = it.next();
            let rest = it.next();
            match (a, b, rest) {
                (Some(a), Some(b), None) => {
                    if a == b {
                        return Err(Error::Parse {
                            line: no + 1,
                            msg: format!("loop {a:?} {b:?} rejected: graphs are simple"),
                        });
                    }
                    let u = g.ensure_vertex(a.to_string());
                    let v = g.ensure_vertex(b.to_string());
                    g.add_edge(u, v)?;
                }
                _ => {
                    return Err(Error::Parse {
                        line: no + 1,
                        msg: format!("expected two whitespace-separated labels, got {line:?}"),
                    });
                }
            }
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[*u], self.labels[*v]));
        }
        out
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    pub fn distance_by_labels(&self, a: &str, b: &str) -> Result<Option<usize>> {
        let u = self.require_vertex(a)?;
        let v = self.require_vertex(b)?;
        Ok(self.distance(u, v))
    }

    /// The empty graph is connected by convention.
    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for s in 0..self.order() {
            for d in self.bfs_distances(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Infinite,
                }
            }
        }
        Diameter::Finite(best)
    }

    /// Length of a shortest cycle, `None` for forests.
    ///
    /// One BFS per root; a non-tree edge `{x, y}` seen from root `s`
    /// closes a walk of length `d(x) + d(y) + 1`, and the minimum over
    /// all roots and edges is attained by a shortest cycle.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.order() {
            let mut dist = vec![usize::MAX; self.order()];
            let mut parent = vec![usize::MAX; self.order()];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    }
                }
            }
            for &(u, v) in &self.edges {
                if dist[u] == usize::MAX || dist[v] == usize::MAX {
                    continue;
                }
                if parent[u] == v || parent[v] == u {
                    continue;
                }
                let c = dist[u] + dist[v] + 1;
                best = Some(best.map_or(c, |b: usize| b.min(c)));
            }
        }
        best
    }

    /// Subgraph induced on `keep` (indices into `self`), preserving labels.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new();
        let mut to_new = vec![usize::MAX; self.order()];
        for &v in keep {
            to_new[v] = g.push_vertex(self.labels[v].clone());
        }
        for &(u, v) in &self.edges {
            if to_new[u] != usize::MAX && to_new[v] != usize::MAX {
                g.add_edge(to_new[u], to_new[v]).expect("induced edge");
            }
        }
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = Graph::with_vertices(self.labels.iter().cloned()).expect("labels unique");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        for &(x, y) in &self.edges {
            if (x, y) != (a, b) {
                g.add_edge(x, y).expect("edge");
            }
        }
        g
    }

    /// Connected, at least three vertices and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.order();
        if n < 3 || !self.is_connected() {
            return false;
        }
        // Removing any single vertex must keep the rest connected.
        for v in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            if !self.induced(&keep).is_connected() {
                return false;
            }
        }
        true
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Same labeled vertex set and edge set.
    pub fn same_labeled_graph(&self, other: &Graph) -> bool {
        if self.order() != other.order() || self.size() != other.size() {
            return false;
        }
        let mut mine: Vec<&String> = self.labels.iter().collect();
        let mut theirs: Vec<&String> = other.labels.iter().collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return false;
        }
        self.edge_labels().all(|(a, b)| {
            matches!((other.vertex(a), other.vertex(b)), (Some(u), Some(v)) if other.has_edge(u, v))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.order(), self.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn parse_triangle() {
        let g = Graph::parse_edge_list("1 2\n2 3\n3 1").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 3);
        assert_eq!(g.labels(), &["1", "2", "3"]);
    }

    #[test]
    fn parse_empty_input_is_empty_graph() {
        let g = Graph::parse_edge_list("").unwrap();
        assert_eq!(g.order(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn parse_rejects_loop() {
        let err = Graph::parse_edge_list("a a").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_reports_line_number_of_malformed_line() {
        let err = Graph::parse_edge_list("a b\n# ok\nc\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn parse_collapses_duplicate_edges() {
        let g = Graph::parse_edge_list("a b\nb a\na b").unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn connectivity() {
        assert!(families::complete(3).is_connected());
        let two_triangles = Graph::parse_edge_list("1 2\n2 3\n3 1\n4 5\n5 6\n6 4").unwrap();
        assert!(!two_triangles.is_connected());
        assert!(families::path(5).is_connected());
    }

    #[test]
    fn distances_and_diameter() {
        let c4 = families::cycle(4);
        assert_eq!(c4.distance_by_labels("1", "3").unwrap(), Some(2));
        assert_eq!(c4.diameter(), Diameter::Finite(2));
        let two = Graph::parse_edge_list("1 2\n3 4").unwrap();
        assert_eq!(two.distance_by_labels("1", "3").unwrap(), None);
        assert_eq!(two.diameter(), Diameter::Infinite);
        assert!(two.distance_by_labels("1", "zzz").is_err());
    }

    #[test]
    fn girth_values() {
        assert_eq!(families::complete(4).girth(), Some(3));
        assert_eq!(families::cycle(5).girth(), Some(5));
        assert_eq!(families::path(4).girth(), None);
        assert_eq!(families::complete_bipartite(2, 3).girth(), Some(4));
        assert_eq!(families::house().girth(), Some(3));
    }

    #[test]
    fn biconnectivity() {
        assert!(families::cycle(4).is_biconnected());
        assert!(!families::path(4).is_biconnected());
        assert!(!families::two_triangles_bridge().is_biconnected());
        assert!(families::complete(4).is_biconnected());
    }
}
