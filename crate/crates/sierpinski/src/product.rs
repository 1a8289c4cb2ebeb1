//! The Sierpinski product of graphs: one copy of the right factor per
//! vertex of the left factor, copies joined by one edge per left-factor
//! edge, with the attachment points chosen by a vertex map.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_SEPARATOR: &str = ".";

/// A total function from the vertices of a source graph to the vertices
/// of a target graph, stored over source indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    table: Vec<usize>,
    target_order: usize,
}

impl VertexMap {
    pub fn from_indices(table: Vec<usize>, target_order: usize) -> Result<Self> {
        if let Some(&bad) = table.iter().find(|&&t| t >= target_order) {
            return Err(Error::InvalidArgument(format!(
                "image index {bad} out of range for target of order {target_order}"
            )));
        }
        Ok(VertexMap { table, target_order })
    }

    /// The identity on labels; every source label must exist in the target.
    pub fn identity(source: &Graph, target: &Graph) -> Result<Self> {
        let table = source
            .labels()
            .iter()
            .map(|l| target.require_vertex(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexMap { table, target_order: target.order() })
    }

    pub fn from_label_pairs<'a, I>(source: &Graph, target: &Graph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut table = vec![usize::MAX; source.order()];
        for (a, b) in pairs {
            let u = source.require_vertex(a)?;
            let v = target.require_vertex(b)?;
            if table[u] != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "source vertex {a:?} mapped twice"
                )));
            }
            table[u] = v;
        }
        if let Some(missing) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::MapNotTotal(source.label(missing).to_string()));
        }
        Ok(VertexMap { table, target_order: target.order() })
    }

    /// Parses the map file format: lines `g h`, `#` comments; every source
    /// vertex must be covered exactly once.
    pub fn parse(text: &str, source: &Graph, target: &Graph) -> Result<Self> {
        let mut pairs = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => pairs.push((a, b)),
                _ => {
                    return Err(Error::Parse {
                        line: no + 1,
                        msg: format!("expected two labels, got {line:?}"),
                    })
                }
            }
        }
        Self::from_label_pairs(source, target, pairs)
    }

    pub fn source_order(&self) -> usize {
        self.table.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn apply(&self, source_index: usize) -> usize {
        self.table[source_index]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_bijection(&self) -> bool {
        if self.table.len() != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    /// True iff distinct neighbors of any vertex always get distinct images.
    pub fn is_locally_injective(&self, source: &Graph) -> bool {
        assert_eq!(self.table.len(), source.order());
        for g in 0..source.order() {
            let nb = source.neighbors(g);
            for (k, &g1) in nb.iter().enumerate() {
                for &g2 in &nb[k + 1..] {
                    if self.table[g1] == self.table[g2] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn as_label_pairs(&self, source: &Graph, target: &Graph) -> Vec<(String, String)> {
        self.table
            .iter()
            .enumerate()
            .map(|(g, &h)| (source.label(g).to_string(), target.label(h).to_string()))
            .collect()
    }
}

/// Which side of the fundamental edge partition an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Inner,
    Connecting,
}

/// Factor structure behind a product graph.
#[derive(Clone, Debug)]
pub enum ProductKind {
    /// A one-factor chain: the graph itself, no connecting edges.
    Single,
    Pair(Box<PairData>),
}

#[derive(Clone, Debug)]
pub struct PairData {
    pub left: Graph,
    pub right: Graph,
    pub map: VertexMap,
    pub separator: String,
    /// `copies[g]` lists product indices of the copy of the right factor
    /// sitting over left vertex `g`, in right-factor vertex order.
    pub copies: Vec<Vec<usize>>,
}

/// A product graph together with its embedding of the left factor and
/// the inner/connecting edge partition.
#[derive(Clone, Debug)]
pub struct ProductResult {
    pub graph: Graph,
    /// Embedding of the outermost factor: `phi[g]` is the product vertex
    /// `(g, f(g))`.
    pub phi: Vec<usize>,
    inner: BTreeSet<(usize, usize)>,
    connecting: BTreeSet<(usize, usize)>,
    pub kind: ProductKind,
}

impl ProductResult {
    fn single(g: &Graph) -> ProductResult {
        ProductResult {
            graph: g.clone(),
            phi: (0..g.order()).collect(),
            inner: g.edges().iter().copied().collect(),
            connecting: BTreeSet::new(),
            kind: ProductKind::Single,
        }
    }

    pub fn inner_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.inner
    }

    pub fn connecting_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.connecting
    }

    pub fn classify_edge(&self, u: usize, v: usize) -> Result<EdgeClass> {
        let key = if u < v { (u, v) } else { (v, u) };
        if self.inner.contains(&key) {
            Ok(EdgeClass::Inner)
        } else if self.connecting.contains(&key) {
            Ok(EdgeClass::Connecting)
        } else {
            Err(Error::UnknownEdge(
                self.graph.label(u).to_string(),
                self.graph.label(v).to_string(),
            ))
        }
    }

    pub fn classify_edge_by_labels(&self, a: &str, b: &str) -> Result<EdgeClass> {
        let u = self.graph.require_vertex(a)?;
        let v = self.graph.require_vertex(b)?;
        self.classify_edge(u, v)
    }

    pub fn pair(&self) -> Result<&PairData> {
        match &self.kind {
            ProductKind::Pair(p) => Ok(p),
            ProductKind::Single => Err(Error::InvalidArgument(
                "operation needs a product of at least two factors".into(),
            )),
        }
    }

    /// Embedding as label pairs `(g, phi(g))` of the outermost factor.
    pub fn phi_label_pairs(&self) -> Vec<(String, String)> {
        let outer_labels: Vec<String> = match &self.kind {
            ProductKind::Single => self.graph.labels().to_vec(),
            ProductKind::Pair(p) => p.left.labels().to_vec(),
        };
        self.phi
            .iter()
            .enumerate()
            .map(|(g, &v)| (outer_labels[g].clone(), self.graph.label(v).to_string()))
            .collect()
    }
}

/// Factor labels must not contain the separator (an empty separator
/// needs single-character labels), so composite words split back
/// unambiguously. Accumulated chain products are exempt on the right:
/// their labels are already composite.
fn check_factor_labels(g: &Graph, separator: &str) -> Result<()> {
    if separator.is_empty() {
        for l in g.labels() {
            if l.chars().count() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "empty separator needs single-character labels, found {l:?}"
                )));
            }
        }
    } else {
        for l in g.labels() {
            if l.contains(separator) {
                return Err(Error::InvalidArgument(format!(
                    "label {l:?} contains the separator {separator:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Builds the product of `left` and `right` under `map`, with composite
/// vertex labels joined by `separator`.
pub fn sierpinski_product_with(
    left: &Graph,
    right: &Graph,
    map: &VertexMap,
    separator: &str,
) -> Result<ProductResult> {
    check_factor_labels(right, separator)?;
    build_product(left, right, map, separator)
}

fn build_product(
    left: &Graph,
    right: &Graph,
    map: &VertexMap,
    separator: &str,
) -> Result<ProductResult> {
    if map.source_order() != left.order() || map.target_order() != right.order() {
        return Err(Error::ArityMismatch(format!(
            "map is {} -> {} but factors have orders {} and {}",
            map.source_order(),
            map.target_order(),
            left.order(),
            right.order()
        )));
    }
    check_factor_labels(left, separator)?;

    let n_right = right.order();
    let mut graph = Graph::new();
    let mut copies = Vec::with_capacity(left.order());
    for g in 0..left.order() {
        let mut copy = Vec::with_capacity(n_right);
        for h in 0..n_right {
            let label = format!("{}{}{}", left.label(g), separator, right.label(h));
            copy.push(graph.add_vertex(label)?);
        }
        copies.push(copy);
    }

    let mut inner = BTreeSet::new();
    for g in 0..left.order() {
        for &(h1, h2) in right.edges() {
            let (u, v) = (copies[g][h1], copies[g][h2]);
            graph.add_edge(u, v)?;
            inner.insert(if u < v { (u, v) } else { (v, u) });
        }
    }

    let mut connecting = BTreeSet::new();
    for &(g1, g2) in left.edges() {
        let u = copies[g1][map.apply(g2)];
        let v = copies[g2][map.apply(g1)];
        graph.add_edge(u, v)?;
        connecting.insert(if u < v { (u, v) } else { (v, u) });
    }

    let phi = (0..left.order()).map(|g| copies[g][map.apply(g)]).collect();

    Ok(ProductResult {
        graph,
        phi,
        inner,
        connecting,
        kind: ProductKind::Pair(Box::new(PairData {
            left: left.clone(),
            right: right.clone(),
            map: map.clone(),
            separator: separator.to_string(),
            copies,
        })),
    })
}

pub fn sierpinski_product(left: &Graph, right: &Graph, map: &VertexMap) -> Result<ProductResult> {
    sierpinski_product_with(left, right, map, DEFAULT_SEPARATOR)
}

/// A multi-factor product specification. `factors[0]` is the outermost
/// factor; `maps[i]` sends vertices of `factors[i]` to `factors[i + 1]`.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    factors: Vec<Graph>,
    maps: Vec<VertexMap>,
    separator: String,
}

impl ChainSpec {
    pub fn new(factors: Vec<Graph>, maps: Vec<VertexMap>, separator: &str) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a chain needs at least one factor".into()));
        }
        if maps.len() + 1 != factors.len() {
            return Err(Error::ArityMismatch(format!(
                "{} factors need {} maps, got {}",
                factors.len(),
                factors.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source_order() != factors[i].order() || m.target_order() != factors[i + 1].order()
            {
                return Err(Error::ArityMismatch(format!(
                    "map {} is {} -> {} but joins factors of orders {} and {}",
                    i,
                    m.source_order(),
                    m.target_order(),
                    factors[i].order(),
                    factors[i + 1].order()
                )));
            }
        }
        Ok(ChainSpec { factors, maps, separator: separator.to_string() })
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn maps(&self) -> &[VertexMap] {
        &self.maps
    }

    pub fn separator(&self) -> &str {
        &self.separator
    }
}

/// Left-nested chain product. The product is not associative, so this is
/// the only association offered: each step multiplies the next factor
/// onto the product built so far, attaching through the stored embedding.
pub fn chain_product(spec: &ChainSpec) -> Result<ProductResult> {
    let m = spec.factors.len();
    if m == 1 {
        return Ok(ProductResult::single(&spec.factors[0]));
    }
    for f in &spec.factors {
        check_factor_labels(f, &spec.separator)?;
    }
    let mut acc = build_product(
        &spec.factors[m - 2],
        &spec.factors[m - 1],
        &spec.maps[m - 2],
        &spec.separator,
    )?;
    for i in (0..m - 2).rev() {
        let lifted = VertexMap::from_indices(
            spec.maps[i].table().iter().map(|&t| acc.phi[t]).collect(),
            acc.graph.order(),
        )?;
        acc = build_product(&spec.factors[i], &acc.graph, &lifted, &spec.separator)?;
    }
    Ok(acc)
}

/// The n-th generalized Sierpinski graph of `g`: the n-fold chain of `g`
/// with identity maps.
pub fn generalized_sierpinski(g: &Graph, n: usize) -> Result<ProductResult> {
    generalized_sierpinski_with(g, n, DEFAULT_SEPARATOR)
}

pub fn generalized_sierpinski_with(g: &Graph, n: usize, separator: &str) -> Result<ProductResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("iteration count must be at least 1".into()));
    }
    let id = VertexMap::from_indices((0..g.order()).collect(), g.order())?;
    let spec = ChainSpec::new(vec![g.clone(); n], vec![id; n - 1], separator)?;
    chain_product(&spec)
}

/// Closed-form order and size of a chain product, never building the
/// graph. Neither count depends on the maps.
pub fn predicted_counts(spec: &ChainSpec) -> (u128, u128) {
    let mut order: u128 = 1;
    let mut size: u128 = 0;
    for f in &spec.factors {
        size += order * f.size() as u128;
        order *= f.order() as u128;
    }
    (order, size)
}
