//! Symmetry structure of Sierpinski products: the subgroup of
//! automorphisms preserving the inner/connecting edge partition, lifts of
//! factor automorphisms, per-copy automorphisms and their direct product,
//! diagonal lifts, the semidirect decomposition for self-products under
//! automorphism maps, and an exhaustive small-instance counterexample
//! scanner.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aut::automorphism_group;
use crate::enumerate::{biconnected_graphs, connected_graphs};
use crate::error::{Error, Result};
use crate::families;
use crate::graph::Graph;
use crate::graph6;
use crate::limits::Limits;
use crate::perm::{check_semidirect, PermGroup, Permutation};
use crate::product::{sierpinski_product, PairData, ProductResult, VertexMap};

/// A lift specification: an automorphism of the left factor plus one
/// right-factor automorphism per copy. The lift sends `(g, h)` to
/// `(base(g), per_copy[g](h))`.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    pub base: Permutation,
    pub per_copy: Vec<Permutation>,
}

impl LiftSpec {
    pub fn constant(base: Permutation, beta: Permutation, copies: usize) -> Self {
        LiftSpec { base, per_copy: vec![beta; copies] }
    }
}

fn pair_of(product: &ProductResult) -> Result<&PairData> {
    product.pair()
}

/// Position lookup: product vertex -> (copy, position inside copy).
fn copy_positions(pair: &PairData, order: usize) -> Vec<(usize, usize)> {
    let mut pos = vec![(usize::MAX, usize::MAX); order];
    for (g, copy) in pair.copies.iter().enumerate() {
        for (h, &v) in copy.iter().enumerate() {
            pos[v] = (g, h);
        }
    }
    pos
}

fn maps_edge_set_into(
    p: &Permutation,
    edges: &BTreeSet<(usize, usize)>,
    target: &BTreeSet<(usize, usize)>,
) -> bool {
    edges.iter().all(|&(u, v)| {
        let (a, b) = (p.apply(u), p.apply(v));
        target.contains(&if a < b { (a, b) } else { (b, a) })
    })
}

/// Whether an automorphism of the product graph maps inner edges to
/// inner edges and connecting edges to connecting edges. Errors when the
/// permutation is not an automorphism at all.
pub fn respects_partition(p: &Permutation, product: &ProductResult) -> Result<bool> {
    if !p.is_automorphism_of(&product.graph) {
        return Err(Error::NotAnAutomorphism);
    }
    Ok(maps_edge_set_into(p, product.inner_edges(), product.inner_edges())
        && maps_edge_set_into(p, product.connecting_edges(), product.connecting_edges()))
}

/// The raw bijection `(g, h) -> (base(g), per_copy[g](h))`, with no
/// compatibility check. Always a bijection.
pub fn lift_bijection(spec: &LiftSpec, product: &ProductResult) -> Result<Permutation> {
    let pair = pair_of(product)?;
    let n_left = pair.left.order();
    if spec.base.degree() != n_left || spec.per_copy.len() != n_left {
        return Err(Error::ArityMismatch("lift does not fit the left factor".into()));
    }
    if spec.per_copy.iter().any(|b| b.degree() != pair.right.order()) {
        return Err(Error::ArityMismatch("per-copy map does not fit the right factor".into()));
    }
    let mut images = vec![0; product.graph.order()];
    for g in 0..n_left {
        for h in 0..pair.right.order() {
            images[pair.copies[g][h]] = pair.copies[spec.base.apply(g)][spec.per_copy[g].apply(h)];
        }
    }
    Permutation::from_images(images)
}

/// Builds the lift when it is an automorphism: the compatibility
/// condition `f(base(g1)) = per_copy[g](f(g1))` must hold for every `g`
/// and every neighbor `g1` of `g`. Errors when the base map is not an
/// automorphism of the left factor or some per-copy map is not an
/// automorphism of the right factor.
pub fn make_lift(spec: &LiftSpec, product: &ProductResult) -> Result<Option<Permutation>> {
    let pair = pair_of(product)?;
    if !spec.base.is_automorphism_of(&pair.left) {
        return Err(Error::NotAnAutomorphism);
    }
    for beta in &spec.per_copy {
        if !beta.is_automorphism_of(&pair.right) {
            return Err(Error::NotAnAutomorphism);
        }
    }
    let raw = lift_bijection(spec, product)?;
    let f = &pair.map;
    for g in 0..pair.left.order() {
        for &g1 in pair.left.neighbors(g) {
            if f.apply(spec.base.apply(g1)) != spec.per_copy[g].apply(f.apply(g1)) {
                return Ok(None);
            }
        }
    }
    debug_assert!(respects_partition(&raw, product).unwrap_or(false));
    Ok(Some(raw))
}

/// The automorphism acting as `beta` inside the copy over `g_label` and
/// as the identity elsewhere; exists iff `beta` fixes the image of the
/// neighborhood of `g` pointwise.
pub fn make_copy_automorphism(
    g_label: &str,
    beta: &Permutation,
    product: &ProductResult,
) -> Result<Option<Permutation>> {
    let pair = pair_of(product)?;
    let g = pair.left.require_vertex(g_label)?;
    if !beta.is_automorphism_of(&pair.right) {
        return Err(Error::NotAnAutomorphism);
    }
    for &g1 in pair.left.neighbors(g) {
        let anchor = pair.map.apply(g1);
        if beta.apply(anchor) != anchor {
            return Ok(None);
        }
    }
    let mut images: Vec<usize> = (0..product.graph.order()).collect();
    for h in 0..pair.right.order() {
        images[pair.copies[g][h]] = pair.copies[g][beta.apply(h)];
    }
    let p = Permutation::from_images(images)?;
    debug_assert!(respects_partition(&p, product).unwrap_or(false));
    Ok(Some(p))
}

/// Pointwise stabilizer of the anchor set `f(N(g))` inside the
/// right-factor automorphism group.
fn anchor_stabilizer(pair: &PairData, aut_right: &PermGroup, g: usize) -> Vec<Permutation> {
    let anchors: BTreeSet<usize> =
        pair.left.neighbors(g).iter().map(|&g1| pair.map.apply(g1)).collect();
    aut_right
        .elements()
        .iter()
        .filter(|b| anchors.iter().all(|&a| b.apply(a) == a))
        .cloned()
        .collect()
}

/// Group generated by all per-copy automorphisms. It is the direct
/// product of the per-copy anchor stabilizers, so its order is checked
/// against the product of the stabilizer orders.
pub fn per_copy_group(product: &ProductResult, limits: &Limits) -> Result<PermGroup> {
    let pair = pair_of(product)?;
    let aut_right = automorphism_group(&pair.right, limits)?;
    let mut expected: u128 = 1;
    let mut generators = Vec::new();
    for g in 0..pair.left.order() {
        let stab = anchor_stabilizer(pair, &aut_right, g);
        expected *= stab.len() as u128;
        for beta in stab {
            let phi = make_copy_automorphism(pair.left.label(g), &beta, product)?
                .expect("stabilizer elements fix all anchors");
            generators.push(phi);
        }
    }
    if expected > limits.max_group_order as u128 {
        return Err(Error::Overflow {
            what: "per-copy group".into(),
            limit: limits.max_group_order,
        });
    }
    let group = PermGroup::closure(product.graph.order(), &generators, limits)?;
    assert_eq!(group.order() as u128, expected, "per-copy group is a direct product");
    Ok(group)
}

/// Diagonal lifts: for each automorphism `a` of the left factor, the
/// constant lift with per-copy map `f ∘ a ∘ f⁻¹`. Defined when the map
/// is a bijection; kept when the conjugate is an automorphism of the
/// right factor (then the lift always preserves edges). When both
/// factors are the same graph and the map itself is an automorphism,
/// every left automorphism survives.
pub fn diagonal_group(product: &ProductResult, limits: &Limits) -> Result<PermGroup> {
    let pair = pair_of(product)?;
    if !pair.map.is_bijection() {
        return Err(Error::MapNotBijective);
    }
    let aut_left = automorphism_group(&pair.left, limits)?;
    let f = pair.map.table();
    let mut f_inv = vec![0; f.len()];
    for (i, &t) in f.iter().enumerate() {
        f_inv[t] = i;
    }
    let mut elements = Vec::new();
    for alpha in aut_left.elements() {
        let beta_images: Vec<usize> = (0..f.len()).map(|h| f[alpha.apply(f_inv[h])]).collect();
        let beta = Permutation::from_images(beta_images)?;
        if !beta.is_automorphism_of(&pair.right) {
            continue;
        }
        let spec = LiftSpec::constant(alpha.clone(), beta, pair.left.order());
        let lift = make_lift(&spec, product)?.expect("conjugate lifts satisfy compatibility");
        elements.push(lift);
    }
    let group = PermGroup::from_elements(product.graph.order(), elements);
    let f_perm = Permutation::from_images(f.to_vec())?;
    if pair.left.same_labeled_graph(&pair.right) && f_perm.is_automorphism_of(&pair.left) {
        assert_eq!(group.order(), aut_left.order(), "every automorphism lifts diagonally");
    }
    Ok(group)
}

/// Projection of a partition-preserving automorphism to the left factor:
/// the permutation of copies it induces.
pub fn project_to_base(p: &Permutation, product: &ProductResult) -> Result<Permutation> {
    let pair = pair_of(product)?;
    if !respects_partition(p, product)? {
        return Err(Error::InvalidArgument(
            "automorphism does not preserve the edge partition".into(),
        ));
    }
    let pos = copy_positions(pair, product.graph.order());
    let mut images = vec![usize::MAX; pair.left.order()];
    for g in 0..pair.left.order() {
        let mut target = usize::MAX;
        for h in 0..pair.right.order() {
            let (tg, _) = pos[p.apply(pair.copies[g][h])];
            if target == usize::MAX {
                target = tg;
            } else if target != tg {
                return Err(Error::InvalidArgument(
                    "automorphism scatters a copy across several copies".into(),
                ));
            }
        }
        images[g] = target;
    }
    let gamma = Permutation::from_images(images)?;
    assert!(gamma.is_automorphism_of(&pair.left), "projection is an automorphism");
    Ok(gamma)
}

/// The symmetry groups of a product.
#[derive(Clone, Debug)]
pub struct SymmetryGroups {
    /// Full automorphism group of the product graph.
    pub full: PermGroup,
    /// Automorphisms preserving the inner/connecting partition.
    pub partition_preserving: PermGroup,
    /// Direct product of per-copy anchor stabilizers.
    pub per_copy: PermGroup,
    /// Diagonal lifts; present when the map is a bijection.
    pub diagonal: Option<PermGroup>,
}

impl SymmetryGroups {
    pub fn partition_is_everything(&self) -> bool {
        self.partition_preserving.order() == self.full.order()
    }

    /// Some automorphism breaking the partition, if one exists.
    pub fn partition_breaking_witness(&self) -> Option<&Permutation> {
        self.full
            .elements()
            .iter()
            .find(|p| !self.partition_preserving.contains(p))
    }
}

/// Computes all symmetry groups of a two-factor product.
pub fn symmetry_groups(product: &ProductResult, limits: &Limits) -> Result<SymmetryGroups> {
    let pair = pair_of(product)?;
    let full = automorphism_group(&product.graph, limits)?;
    let preserving: Vec<Permutation> = full
        .elements()
        .iter()
        .filter(|p| {
            maps_edge_set_into(p, product.inner_edges(), product.inner_edges())
                && maps_edge_set_into(p, product.connecting_edges(), product.connecting_edges())
        })
        .cloned()
        .collect();
    let partition_preserving = PermGroup::from_elements(product.graph.order(), preserving);
    let per_copy = per_copy_group(product, limits)?;
    debug_assert!(per_copy.is_subgroup_of(&partition_preserving));
    let diagonal = if pair.map.is_bijection() {
        let d = diagonal_group(product, limits)?;
        debug_assert!(d.is_subgroup_of(&partition_preserving));
        Some(d)
    } else {
        None
    };
    Ok(SymmetryGroups { full, partition_preserving, per_copy, diagonal })
}

/// Sound sufficient check that every automorphism preserves the
/// partition: refinement colors are automorphism-invariant, so if no
/// inner edge shares its endpoint-color signature with a connecting
/// edge, no automorphism can exchange the classes. May return false
/// negatives, never false positives.
pub fn partition_forced_by_colors(product: &ProductResult) -> bool {
    let colors = crate::aut::stable_colors(&product.graph);
    let sig = |(u, v): &(usize, usize)| {
        let (a, b) = (colors[*u], colors[*v]);
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let inner: BTreeSet<(usize, usize)> = product.inner_edges().iter().map(sig).collect();
    product.connecting_edges().iter().all(|e| !inner.contains(&sig(e)))
}

/// Cases in which every automorphism of the product must preserve the
/// partition, decided from the factors alone.
pub fn partition_forced_case(product: &ProductResult) -> Result<Option<&'static str>> {
    let pair = pair_of(product)?;
    let (g, h, f) = (&pair.left, &pair.right, &pair.map);
    if !g.is_connected() || !h.is_connected() {
        return Ok(None);
    }
    let f_perm = f.is_bijection().then(|| Permutation::from_images(f.table().to_vec()).unwrap());
    if g.same_labeled_graph(h)
        && !g.labels().is_empty()
        && g.degree_sequence().windows(2).all(|w| w[0] == w[1])
        && g.girth() != Some(3)
        && f_perm.as_ref().is_some_and(|p| p.is_automorphism_of(g))
    {
        return Ok(Some("regular-triangle-free-self-product"));
    }
    let bridgeless = |x: &Graph| {
        x.edges()
            .iter()
            .all(|&(u, v)| x.without_edge(u, v).distance(u, v).is_some())
    };
    let tree = g.is_connected() && g.girth().is_none();
    if tree && bridgeless(h) && h.size() > 0 {
        return Ok(Some("tree-base-bridgeless-fiber"));
    }
    if let Some(c) = g.girth() {
        let max_edge_cycle = h
            .edges()
            .iter()
            .map(|&(u, v)| h.without_edge(u, v).distance(u, v).map(|d| d + 1))
            .collect::<Option<Vec<usize>>>()
            .map(|cycles| cycles.into_iter().max().unwrap_or(0));
        if let Some(longest) = max_edge_cycle {
            if h.size() > 0 && longest < c {
                return Ok(Some("short-cycles-fiber"));
            }
            if h.size() > 0 && f.is_locally_injective(g) && longest < 2 * c {
                return Ok(Some("locally-injective-short-cycles"));
            }
        }
    }
    Ok(None)
}

/// Report of the semidirect decomposition checks for a self-product
/// under an automorphism map.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub diagonal_order: usize,
    pub per_copy_order: usize,
    pub partition_preserving_order: usize,
    pub full_order: usize,
    pub per_copy_normal: bool,
    pub trivial_intersection: bool,
    pub orders_multiply: bool,
    pub semidirect: bool,
    /// Every partition-preserving automorphism factors as a diagonal
    /// lift composed with a per-copy element.
    pub factorization: bool,
    pub pass: bool,
}

/// For a connected graph and an automorphism map, builds the
/// self-product and verifies the semidirect structure of its
/// partition-preserving group.
pub fn verify_decomposition(
    g: &Graph,
    f: &VertexMap,
    limits: &Limits,
) -> Result<DecompositionReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !f.is_bijection() || f.source_order() != g.order() {
        return Err(Error::MapNotBijective);
    }
    let f_perm = Permutation::from_images(f.table().to_vec())?;
    if !f_perm.is_automorphism_of(g) {
        return Err(Error::NotAnAutomorphism);
    }
    let product = sierpinski_product(g, g, f)?;
    let groups = symmetry_groups(&product, limits)?;
    let diagonal = groups.diagonal.as_ref().expect("bijective map");

    let per_copy_normal = groups.per_copy.is_normal_in(&groups.partition_preserving);
    let trivial_intersection = diagonal.intersection(&groups.per_copy).order() == 1;
    let orders_multiply =
        diagonal.order() * groups.per_copy.order() == groups.partition_preserving.order();
    let semidirect =
        check_semidirect(&groups.partition_preserving, &groups.per_copy, diagonal)?;

    let mut factorization = true;
    for gamma in groups.partition_preserving.elements() {
        let alpha = project_to_base(gamma, &product)?;
        let beta_images: Vec<usize> = {
            let ft = f.table();
            let mut f_inv = vec![0; ft.len()];
            for (i, &t) in ft.iter().enumerate() {
                f_inv[t] = i;
            }
            (0..ft.len()).map(|h| ft[alpha.apply(f_inv[h])]).collect()
        };
        let beta = Permutation::from_images(beta_images)?;
        let spec = LiftSpec::constant(alpha, beta, g.order());
        let diag = make_lift(&spec, &product)?.expect("diagonal lift of a projection");
        let remainder = diag.inverse().compose(gamma);
        if !groups.per_copy.contains(&remainder) {
            factorization = false;
            break;
        }
    }

    let pass = per_copy_normal
        && trivial_intersection
        && orders_multiply
        && semidirect
        && factorization;
    Ok(DecompositionReport {
        diagonal_order: diagonal.order(),
        per_copy_order: groups.per_copy.order(),
        partition_preserving_order: groups.partition_preserving.order(),
        full_order: groups.full.order(),
        per_copy_normal,
        trivial_intersection,
        orders_multiply,
        semidirect,
        factorization,
        pass,
    })
}

/// Configuration of the counterexample scan.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Exhaust all maps when `|H|^|G|` is at most this; otherwise sample.
    pub map_cap: usize,
    /// Sampled maps per pair when not exhaustive.
    pub sample_size: usize,
    pub limits: Limits,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_n: 6,
            seed: 0,
            map_cap: 10_000,
            sample_size: 300,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanCertificate {
    pub left_graph6: String,
    pub right_graph6: String,
    pub map: Vec<(String, String)>,
    pub detail: String,
}

/// The documented small instance outside the scan scope: its right
/// factor has a bridge, and the partition is indeed broken there.
#[derive(Clone, Debug, Serialize)]
pub struct OutOfScopeNote {
    pub description: String,
    pub right_factor_biconnected: bool,
    pub partition_preserved_by_all: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub max_n: usize,
    pub seed: u64,
    pub partition_instances: usize,
    pub partition_counterexamples: Vec<ScanCertificate>,
    pub semidirect_instances: usize,
    pub semidirect_counterexamples: Vec<ScanCertificate>,
    pub overflows: Vec<String>,
    pub known_out_of_scope: OutOfScopeNote,
}

fn all_maps(source: usize, target: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
    let mut total: usize = 1;
    for _ in 0..source {
        total = total.checked_mul(target)?;
        if total > cap {
            return None;
        }
    }
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0usize; source];
    loop {
        out.push(cur.clone());
        let mut pos = 0;
        loop {
            if pos == source {
                return Some(out);
            }
            cur[pos] += 1;
            if cur[pos] < target {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
    }
}

fn locally_injective_maps(g: &Graph, target: usize, cap: usize) -> Vec<Vec<usize>> {
    // Distinct images required exactly for vertices sharing a neighbor.
    let n = g.order();
    let mut conflict = vec![vec![false; n]; n];
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                conflict[a][b] = true;
                conflict[b][a] = true;
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![usize::MAX; n];
    fn rec(
        v: usize,
        n: usize,
        target: usize,
        conflict: &[Vec<bool>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if v == n {
            out.push(cur.clone());
            return;
        }
        for t in 0..target {
            if (0..v).any(|u| conflict[u][v] && cur[u] == t) {
                continue;
            }
            cur[v] = t;
            rec(v + 1, n, target, conflict, cur, out, cap);
            cur[v] = usize::MAX;
        }
    }
    rec(0, n, target, &conflict, &mut cur, &mut out, cap);
    out
}

fn maps_for_pair(g: &Graph, h: &Graph, cfg: &ScanConfig, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if let Some(exhaustive) = all_maps(g.order(), h.order(), cfg.map_cap) {
        return exhaustive;
    }
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for table in locally_injective_maps(g, h.order(), cfg.map_cap) {
        set.insert(table);
    }
    for _ in 0..cfg.sample_size {
        set.insert((0..g.order()).map(|_| rng.gen_range(0..h.order())).collect());
    }
    set.into_iter().collect()
}

fn bijections(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn certificate(
    pair: &PairData,
    product: &ProductResult,
    detail: String,
) -> ScanCertificate {
    ScanCertificate {
        left_graph6: graph6::emit(&pair.left),
        right_graph6: graph6::emit(&pair.right),
        map: pair.map.as_label_pairs(&pair.left, &pair.right),
        detail: format!("{detail}; product edges: {}", product.graph.to_edge_list().replace('\n', " ")),
    }
}

/// Scans small instances for violations of two expectations: that
/// 2-connected factors force every automorphism to preserve the
/// partition, and that for connected same-order factors under a
/// bijection the partition-preserving group is the semidirect product of
/// the diagonal and per-copy groups. Overflowing instances are recorded,
/// not fatal. Deterministic for a fixed seed.
pub fn conjecture_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut overflows = Vec::new();

    let mut partition_instances = 0;
    let mut partition_counterexamples = Vec::new();
    let biconnected: Vec<Graph> =
        (3..=cfg.max_n).flat_map(biconnected_graphs).collect();
    for g in &biconnected {
        for h in &biconnected {
            for table in maps_for_pair(g, h, cfg, &mut rng) {
                let f = VertexMap::from_indices(table, h.order())?;
                let product = sierpinski_product(g, h, &f)?;
                partition_instances += 1;
                if partition_forced_by_colors(&product) {
                    continue;
                }
                let full = match automorphism_group(&product.graph, &cfg.limits) {
                    Ok(full) => full,
                    Err(Error::Overflow { what, .. }) => {
                        overflows.push(format!(
                            "{} x {} map {:?}: {what}",
                            graph6::emit(g),
                            graph6::emit(h),
                            f.table()
                        ));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let breaking = full.elements().iter().find(|p| {
                    !maps_edge_set_into(p, product.inner_edges(), product.inner_edges())
                });
                if let Some(p) = breaking {
                    let pair = product.pair()?;
                    partition_counterexamples.push(certificate(
                        pair,
                        &product,
                        format!(
                            "partition broken by {}",
                            p.cycle_string(product.graph.labels())
                        ),
                    ));
                }
            }
        }
    }

    let mut semidirect_instances = 0;
    let mut semidirect_counterexamples = Vec::new();
    for n in 1..=cfg.max_n {
        let graphs = connected_graphs(n);
        for g in &graphs {
            for h in &graphs {
                for table in bijections(n) {
                    let f = VertexMap::from_indices(table, n)?;
                    let product = sierpinski_product(g, h, &f)?;
                    semidirect_instances += 1;
                    let groups = match symmetry_groups(&product, &cfg.limits) {
                        Ok(groups) => groups,
                        Err(Error::Overflow { what, .. }) => {
                            overflows.push(format!(
                                "{} x {} map {:?}: {what}",
                                graph6::emit(g),
                                graph6::emit(h),
                                f.table()
                            ));
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    let diagonal = groups.diagonal.as_ref().expect("bijection");
                    let ok = check_semidirect(
                        &groups.partition_preserving,
                        &groups.per_copy,
                        diagonal,
                    )?;
                    if !ok {
                        let pair = product.pair()?;
                        semidirect_counterexamples.push(certificate(
                            pair,
                            &product,
                            format!(
                                "orders diagonal={} per_copy={} partition={}",
                                diagonal.order(),
                                groups.per_copy.order(),
                                groups.partition_preserving.order()
                            ),
                        ));
                    }
                }
            }
        }
    }

    // Sanity: the known partition-breaking instance has a bridge in its
    // right factor, so it sits outside the 2-connected scan scope.
    let c4 = families::cycle(4);
    let ttb = families::two_triangles_bridge();
    let f = VertexMap::from_label_pairs(
        &c4,
        &ttb,
        [("1", "1"), ("2", "2"), ("3", "3"), ("4", "4")],
    )?;
    let ring = sierpinski_product(&c4, &ttb, &f)?;
    let ring_groups = symmetry_groups(&ring, &cfg.limits)?;
    let known_out_of_scope = OutOfScopeNote {
        description: "4-cycle times two-triangles-plus-bridge under the identity map".into(),
        right_factor_biconnected: ttb.is_biconnected(),
        partition_preserved_by_all: ring_groups.partition_is_everything(),
    };

    Ok(ScanReport {
        max_n: cfg.max_n,
        seed: cfg.seed,
        partition_instances,
        partition_counterexamples,
        semidirect_instances,
        semidirect_counterexamples,
        overflows,
        known_out_of_scope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(g: &Graph, h: &Graph) -> VertexMap {
        VertexMap::identity(g, h).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn identity_respects_partition() {
        let k3 = families::complete(3);
        let p = sierpinski_product(&k3, &k3, &id(&k3, &k3)).unwrap();
        let e = Permutation::identity(p.graph.order());
        assert!(respects_partition(&e, &p).unwrap());
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let k3 = families::complete(3);
        let c4 = families::cycle(4);
        let f = VertexMap::from_label_pairs(&k3, &c4, [("1", "1"), ("2", "2"), ("3", "3")])
            .unwrap();
        let p = sierpinski_product(&k3, &c4, &f).unwrap();
        // Swapping two product vertices of different degrees cannot be an
        // automorphism.
        let mut images: Vec<usize> = (0..p.graph.order()).collect();
        images.swap(0, 1);
        let bad = Permutation::from_images(images).unwrap();
        assert!(matches!(
            respects_partition(&bad, &p),
            Err(Error::NotAnAutomorphism)
        ));
    }

    #[test]
    fn identity_lift_is_the_identity() {
        let k3 = families::complete(3);
        let p = sierpinski_product(&k3, &k3, &id(&k3, &k3)).unwrap();
        let spec = LiftSpec::constant(Permutation::identity(3), Permutation::identity(3), 3);
        let lift = make_lift(&spec, &p).unwrap().unwrap();
        assert!(lift.is_identity());
    }

    #[test]
    fn lift_rejects_non_automorphism_pieces() {
        let k3 = families::complete(3);
        let star = Graph::parse_edge_list("1 2\n2 3\n2 4").unwrap();
        let f = VertexMap::from_label_pairs(&k3, &star, [("1", "1"), ("2", "3"), ("3", "4")])
            .unwrap();
        let p = sierpinski_product(&k3, &star, &f).unwrap();
        // (1 2) moves the star's center: not an automorphism of the fiber.
        let bad = Permutation::from_label_cycles(&star, &[&["1", "2"]]).unwrap();
        let spec = LiftSpec::constant(Permutation::identity(3), bad, 3);
        assert!(matches!(make_lift(&spec, &p), Err(Error::NotAnAutomorphism)));
    }

    #[test]
    fn diagonal_lift_on_squares_respects_partition() {
        let c4 = families::cycle(4);
        let p = sierpinski_product(&c4, &c4, &id(&c4, &c4)).unwrap();
        let rot = Permutation::from_label_cycles(&c4, &[&["1", "2", "3", "4"]]).unwrap();
        let spec = LiftSpec::constant(rot.clone(), rot, 4);
        let lift = make_lift(&spec, &p).unwrap().unwrap();
        assert!(respects_partition(&lift, &p).unwrap());
        let projected = project_to_base(&lift, &p).unwrap();
        assert_eq!(projected.cycle_string(c4.labels()), "(1 2 3 4)");
    }

    #[test]
    fn copy_automorphism_in_k3_k4() {
        let k3 = families::complete(3);
        let k4 = families::complete(4);
        let f = VertexMap::from_label_pairs(&k3, &k4, [("1", "1"), ("2", "2"), ("3", "3")])
            .unwrap();
        let p = sierpinski_product(&k3, &k4, &f).unwrap();
        // (1 4) fixes the anchors {2, 3} of copy 1.
        let swap14 = Permutation::from_label_cycles(&k4, &[&["1", "4"]]).unwrap();
        let phi = make_copy_automorphism("1", &swap14, &p).unwrap().unwrap();
        assert!(respects_partition(&phi, &p).unwrap());
        let gamma = project_to_base(&phi, &p).unwrap();
        assert!(gamma.is_identity());
        // (2 3) moves them.
        let swap23 = Permutation::from_label_cycles(&k4, &[&["2", "3"]]).unwrap();
        assert!(make_copy_automorphism("1", &swap23, &p).unwrap().is_none());
        // The identity always works.
        let e = Permutation::identity(4);
        assert!(make_copy_automorphism("1", &e, &p).unwrap().unwrap().is_identity());
    }

    #[test]
    fn per_copy_orders() {
        let k3 = families::complete(3);
        let k4 = families::complete(4);
        let f = VertexMap::from_label_pairs(&k3, &k4, [("1", "1"), ("2", "2"), ("3", "3")])
            .unwrap();
        let p = sierpinski_product(&k3, &k4, &f).unwrap();
        assert_eq!(per_copy_group(&p, &limits()).unwrap().order(), 8);

        let c4 = families::cycle(4);
        let p = sierpinski_product(&c4, &c4, &id(&c4, &c4)).unwrap();
        assert_eq!(per_copy_group(&p, &limits()).unwrap().order(), 16);

        let p = sierpinski_product(&k3, &k3, &id(&k3, &k3)).unwrap();
        assert_eq!(per_copy_group(&p, &limits()).unwrap().order(), 1);
    }

    #[test]
    fn diagonal_group_orders() {
        let c4 = families::cycle(4);
        let p = sierpinski_product(&c4, &c4, &id(&c4, &c4)).unwrap();
        assert_eq!(diagonal_group(&p, &limits()).unwrap().order(), 8);

        let k3 = families::complete(3);
        let p = sierpinski_product(&k3, &k3, &id(&k3, &k3)).unwrap();
        assert_eq!(diagonal_group(&p, &limits()).unwrap().order(), 6);
    }

    #[test]
    fn diagonal_group_filters_non_automorphism_conjugates() {
        // Star with center 2; the map is a bijection but not an
        // automorphism, so only part of the automorphism group lifts.
        let star = Graph::parse_edge_list("1 2\n2 3\n2 4").unwrap();
        let f = VertexMap::from_label_pairs(
            &star,
            &star,
            [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")],
        )
        .unwrap();
        let p = sierpinski_product(&star, &star, &f).unwrap();
        let diag = diagonal_group(&p, &limits()).unwrap();
        // Conjugating fixes f(2)=3, so a surviving conjugate must fix
        // vertex 3 as well as the center 2; only the identity and the
        // swap (3 4) -> (4 1) qualify.
        assert_eq!(diag.order(), 2);
        for d in diag.elements() {
            assert!(respects_partition(d, &p).unwrap());
        }
    }

    #[test]
    fn symmetry_groups_on_small_products() {
        let k3 = families::complete(3);
        let k4 = families::complete(4);
        let f = VertexMap::from_label_pairs(&k3, &k4, [("1", "1"), ("2", "2"), ("3", "3")])
            .unwrap();
        let p = sierpinski_product(&k3, &k4, &f).unwrap();
        let groups = symmetry_groups(&p, &limits()).unwrap();
        assert!(groups.partition_is_everything());
        assert_eq!(
            partition_forced_case(&p).unwrap(),
            Some("locally-injective-short-cycles")
        );

        let c4 = families::cycle(4);
        let ttb = families::two_triangles_bridge();
        let f = VertexMap::from_label_pairs(
            &c4,
            &ttb,
            [("1", "1"), ("2", "2"), ("3", "3"), ("4", "4")],
        )
        .unwrap();
        let p = sierpinski_product(&c4, &ttb, &f).unwrap();
        let groups = symmetry_groups(&p, &limits()).unwrap();
        assert!(!groups.partition_is_everything());
        assert!(groups.partition_breaking_witness().is_some());
    }

    #[test]
    fn decomposition_on_squares() {
        let c4 = families::cycle(4);
        let f = id(&c4, &c4);
        let report = verify_decomposition(&c4, &f, &limits()).unwrap();
        assert!(report.pass);
        assert_eq!(
            (report.diagonal_order, report.per_copy_order, report.partition_preserving_order),
            (8, 16, 128)
        );
        assert_eq!(report.full_order, 128);
    }

    #[test]
    fn decomposition_rejects_non_automorphism_maps() {
        let star = Graph::parse_edge_list("1 2\n2 3\n2 4").unwrap();
        let f = VertexMap::from_label_pairs(
            &star,
            &star,
            [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")],
        )
        .unwrap();
        assert!(matches!(
            verify_decomposition(&star, &f, &limits()),
            Err(Error::NotAnAutomorphism)
        ));
    }
}
