//! Structural laws of the symmetry machinery: copies map onto copies,
//! lifts exist exactly when they preserve edges, projection is a
//! homomorphism, per-copy automorphisms commute across copies, and the
//! partition is forced for the documented factor families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sierpinski::aut::automorphism_group;
use sierpinski::graph::Graph;
use sierpinski::limits::Limits;
use sierpinski::product::{sierpinski_product, ProductResult, VertexMap};
use sierpinski::symmetry::{
    lift_bijection, make_copy_automorphism, make_lift, partition_forced_by_colors,
    partition_forced_case, project_to_base, symmetry_groups, LiftSpec,
};
use sierpinski::families;

fn limits() -> Limits {
    Limits::default()
}

fn k3_k4() -> ProductResult {
    let k3 = families::complete(3);
    let k4 = families::complete(4);
    let f = VertexMap::from_label_pairs(&k3, &k4, [("1", "1"), ("2", "2"), ("3", "3")]).unwrap();
    sierpinski_product(&k3, &k4, &f).unwrap()
}

#[test]
fn partition_preserving_elements_map_copies_onto_copies() {
    let products = vec![
        k3_k4(),
        {
            let c4 = families::cycle(4);
            let f = VertexMap::identity(&c4, &c4).unwrap();
            sierpinski_product(&c4, &c4, &f).unwrap()
        },
        {
            let c4 = families::cycle(4);
            let ttb = families::two_triangles_bridge();
            let f = VertexMap::from_label_pairs(
                &c4,
                &ttb,
                [("1", "1"), ("2", "2"), ("3", "3"), ("4", "4")],
            )
            .unwrap();
            sierpinski_product(&c4, &ttb, &f).unwrap()
        },
    ];
    for p in &products {
        let groups = symmetry_groups(p, &limits()).unwrap();
        for gamma in groups.partition_preserving.elements() {
            // Projection fails loudly if a copy scatters.
            let alpha = project_to_base(gamma, p).unwrap();
            assert!(alpha.is_automorphism_of(&p.pair().unwrap().left));
        }
    }
}

#[test]
fn lifts_exist_exactly_when_the_raw_bijection_preserves_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let k3 = families::complete(3);
    let star = Graph::parse_edge_list("1 2\n2 3\n2 4").unwrap();
    let pairs = vec![
        (families::cycle(4), families::cycle(4)),
        (k3.clone(), star.clone()),
        (families::path(3), k3.clone()),
        (star.clone(), families::cycle(5)),
    ];
    for (g, h) in pairs {
        let table: Vec<usize> = (0..g.order()).map(|_| rng.gen_range(0..h.order())).collect();
        let f = VertexMap::from_indices(table, h.order()).unwrap();
        let p = sierpinski_product(&g, &h, &f).unwrap();
        let aut_g = automorphism_group(&g, &limits()).unwrap();
        let aut_h = automorphism_group(&h, &limits()).unwrap();
        for _ in 0..40 {
            let base = aut_g.elements()[rng.gen_range(0..aut_g.order())].clone();
            let per_copy: Vec<_> = (0..g.order())
                .map(|_| aut_h.elements()[rng.gen_range(0..aut_h.order())].clone())
                .collect();
            let spec = LiftSpec { base, per_copy };
            let raw = lift_bijection(&spec, &p).unwrap();
            let accepted = make_lift(&spec, &p).unwrap().is_some();
            assert_eq!(accepted, raw.is_automorphism_of(&p.graph));
        }
    }
}

#[test]
fn projection_is_a_group_homomorphism() {
    let c4 = families::cycle(4);
    let f = VertexMap::identity(&c4, &c4).unwrap();
    let p = sierpinski_product(&c4, &c4, &f).unwrap();
    let groups = symmetry_groups(&p, &limits()).unwrap();
    let tilde = &groups.partition_preserving;
    for a in tilde.elements() {
        for b in tilde.elements() {
            let lhs = project_to_base(&a.compose(b), &p).unwrap();
            let rhs = project_to_base(a, &p)
                .unwrap()
                .compose(&project_to_base(b, &p).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn per_copy_automorphisms_commute_across_copies() {
    let p = k3_k4();
    let pair = p.pair().unwrap();
    let aut_h = automorphism_group(&pair.right, &limits()).unwrap();
    let mut per_copy: Vec<(usize, sierpinski::perm::Permutation)> = Vec::new();
    for g in 0..pair.left.order() {
        for beta in aut_h.elements() {
            if let Some(phi) = make_copy_automorphism(pair.left.label(g), beta, &p).unwrap() {
                per_copy.push((g, phi));
            }
        }
    }
    for (g1, a) in &per_copy {
        for (g2, b) in &per_copy {
            if g1 != g2 {
                assert_eq!(a.compose(b), b.compose(a));
            }
        }
    }
}

/// Regular triangle-free self-products under automorphism maps: the
/// partition is preserved by every automorphism. The 3,3-bipartite case
/// is too symmetric to enumerate, so it is certified by the
/// color-signature argument, which the enumerable cases validate.
#[test]
fn regular_triangle_free_self_products_force_the_partition() {
    for g in [families::cycle(4), families::cycle(5), families::cycle(6)] {
        let f = VertexMap::identity(&g, &g).unwrap();
        let p = sierpinski_product(&g, &g, &f).unwrap();
        assert_eq!(
            partition_forced_case(&p).unwrap(),
            Some("regular-triangle-free-self-product")
        );
        let groups = symmetry_groups(&p, &limits()).unwrap();
        assert!(groups.partition_is_everything());
        assert!(partition_forced_by_colors(&p));
    }

    let k33 = families::complete_bipartite(3, 3);
    let f = VertexMap::identity(&k33, &k33).unwrap();
    let p = sierpinski_product(&k33, &k33, &f).unwrap();
    assert_eq!(
        partition_forced_case(&p).unwrap(),
        Some("regular-triangle-free-self-product")
    );
    assert!(partition_forced_by_colors(&p));
}

#[test]
fn tree_base_with_bridgeless_fiber_forces_the_partition() {
    let cases = vec![
        (families::path(3), families::complete(3)),
        (families::path(4), families::complete(4)),
        (Graph::parse_edge_list("1 2\n2 3\n2 4").unwrap(), families::cycle(5)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for (g, h) in cases {
        for _ in 0..3 {
            let table: Vec<usize> =
                (0..g.order()).map(|_| rng.gen_range(0..h.order())).collect();
            let f = VertexMap::from_indices(table, h.order()).unwrap();
            let p = sierpinski_product(&g, &h, &f).unwrap();
            assert_eq!(partition_forced_case(&p).unwrap(), Some("tree-base-bridgeless-fiber"));
            let groups = symmetry_groups(&p, &limits()).unwrap();
            assert!(groups.partition_is_everything());
        }
    }
}

#[test]
fn short_fiber_cycles_force_the_partition() {
    // Girth of the base exceeds every fiber edge's shortest cycle.
    let cases = vec![
        (families::cycle(4), families::complete(3)),
        (families::cycle(5), families::complete(4)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (g, h) in cases {
        for _ in 0..3 {
            let table: Vec<usize> =
                (0..g.order()).map(|_| rng.gen_range(0..h.order())).collect();
            let f = VertexMap::from_indices(table, h.order()).unwrap();
            let p = sierpinski_product(&g, &h, &f).unwrap();
            assert_eq!(partition_forced_case(&p).unwrap(), Some("short-cycles-fiber"));
            let groups = symmetry_groups(&p, &limits()).unwrap();
            assert!(groups.partition_is_everything());
        }
    }
}

#[test]
fn locally_injective_short_cycles_force_the_partition() {
    let k3 = families::complete(3);
    let k4 = families::complete(4);
    let maps = [
        [("1", "1"), ("2", "2"), ("3", "3")],
        [("1", "2"), ("2", "3"), ("3", "4")],
        [("1", "4"), ("2", "1"), ("3", "3")],
    ];
    for pairs in maps {
        let f = VertexMap::from_label_pairs(&k3, &k4, pairs).unwrap();
        assert!(f.is_locally_injective(&k3));
        let p = sierpinski_product(&k3, &k4, &f).unwrap();
        assert_eq!(
            partition_forced_case(&p).unwrap(),
            Some("locally-injective-short-cycles")
        );
        let groups = symmetry_groups(&p, &limits()).unwrap();
        assert!(groups.partition_is_everything());
    }
}

/// The color-signature certificate never contradicts full enumeration.
#[test]
fn color_forcing_is_sound_on_random_products()
{
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(2..=4);
        let mut g = Graph::with_vertices((1..=n).map(|i| i.to_string())).unwrap();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            g.add_edge(u, v).unwrap();
        }
        let mut h = Graph::with_vertices((1..=m).map(|i| i.to_string())).unwrap();
        for v in 1..m {
            let u = rng.gen_range(0..v);
            h.add_edge(u, v).unwrap();
        }
        for _ in 0..2 {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                let _ = g.add_edge(u, v);
            }
            let (u, v) = (rng.gen_range(0..m), rng.gen_range(0..m));
            if u != v {
                let _ = h.add_edge(u, v);
            }
        }
        let table: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let f = VertexMap::from_indices(table, m).unwrap();
        let p = sierpinski_product(&g, &h, &f).unwrap();
        if partition_forced_by_colors(&p) {
            let groups = symmetry_groups(&p, &limits()).unwrap();
            assert!(groups.partition_is_everything());
        }
    }
}
