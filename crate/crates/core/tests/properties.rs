use bicay_core::graph::Graph;
use bicay_core::symmetry::{self, Domain, Label};
use bicay_core::{BiCayleyGraph, BiCayleySpec, GroupElem, GroupParams, Limits, Permutation};
use proptest::prelude::*;

/// Counts bijections that preserve adjacency. Factorial time.
fn brute_force_count(graph: &Graph) -> u64 {
    fn rec(graph: &Graph, images: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let v = images.len();
        if v == graph.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for c in 0..graph.vertex_count() {
            if !used[c] && (0..v).all(|u| graph.has_edge(u, v) == graph.has_edge(images[u], c)) {
                used[c] = true;
                images.push(c);
                total += rec(graph, images, used);
                images.pop();
                used[c] = false;
            }
        }
        total
    }
    rec(graph, &mut Vec::new(), &mut vec![false; graph.vertex_count()])
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<(usize, usize)> = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn aut_order_matches_brute_force(graph in arb_graph(7)) {
        let aut = symmetry::automorphism_group(&graph, &Limits::default()).unwrap();
        prop_assert_eq!(aut.order_u64(), Some(brute_force_count(&graph)));
        for g in aut.generators() {
            prop_assert!(graph.is_automorphism(g));
        }
    }

    #[test]
    fn classification_flags_are_consistent(graph in arb_graph(8)) {
        let aut = symmetry::automorphism_group(&graph, &Limits::default()).unwrap();
        let r = symmetry::report_for(&graph, &aut);
        if r.arc_transitive {
            prop_assert!(r.edge_transitive && r.vertex_transitive);
        }
        prop_assert_eq!(r.vertex_transitive, r.vertex_orbits == 1);
        prop_assert_eq!(symmetry::orbits_on(&graph, &aut, Domain::Vertices).len(), r.vertex_orbits);
        prop_assert_eq!(symmetry::orbits_on(&graph, &aut, Domain::Edges).len(), r.edge_orbits);
        prop_assert_eq!(symmetry::orbits_on(&graph, &aut, Domain::Arcs).len(), r.arc_orbits);
        prop_assert_eq!(r.label, Label::from_flags(r.vertex_transitive, r.edge_transitive, r.arc_transitive));
    }

    #[test]
    fn aut_order_is_a_relabelling_invariant((graph, perm) in (6usize..=11, any::<u64>()).prop_flat_map(|(n, mask)| {
        (Just(graph_from_mask(n, mask)), arb_perm(n))
    })) {
        let limits = Limits::default();
        let a = symmetry::automorphism_group(&graph, &limits).unwrap();
        let b = symmetry::automorphism_group(&graph.relabel(&perm), &limits).unwrap();
        prop_assert_eq!(a.order(), b.order());
    }

    #[test]
    fn permutation_laws((x, y, z) in (1usize..20).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))) {
        let id = Permutation::identity(x.degree());
        prop_assert_eq!(x.then(&y).then(&z), x.then(&y.then(&z)));
        prop_assert_eq!(x.then(&x.inverse()), id.clone());
        prop_assert_eq!(id.then(&x), x.clone());
        for i in 0..x.degree() {
            prop_assert_eq!(x.then(&y).apply(i), y.apply(x.apply(i)));
        }
        let order = u64::try_from(x.order()).unwrap();
        prop_assert!(x.pow(order).is_identity());
    }

    #[test]
    fn bicayley_symmetries(r in proptest::collection::vec((0u64..3, 0u64..9), 0..3),
                           l in proptest::collection::vec((0u64..3, 0u64..9), 0..3),
                           s in proptest::collection::vec((0u64..3, 0u64..9), 1..4),
                           theta_index in 0usize..54) {
        let params = GroupParams::new(3, 2, 1, 1).unwrap();
        let g = params.group();
        let symmetric = |xs: &[(u64, u64)]| {
            let mut set: Vec<GroupElem> = xs.iter().map(|&(j, i)| GroupElem::new(j, i)).filter(|x| !x.is_identity()).collect();
            set.extend(set.clone().into_iter().map(|x| g.inv(x)));
            set
        };
        let mut s_set: Vec<GroupElem> = s.iter().map(|&(j, i)| GroupElem::new(j, i)).collect();
        s_set.push(GroupElem::IDENTITY);
        let spec = BiCayleySpec::new(params, symmetric(&r), symmetric(&l), s_set).unwrap();
        let bc = BiCayleyGraph::build(spec.clone());
        let n = g.order() as usize;
        for x in g.elements() {
            let t = bc.right_translation(x);
            prop_assert!(bc.graph().is_automorphism(t.perm()));
            if !x.is_identity() {
                prop_assert!((0..2 * n).all(|v| t.perm().apply(v) != v));
            }
        }
        let theta = &g.enumerate_automorphisms(243).unwrap()[theta_index];
        let image = BiCayleyGraph::build(spec.image(theta));
        prop_assert_eq!(bc.graph().relabel(&bc.aut_isomorphism(theta)), image.graph().clone());
    }
}
