use proptest::prelude::*;

use eci::eci;
use eci::graph::{bfs_distances, blocks, find_diametral_path, profile, Graph};
use eci::io::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};

/// Connected graph on 2..=max_n vertices: a random recursive tree plus
/// extra edges chosen with probability `density`.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        (
            parents,
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, i + 1))
                    .collect();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if extra[k] && !edges.contains(&(u, v)) {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
    })
}

fn random_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        parents.prop_map(move |parents| {
            Graph::from_edges(n, parents.iter().enumerate().map(|(i, &p)| (p, i + 1))).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eci_is_relabeling_invariant((g, perm) in with_permutation(10)) {
        prop_assert_eq!(eci(&g).unwrap(), eci(&g.permute(&perm).unwrap()).unwrap());
    }

    #[test]
    fn eccentricities_are_bounded_and_lipschitz(g in connected_graph(10)) {
        let p = profile(&g).unwrap();
        for v in 0..g.order() {
            prop_assert!(p.radius <= p.eccentricity[v] && p.eccentricity[v] <= p.diameter);
            for &w in g.neighbors(v) {
                prop_assert!(p.eccentricity[v].abs_diff(p.eccentricity[w]) <= 1);
            }
        }
        prop_assert!(p.diameter <= 2 * p.radius);
    }

    #[test]
    fn center_lies_in_one_block(g in connected_graph(10)) {
        let center = profile(&g).unwrap().center;
        prop_assert!(blocks(&g).iter().any(|b| center.iter().all(|c| b.contains(c))));
    }

    #[test]
    fn tree_center_is_a_vertex_or_an_edge(t in random_tree(14)) {
        let center = profile(&t).unwrap().center;
        match center.as_slice() {
            [_] => {}
            [a, b] => prop_assert!(t.has_edge(*a, *b)),
            other => prop_assert!(false, "tree center {:?}", other),
        }
    }

    #[test]
    fn central_eccentricity_implies_center(g in connected_graph(10)) {
        let p = profile(&g).unwrap();
        let half = p.half_diameter_ceil();
        for v in 0..g.order() {
            if p.eccentricity[v] == half {
                prop_assert!(p.center.contains(&v));
            }
        }
        // The converse holds exactly when the radius is as small as possible.
        let converse = p.center.iter().all(|&c| p.eccentricity[c] == half);
        prop_assert_eq!(converse, p.radius == half);
    }

    #[test]
    fn diametral_path_is_a_geodesic(g in connected_graph(10)) {
        let p = profile(&g).unwrap();
        let path = find_diametral_path(&g).unwrap();
        let vs = path.vertices();
        prop_assert_eq!(vs.len(), p.diameter + 1);
        prop_assert!(vs.windows(2).all(|w| g.has_edge(w[0], w[1])));
        let from_start = bfs_distances(&g, path.start()).unwrap();
        for (i, &v) in vs.iter().enumerate() {
            prop_assert_eq!(from_start[v], i);
        }
    }

    #[test]
    fn graph6_round_trips(g in connected_graph(12)) {
        let text = to_graph6(&g);
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_graph6(&back), text);
    }

    #[test]
    fn formats_agree_on_eci(g in connected_graph(12)) {
        let a = eci(&parse_graph6(&to_graph6(&g)).unwrap()).unwrap();
        let b = eci(&parse_edge_list(&to_edge_list(&g)).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
