mod common;

use nut_orbits::graph::{cartesian_product, subdivide_edges, Graph};
use nut_orbits::io::{read_graph6, write_graph6};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_irreflexive(g in arb_graph(12)) {
        for u in 0..g.order() {
            prop_assert!(!g.is_adjacent(u, u));
            for v in 0..g.order() {
                prop_assert_eq!(g.is_adjacent(u, v), g.is_adjacent(v, u));
            }
        }
    }

    #[test]
    fn product_degrees_add(g in arb_graph(6), h in arb_graph(6)) {
        let p = cartesian_product(&g, &h);
        prop_assert_eq!(p.order(), g.order() * h.order());
        for a in 0..g.order() {
            for b in 0..h.order() {
                prop_assert_eq!(p.degree(a * h.order() + b), g.degree(a) + h.degree(b));
            }
        }
    }

    #[test]
    fn subdivision_degrees(g in arb_graph(9), s in 1usize..5, pick in any::<u64>()) {
        let targets: Vec<_> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> (i % 64) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let h = subdivide_edges(&g, &targets, s).unwrap();
        prop_assert_eq!(h.order(), g.order() + s * targets.len());
        prop_assert_eq!(h.size(), g.size() + s * targets.len());
        for v in 0..g.order() {
            prop_assert_eq!(h.degree(v), g.degree(v));
        }
        for v in g.order()..h.order() {
            prop_assert_eq!(h.degree(v), 2);
        }
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        prop_assert_eq!(read_graph6(&write_graph6(&g)).unwrap(), g);
    }
}

#[test]
fn graph6_round_trip_circulant() {
    let g = common::circ(10, &[1, 2]);
    let back = read_graph6(&write_graph6(&g)).unwrap();
    assert_eq!(back.adjacency_rows(), g.adjacency_rows());
}
