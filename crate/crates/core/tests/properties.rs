//! Property-based invariants of the domination oracle and the enumerator.

use domcomplex::complex::{read_cache, write_cache, CellTable, ComplexSpec};
use domcomplex::graph::{
    dominates, domination_at_least, domination_number, edge_from_index, edge_index,
};
use domcomplex::{LabeledGraph, VertexCount};
use proptest::prelude::*;

fn graph_strategy(max_n: u8) -> impl Strategy<Value = LabeledGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let vc = VertexCount::new(n).unwrap();
        let bits = vc.edge_count() as u32;
        (0..1u128 << bits).prop_map(move |mask| LabeledGraph::from_mask(vc, mask).unwrap())
    })
}

proptest! {
    #[test]
    fn gamma_is_monotone_under_edge_addition(
        g in graph_strategy(8),
        pick in 0usize..128,
    ) {
        let n = g.n();
        let absent: Vec<usize> = (0..n.edge_count())
            .filter(|&t| g.mask() >> t & 1 == 0)
            .collect();
        prop_assume!(!absent.is_empty());
        let t = absent[pick % absent.len()];
        let bigger = LabeledGraph::from_mask(n, g.mask() | 1u128 << t).unwrap();
        prop_assert!(domination_number(&bigger) <= domination_number(&g));
    }

    #[test]
    fn membership_is_downward_closed(
        g in graph_strategy(7),
        submask_seed in any::<u128>(),
        k in 0usize..8,
    ) {
        prop_assume!(!g.is_edgeless());
        let sub = g.mask() & submask_seed;
        prop_assume!(sub != 0 && sub != g.mask());
        let sub_graph = LabeledGraph::from_mask(g.n(), sub).unwrap();
        if domination_at_least(&g, k) {
            prop_assert!(domination_at_least(&sub_graph, k));
        }
    }

    #[test]
    fn dominating_sets_stay_dominating_under_growth(
        g in graph_strategy(7),
        d_mask in any::<u16>(),
        extra in 0u8..7,
    ) {
        let n = g.n();
        let d = d_mask & n.full_vertex_mask();
        prop_assume!(extra < n.get());
        if dominates(d, &g) {
            prop_assert!(dominates(d | 1 << extra, &g));
        }
    }

    #[test]
    fn edge_indexing_round_trips(n in 2u8..=16, index_seed in any::<usize>()) {
        let vc = VertexCount::new(n).unwrap();
        let index = index_seed % vc.edge_count();
        let e = edge_from_index(index, vc).unwrap();
        prop_assert_eq!(edge_index(e.i(), e.j(), vc).unwrap(), index);
    }

    #[test]
    fn threshold_oracle_agrees_with_gamma(g in graph_strategy(6), k in 0usize..8) {
        prop_assert_eq!(domination_at_least(&g, k), domination_number(&g) >= k);
    }
}

#[test]
fn cache_round_trips_for_every_small_spec() {
    for (n, k) in [(4u8, 2u8), (4, 3), (5, 3), (5, 4), (6, 4)] {
        let spec = ComplexSpec::new(VertexCount::new(n).unwrap(), k).unwrap();
        let table = CellTable::enumerate(spec).unwrap();
        let mut buf = Vec::new();
        write_cache(&table, &mut buf).unwrap();
        let loaded = read_cache(buf.as_slice()).unwrap();
        assert_eq!(loaded, table, "D_{{{n},{k}}}");
    }
}
