use proptest::prelude::*;

use co3plex::auxgraph::{build_aux_direct, stable_to_co3plex};
use co3plex::chordal::is_chordal;
use co3plex::generate::generate_random_chordal;
use co3plex::structures::{is_co3plex, ComponentCatalog};
use co3plex::verify::{check_bijection, check_chordality_preservation, check_clique_correspondence, check_constructions_agree};
use co3plex::{Graph, SearchOptions};

fn opts() -> SearchOptions {
    SearchOptions::default().sequential()
}

fn chordal_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>()).prop_map(|(n, d, s)| generate_random_chordal(n, d, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn aux_graph_properties(g in chordal_graph(8)) {
        prop_assert!(check_bijection(&g, opts()).unwrap());
        prop_assert!(check_clique_correspondence(&g, opts()).unwrap());
        prop_assert!(check_chordality_preservation(&g, opts()).unwrap());
        prop_assert!(check_constructions_agree(&g, opts()).unwrap());
    }

    #[test]
    fn adjacency_is_connectivity_of_the_union(g in chordal_graph(7)) {
        let a = build_aux_direct(&g, &ComponentCatalog::enumerate(&g, opts()).unwrap()).unwrap();
        for i in 0..a.node_count() {
            for j in i + 1..a.node_count() {
                let union = a.node(i).union(a.node(j));
                prop_assert_eq!(a.adjacent(i, j), g.is_connected_subset(&union));
            }
        }
    }

    #[test]
    fn non_adjacent_pairs_give_co3plexes(g in chordal_graph(7)) {
        let a = build_aux_direct(&g, &ComponentCatalog::enumerate(&g, opts()).unwrap()).unwrap();
        for i in 0..a.node_count() {
            for j in i + 1..a.node_count() {
                if !a.adjacent(i, j) {
                    let plex = stable_to_co3plex(&a, &[i, j]).unwrap();
                    prop_assert!(is_co3plex(&g, &plex.set));
                }
            }
        }
    }
}

#[test]
fn holes_stay_non_chordal() {
    for n in 4..=7 {
        let g = Graph::cycle(n);
        let a = build_aux_direct(&g, &ComponentCatalog::enumerate(&g, opts()).unwrap()).unwrap();
        assert!(!is_chordal(a.graph()), "A(C{n}) should have a hole");
    }
    assert!(stable_to_co3plex(
        &build_aux_direct(&Graph::path(3), &ComponentCatalog::enumerate(&Graph::path(3), opts()).unwrap()).unwrap(),
        &[0, 1]
    )
    .is_err());
}
