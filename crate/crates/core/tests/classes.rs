mod common;

use common::{all_graphs, random_graph, subsets};
use defram::classes::{
    enumerate_cliques, is_bipartite, is_chordal, is_cograph, is_perfect, is_perfect_naive,
    remains_perfect_after_extension,
};
use defram::{Graph, GraphClass};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn is_clique(g: &Graph, s: defram::VertexSet) -> bool {
    s.iter().all(|v| g.degree_in(v, s) + 1 == s.len())
}

fn has_induced_p4_by_subsets(g: &Graph) -> bool {
    subsets(g.order()).filter(|s| s.len() == 4).any(|s| {
        let h = g.induced_subgraph(s).unwrap();
        h.degree_sequence() == [1, 1, 2, 2] && h.edge_count() == 3
    })
}

#[test]
fn incremental_perfectness_matches_naive_exhaustively() {
    let levels = all_graphs(6);
    for level in &levels {
        for g in level.graphs().iter().filter(|g| is_perfect_naive(g)) {
            for s in subsets(g.order()) {
                let h = g.extend_with_vertex(s).unwrap();
                let v = h.order() - 1;
                assert_eq!(
                    remains_perfect_after_extension(&h, v),
                    is_perfect_naive(&h),
                    "{}",
                    h.to_graph6()
                );
            }
        }
    }
}

#[test]
fn incremental_perfectness_matches_naive_at_orders_8_and_9() {
    let mut rng = StdRng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 3000 {
        let n = rng.gen_range(7..=8);
        let density = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, density);
        if !is_perfect_naive(&g) {
            continue;
        }
        let s = defram::VertexSet::from_bits(rng.gen::<u64>() & ((1 << n) - 1));
        let h = g.extend_with_vertex(s).unwrap();
        assert_eq!(
            remains_perfect_after_extension(&h, n),
            is_perfect_naive(&h),
            "{}",
            h.to_graph6()
        );
        checked += 1;
    }
}

#[test]
fn recognisers_agree_with_naive_on_all_small_graphs() {
    for level in all_graphs(7) {
        for g in level.graphs() {
            assert_eq!(is_perfect(g), is_perfect_naive(g), "{}", g.to_graph6());
            for class in [
                GraphClass::Bipartite,
                GraphClass::Chordal,
                GraphClass::Cograph,
            ] {
                assert_eq!(
                    class.contains(g),
                    class.contains_naive(g),
                    "{class} {}",
                    g.to_graph6()
                );
            }
            assert_eq!(
                is_cograph(g),
                !has_induced_p4_by_subsets(g),
                "{}",
                g.to_graph6()
            );
        }
    }
}

#[test]
fn subclasses_are_perfect() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=9);
        let density = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, density);
        if is_bipartite(&g) || is_chordal(&g) || is_cograph(&g) {
            assert!(is_perfect_naive(&g), "{}", g.to_graph6());
        }
        assert_eq!(is_perfect_naive(&g), is_perfect_naive(&g.complement()));
    }
}

#[test]
fn clique_enumeration_matches_subset_scan() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..300 {
        let n = rng.gen_range(0..=9);
        let density = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, density);
        let mut listed: Vec<u64> = enumerate_cliques(&g).map(|s| s.bits()).collect();
        listed.sort_unstable();
        let before = listed.len();
        listed.dedup();
        assert_eq!(before, listed.len(), "duplicate cliques");
        let expected: Vec<u64> = subsets(n)
            .filter(|&s| is_clique(&g, s))
            .map(|s| s.bits())
            .collect();
        assert_eq!(listed, expected);
    }
}
