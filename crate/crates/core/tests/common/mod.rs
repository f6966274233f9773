#![allow(dead_code)]

use defram::{extend_level, Graph, GraphClass, LevelSet, SearchParams, VertexSet};
use rand::Rng;

/// Every graph of order 1..=max up to isomorphism, one level per order.
pub fn all_graphs(max: usize) -> Vec<LevelSet> {
    let p = SearchParams::unrestricted(GraphClass::All);
    let mut levels = vec![LevelSet::k1()];
    while levels.len() < max {
        let next = extend_level(levels.last().unwrap(), &p).unwrap();
        levels.push(next);
    }
    levels
}

/// Number of unlabelled graphs on n vertices, n = 0..=8.
pub const GRAPH_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

/// Isomorphism test by extending a partial vertex map one vertex at a time.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return false;
    }
    fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let u = map.len();
        if u == a.order() {
            return true;
        }
        for w in 0..b.order() {
            if used[w] || a.degree(u) != b.degree(w) {
                continue;
            }
            if (0..u).any(|x| a.has_edge(x, u) != b.has_edge(map[x], w)) {
                continue;
            }
            map.push(w);
            used[w] = true;
            if extend(a, b, map, used) {
                return true;
            }
            used[w] = false;
            map.pop();
        }
        false
    }
    extend(a, b, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// Edge count, degree sequence and per-vertex triangle counts, sorted.
pub fn invariant(g: &Graph) -> (usize, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut tri: Vec<usize> = (0..n)
        .map(|v| {
            let nb = g.neighbors(v);
            nb.iter().map(|u| g.degree_in(u, nb)).sum::<usize>() / 2
        })
        .collect();
    tri.sort_unstable();
    (g.edge_count(), g.degree_sequence(), tri)
}

/// Subsets of `0..n` as vertex sets.
pub fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << n).map(VertexSet::from_bits)
}
