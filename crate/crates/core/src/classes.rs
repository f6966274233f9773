//! Recognition of the graph classes searched over, plus clique enumeration
//! for simplicial-vertex extension of chordal graphs.

use std::fmt;
use std::str::FromStr;

use crate::defect::complement_rows;
use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Bits, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    All,
    Perfect,
    Bipartite,
    Chordal,
    Cograph,
}

impl GraphClass {
    pub const ALL_CLASSES: [GraphClass; 5] = [
        GraphClass::All,
        GraphClass::Perfect,
        GraphClass::Bipartite,
        GraphClass::Chordal,
        GraphClass::Cograph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::All => "all",
            GraphClass::Perfect => "perfect",
            GraphClass::Bipartite => "bipartite",
            GraphClass::Chordal => "chordal",
            GraphClass::Cograph => "cograph",
        }
    }

    /// Full membership test.
    pub fn contains(self, g: &Graph) -> bool {
        match self {
            GraphClass::All => true,
            GraphClass::Perfect => is_perfect(g),
            GraphClass::Bipartite => is_bipartite(g),
            GraphClass::Chordal => is_chordal(g),
            GraphClass::Cograph => is_cograph(g),
        }
    }

    /// Membership test via the slow subset-based oracles. Test use only.
    pub fn contains_naive(self, g: &Graph) -> bool {
        match self {
            GraphClass::All => true,
            GraphClass::Perfect => is_perfect_naive(g),
            GraphClass::Bipartite => is_bipartite_naive(g),
            GraphClass::Chordal => is_chordal_naive(g),
            GraphClass::Cograph => !has_induced_p4(g.adjacency()),
        }
    }

    pub fn contains_all_empty_graphs(self) -> bool {
        true
    }

    pub fn contains_all_complete_graphs(self) -> bool {
        self != GraphClass::Bipartite
    }

    pub fn closed_under_clique_union(self) -> bool {
        self != GraphClass::Bipartite
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphClass::ALL_CLASSES
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown graph class '{s}'")))
    }
}

/// Breadth-first 2-colouring on raw rows.
pub(crate) fn bipartite_rows(rows: &[u64]) -> bool {
    let n = rows.len();
    let mut unseen = low_mask(n);
    while unseen != 0 {
        let root = unseen.trailing_zeros() as usize;
        let mut side = [bit(root), 0u64];
        let mut frontier = bit(root);
        let mut parity = 0;
        unseen &= !bit(root);
        while frontier != 0 {
            let reach = Bits::new(frontier).fold(0, |acc, v| acc | rows[v]);
            if reach & side[parity] != 0 {
                return false;
            }
            frontier = reach & unseen;
            unseen &= !frontier;
            parity ^= 1;
            side[parity] |= frontier;
        }
    }
    true
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartite_rows(g.adjacency())
}

fn is_bipartite_naive(g: &Graph) -> bool {
    let n = g.order();
    (0u64..1 << n).any(|side| {
        (0..n).all(|v| {
            let same = if side & bit(v) != 0 { side } else { !side };
            g.adjacency()[v] & same == 0
        })
    })
}

/// Simplicial elimination on raw rows: chordal iff it empties the graph.
pub(crate) fn chordal_rows(rows: &[u64]) -> bool {
    let mut remaining = low_mask(rows.len());
    'outer: while remaining != 0 {
        for v in Bits::new(remaining) {
            let nb = rows[v] & remaining;
            if Bits::new(nb).all(|u| nb & !rows[u] & !bit(u) == 0) {
                remaining &= !bit(v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_chordal(g: &Graph) -> bool {
    chordal_rows(g.adjacency())
}

/// No induced cycle of length four or more, by subset scan. Test use only.
fn is_chordal_naive(g: &Graph) -> bool {
    let n = g.order();
    assert!(n <= 16, "naive chordality is limited to small graphs");
    (0u64..1 << n).all(|bits| {
        let s = VertexSet::from_bits(bits);
        s.len() < 4 || !induces_cycle(g.adjacency(), bits)
    })
}

/// Whether `set` induces a single cycle (connected, 2-regular, at least 3 vertices).
fn induces_cycle(rows: &[u64], set: u64) -> bool {
    if set.count_ones() < 3 || Bits::new(set).any(|v| (rows[v] & set).count_ones() != 2) {
        return false;
    }
    component_of(rows, set, set.trailing_zeros() as usize) == set
}

/// Vertices reachable from `root` inside `within`.
fn component_of(rows: &[u64], within: u64, root: usize) -> u64 {
    let mut seen = bit(root);
    let mut frontier = seen;
    while frontier != 0 {
        let reach = Bits::new(frontier).fold(0, |acc, v| acc | rows[v]) & within & !seen;
        seen |= reach;
        frontier = reach;
    }
    seen
}

/// Whether the four vertices in `quad` induce a path.
#[inline]
fn is_p4(rows: &[u64], quad: u64) -> bool {
    let mut edges2 = 0;
    for v in Bits::new(quad) {
        let d = (rows[v] & quad).count_ones();
        if d == 0 || d == 3 {
            return false;
        }
        edges2 += d;
    }
    edges2 == 6
}

/// Exhaustive scan for an induced P4.
pub(crate) fn has_induced_p4(rows: &[u64]) -> bool {
    let n = rows.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if is_p4(rows, bit(a) | bit(b) | bit(c) | bit(d)) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Induced P4 containing `v`.
pub(crate) fn has_induced_p4_through(rows: &[u64], v: usize) -> bool {
    let others: Vec<usize> = (0..rows.len()).filter(|&u| u != v).collect();
    for (x, &a) in others.iter().enumerate() {
        for (y, &b) in others.iter().enumerate().skip(x + 1) {
            for &c in &others[y + 1..] {
                if is_p4(rows, bit(v) | bit(a) | bit(b) | bit(c)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Every induced subgraph on two or more vertices has itself or its
/// complement disconnected.
fn cograph_rec(rows: &[u64], set: u64) -> bool {
    if set.count_ones() <= 1 {
        return true;
    }
    let first = component_of(rows, set, set.trailing_zeros() as usize);
    if first != set {
        let mut rest = set;
        while rest != 0 {
            let comp = component_of(rows, set, rest.trailing_zeros() as usize);
            if !cograph_rec(rows, comp) {
                return false;
            }
            rest &= !comp;
        }
        return true;
    }
    let mut comp_rows = [0u64; 64];
    complement_rows(rows, &mut comp_rows[..rows.len()]);
    let comp_rows = &comp_rows[..rows.len()];
    let first = component_of(comp_rows, set, set.trailing_zeros() as usize);
    if first == set {
        return false;
    }
    let mut rest = set;
    while rest != 0 {
        let comp = component_of(comp_rows, set, rest.trailing_zeros() as usize);
        if !cograph_rec(rows, comp) {
            return false;
        }
        rest &= !comp;
    }
    true
}

pub fn is_cograph(g: &Graph) -> bool {
    if g.order() <= 16 {
        !has_induced_p4(g.adjacency())
    } else {
        cograph_rec(g.adjacency(), low_mask(g.order()))
    }
}

/// Depth-first search for an induced cycle through `root` of odd length at
/// least `min_len`, using only vertices in `allowed`.
pub(crate) fn odd_hole_through(rows: &[u64], root: usize, allowed: u64, min_len: usize) -> bool {
    let root_nb = rows[root] & allowed;
    for first in Bits::new(root_nb) {
        // path = root, first; nothing interior yet
        if extend_hole(
            rows,
            root_nb,
            allowed,
            bit(root) | bit(first),
            0,
            first,
            2,
            min_len,
        ) {
            return true;
        }
    }
    false
}

/// `on_path` holds the path vertices, `interior_nb` the union of neighbourhoods
/// of the path's interior (everything strictly between root and `last`), and
/// `len` the number of path vertices.
#[allow(clippy::too_many_arguments)]
fn extend_hole(
    rows: &[u64],
    root_nb: u64,
    allowed: u64,
    on_path: u64,
    interior_nb: u64,
    last: usize,
    len: usize,
    min_len: usize,
) -> bool {
    let next = rows[last] & allowed & !on_path & !interior_nb;
    for x in Bits::new(next) {
        if root_nb & bit(x) != 0 {
            // closes a cycle of len + 1 vertices; a triangle when len == 2
            let cycle = len + 1;
            if cycle >= min_len && cycle % 2 == 1 {
                return true;
            }
        } else if extend_hole(
            rows,
            root_nb,
            allowed,
            on_path | bit(x),
            interior_nb | rows[last],
            x,
            len + 1,
            min_len,
        ) {
            return true;
        }
    }
    false
}

/// Perfectness of `rows` given that the graph without `v` is perfect:
/// no odd hole and no odd antihole through `v`.
pub(crate) fn perfect_after_extension_rows(rows: &[u64], scratch: &mut [u64], v: usize) -> bool {
    let n = rows.len();
    let all = low_mask(n);
    if odd_hole_through(rows, v, all, 5) {
        return false;
    }
    // C5 is self-complementary, so antiholes start at 7
    if n >= 7 {
        let comp = &mut scratch[..n];
        complement_rows(rows, comp);
        if odd_hole_through(comp, v, all, 7) {
            return false;
        }
    }
    true
}

/// Decides perfectness of `g` assuming `g - v` is perfect.
pub fn remains_perfect_after_extension(g: &Graph, v: usize) -> bool {
    assert!(v < g.order(), "vertex {v} out of range");
    let mut scratch = [0u64; 64];
    perfect_after_extension_rows(g.adjacency(), &mut scratch, v)
}

/// Perfectness without any precondition: each odd hole or antihole is found
/// from its lowest-index vertex.
pub fn is_perfect(g: &Graph) -> bool {
    let rows = g.adjacency();
    let n = rows.len();
    let mut comp = [0u64; 64];
    complement_rows(rows, &mut comp[..n]);
    (0..n).all(|v| {
        let above = low_mask(n) & !low_mask(v);
        !odd_hole_through(rows, v, above, 5) && !odd_hole_through(&comp[..n], v, above, 7)
    })
}

/// Subset-based oracle: no odd set of at least five vertices induces a cycle
/// or the complement of a cycle.
pub fn is_perfect_naive(g: &Graph) -> bool {
    let n = g.order();
    assert!(n <= 16, "naive perfectness is limited to small graphs");
    let rows = g.adjacency();
    let mut comp = [0u64; 64];
    complement_rows(rows, &mut comp[..n]);
    (0u64..1 << n).all(|bits| {
        let size = bits.count_ones();
        size < 5 || size % 2 == 0 || !(induces_cycle(rows, bits) || induces_cycle(&comp[..n], bits))
    })
}

/// Streams every clique of a graph (the empty set and singletons included)
/// exactly once, in depth-first ascending order.
pub struct Cliques<'g> {
    rows: &'g [u64],
    stack: Vec<(u64, u64)>,
}

impl Iterator for Cliques<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let (set, cand) = self.stack.pop()?;
        let mut rest = cand;
        // push in descending order so the lowest candidate pops first
        while rest != 0 {
            let c = 63 - rest.leading_zeros() as usize;
            rest &= !bit(c);
            let higher = !low_mask(c + 1);
            self.stack
                .push((set | bit(c), cand & self.rows[c] & higher));
        }
        Some(VertexSet::from_bits(set))
    }
}

pub fn enumerate_cliques(g: &Graph) -> Cliques<'_> {
    cliques_of_rows(g.adjacency())
}

pub(crate) fn cliques_of_rows(rows: &[u64]) -> Cliques<'_> {
    Cliques {
        rows,
        stack: vec![(0, low_mask(rows.len()))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
        let p: f64 = rng.gen_range(0.15..0.85);
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// All labelled graphs on `n` vertices.
    fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = Bits::new(mask).map(|b| pairs[b]).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    #[test]
    fn class_names_round_trip() {
        for c in GraphClass::ALL_CLASSES {
            assert_eq!(c.name().parse::<GraphClass>().unwrap(), c);
        }
        assert!("split".parse::<GraphClass>().is_err());
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&Graph::cycle(4).unwrap()));
        assert!(!is_bipartite(&Graph::cycle(5).unwrap()));
        assert!(is_bipartite(&Graph::empty(6).unwrap()));
        assert!(is_bipartite(&Graph::empty(0).unwrap()));
        let two_comps = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::cycle(3).unwrap())
            .unwrap();
        assert!(!is_bipartite(&two_comps));
    }

    #[test]
    fn chordal_examples() {
        assert!(!is_chordal(&Graph::cycle(4).unwrap()));
        let tree = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        assert!(is_chordal(&tree));
        // K4 minus edge 0-1: eliminate 0, then 1, then the triangle remains
        let diamond = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_chordal(&diamond));
        assert!(is_chordal(&Graph::complete(6).unwrap()));
    }

    #[test]
    fn cograph_examples() {
        assert!(!is_cograph(&Graph::path(4).unwrap()));
        assert!(is_cograph(&Graph::path(3).unwrap()));
        // complete multipartite K_{2,3,1}
        let parts = [0, 0, 1, 1, 1, 2];
        let mut edges = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if parts[a] != parts[b] {
                    edges.push((a, b));
                }
            }
        }
        assert!(is_cograph(&Graph::from_edges(6, &edges).unwrap()));
        assert!(!is_cograph(&Graph::cycle(5).unwrap()));
    }

    #[test]
    fn cograph_recursion_matches_p4_scan() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..2000 {
            let n = rng.gen_range(0..=9);
            let g = random_graph(&mut rng, n);
            let scan = !has_induced_p4(g.adjacency());
            assert_eq!(cograph_rec(g.adjacency(), low_mask(n)), scan);
            if n > 0 {
                let v = rng.gen_range(0..n);
                let without = g.remove_vertex(v).unwrap();
                if !has_induced_p4(without.adjacency()) {
                    assert_eq!(has_induced_p4_through(g.adjacency(), v), !scan);
                }
            }
        }
    }

    #[test]
    fn perfect_extension_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!((0..5).all(|v| !remains_perfect_after_extension(&c5, v)));
        let c7 = Graph::cycle(7).unwrap();
        assert!((0..7).all(|v| !remains_perfect_after_extension(&c7, v)));
        let wheel = Graph::cycle(4)
            .unwrap()
            .extend_with_vertex(VertexSet::full(4))
            .unwrap();
        assert!(remains_perfect_after_extension(&wheel, 4));
        assert!(is_perfect_naive(&wheel));
        let anti_c7 = c7.complement();
        assert!((0..7).all(|v| !remains_perfect_after_extension(&anti_c7, v)));
    }

    #[test]
    fn naive_perfect_examples() {
        assert!(!is_perfect_naive(&Graph::cycle(5).unwrap()));
        assert!(!is_perfect_naive(&Graph::cycle(7).unwrap().complement()));
        assert!(is_perfect_naive(&Graph::cycle(6).unwrap()));
        for n in 1..=6 {
            for g in all_labelled(n).filter(is_bipartite) {
                assert!(is_perfect_naive(&g));
            }
        }
    }

    #[test]
    fn subclasses_are_perfect() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..3000 {
            let n = rng.gen_range(1..=9);
            let g = random_graph(&mut rng, n);
            let perfect = is_perfect_naive(&g);
            if is_chordal(&g) || is_bipartite(&g) || is_cograph(&g) {
                assert!(perfect, "{g:?}");
            }
            assert_eq!(perfect, is_perfect_naive(&g.complement()));
            assert_eq!(perfect, is_perfect(&g));
            assert_eq!(is_chordal(&g), is_chordal_naive(&g));
            assert_eq!(is_bipartite(&g), is_bipartite_naive(&g));
        }
    }

    /// Every graph on at most 7 vertices, and random graphs up to 9, with each
    /// vertex in turn as the added one.
    #[test]
    fn incremental_perfectness_agrees_with_naive_oracle() {
        for n in 1..=7 {
            for g in all_labelled(n) {
                let v = n - 1;
                let parent = g.remove_vertex(v).unwrap();
                if is_perfect_naive(&parent) {
                    assert_eq!(remains_perfect_after_extension(&g, v), is_perfect_naive(&g));
                }
            }
        }
        let mut rng = StdRng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 3000 {
            let n = rng.gen_range(8..=9);
            let g = random_graph(&mut rng, n);
            let v = rng.gen_range(0..n);
            if is_perfect_naive(&g.remove_vertex(v).unwrap()) {
                assert_eq!(
                    remains_perfect_after_extension(&g, v),
                    is_perfect_naive(&g),
                    "{g:?} {v}"
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn clique_enumeration_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(enumerate_cliques(&k3).count(), 8);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(enumerate_cliques(&c4).count(), 9);
        let e3 = Graph::empty(3).unwrap();
        let got: Vec<_> = enumerate_cliques(&e3).collect();
        assert_eq!(
            got,
            vec![
                VertexSet::EMPTY,
                VertexSet::singleton(0),
                VertexSet::singleton(1),
                VertexSet::singleton(2)
            ]
        );
    }

    #[test]
    fn clique_enumeration_matches_subset_scan() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(0..=9);
            let g = random_graph(&mut rng, n);
            let listed: Vec<VertexSet> = enumerate_cliques(&g).collect();
            let mut sorted = listed.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), listed.len(), "duplicates");
            let brute: Vec<VertexSet> = (0u64..1 << n)
                .map(VertexSet::from_bits)
                .filter(|&s| s.iter().all(|v| g.degree_in(v, s) + 1 == s.len()))
                .collect();
            assert_eq!(sorted, brute);
        }
    }
}
