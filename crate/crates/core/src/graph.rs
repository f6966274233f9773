//! Small simple graphs stored as one `u64` neighbourhood mask per vertex.
//!
//! Every graph in this crate has at most [`MAX_ORDER`] vertices, so a vertex
//! set is a single machine word and most set-level queries are a popcount.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported graph order.
pub const MAX_ORDER: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u64);

impl Bits {
    #[inline]
    pub fn new(word: u64) -> Self {
        Bits(word)
    }
}

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// A set of vertex indices of some host graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | bit(v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !bit(v))
    }

    #[inline]
    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, i.e. the smallest order that can host this set.
    #[inline]
    pub const fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    #[inline]
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().fold(0, |acc, v| {
            assert!(v < MAX_ORDER, "vertex {v} exceeds the 64-vertex cap");
            acc | bit(v)
        }))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;

    fn into_iter(self) -> Bits {
        Bits(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An immutable simple undirected graph on vertices `0..order`.
///
/// `adj[v]` is the neighbourhood of `v`. Construction checks symmetry,
/// irreflexivity and that no bit reaches past `order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Box<[u64]>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        Ok(Graph {
            adj: vec![0; n].into_boxed_slice(),
        })
    }

    /// Builds a graph from neighbourhood masks, validating them.
    pub fn from_adjacency(rows: &[u64]) -> Result<Graph> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        let mask = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::InvalidAdjacency(format!(
                    "row {v} has bits beyond order {n}"
                )));
            }
            if row & bit(v) != 0 {
                return Err(Error::InvalidAdjacency(format!("self-loop at {v}")));
            }
            for u in Bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::InvalidAdjacency(format!(
                        "edge {v}-{u} is not symmetric"
                    )));
                }
            }
        }
        Ok(Graph { adj: rows.into() })
    }

    /// Trusted constructor for rows produced inside the crate.
    pub(crate) fn from_rows_unchecked(rows: &[u64]) -> Graph {
        let g = Graph { adj: rows.into() };
        debug_assert!(g.check_invariants(), "malformed adjacency {rows:?}");
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut rows = vec![0u64; n];
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidAdjacency(format!("self-loop at {u}")));
            }
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        }
        Ok(Graph {
            adj: rows.into_boxed_slice(),
        })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        let full = low_mask(n);
        let rows: Vec<u64> = (0..n).map(|v| full & !bit(v)).collect();
        Ok(Graph::from_rows_unchecked(&rows))
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParams(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order();
        let total = n + other.order();
        if total > MAX_ORDER {
            return Err(Error::Capacity { order: total });
        }
        let mut rows = self.adj.to_vec();
        rows.extend(other.adj.iter().map(|&r| r << n));
        Ok(Graph::from_rows_unchecked(&rows))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// `|N(v) ∩ s|`.
    #[inline]
    pub fn degree_in(&self, v: usize, s: VertexSet) -> usize {
        (self.adj[v] & s.0).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Adds vertex `order()` adjacent exactly to `s`.
    pub fn extend_with_vertex(&self, s: VertexSet) -> Result<Graph> {
        let n = self.order();
        if n + 1 > MAX_ORDER {
            return Err(Error::Capacity { order: n + 1 });
        }
        if s.span() > n {
            return Err(Error::VertexOutOfRange {
                vertex: s.span() - 1,
                order: n,
            });
        }
        let mut rows = Vec::with_capacity(n + 1);
        rows.extend(
            self.adj
                .iter()
                .enumerate()
                .map(|(u, &r)| if s.contains(u) { r | bit(n) } else { r }),
        );
        rows.push(s.0);
        Ok(Graph::from_rows_unchecked(&rows))
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.order());
        let rows: Vec<u64> = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &r)| !r & full & !bit(v))
            .collect();
        Graph::from_rows_unchecked(&rows)
    }

    /// Subgraph induced by `s`, vertices renumbered in ascending original order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if s.span() > self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: s.span() - 1,
                order: self.order(),
            });
        }
        let members: Vec<usize> = s.iter().collect();
        let rows: Vec<u64> = members
            .iter()
            .map(|&v| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u64, |acc, (p, _)| acc | bit(p))
            })
            .collect();
        Ok(Graph::from_rows_unchecked(&rows))
    }

    /// Deletes vertex `v`; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            });
        }
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Graph whose vertex `p` is this graph's vertex `perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::InvalidParams(format!(
                "permutation has length {}, graph has order {n}",
                perm.len()
            )));
        }
        let mut inv = vec![usize::MAX; n];
        for (p, &v) in perm.iter().enumerate() {
            if v >= n || inv[v] != usize::MAX {
                return Err(Error::InvalidParams("not a permutation".into()));
            }
            inv[v] = p;
        }
        let rows: Vec<u64> = perm
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |acc, u| acc | bit(inv[u])))
            .collect();
        Ok(Graph::from_rows_unchecked(&rows))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    fn check_invariants(&self) -> bool {
        let n = self.order();
        n <= MAX_ORDER
            && self.adj.iter().enumerate().all(|(v, &r)| {
                r & !low_mask(n) == 0
                    && r & bit(v) == 0
                    && Bits(r).all(|u| self.adj[u] & bit(v) != 0)
            })
    }

    /// Standard graph6 encoding without header or newline.
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
        if n <= 62 {
            out.push(63 + n as u8);
        } else {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(63 + ((n >> shift) & 0x3f) as u8);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(63 + acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(63 + (acc << (6 - filled)));
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    /// Parses one graph6 string. Surrounding whitespace is ignored.
    pub fn from_graph6(text: &str) -> Result<Graph> {
        let bytes = text.trim().as_bytes();
        let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
        let Some(&first) = bytes.first() else {
            return Err(Error::Graph6("empty input".into()));
        };
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(Error::Graph6(
                "byte outside the printable range 63..=126".into(),
            ));
        }
        let (n, body) = if first < 126 {
            ((first - 63) as usize, &bytes[1..])
        } else {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(Error::Graph6("unsupported or truncated order field".into()));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        };
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        let nbits = n * n.saturating_sub(1) / 2;
        let expected = nbits.div_ceil(6);
        if body.len() != expected {
            return Err(Error::Graph6(format!(
                "order {n} needs {expected} data bytes, found {}",
                body.len()
            )));
        }
        let mut rows = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6] - 63;
                if byte & (0x20 >> (k % 6)) != 0 {
                    rows[i] |= bit(j);
                    rows[j] |= bit(i);
                }
                k += 1;
            }
        }
        if nbits % 6 != 0 {
            let last = body[expected - 1] - 63;
            if last & (0x3f >> (nbits % 6)) != 0 {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
        }
        Ok(Graph::from_rows_unchecked(&rows))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_graph6())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn empty_graph_cases() {
        let g0 = Graph::empty(0).unwrap();
        assert_eq!(g0.order(), 0);
        assert!(g0.adjacency().is_empty());
        let g3 = Graph::empty(3).unwrap();
        assert!((0..3).all(|v| g3.degree(v) == 0));
        assert!(matches!(
            Graph::empty(65),
            Err(Error::Capacity { order: 65 })
        ));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn extend_with_vertex_cases() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(
            k1.extend_with_vertex(VertexSet::EMPTY).unwrap(),
            Graph::empty(2).unwrap()
        );
        assert_eq!(
            k1.extend_with_vertex(set(&[0])).unwrap(),
            Graph::complete(2).unwrap()
        );

        let p3 = Graph::path(3).unwrap();
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3), (2, 3)]).unwrap();
        let ext = p3.extend_with_vertex(set(&[0, 2])).unwrap();
        assert_eq!(ext, c4);
        // the parent is untouched
        assert_eq!(p3, Graph::path(3).unwrap());

        assert!(matches!(
            p3.extend_with_vertex(set(&[3])),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        ));
        let k64 = Graph::empty(64).unwrap();
        assert!(matches!(
            k64.extend_with_vertex(VertexSet::EMPTY),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn complement_cases() {
        assert_eq!(
            Graph::complete(3).unwrap().complement(),
            Graph::empty(3).unwrap()
        );
        // C5 complement: i ~ i+2 is again a 5-cycle, 0-2-4-1-3-0
        let c5 = Graph::cycle(5).unwrap();
        let relabelled = c5.complement().relabel(&[0, 2, 4, 1, 3]).unwrap();
        assert_eq!(relabelled, c5);
        // P4 complement 1-3-0-2 is again a path
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.complement().relabel(&[1, 3, 0, 2]).unwrap(), p4);
    }

    #[test]
    fn induced_subgraph_cases() {
        let c5 = Graph::cycle(5).unwrap();
        for drop in 0..5 {
            let sub = c5.induced_subgraph(c5.vertices().without(drop)).unwrap();
            assert_eq!(sub.edge_count(), 3);
            assert_eq!(sub.degree_sequence(), vec![1, 1, 2, 2]);
        }
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap(), c5);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            k4.induced_subgraph(set(&[1, 3])).unwrap(),
            Graph::complete(2).unwrap()
        );
    }

    #[test]
    fn degree_in_cases() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.degree_in(0, set(&[1, 2])), 2);
        let e = Graph::empty(5).unwrap();
        assert!((0..5).all(|v| e.degree_in(v, e.vertices()) == 0));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.degree_in(0, set(&[1, 2, 3])), 1);
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(Graph::empty(0).unwrap().to_graph6(), "?");
        assert_eq!(Graph::empty(1).unwrap().to_graph6(), "@");
        assert_eq!(Graph::complete(3).unwrap().to_graph6(), "Bw");
        // C5: x(0,1) x(1,2) x(2,3) x(0,4) x(3,4) set
        assert_eq!(Graph::complete(4).unwrap().to_graph6(), "C~");
        assert_eq!(Graph::cycle(5).unwrap().to_graph6(), "Dhc");
        assert_eq!(
            Graph::from_graph6("Bw").unwrap(),
            Graph::complete(3).unwrap()
        );
    }

    #[test]
    fn graph6_long_form_orders() {
        for n in [62, 63, 64] {
            let g = Graph::cycle(n).unwrap();
            let s = g.to_graph6();
            if n >= 63 {
                assert!(s.starts_with('~'));
            }
            assert_eq!(Graph::from_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn graph6_malformed() {
        assert!(Graph::from_graph6("").is_err());
        assert!(Graph::from_graph6("B").is_err());
        assert!(Graph::from_graph6("Bww").is_err());
        assert!(Graph::from_graph6("B\x7f").is_err());
        // order 2 has one data bit; 'A' + 1 = 'B' sets a padding bit
        assert!(Graph::from_graph6("AB").is_err());
        assert!(matches!(
            Graph::from_graph6("~?@@"),
            Err(Error::Capacity { order: 65 })
        ));
    }

    #[test]
    fn from_adjacency_rejects_asymmetry() {
        assert!(Graph::from_adjacency(&[0b10, 0]).is_err());
        assert!(Graph::from_adjacency(&[0b1]).is_err());
        assert!(Graph::from_adjacency(&[0b100, 0]).is_err());
        assert!(Graph::from_adjacency(&[0b10, 0b01]).is_ok());
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[k] {
                                edges.push((i, j));
                            }
                            k += 1;
                        }
                    }
                    Graph::from_edges(n, &edges).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn graph6_round_trip(g in arb_graph(20)) {
            prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
        }

        #[test]
        fn structural_identities(g in arb_graph(12)) {
            prop_assert!(g.check_invariants());
            prop_assert_eq!(g.complement().complement(), g.clone());
            prop_assert_eq!(g.induced_subgraph(g.vertices()).unwrap(), g.clone());
            for v in 0..g.order() {
                prop_assert_eq!(g.degree_in(v, g.vertices()), g.degree(v));
            }
        }
    }
}
