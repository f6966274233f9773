//! Canonical labelling by partition refinement and individualisation.
//!
//! The initial ordered partition groups vertices by (degree, triangle count).
//! It is refined to an equitable partition; each non-discrete partition
//! branches on the vertices of its first smallest non-singleton cell. Every
//! leaf yields a relabelled adjacency matrix and the lexicographically least
//! one is the canonical form. Leaves that tie with the current best give
//! automorphisms, and children in the same orbit of the automorphisms fixing
//! the current prefix are skipped.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{bit, Bits, Graph};

/// Canonical-form encoding; equal iff the graphs are isomorphic.
///
/// The bytes are the graph6 string of the canonical relabelling, so keys sort
/// the same way the lines of a level file do.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical graph this key encodes.
    pub fn to_graph(&self) -> Graph {
        Graph::from_graph6(self.as_str()).expect("keys are valid graph6")
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.as_str())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    key_of_canonical(&canonical_form(g))
}

/// Key of a graph that is already in canonical form.
pub(crate) fn key_of_canonical(g: &Graph) -> CanonicalKey {
    CanonicalKey(g.to_graph6().into_bytes().into_boxed_slice())
}

/// The canonical relabelling of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let lab = canonical_labeling(g);
    g.relabel(&lab).expect("labelling is a permutation")
}

/// `lab[p]` is the vertex of `g` placed at canonical position `p`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let rows = g.adjacency();
    let n = rows.len();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut search = Search {
        rows,
        n,
        best: None,
        autos: Vec::new(),
    };
    let mut cells = initial_partition(rows);
    let mut pending = vec![true; cells.len()];
    refine(rows, &mut cells, &mut pending);
    let mut prefix = Vec::with_capacity(n);
    search.descend(cells, &mut prefix);
    search.best.expect("search visits at least one leaf").1
}

/// Cells ordered by (degree, triangles through the vertex).
fn initial_partition(rows: &[u64]) -> Vec<u64> {
    let mut keyed: Vec<((u32, u32), usize)> = rows
        .iter()
        .enumerate()
        .map(|(v, &r)| {
            let tri: u32 = Bits::new(r).map(|u| (rows[u] & r).count_ones()).sum();
            ((r.count_ones(), tri / 2), v)
        })
        .collect();
    keyed.sort_unstable();
    let mut cells = Vec::new();
    let mut prev = None;
    for (key, v) in keyed {
        if prev == Some(key) {
            *cells.last_mut().unwrap() |= bit(v);
        } else {
            cells.push(bit(v));
            prev = Some(key);
        }
    }
    cells
}

/// Refines `cells` to the coarsest equitable refinement, always taking the
/// first pending cell as the splitter. Fragments are ordered by ascending
/// neighbour count, so the result depends only on the graph structure.
fn refine(rows: &[u64], cells: &mut Vec<u64>, pending: &mut Vec<bool>) {
    let n = rows.len();
    let mut scratch: Vec<(u32, usize)> = Vec::with_capacity(n);
    let mut fragments: Vec<u64> = Vec::with_capacity(n);
    while cells.len() < n {
        let Some(s) = pending.iter().position(|&p| p) else {
            break;
        };
        pending[s] = false;
        let splitter = cells[s];
        let mut idx = 0;
        while idx < cells.len() {
            let cell = cells[idx];
            if cell.count_ones() == 1 {
                idx += 1;
                continue;
            }
            scratch.clear();
            scratch.extend(Bits::new(cell).map(|x| ((rows[x] & splitter).count_ones(), x)));
            let first = scratch[0].0;
            if scratch.iter().all(|&(c, _)| c == first) {
                idx += 1;
                continue;
            }
            scratch.sort_unstable();
            fragments.clear();
            let mut prev = u32::MAX;
            for &(c, x) in &scratch {
                if c == prev {
                    *fragments.last_mut().unwrap() |= bit(x);
                } else {
                    fragments.push(bit(x));
                    prev = c;
                }
            }
            let count = fragments.len();
            cells.splice(idx..=idx, fragments.iter().copied());
            pending.splice(idx..=idx, std::iter::repeat_n(true, count));
            idx += count;
        }
    }
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) {
        if cells.len() == self.n {
            let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            self.leaf(lab);
            return;
        }
        let (target, cell) = cells
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|&(i, c)| (c.count_ones(), i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried: Vec<usize> = Vec::new();
        for v in Bits::new(cell) {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            child[target] = bit(v);
            child.insert(target + 1, cell & !bit(v));
            let mut pending = vec![false; child.len()];
            pending[target] = true;
            refine(self.rows, &mut child, &mut pending);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// Whether `v` shares an orbit with an already explored sibling under the
    /// automorphisms found so far that fix `prefix` pointwise.
    fn equivalent_to_tried(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&p| gamma[p] as usize != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x as u8), find(&mut parent, y));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v as u8);
        tried.iter().any(|&w| find(&mut parent, w as u8) == rv)
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let mut inv = [0u8; 64];
        for (p, &v) in lab.iter().enumerate() {
            inv[v] = p as u8;
        }
        let code: Vec<u64> = lab
            .iter()
            .map(|&v| Bits::new(self.rows[v]).fold(0u64, |acc, u| acc | bit(inv[u] as usize)))
            .collect();
        match &self.best {
            None => self.best = Some((code, lab)),
            Some((best_code, best_lab)) => match code.cmp(best_code) {
                Ordering::Less => self.best = Some((code, lab)),
                Ordering::Equal => {
                    let mut gamma = vec![0u8; self.n];
                    for (p, &v) in best_lab.iter().enumerate() {
                        gamma[v] = lab[p] as u8;
                    }
                    if gamma.iter().enumerate().any(|(x, &y)| x != y as usize) {
                        self.autos.push(gamma);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }
}
