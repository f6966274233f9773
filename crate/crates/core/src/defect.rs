//! Detection of k-sparse and k-dense vertex sets.
//!
//! A set is k-sparse when every member has at most `k` neighbours inside it
//! and k-dense when every member misses at most `k` other members. Dense
//! queries run the sparse search on complemented rows.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Bits, Graph, VertexSet};

/// `(k, i, j)`: forbid k-dense i-sets and k-sparse j-sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DefectParams {
    k: usize,
    i: usize,
    j: usize,
}

impl DefectParams {
    pub fn new(k: usize, i: usize, j: usize) -> Result<Self> {
        if i < k + 2 || j < k + 2 {
            return Err(Error::InvalidParams(format!(
                "need i >= k+2 and j >= k+2, got k={k} i={i} j={j}"
            )));
        }
        Ok(DefectParams { k, i, j })
    }

    /// Defectiveness level.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Size of the forbidden k-dense sets.
    pub fn i(&self) -> usize {
        self.i
    }

    /// Size of the forbidden k-sparse sets.
    pub fn j(&self) -> usize {
        self.j
    }
}

impl fmt::Display for DefectParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} i={} j={}", self.k, self.i, self.j)
    }
}

pub fn is_k_sparse(g: &Graph, s: VertexSet, k: usize) -> bool {
    s.iter().all(|v| g.degree_in(v, s) <= k)
}

pub fn is_k_dense(g: &Graph, s: VertexSet, k: usize) -> bool {
    let size = s.len();
    s.iter().all(|v| size - 1 - g.degree_in(v, s) <= k)
}

pub fn is_k_defective(g: &Graph, s: VertexSet, k: usize) -> bool {
    is_k_sparse(g, s, k) || is_k_dense(g, s, k)
}

/// Complemented rows, restricted to the first `rows.len()` vertices.
pub(crate) fn complement_rows(rows: &[u64], out: &mut [u64]) {
    let full = low_mask(rows.len());
    for (v, (&r, o)) in rows.iter().zip(out.iter_mut()).enumerate() {
        *o = !r & full & !bit(v);
    }
}

/// Searches `rows` for a k-sparse set of exactly `size` vertices that contains
/// every vertex of `required` (which must itself be k-sparse). Returns the
/// first one found in ascending-index branching order.
pub(crate) fn find_sparse_set(rows: &[u64], k: usize, size: usize, required: u64) -> Option<u64> {
    let n = rows.len();
    if size > n {
        return None;
    }
    if (required.count_ones() as usize) > size {
        return None;
    }
    debug_assert!(Bits::new(required).all(|v| (rows[v] & required).count_ones() as usize <= k));
    let pool = compatible(rows, k, required, low_mask(n) & !required);
    grow_sparse(rows, k, size, required, pool)
}

/// Members of `set` that already have `k` neighbours inside it.
#[inline]
fn saturated(rows: &[u64], k: usize, set: u64) -> u64 {
    Bits::new(set)
        .filter(|&w| (rows[w] & set).count_ones() as usize >= k)
        .fold(0, |acc, w| acc | bit(w))
}

/// Candidates from `pool` that can join `set` while keeping it k-sparse.
#[inline]
fn compatible(rows: &[u64], k: usize, set: u64, pool: u64) -> u64 {
    let sat = saturated(rows, k, set);
    Bits::new(pool)
        .filter(|&x| rows[x] & sat == 0 && (rows[x] & set).count_ones() as usize <= k)
        .fold(0, |acc, x| acc | bit(x))
}

fn grow_sparse(rows: &[u64], k: usize, size: usize, set: u64, mut pool: u64) -> Option<u64> {
    let have = set.count_ones() as usize;
    if have == size {
        return Some(set);
    }
    while pool != 0 {
        if have + (pool.count_ones() as usize) < size {
            return None;
        }
        let u = pool.trailing_zeros() as usize;
        pool &= pool - 1;
        let next = set | bit(u);
        let next_pool = compatible(rows, k, next, pool);
        if let Some(found) = grow_sparse(rows, k, size, next, next_pool) {
            return Some(found);
        }
    }
    None
}

/// Calls `f` on every k-sparse set of exactly `size` vertices until it
/// returns `false`. Returns `false` if stopped early.
fn for_each_sparse_set(
    rows: &[u64],
    k: usize,
    size: usize,
    set: u64,
    mut pool: u64,
    f: &mut impl FnMut(u64) -> bool,
) -> bool {
    let have = set.count_ones() as usize;
    if have == size {
        return f(set);
    }
    while pool != 0 {
        if have + (pool.count_ones() as usize) < size {
            break;
        }
        let u = pool.trailing_zeros() as usize;
        pool &= pool - 1;
        let next = set | bit(u);
        let next_pool = compatible(rows, k, next, pool);
        if !for_each_sparse_set(rows, k, size, next, next_pool, f) {
            return false;
        }
    }
    true
}

/// Forbidden-set conditions for one-vertex extensions of a fixed parent,
/// as masks over the parent's vertices.
///
/// Each k-sparse (j-1)-set `T` of the parent gives `(T, tight)`, where `tight`
/// holds the members with `k` neighbours in `T`: a new vertex adjacent to `S`
/// completes a sparse j-set iff `S` misses `tight` and meets `T` in at most
/// `k` vertices. Dense (i-1)-sets give the same test on the non-neighbours.
#[derive(Clone, Debug, Default)]
pub(crate) struct ExtensionConstraints {
    k: u32,
    sparse: Vec<(u64, u64)>,
    dense: Vec<(u64, u64)>,
}

impl ExtensionConstraints {
    /// Collects the conditions, or `None` if there are more than `limit`.
    pub(crate) fn new(rows: &[u64], p: &DefectParams, limit: usize) -> Option<Self> {
        let n = rows.len();
        let mut out = ExtensionConstraints {
            k: p.k as u32,
            ..Default::default()
        };
        let collect = |rows: &[u64], size: usize, list: &mut Vec<(u64, u64)>, budget: usize| {
            if size > n {
                return true;
            }
            for_each_sparse_set(rows, p.k, size, 0, low_mask(n), &mut |t| {
                list.push((t, saturated(rows, p.k, t)));
                list.len() <= budget
            })
        };
        if !collect(rows, p.j - 1, &mut out.sparse, limit) {
            return None;
        }
        let mut comp = [0u64; 64];
        complement_rows(rows, &mut comp[..n]);
        if !collect(
            &comp[..n],
            p.i - 1,
            &mut out.dense,
            limit - out.sparse.len(),
        ) {
            return None;
        }
        Some(out)
    }

    /// Whether the child with new neighbourhood `s` has a forbidden set
    /// through the new vertex.
    #[inline]
    pub(crate) fn forbidden(&self, s: u64) -> bool {
        let k = self.k;
        self.sparse
            .iter()
            .any(|&(t, tight)| s & tight == 0 && (s & t).count_ones() <= k)
            || self.dense.iter().any(|&(d, tight)| {
                let miss = d & !s;
                miss & tight == 0 && miss.count_ones() <= k
            })
    }
}

/// Forbidden-set test restricted to sets through `v`, on raw rows.
///
/// `scratch` must hold at least `rows.len()` words; it receives the complement.
pub(crate) fn forbidden_through_rows(
    rows: &[u64],
    scratch: &mut [u64],
    v: usize,
    p: &DefectParams,
) -> bool {
    let n = rows.len();
    if p.j <= n && find_sparse_set(rows, p.k, p.j, bit(v)).is_some() {
        return true;
    }
    if p.i <= n {
        let comp = &mut scratch[..n];
        complement_rows(rows, comp);
        if find_sparse_set(comp, p.k, p.i, bit(v)).is_some() {
            return true;
        }
    }
    false
}

/// Whether `g` has a k-dense i-set or a k-sparse j-set containing `v`.
///
/// When `g - v` is known to be free of both, this decides whether `g` is.
pub fn has_forbidden_set_through(g: &Graph, v: usize, p: &DefectParams) -> bool {
    assert!(v < g.order(), "vertex {v} out of range");
    let mut scratch = [0u64; 64];
    forbidden_through_rows(g.adjacency(), &mut scratch, v, p)
}

/// Whether `g` contains any forbidden set, without the incremental
/// precondition. Uses the pruned search over all sets.
pub fn has_forbidden_set(g: &Graph, p: &DefectParams) -> bool {
    let rows = g.adjacency();
    let n = rows.len();
    if p.j <= n && find_sparse_set(rows, p.k, p.j, 0).is_some() {
        return true;
    }
    if p.i <= n {
        let mut comp = [0u64; 64];
        complement_rows(rows, &mut comp[..n]);
        if find_sparse_set(&comp[..n], p.k, p.i, 0).is_some() {
            return true;
        }
    }
    false
}

/// Exhaustive check over every `i`- and `j`-subset. Only for small graphs.
pub fn brute_force_forbidden(g: &Graph, p: &DefectParams) -> bool {
    let n = g.order();
    assert!(n <= 24, "brute force is limited to small graphs");
    (0u64..1 << n).any(|bits| {
        let s = VertexSet::from_bits(bits);
        (s.len() == p.i && is_k_dense(g, s, p.k)) || (s.len() == p.j && is_k_sparse(g, s, p.k))
    })
}

/// Some k-sparse or k-dense set of exactly `t` vertices, if one exists.
pub fn find_k_defective_set(g: &Graph, k: usize, t: usize) -> Option<VertexSet> {
    assert!(t >= 1, "set size must be positive");
    let rows = g.adjacency();
    let n = rows.len();
    if let Some(s) = find_sparse_set(rows, k, t, 0) {
        return Some(VertexSet::from_bits(s));
    }
    let mut comp = [0u64; 64];
    complement_rows(rows, &mut comp[..n]);
    find_sparse_set(&comp[..n], k, t, 0).map(VertexSet::from_bits)
}
