//! Defective cocolorings: partitions of the vertex set into at most `m`
//! classes that are each k-sparse or k-dense, and the search for
//! `c_k^G(m)`, the largest order at which every graph of the class has one.
//!
//! A graph of order `N` with a k-defective `t`-set `T`, `t = N - c(m-1)`,
//! is always m-cocolorable: `G - T` has `c(m-1)` vertices and takes the other
//! `m - 1` classes. So the graphs that can fail at order `N` all lie in
//! `T_N(k,t,t)`, which the generator enumerates.

use std::fmt;

use rayon::prelude::*;

use crate::classes::GraphClass;
use crate::error::{Error, Result};
use crate::generator::{Generator, LevelSet, Outcome, RunLimits, SearchParams};
use crate::graph::{bit, Bits, Graph, VertexSet, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Sparse,
    Dense,
}

/// Classes of a k-defective m-cocoloring; empty classes are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocoloring {
    pub classes: Vec<(VertexSet, Flavor)>,
}

impl Cocoloring {
    /// Whether this is a partition of `g` into at most `m` classes of the
    /// stated flavors.
    pub fn is_valid(&self, g: &Graph, k: usize, m: usize) -> bool {
        if self.classes.len() > m {
            return false;
        }
        let mut seen = VertexSet::EMPTY;
        for &(s, flavor) in &self.classes {
            if !s.intersection(seen).is_empty() {
                return false;
            }
            seen = seen.union(s);
            let ok = match flavor {
                Flavor::Sparse => crate::defect::is_k_sparse(g, s, k),
                Flavor::Dense => crate::defect::is_k_dense(g, s, k),
            };
            if !ok {
                return false;
            }
        }
        seen == g.vertices()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CocolorParams {
    pub class: GraphClass,
    pub k: usize,
    pub m: usize,
}

impl CocolorParams {
    pub fn new(class: GraphClass, k: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("need at least one color".into()));
        }
        Ok(CocolorParams { class, k, m })
    }
}

impl fmt::Display for CocolorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[k={}][m={}][class={}]", self.k, self.m, self.class)
    }
}

#[derive(Clone, Copy)]
struct Part {
    members: u64,
    sparse: bool,
    dense: bool,
}

struct Search<'a> {
    rows: &'a [u64],
    comp: &'a [u64],
    order: Vec<usize>,
    k: u32,
    m: usize,
    parts: Vec<Part>,
}

impl Search<'_> {
    /// Whether `v` can join `p` and which flavors survive.
    fn join(&self, p: &Part, v: usize) -> Option<Part> {
        let s = p.members;
        let k = self.k;
        let sparse = p.sparse
            && (self.rows[v] & s).count_ones() <= k
            && Bits::new(self.rows[v] & s).all(|u| (self.rows[u] & s).count_ones() < k);
        let dense = p.dense
            && (self.comp[v] & s).count_ones() <= k
            && Bits::new(self.comp[v] & s).all(|u| (self.comp[u] & s).count_ones() < k);
        (sparse || dense).then_some(Part {
            members: s | bit(v),
            sparse,
            dense,
        })
    }

    fn assign(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        for c in 0..self.parts.len() {
            if let Some(next) = self.join(&self.parts[c], v) {
                let saved = std::mem::replace(&mut self.parts[c], next);
                if self.assign(idx + 1) {
                    return true;
                }
                self.parts[c] = saved;
            }
        }
        // opening a class: all empty classes are interchangeable
        if self.parts.len() < self.m {
            self.parts.push(Part {
                members: bit(v),
                sparse: true,
                dense: true,
            });
            if self.assign(idx + 1) {
                return true;
            }
            self.parts.pop();
        }
        false
    }
}

/// An exact search for a k-defective cocoloring with at most `m` classes.
pub fn find_cocoloring(g: &Graph, k: usize, m: usize) -> Option<Cocoloring> {
    let rows = g.adjacency();
    let n = rows.len();
    if n == 0 {
        return Some(Cocoloring {
            classes: Vec::new(),
        });
    }
    let mut comp = [0u64; MAX_ORDER];
    crate::defect::complement_rows(rows, &mut comp[..n]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(rows[v].count_ones()), v));
    let mut search = Search {
        rows,
        comp: &comp[..n],
        order,
        k: k.min(MAX_ORDER) as u32,
        m,
        parts: Vec::with_capacity(m),
    };
    if !search.assign(0) {
        return None;
    }
    let classes = search
        .parts
        .iter()
        .map(|p| {
            let flavor = if p.sparse {
                Flavor::Sparse
            } else {
                Flavor::Dense
            };
            (VertexSet::from_bits(p.members), flavor)
        })
        .collect();
    Some(Cocoloring { classes })
}

pub fn is_cocolorable(g: &Graph, k: usize, m: usize) -> bool {
    find_cocoloring(g, k, m).is_some()
}

/// Forbidden-set parameters whose `T_order` holds every graph of `order`
/// that might not be m-cocolorable, given `prev_c = c_k(m-1)`. `None` when
/// every graph of that order is m-cocolorable outright.
pub fn candidate_params(
    p: &CocolorParams,
    prev_c: usize,
    order: usize,
) -> Result<Option<SearchParams>> {
    let t = order.saturating_sub(prev_c);
    if t <= p.k + 1 {
        // every t-set is k-defective
        return Ok(None);
    }
    SearchParams::new(p.class, p.k, t, t).map(Some)
}

/// Where the graphs to test come from.
#[derive(Clone, Copy, Debug)]
pub enum Candidates<'a> {
    /// Generate all of `T_order` from `K_1`.
    Generate,
    /// Generate only the graphs of `T_order` containing a member of the seed.
    Seeded(&'a LevelSet),
    /// Test exactly these graphs.
    Supplied(&'a LevelSet),
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub order: usize,
    /// Graphs tested.
    pub candidates: usize,
    /// Tested graphs with no cocoloring.
    pub witnesses: LevelSet,
    /// True when every graph of the order in the class was covered.
    pub exhaustive: bool,
}

/// Non-m-cocolorable graphs of order `order` in the class.
pub fn find_witnesses(
    p: &CocolorParams,
    prev_c: usize,
    order: usize,
    candidates: Candidates<'_>,
    limits: RunLimits,
) -> Result<WitnessReport> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidParams(format!(
            "order {order} is out of range"
        )));
    }
    let empty = |exhaustive| WitnessReport {
        order,
        candidates: 0,
        witnesses: LevelSet::empty(order),
        exhaustive,
    };
    let (pool, exhaustive) = match candidates {
        Candidates::Supplied(level) => {
            if level.order() != order {
                return Err(Error::InvalidParams(format!(
                    "candidates have order {}, expected {order}",
                    level.order()
                )));
            }
            if let Some((key, _)) = level.iter().find(|(_, g)| !p.class.contains(g)) {
                return Err(Error::InvalidParams(format!(
                    "candidate {key} is not {}",
                    p.class
                )));
            }
            (level.clone(), false)
        }
        Candidates::Generate | Candidates::Seeded(_) => {
            let Some(sp) = candidate_params(p, prev_c, order)? else {
                return Ok(empty(true));
            };
            let gen = Generator::new(sp).limits(limits);
            let (start, complete) = match candidates {
                Candidates::Seeded(seed) => (seed.clone(), false),
                _ => (LevelSet::k1(), true),
            };
            if start.order() > order {
                return Err(Error::InvalidParams(format!(
                    "seed order {} exceeds {order}",
                    start.order()
                )));
            }
            match gen.run_from(start, complete, Some(order))? {
                Outcome::Reached { last, .. } => (last, complete),
                Outcome::Finished(_) => return Ok(empty(complete)),
                Outcome::Stopped { reason, last, .. } => {
                    return Err(Error::NeedsCandidates {
                        order,
                        reason: format!("{reason} at order {}", last.order() + 1),
                    })
                }
            }
        }
    };
    let witnesses: Vec<Graph> = run_with_threads(limits.threads, || {
        pool.graphs()
            .par_iter()
            .filter(|g| !is_cocolorable(g, p.k, p.m))
            .cloned()
            .collect()
    })?;
    Ok(WitnessReport {
        order,
        candidates: pool.len(),
        witnesses: LevelSet::from_graphs(order, witnesses)?,
        exhaustive,
    })
}

fn run_with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
            .install(f)),
        None => Ok(f()),
    }
}

/// Whether every graph of the class of order `order` is m-cocolorable.
pub fn check_all_colorable(
    p: &CocolorParams,
    prev_c: usize,
    order: usize,
    limits: RunLimits,
) -> Result<bool> {
    Ok(
        find_witnesses(p, prev_c, order, Candidates::Generate, limits)?
            .witnesses
            .is_empty(),
    )
}

#[derive(Clone, Debug)]
pub struct CValueCheck {
    /// Every graph of order `n` is m-cocolorable.
    pub all_colorable: bool,
    /// Witnesses found at order `n + 1`.
    pub above: WitnessReport,
}

impl CValueCheck {
    /// Whether the check establishes `c = n`.
    pub fn holds(&self) -> bool {
        self.all_colorable && !self.above.witnesses.is_empty()
    }
}

/// Checks `c_k^G(m) = n`: order `n` exhaustively, order `n + 1` over the
/// given candidates.
pub fn verify_c_value(
    p: &CocolorParams,
    prev_c: usize,
    n: usize,
    above: Candidates<'_>,
    limits: RunLimits,
) -> Result<CValueCheck> {
    let all_colorable = check_all_colorable(p, prev_c, n, limits)?;
    let above = find_witnesses(p, prev_c, n + 1, above, limits)?;
    Ok(CValueCheck {
        all_colorable,
        above,
    })
}

/// `c_k^G(m-1) + t` maximized over the `t` with `c_k^G(m-1) + t >= R_k^G(t,t)`;
/// `ramsey_tt` returns `None` where the diagonal value is unknown.
pub fn straight_lower_bound(prev_c: usize, ramsey_tt: impl Fn(usize) -> Option<usize>) -> usize {
    (1..=MAX_ORDER)
        .filter(|&t| ramsey_tt(t).is_some_and(|r| prev_c + t >= r))
        .map(|t| prev_c + t)
        .max()
        .unwrap_or(prev_c)
}

/// `c_k^G(m-1) + m(k+1) + 1`, valid for classes closed under disjoint union
/// with cliques.
pub fn straight_upper_bound(p: &CocolorParams, prev_c: usize) -> Result<usize> {
    if !p.class.closed_under_clique_union() {
        return Err(Error::NotCliqueUnionClosed(p.class));
    }
    Ok(prev_c + p.m * (p.k + 1) + 1)
}

/// The graph behind the upper bound: `K_{1+m(k+1)}` beside a graph `h` of
/// order `c(m-1) + 1` that has no (m-1)-cocoloring.
pub fn upper_bound_witness(p: &CocolorParams, h: &Graph) -> Result<Graph> {
    if !p.class.closed_under_clique_union() {
        return Err(Error::NotCliqueUnionClosed(p.class));
    }
    Graph::complete(1 + p.m * (p.k + 1))?.disjoint_union(h)
}

/// Closed forms for `c_k^G(m)`.
pub fn formula_c_oracle(p: &CocolorParams) -> Option<usize> {
    let (k, m) = (p.k, p.m);
    if m == 1 {
        // every class here contains all stars
        return Some(k + 2);
    }
    match p.class {
        GraphClass::Perfect | GraphClass::Cograph if k == 0 => Some(m * (m + 3) / 2),
        GraphClass::Cograph if m == 2 => Some(3 * k + 5),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct CResult {
    pub params: CocolorParams,
    pub value: usize,
    /// `c_k(1), ..., c_k(m-1)`, computed on the way.
    pub lower: Vec<usize>,
    /// Witnesses at order `value + 1`.
    pub witnesses: WitnessReport,
}

/// Computes `c_k^G(m)` by scanning orders upward from `c_k^G(m-1) + 1`.
///
/// When the scan passes the straight upper bound, the clique-union graph
/// serves as the witness instead of generating that order, unless
/// `list_all` asks for every witness.
pub fn compute_c(p: &CocolorParams, limits: RunLimits, list_all: bool) -> Result<CResult> {
    let (prev_c, lower, prev_witness) = if p.m == 1 {
        (0, Vec::new(), None)
    } else {
        let below = compute_c(&CocolorParams::new(p.class, p.k, p.m - 1)?, limits, false)?;
        let mut lower = below.lower;
        lower.push(below.value);
        (
            below.value,
            lower,
            below.witnesses.witnesses.graphs().first().cloned(),
        )
    };
    let upper = if p.m > 1 {
        straight_upper_bound(p, prev_c).ok()
    } else {
        None
    };
    for order in prev_c + 1..=MAX_ORDER {
        if !list_all && upper.is_some_and(|u| order > u) {
            if let Some(h) = &prev_witness {
                let g = upper_bound_witness(p, h)?;
                debug_assert!(!is_cocolorable(&g, p.k, p.m));
                return Ok(CResult {
                    params: *p,
                    value: order - 1,
                    lower,
                    witnesses: WitnessReport {
                        order,
                        candidates: 1,
                        witnesses: LevelSet::from_graphs(order, [g])?,
                        exhaustive: false,
                    },
                });
            }
        }
        let report = find_witnesses(p, prev_c, order, Candidates::Generate, limits)?;
        log::info!(
            "{p}: order {order}, {} candidates, {} witnesses",
            report.candidates,
            report.witnesses.len()
        );
        if !report.witnesses.is_empty() {
            return Ok(CResult {
                params: *p,
                value: order - 1,
                lower,
                witnesses: report,
            });
        }
    }
    Err(Error::Capacity {
        order: MAX_ORDER + 1,
    })
}

/// The disjoint union `K_1 + K_2 + ... + K_{m+1}`.
pub fn clique_staircase(m: usize) -> Result<Graph> {
    let mut g = Graph::empty(0)?;
    for s in 1..=m + 1 {
        g = g.disjoint_union(&Graph::complete(s)?)?;
    }
    Ok(g)
}

/// Whether some vertex set of exactly `t` vertices is k-defective.
pub fn has_k_defective_set(g: &Graph, k: usize, t: usize) -> bool {
    t <= g.order() && crate::defect::find_k_defective_set(g, k, t).is_some()
}

/// Every labelled assignment of vertices to `m` classes, each checked as
/// sparse or dense. Test oracle for small graphs.
pub fn brute_force_cocolorable(g: &Graph, k: usize, m: usize) -> bool {
    let n = g.order();
    assert!(n <= 10 && m <= 4, "brute force is limited to small inputs");
    let total = m.pow(n as u32);
    (0..total).any(|mut code| {
        let mut sets = vec![0u64; m];
        for v in 0..n {
            sets[code % m] |= bit(v);
            code /= m;
        }
        sets.iter().all(|&s| {
            let s = VertexSet::from_bits(s);
            crate::defect::is_k_sparse(g, s, k) || crate::defect::is_k_dense(g, s, k)
        })
    })
}
