//! Level-by-level generation of sub-extremal graphs.
//!
//! Every graph of a level is extended by one new vertex (always the highest
//! index) in every admissible way. Children carrying a forbidden set through
//! the new vertex or leaving the class are dropped, and the survivors are
//! reduced to one representative per isomorphism class. Iterating from `K_1`
//! until a level comes out empty gives the Ramsey number and its extremal
//! graphs.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU8, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canon::{canonical_labeling, key_of_canonical, CanonicalKey};
use crate::checkpoint::{self, LevelMeta};
use crate::classes::{
    bipartite_rows, chordal_rows, cliques_of_rows, has_induced_p4_through,
    perfect_after_extension_rows, GraphClass,
};
use crate::defect::{
    forbidden_through_rows, has_forbidden_set, DefectParams, ExtensionConstraints,
};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

/// Forbidden-set family plus class filter for one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchParams {
    pub class: GraphClass,
    pub defect: DefectParams,
}

impl SearchParams {
    pub fn new(class: GraphClass, k: usize, i: usize, j: usize) -> Result<Self> {
        Ok(SearchParams {
            class,
            defect: DefectParams::new(k, i, j)?,
        })
    }

    /// Parameters whose forbidden sets never fit in a graph, so every class
    /// member survives.
    pub fn unrestricted(class: GraphClass) -> Self {
        SearchParams {
            class,
            defect: DefectParams::new(0, MAX_ORDER + 1, MAX_ORDER + 1).expect("valid"),
        }
    }

    /// Whether `g` belongs to `T_n` for these parameters.
    pub fn admits(&self, g: &Graph) -> bool {
        self.class.contains(g) && !has_forbidden_set(g, &self.defect)
    }
}

impl fmt::Display for SearchParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R_{}^{}({},{})",
            self.defect.k(),
            self.class,
            self.defect.i(),
            self.defect.j()
        )
    }
}

/// Which test rejects a child first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterOrder {
    ForbiddenFirst,
    ClassFirst,
}

impl FilterOrder {
    pub fn default_for(class: GraphClass) -> Self {
        match class {
            GraphClass::Perfect => FilterOrder::ForbiddenFirst,
            _ => FilterOrder::ClassFirst,
        }
    }
}

/// How the neighbourhood of the new vertex is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Every subset of the parent's vertices.
    AllSubsets,
    /// Only cliques, so the new vertex is simplicial. Exact for chordal
    /// graphs, which always have a simplicial vertex to delete.
    Cliques,
}

impl Extension {
    pub fn default_for(class: GraphClass) -> Self {
        match class {
            GraphClass::Chordal => Extension::Cliques,
            _ => Extension::AllSubsets,
        }
    }
}

/// `T_n`, or a subset of it for seeded runs: canonical forms sorted by key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    order: usize,
    graphs: Vec<Graph>,
    keys: Vec<CanonicalKey>,
}

impl LevelSet {
    /// The level `{K_1}`.
    pub fn k1() -> Self {
        LevelSet::from_sorted_keys(
            1,
            vec![crate::canon::canonical_key(&Graph::empty(1).unwrap())],
        )
    }

    pub fn empty(order: usize) -> Self {
        LevelSet {
            order,
            graphs: Vec::new(),
            keys: Vec::new(),
        }
    }

    /// Canonicalises and deduplicates `graphs`, which must all have `order`
    /// vertices.
    pub fn from_graphs<I: IntoIterator<Item = Graph>>(order: usize, graphs: I) -> Result<Self> {
        let mut keys = Vec::new();
        for g in graphs {
            if g.order() != order {
                return Err(Error::InvalidParams(format!(
                    "graph of order {} in a level of order {order}",
                    g.order()
                )));
            }
            keys.push(crate::canon::canonical_key(&g));
        }
        keys.sort_unstable();
        keys.dedup();
        Ok(LevelSet::from_sorted_keys(order, keys))
    }

    pub(crate) fn from_sorted_keys(order: usize, keys: Vec<CanonicalKey>) -> Self {
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let graphs = keys.iter().map(CanonicalKey::to_graph).collect();
        LevelSet {
            order,
            graphs,
            keys,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Members in canonical form, ascending by key.
    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &Graph)> {
        self.keys.iter().zip(&self.graphs)
    }

    /// Whether some member is isomorphic to `g`.
    pub fn contains(&self, g: &Graph) -> bool {
        g.order() == self.order
            && self
                .keys
                .binary_search(&crate::canon::canonical_key(g))
                .is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct RamseyResult {
    /// First order with no admissible graph.
    pub value: usize,
    /// The last non-empty level, at order `value - 1`.
    pub extremal: LevelSet,
    /// True when the run started from `{K_1}`, so `extremal` lists every
    /// extremal graph and `value` is the Ramsey number.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    TimeLimit,
    MemoryCap,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::TimeLimit => "time limit reached",
            StopReason::MemoryCap => "memory cap reached",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    /// A level came out empty.
    Finished(RamseyResult),
    /// The requested stop order was reached with graphs left.
    Reached { last: LevelSet, complete: bool },
    /// A resource limit interrupted the extension of `last`.
    Stopped {
        reason: StopReason,
        last: LevelSet,
        complete: bool,
        checkpoint: Option<PathBuf>,
    },
}

impl Outcome {
    /// Smallest order the Ramsey number can still have. Any non-empty level
    /// of order `n` shows the number exceeds `n`.
    pub fn lower_bound(&self) -> usize {
        match self {
            Outcome::Finished(r) => r.value,
            Outcome::Reached { last, .. } | Outcome::Stopped { last, .. } => last.order() + 1,
        }
    }
}

/// Thread count and resource limits for a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunLimits {
    pub threads: Option<usize>,
    pub time_limit: Option<Duration>,
    pub mem_cap: Option<usize>,
}

/// Configured generator. Defaults: class-specific filter order and
/// extension, global thread pool, no limits, no checkpoints.
#[derive(Clone, Debug)]
pub struct Generator {
    params: SearchParams,
    filter_order: FilterOrder,
    extension: Extension,
    threads: Option<usize>,
    time_limit: Option<Duration>,
    mem_cap: Option<usize>,
    checkpoint_dir: Option<PathBuf>,
}

/// Rough heap cost of one stored child, used against the memory cap.
const ENTRY_OVERHEAD: usize = 48;

/// Above this many precomputed extension conditions per parent, children
/// fall back to the direct search.
const CONSTRAINT_LIMIT: usize = 256;

/// First stop reason raised by any worker.
#[derive(Default)]
struct StopFlag(AtomicU8);

impl StopFlag {
    fn raise(&self, reason: StopReason) {
        let code = match reason {
            StopReason::TimeLimit => 1,
            StopReason::MemoryCap => 2,
        };
        let _ = self
            .0
            .compare_exchange(0, code, Ordering::Relaxed, Ordering::Relaxed);
    }

    fn raised(&self) -> bool {
        self.0.load(Ordering::Relaxed) != 0
    }

    fn reason(&self) -> Option<StopReason> {
        match self.0.load(Ordering::Relaxed) {
            1 => Some(StopReason::TimeLimit),
            2 => Some(StopReason::MemoryCap),
            _ => None,
        }
    }
}

impl Generator {
    pub fn new(params: SearchParams) -> Self {
        Generator {
            params,
            filter_order: FilterOrder::default_for(params.class),
            extension: Extension::default_for(params.class),
            threads: None,
            time_limit: None,
            mem_cap: None,
            checkpoint_dir: None,
        }
    }

    pub fn params(&self) -> &SearchParams {
        &self.params
    }

    pub fn filter_order(mut self, order: FilterOrder) -> Self {
        self.filter_order = order;
        self
    }

    /// Fails for clique-only extension outside the chordal class, where it
    /// would miss graphs.
    pub fn extension(mut self, ext: Extension) -> Result<Self> {
        if ext == Extension::Cliques && self.params.class != GraphClass::Chordal {
            return Err(Error::InvalidParams(format!(
                "clique-only extension is exact only for chordal graphs, not {}",
                self.params.class
            )));
        }
        self.extension = ext;
        Ok(self)
    }

    pub fn limits(mut self, limits: RunLimits) -> Self {
        self.threads = limits.threads.map(|t| t.max(1));
        self.time_limit = limits.time_limit;
        self.mem_cap = limits.mem_cap;
        self
    }

    pub fn threads(mut self, n: usize) -> Self {
        self.threads = Some(n.max(1));
        self
    }

    pub fn time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn mem_cap(mut self, bytes: usize) -> Self {
        self.mem_cap = Some(bytes);
        self
    }

    pub fn checkpoint_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.checkpoint_dir = Some(dir.into());
        self
    }

    /// Path of the level file this generator keeps in its checkpoint dir.
    pub fn checkpoint_path(&self) -> Option<PathBuf> {
        let d = &self.params.defect;
        self.checkpoint_dir.as_ref().map(|dir| {
            dir.join(format!(
                "{}-k{}-i{}-j{}.g6",
                self.params.class,
                d.k(),
                d.i(),
                d.j()
            ))
        })
    }

    /// Extends every member of `w` by one vertex. With no limits configured
    /// this never stops early.
    pub fn extend(&self, w: &LevelSet) -> Result<std::result::Result<LevelSet, StopReason>> {
        let deadline = self.time_limit.map(|t| Instant::now() + t);
        self.extend_until(w, deadline)
    }

    fn extend_until(
        &self,
        w: &LevelSet,
        deadline: Option<Instant>,
    ) -> Result<std::result::Result<LevelSet, StopReason>> {
        let n = w.order();
        if n + 1 > MAX_ORDER {
            return Err(Error::Capacity { order: n + 1 });
        }
        let work = || self.extend_parallel(w, deadline);
        let merged = match self.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
                .install(work),
            None => work(),
        };
        Ok(match merged {
            Ok(set) => {
                let mut keys: Vec<CanonicalKey> = set.into_iter().collect();
                keys.par_sort_unstable();
                Ok(LevelSet::from_sorted_keys(n + 1, keys))
            }
            Err(reason) => Err(reason),
        })
    }

    fn extend_parallel(
        &self,
        w: &LevelSet,
        deadline: Option<Instant>,
    ) -> std::result::Result<HashSet<CanonicalKey>, StopReason> {
        let stop = StopFlag::default();
        let stored = AtomicUsize::new(0);
        let entry_cost = ENTRY_OVERHEAD + (w.order() + 1) * w.order() / 12 + 2;
        let merged = w
            .graphs()
            .par_iter()
            .try_fold(HashSet::new, |mut acc, parent| {
                if stop.raised() {
                    return Err(());
                }
                let before = acc.len();
                self.extend_parent(parent, &mut acc, deadline, &stop)?;
                let added = acc.len() - before;
                let total = stored.fetch_add(added, Ordering::Relaxed) + added;
                if self
                    .mem_cap
                    .is_some_and(|cap| total.saturating_mul(entry_cost) > cap)
                {
                    stop.raise(StopReason::MemoryCap);
                    return Err(());
                }
                Ok(acc)
            })
            .try_reduce(HashSet::new, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                Ok(big)
            });
        merged.map_err(|()| stop.reason().expect("raised before failing"))
    }

    /// Pushes the canonical keys of all admissible children of `parent`.
    fn extend_parent(
        &self,
        parent: &Graph,
        out: &mut HashSet<CanonicalKey>,
        deadline: Option<Instant>,
        stop: &StopFlag,
    ) -> std::result::Result<(), ()> {
        let prows = parent.adjacency();
        let n = prows.len();
        let mut rows = [0u64; MAX_ORDER];
        let mut scratch = [0u64; MAX_ORDER];
        let constraints = match self.extension {
            Extension::AllSubsets => {
                ExtensionConstraints::new(prows, &self.params.defect, CONSTRAINT_LIMIT)
            }
            Extension::Cliques => None,
        };
        let mut visit = |s: u64, rows: &mut [u64; MAX_ORDER]| {
            for (v, (r, &p)) in rows.iter_mut().zip(prows).enumerate() {
                *r = if s & bit(v) != 0 { p | bit(n) } else { p };
            }
            rows[n] = s;
            let child = &rows[..=n];
            if self.admits_child(child, &mut scratch, constraints.as_ref()) {
                let g = Graph::from_rows_unchecked(child);
                let lab = canonical_labeling(&g);
                let canon = g.relabel(&lab).expect("labelling is a permutation");
                out.insert(key_of_canonical(&canon));
            }
        };
        let check = |count: u64| -> std::result::Result<(), ()> {
            if count & 0x3fff == 0 {
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    stop.raise(StopReason::TimeLimit);
                }
                if stop.raised() {
                    return Err(());
                }
            }
            Ok(())
        };
        match self.extension {
            Extension::Cliques => {
                for (count, c) in cliques_of_rows(prows).enumerate() {
                    check(count as u64)?;
                    visit(c.bits(), &mut rows);
                }
            }
            Extension::AllSubsets => {
                let limit = 1u128 << n;
                let mut s: u128 = 0;
                while s < limit {
                    check(s as u64)?;
                    visit(s as u64, &mut rows);
                    s += 1;
                }
            }
        }
        Ok(())
    }

    /// Class and forbidden-set tests for a child whose new vertex is the last
    /// row; the parent is known to pass both.
    fn admits_child(
        &self,
        rows: &[u64],
        scratch: &mut [u64],
        constraints: Option<&ExtensionConstraints>,
    ) -> bool {
        let v = rows.len() - 1;
        let forbidden = |scratch: &mut [u64]| match constraints {
            Some(c) => c.forbidden(rows[v]),
            None => forbidden_through_rows(rows, scratch, v, &self.params.defect),
        };
        let class_ok = |scratch: &mut [u64]| match self.params.class {
            GraphClass::All => true,
            GraphClass::Perfect => perfect_after_extension_rows(rows, scratch, v),
            GraphClass::Bipartite => bipartite_rows(rows),
            GraphClass::Chordal => self.extension == Extension::Cliques || chordal_rows(rows),
            GraphClass::Cograph => !has_induced_p4_through(rows, v),
        };
        match self.filter_order {
            FilterOrder::ForbiddenFirst => !forbidden(scratch) && class_ok(scratch),
            FilterOrder::ClassFirst => class_ok(scratch) && !forbidden(scratch),
        }
    }

    /// Runs from `{K_1}` until a level is empty.
    pub fn run(&self) -> Result<Outcome> {
        self.run_from(LevelSet::k1(), true, None)
    }

    /// Runs from `start`. Members are verified against the parameters first.
    /// `complete` should be true only when `start` is the whole `T_n`.
    pub fn run_from(
        &self,
        start: LevelSet,
        complete: bool,
        stop_order: Option<usize>,
    ) -> Result<Outcome> {
        self.validate_seed(&start)?;
        if let Some(stop) = stop_order {
            if stop < start.order() {
                return Err(Error::InvalidParams(format!(
                    "stop order {stop} is below the seed order {}",
                    start.order()
                )));
            }
        }
        let deadline = self.time_limit.map(|t| Instant::now() + t);
        let mut cur = start;
        loop {
            if stop_order == Some(cur.order()) {
                return Ok(Outcome::Reached {
                    last: cur,
                    complete,
                });
            }
            match self.extend_until(&cur, deadline)? {
                Ok(next) => {
                    log::info!(
                        "{}: order {} has {} graphs",
                        self.params,
                        next.order(),
                        next.len()
                    );
                    if next.is_empty() {
                        return Ok(Outcome::Finished(RamseyResult {
                            value: next.order(),
                            extremal: cur,
                            complete,
                        }));
                    }
                    cur = next;
                    self.save(&cur, complete)?;
                }
                Err(reason) => {
                    log::warn!(
                        "{}: {reason} while extending order {}",
                        self.params,
                        cur.order()
                    );
                    let checkpoint = self.save(&cur, complete)?;
                    return Ok(Outcome::Stopped {
                        reason,
                        last: cur,
                        complete,
                        checkpoint,
                    });
                }
            }
        }
    }

    fn save(&self, level: &LevelSet, complete: bool) -> Result<Option<PathBuf>> {
        let Some(path) = self.checkpoint_path() else {
            return Ok(None);
        };
        let meta = LevelMeta {
            class: self.params.class,
            defect: self.params.defect,
            order: level.order(),
            complete,
            count: level.len(),
        };
        checkpoint::write_level(&path, &meta, level)?;
        Ok(Some(path))
    }

    fn validate_seed(&self, seed: &LevelSet) -> Result<()> {
        if seed.is_empty() {
            return Err(Error::InvalidParams("seed level is empty".into()));
        }
        for (key, g) in seed.iter() {
            if !self.params.class.contains(g) {
                return Err(Error::InvalidParams(format!(
                    "seed graph {key} is not {}",
                    self.params.class
                )));
            }
            if has_forbidden_set(g, &self.params.defect) {
                return Err(Error::InvalidParams(format!(
                    "seed graph {key} contains a forbidden set for {}",
                    self.params.defect
                )));
            }
        }
        Ok(())
    }
}

/// One extension step with default settings.
pub fn extend_level(w: &LevelSet, p: &SearchParams) -> Result<LevelSet> {
    Ok(Generator::new(*p).extend(w)?.expect("no limits configured"))
}

/// Full run from `{K_1}` with default settings.
pub fn run_ramsey(p: &SearchParams) -> Result<RamseyResult> {
    match Generator::new(*p).run()? {
        Outcome::Finished(r) => Ok(r),
        _ => unreachable!("unlimited runs end with an empty level"),
    }
}

/// Every level produced from `seed`, seed included, up to the first empty
/// level or `stop_order`. Only graphs containing a seed member as an induced
/// subgraph are reached.
pub fn run_seeded(
    seed: LevelSet,
    p: &SearchParams,
    stop_order: Option<usize>,
) -> Result<Vec<LevelSet>> {
    let gen = Generator::new(*p);
    gen.validate_seed(&seed)?;
    let mut levels = vec![seed];
    loop {
        let cur = levels.last().unwrap();
        if cur.is_empty() || stop_order == Some(cur.order()) {
            return Ok(levels);
        }
        let next = gen.extend(cur)?.expect("no limits configured");
        levels.push(next);
    }
}

/// Closed-form values of `R_k^G(i,j)` where one is known.
pub fn formula_oracle(class: GraphClass, k: usize, i: usize, j: usize) -> Option<usize> {
    if i < k + 2 || j < k + 2 {
        return None;
    }
    if i == k + 2 && class.contains_all_empty_graphs() {
        return Some(j);
    }
    if j == k + 2 {
        if class.contains_all_complete_graphs() {
            return Some(i);
        }
        if class == GraphClass::Bipartite && k >= 1 && i >= k + 3 && i <= 2 * k + 2 {
            return Some(k + 3);
        }
    }
    if class == GraphClass::Chordal && k == 1 && i == 4 {
        return Some(2 * j - 2);
    }
    if class == GraphClass::Perfect && k == 0 {
        return Some((i - 1) * (j - 1) + 1);
    }
    None
}

/// Chordal graph of order `2j - 3` with no 1-dense 4-set and no 1-sparse
/// `j`-set: `j - 3` triangles glued in a row at shared spine vertices, with
/// a pendant vertex at each end of the spine.
pub fn triangle_chain(j: usize) -> Result<Graph> {
    if j < 3 {
        return Err(Error::InvalidParams(format!(
            "triangle chain needs j >= 3, got {j}"
        )));
    }
    let t = j - 3;
    // spine s_0..s_t, apexes a_1..a_t, then the two pendants
    let spine = |x: usize| x;
    let apex = |x: usize| t + x;
    let (left, right) = (2 * t + 1, 2 * t + 2);
    let mut edges = Vec::new();
    for x in 1..=t {
        edges.push((spine(x - 1), spine(x)));
        edges.push((spine(x - 1), apex(x)));
        edges.push((spine(x), apex(x)));
    }
    edges.push((left, spine(0)));
    edges.push((right, spine(t)));
    Graph::from_edges(2 * j - 3, &edges)
}
