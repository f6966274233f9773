//! Reference values of `R_k^G(i,j)` with extremal-graph counts, and of the
//! cocoloring parameter `c_k^G(m)`, used by the regression runner.

use crate::classes::GraphClass;
use crate::generator::formula_oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownRamsey {
    pub class: GraphClass,
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub value: usize,
    /// Number of extremal graphs, when listed.
    pub extremal: Option<usize>,
}

/// Which entries a regression run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Entries with value at most [`SMALL_VALUE_LIMIT`].
    Small,
    /// Every entry, including runs that take days.
    Full,
}

pub const SMALL_VALUE_LIMIT: usize = 12;

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Scope::Small),
            "full" => Ok(Scope::Full),
            _ => Err(format!("unknown scope {s:?}, expected small or full")),
        }
    }
}

const fn e(
    class: GraphClass,
    k: usize,
    i: usize,
    j: usize,
    value: usize,
    extremal: Option<usize>,
) -> KnownRamsey {
    KnownRamsey {
        class,
        k,
        i,
        j,
        value,
        extremal,
    }
}

use GraphClass::{Bipartite, Chordal, Perfect};

static RAMSEY: &[KnownRamsey] = &[
    e(Perfect, 1, 3, 3, 3, Some(2)),
    e(Perfect, 1, 3, 4, 4, Some(2)),
    e(Perfect, 1, 3, 5, 5, Some(3)),
    e(Perfect, 1, 3, 6, 6, Some(3)),
    e(Perfect, 1, 3, 7, 7, Some(4)),
    e(Perfect, 1, 3, 8, 8, Some(4)),
    e(Perfect, 1, 3, 9, 9, Some(5)),
    e(Perfect, 1, 3, 10, 10, Some(5)),
    e(Perfect, 1, 4, 3, 4, Some(2)),
    e(Perfect, 1, 4, 4, 6, Some(1)),
    e(Perfect, 1, 4, 5, 8, Some(2)),
    e(Perfect, 1, 4, 6, 10, Some(4)),
    e(Perfect, 1, 4, 7, 13, Some(3)),
    e(Perfect, 1, 4, 8, 15, Some(3)),
    e(Perfect, 1, 4, 9, 19, Some(1)),
    e(Perfect, 1, 4, 10, 22, None),
    e(Perfect, 1, 5, 3, 5, Some(3)),
    e(Perfect, 1, 5, 4, 8, Some(2)),
    e(Perfect, 1, 5, 5, 13, Some(2)),
    e(Perfect, 2, 4, 4, 4, Some(4)),
    e(Perfect, 2, 4, 5, 5, Some(4)),
    e(Perfect, 2, 4, 6, 6, Some(4)),
    e(Perfect, 2, 4, 7, 7, Some(4)),
    e(Perfect, 2, 4, 8, 8, Some(4)),
    e(Perfect, 2, 4, 9, 9, Some(4)),
    e(Perfect, 2, 4, 10, 10, Some(4)),
    e(Perfect, 2, 5, 4, 5, Some(4)),
    e(Perfect, 2, 5, 5, 7, Some(2)),
    e(Perfect, 2, 5, 6, 8, Some(13)),
    e(Perfect, 2, 5, 7, 10, Some(16)),
    e(Perfect, 2, 5, 8, 12, Some(6)),
    e(Perfect, 2, 5, 9, 15, Some(2)),
    e(Perfect, 2, 6, 4, 6, Some(4)),
    e(Perfect, 2, 6, 5, 8, Some(13)),
    e(Perfect, 2, 6, 6, 10, Some(2)),
    e(Perfect, 2, 6, 7, 13, Some(7)),
    e(Perfect, 3, 5, 5, 5, Some(11)),
    e(Perfect, 3, 5, 6, 6, Some(11)),
    e(Perfect, 3, 5, 7, 7, Some(12)),
    e(Perfect, 3, 5, 8, 8, Some(12)),
    e(Perfect, 3, 5, 9, 9, Some(13)),
    e(Perfect, 3, 5, 10, 10, Some(13)),
    e(Perfect, 3, 5, 11, 11, Some(14)),
    e(Perfect, 3, 6, 5, 6, Some(11)),
    e(Perfect, 3, 6, 6, 8, Some(4)),
    e(Perfect, 3, 6, 7, 9, Some(28)),
    e(Perfect, 3, 6, 8, 10, Some(159)),
    e(Perfect, 3, 6, 9, 12, Some(3)),
    e(Perfect, 3, 6, 10, 13, Some(67)),
    e(Perfect, 3, 7, 5, 7, Some(12)),
    e(Perfect, 3, 7, 6, 9, Some(28)),
    e(Perfect, 3, 7, 7, 11, Some(4)),
    e(Perfect, 4, 6, 6, 6, Some(33)),
    e(Perfect, 4, 6, 7, 7, Some(33)),
    e(Perfect, 4, 6, 8, 8, Some(33)),
    e(Perfect, 4, 6, 9, 9, Some(33)),
    e(Perfect, 4, 6, 10, 10, Some(33)),
    e(Perfect, 4, 6, 11, 11, Some(33)),
    e(Perfect, 4, 6, 12, 12, Some(33)),
    e(Perfect, 4, 7, 6, 7, Some(33)),
    e(Perfect, 4, 7, 7, 9, Some(11)),
    e(Perfect, 4, 7, 8, 10, Some(84)),
    e(Perfect, 4, 7, 9, 11, Some(549)),
    e(Perfect, 4, 7, 10, 13, Some(4)),
    e(Perfect, 4, 7, 11, 14, Some(28)),
    e(Perfect, 4, 8, 6, 8, Some(33)),
    e(Perfect, 4, 8, 7, 10, Some(84)),
    e(Perfect, 4, 8, 8, 12, Some(8)),
    e(Bipartite, 2, 5, 4, 5, Some(1)),
    e(Bipartite, 2, 5, 5, 6, Some(4)),
    e(Bipartite, 2, 5, 6, 8, Some(1)),
    e(Bipartite, 2, 5, 7, 10, Some(2)),
    e(Bipartite, 2, 5, 8, 11, Some(56)),
    e(Bipartite, 2, 6, 4, 5, Some(1)),
    e(Bipartite, 2, 6, 5, 7, Some(3)),
    e(Bipartite, 2, 6, 6, 9, Some(1)),
    e(Bipartite, 2, 6, 7, 11, Some(35)),
    e(Bipartite, 2, 6, 8, 14, Some(3)),
    e(Bipartite, 2, 7, 4, 5, Some(1)),
    e(Bipartite, 2, 7, 5, 9, Some(2)),
    e(Bipartite, 2, 7, 6, 11, Some(6)),
    e(Bipartite, 2, 7, 7, 13, Some(249)),
    e(Bipartite, 2, 8, 4, 5, Some(1)),
    e(Bipartite, 2, 8, 5, 9, Some(2)),
    e(Bipartite, 2, 8, 6, 11, Some(6)),
    e(Bipartite, 2, 8, 7, 13, Some(249)),
    e(Bipartite, 3, 6, 5, 6, Some(1)),
    e(Bipartite, 3, 6, 6, 7, Some(5)),
    e(Bipartite, 3, 6, 7, 9, Some(1)),
    e(Bipartite, 3, 6, 8, 10, Some(8)),
    e(Bipartite, 3, 6, 9, 12, Some(1)),
    e(Bipartite, 3, 6, 10, 13, Some(9)),
    e(Bipartite, 3, 7, 5, 6, Some(1)),
    e(Bipartite, 3, 7, 6, 8, Some(2)),
    e(Bipartite, 3, 7, 7, 10, Some(1)),
    e(Bipartite, 3, 7, 8, 12, Some(2)),
    e(Bipartite, 3, 7, 9, 14, Some(26)),
    e(Bipartite, 3, 8, 5, 6, Some(1)),
    e(Bipartite, 3, 8, 6, 8, Some(2)),
    e(Bipartite, 3, 8, 7, 10, Some(10)),
    e(Bipartite, 3, 8, 8, 13, Some(2)),
    e(Bipartite, 3, 8, 9, 15, Some(423)),
    e(Bipartite, 3, 9, 5, 6, Some(1)),
    e(Bipartite, 3, 9, 6, 8, Some(2)),
    e(Bipartite, 3, 9, 7, 13, Some(5)),
    e(Bipartite, 3, 9, 8, 15, Some(40)),
    e(Bipartite, 4, 7, 6, 7, Some(1)),
    e(Bipartite, 4, 7, 7, 8, Some(6)),
    e(Bipartite, 4, 7, 8, 10, Some(1)),
    e(Bipartite, 4, 7, 9, 11, Some(7)),
    e(Bipartite, 4, 7, 10, 12, Some(34)),
    e(Bipartite, 4, 8, 6, 7, Some(1)),
    e(Bipartite, 4, 8, 7, 9, Some(2)),
    e(Bipartite, 4, 8, 8, 11, Some(1)),
    e(Bipartite, 4, 8, 9, 12, Some(29)),
    e(Bipartite, 4, 8, 10, 14, Some(16)),
    e(Bipartite, 4, 9, 6, 7, Some(1)),
    e(Bipartite, 4, 9, 7, 9, Some(2)),
    e(Bipartite, 4, 9, 8, 11, Some(7)),
    e(Bipartite, 4, 9, 9, 13, Some(19)),
    e(Bipartite, 4, 9, 10, 15, Some(133)),
    e(Bipartite, 4, 10, 6, 7, Some(1)),
    e(Bipartite, 4, 10, 7, 9, Some(2)),
    e(Bipartite, 4, 10, 8, 11, Some(7)),
    e(Bipartite, 4, 10, 9, 13, Some(70)),
    e(Chordal, 1, 3, 3, 3, Some(2)),
    e(Chordal, 1, 3, 4, 4, Some(2)),
    e(Chordal, 1, 3, 5, 5, Some(3)),
    e(Chordal, 1, 3, 6, 6, Some(3)),
    e(Chordal, 1, 3, 7, 7, Some(4)),
    e(Chordal, 1, 3, 8, 8, Some(4)),
    e(Chordal, 1, 3, 9, 9, Some(5)),
    e(Chordal, 1, 3, 10, 10, Some(5)),
    e(Chordal, 1, 3, 11, 11, Some(6)),
    e(Chordal, 1, 4, 3, 4, Some(2)),
    e(Chordal, 1, 4, 4, 6, Some(1)),
    e(Chordal, 1, 4, 5, 8, Some(1)),
    e(Chordal, 1, 4, 6, 10, Some(1)),
    e(Chordal, 1, 4, 7, 12, Some(1)),
    e(Chordal, 1, 4, 8, 14, Some(1)),
    e(Chordal, 1, 4, 9, 16, Some(1)),
    e(Chordal, 1, 4, 10, 18, Some(1)),
    e(Chordal, 1, 4, 11, 20, Some(1)),
    e(Chordal, 1, 5, 3, 5, Some(2)),
    e(Chordal, 1, 5, 4, 7, Some(4)),
    e(Chordal, 1, 5, 5, 10, Some(4)),
    e(Chordal, 1, 5, 6, 12, Some(44)),
    e(Chordal, 1, 5, 7, 15, Some(18)),
    e(Chordal, 1, 6, 3, 6, Some(2)),
    e(Chordal, 1, 6, 4, 8, Some(8)),
    e(Chordal, 1, 6, 5, 12, Some(17)),
    e(Chordal, 1, 6, 6, 14, Some(1397)),
    e(Chordal, 1, 7, 3, 7, Some(2)),
    e(Chordal, 1, 7, 4, 10, Some(1)),
    e(Chordal, 1, 7, 5, 14, Some(68)),
    e(Chordal, 1, 8, 3, 8, Some(2)),
    e(Chordal, 1, 8, 4, 11, Some(2)),
    e(Chordal, 1, 8, 5, 16, Some(293)),
    e(Chordal, 1, 9, 3, 9, Some(2)),
    e(Chordal, 1, 9, 4, 12, Some(4)),
    e(Chordal, 1, 9, 5, 18, Some(1245)),
    e(Chordal, 2, 4, 4, 4, Some(4)),
    e(Chordal, 2, 4, 5, 5, Some(4)),
    e(Chordal, 2, 4, 6, 6, Some(4)),
    e(Chordal, 2, 4, 7, 7, Some(4)),
    e(Chordal, 2, 4, 8, 8, Some(4)),
    e(Chordal, 2, 4, 9, 9, Some(4)),
    e(Chordal, 2, 4, 10, 10, Some(4)),
    e(Chordal, 2, 5, 4, 5, Some(4)),
    e(Chordal, 2, 5, 5, 7, Some(2)),
    e(Chordal, 2, 5, 6, 8, Some(11)),
    e(Chordal, 2, 5, 7, 9, Some(101)),
    e(Chordal, 2, 5, 8, 11, Some(66)),
    e(Chordal, 2, 5, 9, 13, Some(24)),
    e(Chordal, 2, 6, 4, 6, Some(4)),
    e(Chordal, 2, 6, 5, 8, Some(8)),
    e(Chordal, 2, 6, 6, 10, Some(2)),
    e(Chordal, 2, 6, 7, 12, Some(45)),
    e(Chordal, 2, 6, 8, 14, Some(92)),
    e(Chordal, 2, 7, 4, 7, Some(4)),
    e(Chordal, 2, 7, 5, 9, Some(22)),
    e(Chordal, 2, 7, 6, 11, Some(50)),
    e(Chordal, 2, 7, 7, 14, Some(316)),
    e(Chordal, 2, 8, 4, 8, Some(4)),
    e(Chordal, 2, 8, 5, 11, Some(1)),
    e(Chordal, 2, 8, 6, 12, Some(469)),
    e(Chordal, 2, 9, 4, 9, Some(4)),
    e(Chordal, 2, 9, 5, 12, Some(4)),
    e(Chordal, 2, 9, 6, 14, Some(13)),
    e(Chordal, 2, 10, 4, 10, Some(4)),
    e(Chordal, 2, 10, 5, 13, Some(11)),
    e(Chordal, 2, 10, 6, 15, Some(194)),
    e(Chordal, 3, 5, 5, 5, Some(10)),
    e(Chordal, 3, 5, 6, 6, Some(10)),
    e(Chordal, 3, 5, 7, 7, Some(11)),
    e(Chordal, 3, 5, 8, 8, Some(11)),
    e(Chordal, 3, 5, 9, 9, Some(12)),
    e(Chordal, 3, 5, 10, 10, Some(12)),
    e(Chordal, 3, 6, 5, 6, Some(10)),
    e(Chordal, 3, 6, 6, 8, Some(4)),
    e(Chordal, 3, 6, 7, 9, Some(24)),
    e(Chordal, 3, 6, 8, 10, Some(123)),
    e(Chordal, 3, 6, 9, 12, Some(2)),
    e(Chordal, 3, 6, 10, 13, Some(43)),
    e(Chordal, 3, 7, 5, 7, Some(10)),
    e(Chordal, 3, 7, 6, 9, Some(19)),
    e(Chordal, 3, 7, 7, 11, Some(4)),
    e(Chordal, 3, 7, 8, 12, Some(151)),
    e(Chordal, 3, 7, 9, 14, Some(2)),
    e(Chordal, 3, 8, 5, 8, Some(10)),
    e(Chordal, 3, 8, 6, 10, Some(62)),
    e(Chordal, 3, 8, 7, 12, Some(124)),
    e(Chordal, 3, 8, 8, 14, Some(7)),
    e(Chordal, 3, 9, 5, 9, Some(10)),
    e(Chordal, 3, 9, 6, 12, Some(2)),
    e(Chordal, 3, 9, 7, 13, Some(1846)),
    e(Chordal, 4, 6, 6, 6, Some(27)),
    e(Chordal, 4, 6, 7, 7, Some(27)),
    e(Chordal, 4, 6, 8, 8, Some(27)),
    e(Chordal, 4, 6, 9, 9, Some(27)),
    e(Chordal, 4, 6, 10, 10, Some(27)),
    e(Chordal, 4, 6, 11, 11, Some(27)),
    e(Chordal, 4, 7, 6, 7, Some(27)),
    e(Chordal, 4, 7, 7, 9, Some(10)),
    e(Chordal, 4, 7, 8, 10, Some(64)),
    e(Chordal, 4, 7, 9, 11, Some(360)),
    e(Chordal, 4, 7, 10, 13, Some(4)),
    e(Chordal, 4, 7, 11, 14, Some(24)),
    e(Chordal, 4, 8, 6, 8, Some(27)),
    e(Chordal, 4, 8, 7, 10, Some(53)),
    e(Chordal, 4, 8, 8, 12, Some(8)),
    e(Chordal, 4, 8, 9, 13, Some(364)),
    e(Chordal, 4, 9, 6, 9, Some(27)),
    e(Chordal, 4, 9, 7, 11, Some(207)),
    e(Chordal, 4, 9, 8, 13, Some(322)),
    e(Chordal, 4, 10, 6, 10, Some(27)),
    e(Chordal, 4, 10, 7, 13, Some(4)),
    e(Bipartite, 1, 4, 10, 18, None),
    e(Bipartite, 1, 4, 11, 20, None),
];

/// All reference entries, sorted by class, then `k`, `i`, `j`.
pub fn known_ramsey_values() -> &'static [KnownRamsey] {
    RAMSEY
}

pub fn known_ramsey(
    class: GraphClass,
    k: usize,
    i: usize,
    j: usize,
) -> Option<&'static KnownRamsey> {
    RAMSEY
        .iter()
        .find(|r| r.class == class && r.k == k && r.i == i && r.j == j)
}

pub fn entries_in_scope(scope: Scope) -> impl Iterator<Item = &'static KnownRamsey> {
    RAMSEY
        .iter()
        .filter(move |r| scope == Scope::Full || r.value <= SMALL_VALUE_LIMIT)
}

/// `R_k^G(t,t)` from the closed forms or the reference entries.
pub fn ramsey_diagonal(class: GraphClass, k: usize, t: usize) -> Option<usize> {
    if t <= k + 1 {
        // every set of at most k+1 vertices is both k-sparse and k-dense
        return Some(t);
    }
    formula_oracle(class, k, t, t).or_else(|| known_ramsey(class, k, t, t).map(|r| r.value))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownCocolor {
    pub class: GraphClass,
    pub k: usize,
    pub m: usize,
    /// Inclusive range; equal ends when the value is settled.
    pub low: usize,
    pub high: usize,
    /// Number of non-cocolorable graphs of order `low + 1`, when listed.
    pub witnesses: Option<usize>,
}

static COCOLOR: &[KnownCocolor] = &[
    KnownCocolor {
        class: Perfect,
        k: 1,
        m: 2,
        low: 7,
        high: 7,
        witnesses: Some(24),
    },
    KnownCocolor {
        class: Perfect,
        k: 2,
        m: 2,
        low: 11,
        high: 11,
        witnesses: None,
    },
    KnownCocolor {
        class: Perfect,
        k: 1,
        m: 3,
        low: 13,
        high: 14,
        witnesses: None,
    },
    KnownCocolor {
        class: Perfect,
        k: 3,
        m: 2,
        low: 12,
        high: 14,
        witnesses: None,
    },
    KnownCocolor {
        class: GraphClass::Cograph,
        k: 1,
        m: 2,
        low: 8,
        high: 8,
        witnesses: None,
    },
    KnownCocolor {
        class: GraphClass::Cograph,
        k: 2,
        m: 2,
        low: 11,
        high: 11,
        witnesses: None,
    },
];

pub fn known_cocolor_values() -> &'static [KnownCocolor] {
    COCOLOR
}

pub fn known_cocolor(class: GraphClass, k: usize, m: usize) -> Option<&'static KnownCocolor> {
    COCOLOR
        .iter()
        .find(|c| c.class == class && c.k == k && c.m == m)
}
