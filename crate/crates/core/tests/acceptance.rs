//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The medium tier takes tens of minutes on one core and runs only when
//! `DEFRAM_MEDIUM=1` is set. The largest table entries are not run here;
//! use `defram tables --scope full` for those.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{all_graphs, isomorphic, random_graph, subsets};
use defram::classes::{is_perfect_naive, remains_perfect_after_extension};
use defram::cocolor::{
    brute_force_cocolorable, clique_staircase, find_witnesses, is_cocolorable, Candidates,
};
use defram::defect::{brute_force_forbidden, has_forbidden_set_through};
use defram::generator::Extension;
use defram::{
    compute_c, find_cocoloring, formula_oracle, run_ramsey, CocolorParams, Generator, Graph,
    GraphClass, LevelSet, Outcome, RamseyResult, RunLimits, SearchParams, VertexSet,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use GraphClass::{Bipartite as BIP, Chordal as CH, Cograph as CO, Perfect as PG};

/// `(class, k, i, j, value, extremal count)`
type Cell = (GraphClass, usize, usize, usize, usize, usize);

fn fast_tier() -> Vec<Cell> {
    let mut cells = Vec::new();
    for (j, count) in (3..=10).zip([2, 2, 3, 3, 4, 4, 5, 5]) {
        cells.push((PG, 1, 3, j, j, count));
    }
    cells.extend([
        (PG, 1, 4, 4, 6, 1),
        (PG, 1, 4, 5, 8, 2),
        (PG, 1, 4, 6, 10, 4),
        (PG, 1, 5, 4, 8, 2),
        (PG, 2, 5, 5, 7, 2),
        (PG, 2, 5, 6, 8, 13),
        (PG, 2, 6, 6, 10, 2),
        (PG, 3, 6, 6, 8, 4),
        (PG, 4, 7, 7, 9, 11),
        (BIP, 2, 5, 5, 6, 4),
        (BIP, 2, 5, 6, 8, 1),
        (BIP, 2, 6, 7, 11, 35),
        (BIP, 3, 6, 7, 9, 1),
        (BIP, 4, 7, 8, 10, 1),
    ]);
    for j in 4..=8 {
        cells.push((CH, 1, 4, j, 2 * j - 2, 1));
    }
    cells.extend([
        (CH, 1, 5, 5, 10, 4),
        (CH, 2, 5, 5, 7, 2),
        (CH, 2, 6, 6, 10, 2),
        (CH, 3, 6, 6, 8, 4),
        (CH, 4, 7, 7, 9, 10),
    ]);
    cells
}

fn medium_tier() -> Vec<Cell> {
    vec![
        (PG, 1, 5, 5, 13, 2),
        (PG, 2, 5, 9, 15, 2),
        (CH, 1, 5, 7, 15, 18),
    ]
}

fn params(c: &Cell) -> SearchParams {
    SearchParams::new(c.0, c.1, c.2, c.3).unwrap()
}

type Check = Result<String, String>;
type Suite = (&'static str, fn() -> Check);
type Criterion = (usize, &'static str, Option<fn() -> Check>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cells(cells: &[Cell]) -> Result<Vec<(Cell, RamseyResult)>, String> {
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for cell in cells {
        let p = params(cell);
        let r = run_ramsey(&p).map_err(|e| format!("{p}: {e}"))?;
        if (r.value, r.extremal.len()) != (cell.4, cell.5) {
            failures.push(format!(
                "{p} = {}({}), expected {}({})",
                r.value,
                r.extremal.len(),
                cell.4,
                cell.5
            ));
        }
        results.push((*cell, r));
    }
    if failures.is_empty() {
        Ok(results)
    } else {
        Err(failures.join("; "))
    }
}

fn table_regression() -> Check {
    let cells = fast_tier();
    run_cells(&cells)?;
    Ok(format!(
        "{} cells match value and extremal count",
        cells.len()
    ))
}

fn formula_checks() -> Check {
    let mut checked = 0;
    for cell in fast_tier() {
        let Some(f) = formula_oracle(cell.0, cell.1, cell.2, cell.3) else {
            continue;
        };
        let p = params(&cell);
        let v = run_ramsey(&p).map_err(|e| e.to_string())?.value;
        ensure(v == f, || format!("{p}: search {v}, formula {f}"))?;
        checked += 1;
    }
    ensure(checked >= 10, || {
        format!("only {checked} fast-tier cells have a formula")
    })?;
    for i in 2..=4 {
        for j in 2..=4 {
            let p = SearchParams::new(PG, 0, i, j).unwrap();
            let v = run_ramsey(&p).map_err(|e| e.to_string())?.value;
            ensure(v == (i - 1) * (j - 1) + 1, || format!("{p}: search {v}"))?;
        }
    }
    Ok(format!(
        "{checked} fast-tier cells and R_0^perfect(i,j) for i,j <= 4 agree"
    ))
}

fn cocolor_flagship() -> Check {
    let p = CocolorParams::new(PG, 1, 2).unwrap();
    let report = find_witnesses(&p, 3, 8, Candidates::Generate, RunLimits::default())
        .map_err(|e| e.to_string())?;
    ensure(report.candidates == 824, || {
        format!("{} candidates at order 8, expected 824", report.candidates)
    })?;
    ensure(report.witnesses.len() == 24, || {
        format!(
            "{} non-cocolorable graphs, expected 24",
            report.witnesses.len()
        )
    })?;
    let below = find_witnesses(&p, 3, 7, Candidates::Generate, RunLimits::default())
        .map_err(|e| e.to_string())?;
    ensure(below.witnesses.is_empty(), || {
        "a 7-vertex witness exists".into()
    })?;
    let cographs = report
        .witnesses
        .graphs()
        .iter()
        .filter(|g| CO.contains(g))
        .count();
    ensure(cographs == 0, || {
        format!("{cographs} witnesses are cographs")
    })?;

    let level = match Generator::new(SearchParams::unrestricted(PG)).run_from(
        LevelSet::k1(),
        true,
        Some(5),
    ) {
        Ok(Outcome::Reached { last, .. }) => last,
        other => return Err(format!("perfect graphs of order 5: {other:?}")),
    };
    let failing = level
        .graphs()
        .iter()
        .filter(|g| !is_cocolorable(g, 0, 2))
        .count();
    ensure(failing == 0, || {
        format!("{failing} perfect 5-vertex graphs are not 2-cocolorable")
    })?;
    let staircase = clique_staircase(2).unwrap();
    ensure(!is_cocolorable(&staircase, 0, 2), || {
        "K1+K2+K3 is 2-cocolorable".into()
    })?;
    Ok(format!(
        "824 candidates, 24 witnesses, none a cograph; all {} perfect 5-vertex graphs 2-cocolorable at k=0",
        level.len()
    ))
}

fn medium() -> Check {
    let cells = medium_tier();
    let mut notes = Vec::new();
    let ramsey = run_cells(&cells).map(|_| ());
    let p = CocolorParams::new(PG, 2, 2).unwrap();
    let c = compute_c(&p, RunLimits::default(), false).map_err(|e| e.to_string())?;
    if c.value != 11 {
        notes.push(format!(
            "{p} computed {} ({} non-cocolorable graphs at order {}), expected 11",
            c.value,
            c.witnesses.witnesses.len(),
            c.witnesses.order
        ));
    }
    if let Err(e) = ramsey {
        notes.push(e);
    }
    if notes.is_empty() {
        Ok(format!("{} cells and {p} = 11 match", cells.len()))
    } else {
        Err(notes.join("; "))
    }
}

fn defect_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(500);
    let mut checked = 0;
    while checked < 500 {
        let k = rng.gen_range(0..3);
        let i = rng.gen_range(k + 2..k + 5);
        let j = rng.gen_range(k + 2..k + 5);
        let p = defram::DefectParams::new(k, i, j).unwrap();
        let n = rng.gen_range(2..=9);
        let density = rng.gen_range(0.2..0.8);
        let mut base = random_graph(&mut rng, n - 1, density);
        while brute_force_forbidden(&base, &p) {
            let v = rng.gen_range(0..base.order());
            base = base.remove_vertex(v).unwrap();
        }
        let s = VertexSet::from_bits(rng.gen::<u64>() & ((1u64 << base.order()) - 1));
        let g = base.extend_with_vertex(s).unwrap();
        let v = g.order() - 1;
        ensure(
            has_forbidden_set_through(&g, v, &p) == brute_force_forbidden(&g, &p),
            || format!("{} with {p}", g.to_graph6()),
        )?;
        checked += 1;
    }
    Ok("500 random extensions".into())
}

fn canonical_keys() -> Check {
    let mut pairs = 0;
    for level in all_graphs(7) {
        let mut buckets: HashMap<_, Vec<&Graph>> = HashMap::new();
        for g in level.graphs() {
            buckets.entry(g.degree_sequence()).or_default().push(g);
        }
        for bucket in buckets.values() {
            for (x, a) in bucket.iter().enumerate() {
                for b in &bucket[x + 1..] {
                    ensure(!isomorphic(a, b), || {
                        format!("{} ~ {}", a.to_graph6(), b.to_graph6())
                    })?;
                    pairs += 1;
                }
            }
        }
        ensure(level.len() == common::GRAPH_COUNTS[level.order()], || {
            format!("{} graphs of order {}", level.len(), level.order())
        })?;
    }
    Ok(format!("{pairs} same-invariant pairs distinct"))
}

fn chordal_fast_path() -> Check {
    for p in [
        SearchParams::unrestricted(CH),
        SearchParams::new(CH, 1, 4, 4).unwrap(),
        SearchParams::new(CH, 2, 5, 5).unwrap(),
    ] {
        let fast = Generator::new(p);
        let slow = Generator::new(p).extension(Extension::AllSubsets).unwrap();
        let (mut a, mut b) = (LevelSet::k1(), LevelSet::k1());
        while a.order() < 7 && !a.is_empty() {
            a = fast.extend(&a).unwrap().unwrap();
            b = slow.extend(&b).unwrap().unwrap();
            ensure(a.keys() == b.keys(), || {
                format!("{p} differs at order {}", a.order())
            })?;
        }
    }
    Ok("clique-only and all-subset extension agree up to order 7".into())
}

fn perfect_incremental() -> Check {
    let mut checked = 0;
    for level in all_graphs(6) {
        for g in level.graphs().iter().filter(|g| is_perfect_naive(g)) {
            for s in subsets(g.order()) {
                let h = g.extend_with_vertex(s).unwrap();
                ensure(
                    remains_perfect_after_extension(&h, h.order() - 1) == is_perfect_naive(&h),
                    || h.to_graph6(),
                )?;
                checked += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(9);
    let mut random = 0;
    while random < 2000 {
        let n = rng.gen_range(7..=8);
        let density = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, density);
        if !is_perfect_naive(&g) {
            continue;
        }
        let s = VertexSet::from_bits(rng.gen::<u64>() & ((1u64 << n) - 1));
        let h = g.extend_with_vertex(s).unwrap();
        ensure(
            remains_perfect_after_extension(&h, n) == is_perfect_naive(&h),
            || h.to_graph6(),
        )?;
        random += 1;
    }
    Ok(format!(
        "{checked} exhaustive extensions up to order 7, {random} random at orders 8-9"
    ))
}

fn graph6_round_trip() -> Check {
    let mut rng = StdRng::seed_from_u64(1000);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=64);
        let density = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, density);
        ensure(
            Graph::from_graph6(&g.to_graph6()).ok().as_ref() == Some(&g),
            || g.to_graph6(),
        )?;
    }
    Ok("1000 random graphs".into())
}

fn cocoloring_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(88);
    for _ in 0..600 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, density);
        let k = rng.gen_range(0..=2);
        let m = rng.gen_range(1..=3);
        let found = find_cocoloring(&g, k, m);
        ensure(found.is_some() == brute_force_cocolorable(&g, k, m), || {
            format!("{} k={k} m={m}", g.to_graph6())
        })?;
        if let Some(c) = found {
            ensure(c.is_valid(&g, k, m), || {
                format!("invalid cocoloring of {}", g.to_graph6())
            })?;
        }
    }
    Ok("600 random graphs up to order 8".into())
}

fn determinism() -> Check {
    let p = SearchParams::new(BIP, 2, 6, 7).unwrap();
    let run = |threads| -> Result<BTreeSet<_>, String> {
        match Generator::new(p).threads(threads).run() {
            Ok(Outcome::Finished(r)) => Ok(r.extremal.keys().iter().cloned().collect()),
            other => Err(format!("{other:?}")),
        }
    };
    let a = run(1)?;
    ensure(a == run(1)?, || "two single-threaded runs differ".into())?;
    ensure(a == run(8)?, || "8-thread run differs".into())?;
    Ok(format!("{p}: {} extremal graphs in every run", a.len()))
}

fn properties() -> Check {
    let suites: [Suite; 7] = [
        ("defect search", defect_oracle),
        ("canonical keys", canonical_keys),
        ("chordal fast path", chordal_fast_path),
        ("incremental perfectness", perfect_incremental),
        ("graph6", graph6_round_trip),
        ("cocoloring", cocoloring_oracle),
        ("determinism", determinism),
    ];
    let mut done = Vec::new();
    for (name, suite) in suites {
        let note = suite().map_err(|e| format!("{name}: {e}"))?;
        done.push(format!("{name}: {note}"));
    }
    Ok(done.join("; "))
}

fn main() -> ExitCode {
    let medium_enabled = std::env::var("DEFRAM_MEDIUM").is_ok_and(|v| v == "1");
    let criteria: [Criterion; 6] = [
        (1, "table regression, fast tier", Some(table_regression)),
        (2, "formula cross-checks", Some(formula_checks)),
        (3, "cocoloring flagship", Some(cocolor_flagship)),
        (
            4,
            "medium tier",
            medium_enabled.then_some(medium as fn() -> Check),
        ),
        (5, "full tables", None),
        (6, "property suites", Some(properties)),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let Some(check) = check else {
            let how = if id == 4 {
                "set DEFRAM_MEDIUM=1"
            } else {
                "run `defram tables --scope full`"
            };
            println!("SKIP {id} {name}: {how}");
            continue;
        };
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("PASS {id} {name}: {note} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
