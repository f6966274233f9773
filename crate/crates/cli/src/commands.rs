use std::io::Read;
use std::path::Path;
use std::time::Instant;

use defram::checkpoint::{self, LevelFile};
use defram::cocolor::{
    self, find_witnesses, formula_c_oracle, straight_lower_bound, straight_upper_bound, Candidates,
    WitnessReport,
};
use defram::defect::has_forbidden_set;
use defram::known::{self, KnownRamsey};
use defram::{
    canonical_form, canonical_key, triangle_chain, CocolorParams, DefectParams, Generator, Graph,
    LevelSet, Outcome, SearchParams,
};

use crate::report::{CmdResult, Failure, Summary};
use crate::{CanonArgs, CocolorArgs, RamseyArgs, TablesArgs, VerifyArgs};

fn usage(e: defram::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Lib(e.into()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Lib(e.into()))
    }
}

fn write_out(path: Option<&Path>, level: &LevelSet) -> CmdResult {
    if let Some(path) = path {
        checkpoint::write_graphs(path, level.graphs())?;
    }
    Ok(())
}

/// Loads a seed file; the header, if any, must name the same class. A
/// complete level with identical parameters resumes a complete run.
fn load_seed(path: &Path, params: &SearchParams) -> Result<(LevelSet, bool), Failure> {
    let LevelFile { meta, level } = checkpoint::read_level(path)?;
    let complete = match meta {
        Some(m) if m.class != params.class => {
            return Err(Failure::Usage(format!(
                "seed {} was generated for class {}, not {}",
                path.display(),
                m.class,
                params.class
            )))
        }
        Some(m) => m.complete && m.defect == params.defect,
        None => false,
    };
    Ok((level, complete))
}

pub fn ramsey(a: &RamseyArgs) -> CmdResult {
    let params = SearchParams::new(a.class, a.k, a.i, a.j).map_err(usage)?;
    let mut gen = Generator::new(params).limits(a.run.limits());
    if let Some(dir) = &a.run.checkpoint {
        gen = gen.checkpoint_dir(dir);
    }
    let resume_path = gen.checkpoint_path().filter(|p| a.resume && p.exists());
    if a.resume && a.run.checkpoint.is_none() {
        return Err(Failure::Usage(
            "--resume needs --checkpoint or RAMSEY_CHECKPOINT_DIR".into(),
        ));
    }
    let (start, complete) = match (&a.seed, &resume_path) {
        (Some(seed), _) => load_seed(seed, &params)?,
        (None, Some(path)) => load_seed(path, &params)?,
        (None, None) => (LevelSet::k1(), true),
    };
    if let Some(stop) = a.stop_order {
        if stop <= start.order() {
            return Err(Failure::Usage(format!(
                "stop order {stop} must exceed the seed order {}",
                start.order()
            )));
        }
    }
    let seed_order = start.order();
    let began = Instant::now();
    let outcome = gen
        .run_from(start, complete, a.stop_order)
        .map_err(|e| match e {
            defram::Error::InvalidParams(_) => usage(e),
            e => Failure::Lib(e),
        })?;
    let mut summary = Summary::default();
    summary.add("params", params);
    summary.add("seed_order", seed_order);
    let result = match &outcome {
        Outcome::Finished(r) if r.complete => {
            println!("{params} = {}", r.value);
            println!("extremal: {} graphs", r.extremal.len());
            summary.add("value", r.value);
            summary.add("extremal", r.extremal.len());
            Ok(())
        }
        Outcome::Finished(r) => {
            println!("{params} >= {}", r.value);
            println!(
                "seeded: no graph of order {} contains a seed graph; {} graphs at order {}",
                r.value,
                r.extremal.len(),
                r.extremal.order()
            );
            summary.add("lower_bound", r.value);
            summary.add("seeded_empty_at", r.value);
            summary.add("last_level", r.extremal.len());
            Ok(())
        }
        Outcome::Reached { last, complete } => {
            println!(
                "level {}: {} graphs{}",
                last.order(),
                last.len(),
                if *complete { "" } else { " (seeded)" }
            );
            println!("{params} >= {}", last.order() + 1);
            summary.add("lower_bound", last.order() + 1);
            summary.add("last_level", last.len());
            Ok(())
        }
        Outcome::Stopped {
            reason,
            last,
            checkpoint,
            ..
        } => {
            println!("{params}: lower bound: >= {}, incomplete", last.order() + 1);
            println!(
                "stopped: {reason} after order {} ({} graphs)",
                last.order(),
                last.len()
            );
            if let Some(p) = checkpoint {
                println!("checkpoint: {}", p.display());
            }
            summary.add("lower_bound", last.order() + 1);
            summary.add("incomplete", reason);
            Err(Failure::Resource(String::new()))
        }
    };
    summary.add("seconds", format!("{:.3}", began.elapsed().as_secs_f64()));
    let last = match &outcome {
        Outcome::Finished(r) => &r.extremal,
        Outcome::Reached { last, .. } | Outcome::Stopped { last, .. } => last,
    };
    write_out(a.run.out.as_deref(), last)?;
    summary.write(a.run.summary.as_deref())?;
    result
}

fn print_witnesses(report: &WitnessReport) {
    for g in report.witnesses.graphs() {
        println!("witness {}", g.to_graph6());
    }
}

pub fn cocolor(a: &CocolorArgs) -> CmdResult {
    let p = CocolorParams::new(a.class, a.k, a.m).map_err(usage)?;
    let limits = a.run.limits();
    let mut summary = Summary::default();
    summary.add("params", p);
    let prev = |summary: &mut Summary| -> Result<usize, Failure> {
        let prev = match (a.prev, a.m) {
            (Some(c), _) => c,
            (None, 1) => 0,
            (None, m) => {
                let below = CocolorParams::new(a.class, a.k, m - 1).map_err(usage)?;
                cocolor::compute_c(&below, limits, false)?.value
            }
        };
        summary.add("prev", prev);
        Ok(prev)
    };

    if a.upper_bound {
        let prev_c = prev(&mut summary)?;
        let upper = straight_upper_bound(&p, prev_c)?;
        let lower = straight_lower_bound(prev_c, |t| known::ramsey_diagonal(a.class, a.k, t));
        println!("{p} >= {lower}");
        println!("{p} <= {upper}");
        summary.add("lower_bound", lower);
        summary.add("upper_bound", upper);
        return summary.write(a.run.summary.as_deref());
    }

    if let Some(order) = a.order {
        let prev_c = prev(&mut summary)?;
        let supplied;
        let seeded;
        let source = if let Some(path) = &a.candidates {
            supplied = checkpoint::read_level(path)?.level;
            Candidates::Supplied(&supplied)
        } else if let Some(path) = &a.seed {
            seeded = checkpoint::read_level(path)?.level;
            Candidates::Seeded(&seeded)
        } else {
            Candidates::Generate
        };
        let report = find_witnesses(&p, prev_c, order, source, limits)?;
        println!("candidates at {order}: {}", report.candidates);
        println!("witnesses at {order}: {}", report.witnesses.len());
        if report.witnesses.is_empty() {
            if report.exhaustive {
                println!("{p} >= {order}");
                summary.add("lower_bound", order);
            } else {
                println!("no witness among the tested graphs of order {order}");
            }
        } else {
            println!("{p} <= {}", order - 1);
            summary.add("upper_bound", order - 1);
            print_witnesses(&report);
        }
        summary.add("candidates", report.candidates);
        summary.add("witnesses", report.witnesses.len());
        write_out(a.run.out.as_deref(), &report.witnesses)?;
        return summary.write(a.run.summary.as_deref());
    }

    let r = match a.prev {
        Some(prev_c) => {
            // scan upward from the supplied c(m-1)
            let mut found = None;
            for order in prev_c + 1..=defram::MAX_ORDER {
                let report = find_witnesses(&p, prev_c, order, Candidates::Generate, limits)?;
                if !report.witnesses.is_empty() {
                    found = Some(report);
                    break;
                }
            }
            let report = found.ok_or(defram::Error::Capacity {
                order: defram::MAX_ORDER + 1,
            })?;
            cocolor::CResult {
                params: p,
                value: report.order - 1,
                lower: Vec::new(),
                witnesses: report,
            }
        }
        None => cocolor::compute_c(&p, limits, a.all_witnesses)?,
    };
    let w = &r.witnesses;
    println!("{p} = {}", r.value);
    if w.exhaustive {
        println!(
            "c = {}, witnesses at {}: {}",
            r.value,
            w.order,
            w.witnesses.len()
        );
    } else {
        println!("c = {}, witness at {} by construction", r.value, w.order);
    }
    print_witnesses(w);
    summary.add("value", r.value);
    summary.add("witness_order", w.order);
    summary.add("witnesses", w.witnesses.len());
    summary.add("witnesses_exhaustive", w.exhaustive);
    let mut mismatch = None;
    if let Some(expected) = formula_c_oracle(&p) {
        summary.add("formula", expected);
        if expected != r.value {
            println!("formula gives {expected}");
            mismatch = Some(format!(
                "computed {} but the closed form gives {expected}",
                r.value
            ));
        }
    }
    if let Some(known) = known::known_cocolor(p.class, p.k, p.m) {
        let range = if known.low == known.high {
            known.low.to_string()
        } else {
            format!("{}..{}", known.low, known.high)
        };
        summary.add("reference", &range);
        let count_differs = known
            .witnesses
            .is_some_and(|c| w.exhaustive && c != w.witnesses.len());
        if r.value < known.low || r.value > known.high || count_differs {
            let count = known
                .witnesses
                .map(|c| format!(" with {c} witnesses"))
                .unwrap_or_default();
            println!("reference value {range}{count}");
            mismatch.get_or_insert(format!(
                "computed {} but the reference value is {range}",
                r.value
            ));
        }
    }
    write_out(a.run.out.as_deref(), &w.witnesses)?;
    summary.write(a.run.summary.as_deref())?;
    match mismatch {
        Some(msg) => Err(Failure::Mismatch(msg)),
        None => Ok(()),
    }
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    let defect = match (a.i, a.j) {
        (Some(i), Some(j)) => Some(DefectParams::new(a.k, i, j).map_err(usage)?),
        _ => None,
    };
    if defect.is_none() && a.m.is_none() {
        return Err(Failure::Usage("give -i and -j, or -m".into()));
    }
    let text = read_input(&a.path)?;
    let (mut passed, mut failed) = (0usize, 0usize);
    for (line, parsed) in checkpoint::parse_graph6_lines(&text) {
        let g = match parsed {
            Ok(g) => g,
            Err(e) => {
                println!("line {line}: FAIL {e}");
                failed += 1;
                continue;
            }
        };
        let mut problems = Vec::new();
        if !a.class.contains(&g) {
            problems.push(format!("not {}", a.class));
        }
        if let Some(d) = &defect {
            if has_forbidden_set(&g, d) {
                problems.push(format!(
                    "has a {}-dense {}-set or {}-sparse {}-set",
                    d.k(),
                    d.i(),
                    d.k(),
                    d.j()
                ));
            }
        }
        if let Some(m) = a.m {
            if let Some(col) = defram::find_cocoloring(&g, a.k, m) {
                debug_assert!(col.is_valid(&g, a.k, m));
                problems.push(format!("has a {}-defective {m}-cocoloring", a.k));
            }
        }
        if problems.is_empty() {
            println!("line {line}: ok order {} {}", g.order(), g.to_graph6());
            passed += 1;
        } else {
            println!(
                "line {line}: FAIL order {} {}: {}",
                g.order(),
                g.to_graph6(),
                problems.join("; ")
            );
            failed += 1;
        }
    }
    println!("verified: {passed} passed, {failed} failed");
    if failed > 0 {
        return Err(Failure::Mismatch(String::new()));
    }
    Ok(())
}

enum Verdict {
    Pass,
    Fail,
    Stop,
}

fn run_entry(e: &KnownRamsey, a: &TablesArgs) -> Result<(Verdict, String), Failure> {
    let params = SearchParams::new(e.class, e.k, e.i, e.j)?;
    let gen = Generator::new(params).limits(a.run.limits());
    let expected = match e.extremal {
        Some(c) => format!("{}({c})", e.value),
        None => e.value.to_string(),
    };
    Ok(match gen.run()? {
        Outcome::Finished(r) => {
            let got = format!("{}({})", r.value, r.extremal.len());
            let ok = r.value == e.value && e.extremal.is_none_or(|c| c == r.extremal.len());
            let oracle = defram::formula_oracle(e.class, e.k, e.i, e.j);
            let ok = ok && oracle.is_none_or(|v| v == r.value);
            let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
            (verdict, format!("{params} = {got}, expected {expected}"))
        }
        Outcome::Stopped { reason, last, .. } => (
            Verdict::Stop,
            format!(
                "{params} >= {}, incomplete ({reason}), expected {expected}",
                last.order() + 1
            ),
        ),
        Outcome::Reached { .. } => unreachable!("no stop order"),
    })
}

pub fn tables(a: &TablesArgs) -> CmdResult {
    let (mut pass, mut fail, mut stop) = (0, 0, 0);
    let mut summary = Summary::default();
    for e in known::entries_in_scope(a.scope) {
        if a.class.is_some_and(|c| c != e.class) || a.k.is_some_and(|k| k != e.k) {
            continue;
        }
        let began = Instant::now();
        let (verdict, text) = run_entry(e, a)?;
        let secs = began.elapsed().as_secs_f64();
        let tag = match verdict {
            Verdict::Pass => {
                pass += 1;
                "PASS"
            }
            Verdict::Fail => {
                fail += 1;
                "FAIL"
            }
            Verdict::Stop => {
                stop += 1;
                "STOP"
            }
        };
        println!("{tag} {text} [{secs:.2}s]");
        summary.add(&format!("{}_k{}_i{}_j{}", e.class, e.k, e.i, e.j), tag);
    }
    println!("tables: {pass} passed, {fail} failed, {stop} stopped");
    summary.add("passed", pass);
    summary.add("failed", fail);
    summary.add("stopped", stop);
    summary.write(a.run.summary.as_deref())?;
    if fail > 0 {
        Err(Failure::Mismatch(String::new()))
    } else if stop > 0 {
        Err(Failure::Resource(String::new()))
    } else {
        Ok(())
    }
}

pub fn canon(a: &CanonArgs) -> CmdResult {
    let text = read_input(&a.path)?;
    let mut graphs = Vec::new();
    for (line, parsed) in checkpoint::parse_graph6_lines(&text) {
        let g = parsed.map_err(|e| Failure::Usage(format!("line {line}: {e}")))?;
        graphs.push(g);
    }
    if a.dedup {
        let mut keys: Vec<_> = graphs.iter().map(canonical_key).collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            println!("{k}");
        }
    } else {
        for g in &graphs {
            println!("{}", canonical_form(g).to_graph6());
        }
    }
    Ok(())
}

pub fn chain(j: usize) -> CmdResult {
    let g: Graph = triangle_chain(j).map_err(usage)?;
    println!("{}", g.to_graph6());
    Ok(())
}
