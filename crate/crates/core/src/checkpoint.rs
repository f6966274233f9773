//! Level files: graph6 lines, optionally preceded by `#` header lines.
//!
//! ```text
//! # class=perfect k=1 i=4 j=5 order=6 complete=true count=4
//! # sha256=<hex digest of the graph6 lines, newline-terminated>
//! E?Bw
//! ...
//! ```
//!
//! Files without a header are accepted as plain graph lists.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::classes::GraphClass;
use crate::defect::DefectParams;
use crate::error::{Error, Result};
use crate::generator::LevelSet;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelMeta {
    pub class: GraphClass,
    pub defect: DefectParams,
    pub order: usize,
    pub complete: bool,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct LevelFile {
    pub meta: Option<LevelMeta>,
    pub level: LevelSet,
}

fn body_of<'a>(lines: impl Iterator<Item = &'a str>) -> String {
    let mut body = String::new();
    for l in lines {
        body.push_str(l);
        body.push('\n');
    }
    body
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Writes `level` with a header, replacing `path` atomically.
pub fn write_level(path: &Path, meta: &LevelMeta, level: &LevelSet) -> Result<()> {
    let body = body_of(level.keys().iter().map(|k| k.as_str()));
    let d = &meta.defect;
    let text = format!(
        "# class={} k={} i={} j={} order={} complete={} count={}\n# sha256={}\n{body}",
        meta.class,
        d.k(),
        d.i(),
        d.j(),
        meta.order,
        meta.complete,
        meta.count,
        digest(&body)
    );
    write_atomic(path, text.as_bytes())
}

/// Writes plain graph6 lines, one per graph.
pub fn write_graphs<'a>(path: &Path, graphs: impl IntoIterator<Item = &'a Graph>) -> Result<()> {
    let body: String = graphs.into_iter().map(|g| g.to_graph6() + "\n").collect();
    write_atomic(path, body.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = PathBuf::from(path);
    tmp.as_mut_os_string().push(".tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Graph6 lines of `text` with their 1-based line numbers; blank and `#`
/// lines are skipped.
pub fn parse_graph6_lines(text: &str) -> Vec<(usize, Result<Graph>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(n, l)| (n + 1, Graph::from_graph6(l)))
        .collect()
}

/// Reads a level file, checking the header's count and digest when present.
pub fn read_level(path: &Path) -> Result<LevelFile> {
    let fail = |reason: String| Error::Checkpoint {
        path: path.to_path_buf(),
        reason,
    };
    let text = fs::read_to_string(path)?;
    let mut meta = None;
    let mut sha = None;
    for line in text.lines().filter(|l| l.starts_with('#')) {
        let line = line.trim_start_matches('#').trim();
        if let Some(h) = line.strip_prefix("sha256=") {
            sha = Some(h.to_string());
        } else if line.starts_with("class=") {
            meta = Some(parse_meta(line).map_err(fail)?);
        }
    }
    let graph_lines: Vec<&str> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(str::trim)
        .collect();
    if let Some(expected) = sha {
        let actual = digest(&body_of(graph_lines.iter().copied()));
        if actual != expected {
            return Err(fail(format!(
                "digest mismatch: header {expected}, content {actual}"
            )));
        }
    }
    let mut graphs = Vec::with_capacity(graph_lines.len());
    for (idx, l) in graph_lines.iter().enumerate() {
        graphs.push(Graph::from_graph6(l).map_err(|e| fail(format!("graph {}: {e}", idx + 1)))?);
    }
    let order = match (&meta, graphs.first()) {
        (Some(m), _) => m.order,
        (None, Some(g)) => g.order(),
        (None, None) => return Err(fail("no graphs and no header".into())),
    };
    let level = LevelSet::from_graphs(order, graphs).map_err(|e| fail(e.to_string()))?;
    if let Some(m) = &meta {
        if m.count != level.len() {
            return Err(fail(format!(
                "header count {} but {} distinct graphs",
                m.count,
                level.len()
            )));
        }
    }
    Ok(LevelFile { meta, level })
}

fn parse_meta(line: &str) -> std::result::Result<LevelMeta, String> {
    let mut class = None;
    let (mut k, mut i, mut j, mut order, mut complete, mut count) =
        (None, None, None, None, None, None);
    for field in line.split_whitespace() {
        let (name, value) = field
            .split_once('=')
            .ok_or_else(|| format!("malformed header field {field:?}"))?;
        let num = || value.parse::<usize>().map_err(|e| format!("{name}: {e}"));
        match name {
            "class" => class = Some(value.parse::<GraphClass>().map_err(|e| e.to_string())?),
            "k" => k = Some(num()?),
            "i" => i = Some(num()?),
            "j" => j = Some(num()?),
            "order" => order = Some(num()?),
            "count" => count = Some(num()?),
            "complete" => {
                complete = Some(
                    value
                        .parse::<bool>()
                        .map_err(|e| format!("complete: {e}"))?,
                )
            }
            _ => return Err(format!("unknown header field {name:?}")),
        }
    }
    let missing = |f: &str| format!("header lacks {f}");
    let defect = DefectParams::new(
        k.ok_or_else(|| missing("k"))?,
        i.ok_or_else(|| missing("i"))?,
        j.ok_or_else(|| missing("j"))?,
    )
    .map_err(|e| e.to_string())?;
    Ok(LevelMeta {
        class: class.ok_or_else(|| missing("class"))?,
        defect,
        order: order.ok_or_else(|| missing("order"))?,
        complete: complete.ok_or_else(|| missing("complete"))?,
        count: count.ok_or_else(|| missing("count"))?,
    })
}
