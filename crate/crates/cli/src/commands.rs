//! One function per subcommand; each returns the text to print on stdout.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use greenseq::bridge::{table, table_csv};
use greenseq::coxeter::CartanData;
use greenseq::hearts::{enumerate_maximal_green, exchange_graph};
use greenseq::quiver::{FramedSeed, Quiver, Vertex};
use greenseq::verify::{self, Report};

pub fn load_quiver(path: &Path) -> Result<Quiver> {
    let raw = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("parsing quiver from {}", path.display()))
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Seed after `seq`, with its green and red vertices alongside the serialized seed.
pub fn mutate(q: &Quiver, seq: &[Vertex], green_only: bool, dot: bool) -> Result<String> {
    let seed = FramedSeed::new(q).apply_sequence(seq, green_only)?;
    if dot {
        return Ok(seed.to_dot());
    }
    let mut v = serde_json::to_value(&seed)?;
    if let Value::Object(m) = &mut v {
        m.insert("green".into(), json!(seed.green_vertices()));
        m.insert("red".into(), json!(seed.red_vertices()));
        m.insert("maximal".into(), json!(seed.is_maximal_green()?));
    }
    pretty(&v)
}

pub fn sortable_table(q: &Quiver, c: &[Vertex], json: bool) -> Result<String> {
    if !CartanData::new(q)?.is_admissible(c)? {
        bail!("c = {c:?} is not admissible for this quiver");
    }
    let rows = table(q, c)?;
    if json {
        pretty(&rows)
    } else {
        Ok(table_csv(&rows)?)
    }
}

pub fn eg(q: &Quiver, depth: Option<usize>, json: bool) -> Result<String> {
    let g = exchange_graph(q, depth)?;
    if g.truncated {
        eprintln!("warning: exchange graph truncated at depth {}", depth.unwrap_or(greenseq::hearts::DEFAULT_DEPTH));
    }
    if json {
        pretty(&g.to_json())
    } else {
        Ok(g.to_dot())
    }
}

pub fn maximal(q: &Quiver, depth: Option<usize>, json: bool) -> Result<String> {
    let seqs = enumerate_maximal_green(q, depth)?;
    if json {
        return pretty(&seqs);
    }
    Ok(seqs
        .iter()
        .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect())
}

pub fn verify(q: &Quiver, c: &[Vertex], seed: u64) -> Result<Report> {
    Ok(verify::run(q, c, seed)?)
}

pub fn render_report(r: &Report, json: bool) -> Result<String> {
    if json {
        return pretty(r);
    }
    let mut out = String::new();
    for c in &r.checks {
        let tag = if c.skipped { "SKIP" } else if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            out += &format!("{tag} {}\n", c.name);
        } else {
            out += &format!("{tag} {}: {}\n", c.name, c.detail);
        }
    }
    Ok(out)
}
