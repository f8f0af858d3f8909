//! Line-oriented text formats.
//!
//! Target graph:
//! ```text
//! p hgraph <h>
//! e <u> <v>          # 0-indexed, `e v v` is a loop
//! ```
//! Instance:
//! ```text
//! p lhom <n> <m> <h>
//! e <u> <v>
//! l <v> <c1> <c2> ...   # exactly one per vertex, may be empty
//! x <v1> <v2> ...       # optional vertex cover
//! ```
//! Lines starting with `#` or `c` are comments in both formats. DIMACS CNF
//! input follows the usual `p cnf <vars> <clauses>` convention.

use std::fmt::Write as _;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, HGraph, Instance};
use crate::reduction::Cnf;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
            return None;
        }
        Some((i + 1, line.split_whitespace().collect()))
    })
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_hgraph(text: &str) -> Result<HGraph> {
    let mut graph: Option<Graph> = None;
    for (ln, toks) in content_lines(text) {
        match toks[0] {
            "p" => {
                if graph.is_some() {
                    return Err(err(ln, "duplicate header"));
                }
                if toks.len() != 3 || toks[1] != "hgraph" {
                    return Err(err(ln, "expected `p hgraph <h>`"));
                }
                graph = Some(Graph::new(num(ln, toks[2])?));
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| err(ln, "edge before header"))?;
                if toks.len() != 3 {
                    return Err(err(ln, "expected `e <u> <v>`"));
                }
                let (u, v) = (num(ln, toks[1])?, num(ln, toks[2])?);
                g.add_edge(u, v).map_err(|e| err(ln, e.to_string()))?;
            }
            other => return Err(err(ln, format!("unknown line type `{other}`"))),
        }
    }
    let graph = graph.ok_or_else(|| err(0, "missing `p hgraph` header"))?;
    HGraph::new(graph)
}

pub fn write_hgraph(hg: &HGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "p hgraph {}", hg.h()).unwrap();
    for (u, v) in hg.graph().edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut lists: Vec<Option<ColorSet>> = Vec::new();
    let mut cover: Option<Vec<usize>> = None;
    let mut edges_seen = 0;
    for (ln, toks) in content_lines(text) {
        if toks[0] != "p" && header.is_none() {
            return Err(err(ln, "content before `p lhom` header"));
        }
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(ln, "duplicate header"));
                }
                if toks.len() != 5 || toks[1] != "lhom" {
                    return Err(err(ln, "expected `p lhom <n> <m> <h>`"));
                }
                let (n, m, h) = (num(ln, toks[2])?, num(ln, toks[3])?, num(ln, toks[4])?);
                header = Some((n, m, h));
                graph = Graph::new(n);
                lists = vec![None; n];
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(err(ln, "expected `e <u> <v>`"));
                }
                let (u, v) = (num(ln, toks[1])?, num(ln, toks[2])?);
                let fresh = graph.add_edge(u, v).map_err(|e| err(ln, e.to_string()))?;
                if !fresh {
                    return Err(err(ln, format!("duplicate edge ({u},{v})")));
                }
                edges_seen += 1;
            }
            "l" => {
                let (_, _, h) = header.unwrap();
                if toks.len() < 2 {
                    return Err(err(ln, "expected `l <v> <colors...>`"));
                }
                let v = num(ln, toks[1])?;
                if v >= lists.len() {
                    return Err(err(ln, format!("list for unknown vertex {v}")));
                }
                if lists[v].is_some() {
                    return Err(err(ln, format!("second list for vertex {v}")));
                }
                let mut l = ColorSet::EMPTY;
                for t in &toks[2..] {
                    let c = num(ln, t)?;
                    if c >= h {
                        return Err(err(ln, format!("color {c} outside 0..{h}")));
                    }
                    l.insert(c);
                }
                lists[v] = Some(l);
            }
            "x" => {
                if cover.is_some() {
                    return Err(err(ln, "second cover line"));
                }
                cover = Some(toks[1..].iter().map(|t| num(ln, t)).collect::<Result<_>>()?);
            }
            other => return Err(err(ln, format!("unknown line type `{other}`"))),
        }
    }
    let (_, m, h) = header.ok_or_else(|| err(0, "missing `p lhom` header"))?;
    if edges_seen != m {
        return Err(err(0, format!("header announces {m} edges, found {edges_seen}")));
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| err(0, format!("vertex {v} has no list line"))))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(h, graph, lists, cover)
}

pub fn write_instance(inst: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(
        out,
        "p lhom {} {} {}",
        inst.vertex_count(),
        inst.graph.edge_count(),
        inst.h
    )
    .unwrap();
    for (u, v) in inst.graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (v, l) in inst.lists.iter().enumerate() {
        write!(out, "l {v}").unwrap();
        for c in l.iter() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    if let Some(cover) = &inst.cover {
        out.push('x');
        for v in cover {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// DIMACS CNF. Clauses may span lines and are terminated by `0`.
pub fn parse_cnf(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || toks.len() != 4 || toks[1] != "cnf" {
                return Err(err(ln, "expected a single `p cnf <vars> <clauses>` header"));
            }
            header = Some((num(ln, toks[2])?, num(ln, toks[3])?));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| err(ln, "clause before header"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| err(ln, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(err(ln, format!("literal {lit} exceeds {vars} variables")));
                }
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let (vars, count) = header.ok_or_else(|| err(0, "missing `p cnf` header"))?;
    if clauses.len() != count {
        return Err(err(0, format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Ok(Cnf { vars, clauses })
}

pub fn write_cnf(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.vars, cnf.clauses.len());
    for c in &cnf.clauses {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
