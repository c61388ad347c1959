//! Text formats: graphs, hub labelings, PACE tree decompositions and
//! colorings.
//!
//! Graph: `p <n> <m> <directed|undirected> <weighted|unweighted>` followed by
//! `m` lines `u v [w]` (0-based). Labeling: `hl <n> <k> <exact|admissible>`
//! followed by `out <v> h:d ...` and `in <v> h:d ...` for every vertex.
//! Tree decomposition: PACE `.td` with 1-based vertices and bags. Coloring:
//! `color <v> <c>` per vertex. `#` starts a comment in all formats except
//! `.td`, where `c` lines are comments.

use std::fmt::Write as _;
use std::str::FromStr;

use hublab_core::graph::Vertex;
use hublab_core::labeling::Flavor;
use hublab_core::sparse::LowTDColoring;
use hublab_core::twdnc::TreeDecomposition;
use hublab_core::{Graph, HubLabeling, Label, Weight};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Content(#[from] hublab_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines<'a>(text: &'a str, comment: &'a str) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let body = raw.split(comment).next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn num<T: FromStr>(line: usize, word: &str, what: &str) -> Result<T, FormatError> {
    word.parse().map_err(|_| syntax(line, format!("bad {what} '{word}'")))
}

/// What a text input holds, judged by its first record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Graph,
    Labeling,
}

pub fn sniff(text: &str) -> Option<Kind> {
    let (_, words) = lines(text, "#").next()?;
    match words[0] {
        "p" => Some(Kind::Graph),
        "hl" => Some(Kind::Labeling),
        _ => None,
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut it = lines(text, "#");
    let (hl, head) = it.next().ok_or_else(|| syntax(1, "empty graph file"))?;
    if head.len() != 5 || head[0] != "p" {
        return Err(syntax(hl, "expected 'p <n> <m> <directed|undirected> <weighted|unweighted>'"));
    }
    let n: usize = num(hl, head[1], "vertex count")?;
    let m: usize = num(hl, head[2], "edge count")?;
    let directed = match head[3] {
        "directed" => true,
        "undirected" => false,
        other => return Err(syntax(hl, format!("expected directed or undirected, got '{other}'"))),
    };
    let weighted = match head[4] {
        "weighted" => true,
        "unweighted" => false,
        other => return Err(syntax(hl, format!("expected weighted or unweighted, got '{other}'"))),
    };
    let mut arcs = Vec::with_capacity(m);
    for (line, words) in it {
        let w: Weight = match (words.len(), weighted) {
            (2, false) => 1,
            (3, true) => num(line, words[2], "weight")?,
            _ => return Err(syntax(line, format!("expected {} fields", if weighted { 3 } else { 2 }))),
        };
        arcs.push((num(line, words[0], "vertex")?, num(line, words[1], "vertex")?, w));
    }
    if arcs.len() != m {
        return Err(syntax(hl, format!("header announces {m} edges, found {}", arcs.len())));
    }
    Ok(Graph::from_arcs(n, arcs, directed, weighted)?)
}

pub fn write_graph(g: &Graph) -> String {
    let arcs: Vec<(Vertex, Vertex, Weight)> = if g.is_directed() {
        (0..g.n()).flat_map(|u| g.out_arcs(u).iter().map(move |&(v, w)| (u, v, w))).collect()
    } else {
        g.edges()
    };
    let mut out = String::new();
    let dir = if g.is_directed() { "directed" } else { "undirected" };
    let wt = if g.is_weighted() { "weighted" } else { "unweighted" };
    let _ = writeln!(out, "p {} {} {dir} {wt}", g.n(), arcs.len());
    for (u, v, w) in arcs {
        if g.is_weighted() {
            let _ = writeln!(out, "{u} {v} {w}");
        } else {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}

fn parse_label(line: usize, words: &[&str]) -> Result<Label, FormatError> {
    words
        .iter()
        .map(|entry| {
            let (h, d) = entry.split_once(':').ok_or_else(|| syntax(line, format!("bad entry '{entry}'")))?;
            Ok((num(line, h, "hub")?, num(line, d, "distance")?))
        })
        .collect()
}

pub fn parse_labeling(text: &str) -> Result<HubLabeling, FormatError> {
    let mut it = lines(text, "#");
    let (hl, head) = it.next().ok_or_else(|| syntax(1, "empty labeling file"))?;
    if head.len() != 4 || head[0] != "hl" {
        return Err(syntax(hl, "expected 'hl <n> <maxLabelSize> <exact|admissible>'"));
    }
    let n: usize = num(hl, head[1], "vertex count")?;
    let k: usize = num(hl, head[2], "label size")?;
    let flavor = Flavor::from_str(head[3]).map_err(|e| syntax(hl, e.to_string()))?;
    let mut out: Vec<Option<Label>> = vec![None; n];
    let mut inn: Vec<Option<Label>> = vec![None; n];
    for (line, words) in it {
        if words.len() < 2 {
            return Err(syntax(line, "expected 'out <v> ...' or 'in <v> ...'"));
        }
        let v: usize = num(line, words[1], "vertex")?;
        if v >= n {
            return Err(syntax(line, format!("vertex {v} out of range")));
        }
        let slot = match words[0] {
            "out" => &mut out[v],
            "in" => &mut inn[v],
            other => return Err(syntax(line, format!("unknown record '{other}'"))),
        };
        if slot.is_some() {
            return Err(syntax(line, format!("second {} label for vertex {v}", words[0])));
        }
        let label = parse_label(line, &words[2..])?;
        if label.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(syntax(line, "hubs must be strictly ascending"));
        }
        *slot = Some(label);
    }
    let take = |side: Vec<Option<Label>>, name: &str| -> Result<Vec<Label>, FormatError> {
        side.into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| syntax(hl, format!("missing {name} label for vertex {v}"))))
            .collect()
    };
    let l = HubLabeling::new(take(out, "out")?, take(inn, "in")?, flavor)?;
    if l.max_label_size() != k {
        return Err(syntax(hl, format!("header says max label size {k}, labels have {}", l.max_label_size())));
    }
    Ok(l)
}

pub fn write_labeling(l: &HubLabeling) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hl {} {} {}", l.n(), l.max_label_size(), l.flavor());
    for v in 0..l.n() {
        for (name, label) in [("out", l.out_label(v)), ("in", l.in_label(v))] {
            let _ = write!(out, "{name} {v}");
            for &(h, d) in label {
                let _ = write!(out, " {h}:{d}");
            }
            out.push('\n');
        }
    }
    out
}

/// PACE `.td`: `s td <bags> <width+1> <n>`, `b <id> <v...>`, `<id> <id>`.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, FormatError> {
    let mut it = lines(text, "\u{0}").filter(|(_, w)| w[0] != "c");
    let (hl, head) = it.next().ok_or_else(|| syntax(1, "empty decomposition file"))?;
    if head.len() != 5 || head[0] != "s" || head[1] != "td" {
        return Err(syntax(hl, "expected 's td <bags> <width+1> <n>'"));
    }
    let count: usize = num(hl, head[2], "bag count")?;
    let size: usize = num(hl, head[3], "bag size")?;
    let n: usize = num(hl, head[4], "vertex count")?;
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; count];
    let mut edges = Vec::new();
    for (line, words) in it {
        if words[0] == "b" {
            let id: usize = num(line, words.get(1).copied().unwrap_or(""), "bag id")?;
            if id == 0 || id > count {
                return Err(syntax(line, format!("bag id {id} outside 1..={count}")));
            }
            if bags[id - 1].is_some() {
                return Err(syntax(line, format!("bag {id} given twice")));
            }
            let mut bag = Vec::with_capacity(words.len() - 2);
            for w in &words[2..] {
                let v: usize = num(line, w, "vertex")?;
                if v == 0 || v > n {
                    return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
                }
                bag.push(v - 1);
            }
            bags[id - 1] = Some(bag);
        } else {
            if words.len() != 2 {
                return Err(syntax(line, "expected a tree edge '<id> <id>'"));
            }
            let a: usize = num(line, words[0], "bag id")?;
            let b: usize = num(line, words[1], "bag id")?;
            if a == 0 || b == 0 || a > count || b > count {
                return Err(syntax(line, format!("tree edge {a} {b} names a missing bag")));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags: Vec<Vec<Vertex>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| syntax(hl, format!("bag {} missing", i + 1))))
        .collect::<Result<_, _>>()?;
    let td = TreeDecomposition::new(n, bags, edges)?;
    if n > 0 && td.width() + 1 != size {
        return Err(syntax(hl, format!("header says bag size {size}, largest bag has {}", td.width() + 1)));
    }
    Ok(td)
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    let size = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {size} {}", td.bags().len(), td.n());
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in td.edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

pub fn parse_coloring(text: &str, n: usize) -> Result<LowTDColoring, FormatError> {
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for (line, words) in lines(text, "#") {
        if words.len() != 3 || words[0] != "color" {
            return Err(syntax(line, "expected 'color <v> <c>'"));
        }
        let v: usize = num(line, words[1], "vertex")?;
        if v >= n {
            return Err(syntax(line, format!("vertex {v} out of range (n = {n})")));
        }
        if colors[v].is_some() {
            return Err(syntax(line, format!("vertex {v} colored twice")));
        }
        colors[v] = Some(num(line, words[2], "color")?);
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| syntax(0, format!("vertex {v} has no color"))))
        .collect::<Result<_, _>>()?;
    Ok(LowTDColoring::new(colors))
}

pub fn write_coloring(c: &LowTDColoring) -> String {
    let mut out = String::new();
    for (v, col) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "color {v} {col}");
    }
    out
}
