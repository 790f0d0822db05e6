//! Line-oriented text formats for instances and strategies, and DOT output.
//!
//! Instance files:
//!
//! ```text
//! # two robots on a star
//! problem mlcp
//! vertices 4
//! label 0 hub
//! edge hub 1
//! edge 0 2
//! edge 0 3
//! robots 2
//! starts hub hub
//! ```
//!
//! Strategy files hold one `walk` line per robot. Blank lines and text after
//! `#` are ignored in both. Vertices are written as ids or, once declared, as
//! labels.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::oracle::Objective;
use crate::strategy::{Strategy, Walk};
use crate::structure::decompose_walk;
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mlcp,
    Mtcp,
    Mlcpr,
    Mtcpr,
}

impl Problem {
    pub fn objective(self) -> Objective {
        match self {
            Problem::Mlcp | Problem::Mlcpr => Objective::Length,
            Problem::Mtcp | Problem::Mtcpr => Objective::Time,
        }
    }

    pub fn has_rendezvous(self) -> bool {
        matches!(self, Problem::Mlcpr | Problem::Mtcpr)
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::Mlcp => "mlcp",
            Problem::Mtcp => "mtcp",
            Problem::Mlcpr => "mlcpr",
            Problem::Mtcpr => "mtcpr",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mlcp" => Ok(Problem::Mlcp),
            "mtcp" => Ok(Problem::Mtcp),
            "mlcpr" => Ok(Problem::Mlcpr),
            "mtcpr" => Ok(Problem::Mtcpr),
            _ => Err(format!("unknown problem {s:?} (expected mlcp, mtcp, mlcpr or mtcpr)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub problem: Problem,
    pub tree: Tree,
    pub labels: BTreeMap<Vertex, String>,
    /// One entry per robot.
    pub starts: Vec<Vertex>,
    pub rendezvous: Option<usize>,
    pub budget: Option<usize>,
}

impl Instance {
    pub fn new(problem: Problem, tree: Tree, starts: Vec<Vertex>) -> Self {
        Instance { problem, tree, labels: BTreeMap::new(), starts, rendezvous: None, budget: None }
    }

    pub fn robots(&self) -> usize {
        self.starts.len()
    }

    /// Distinct start vertices, ascending.
    pub fn distinct_starts(&self) -> Vec<Vertex> {
        let mut s = self.starts.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn name_of(&self, v: Vertex) -> String {
        self.labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_instance(text)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem {}", self.problem)?;
        writeln!(f, "vertices {}", self.tree.len())?;
        for (v, name) in &self.labels {
            writeln!(f, "label {v} {name}")?;
        }
        for (a, b) in self.tree.edges() {
            writeln!(f, "edge {a} {b}")?;
        }
        writeln!(f, "robots {}", self.starts.len())?;
        write!(f, "starts")?;
        for s in &self.starts {
            write!(f, " {s}")?;
        }
        writeln!(f)?;
        if let Some(p) = self.rendezvous {
            writeln!(f, "rendezvous {p}")?;
        }
        if let Some(b) = self.budget {
            writeln!(f, "budget {b}")?;
        }
        Ok(())
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// A whitespace-separated word with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits into non-empty lines of tokens, dropping comments. Yields 1-based
/// line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token { text: &body[s..pos], column: body[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number<T: FromStr>(line: usize, tok: Token<'_>, what: &str) -> Result<T> {
    tok.text
        .parse()
        .map_err(|_| parse_error(line, tok.column, format!("expected {what}, found {:?}", tok.text)))
}

/// Resolves vertex tokens against declared labels and the vertex count.
struct Names<'a> {
    n: Option<usize>,
    by_name: HashMap<&'a str, Vertex>,
}

impl<'a> Names<'a> {
    fn vertex(&self, line: usize, tok: Token<'a>) -> Result<Vertex> {
        if let Some(&v) = self.by_name.get(tok.text) {
            return Ok(v);
        }
        let v: Vertex = tok.text.parse().map_err(|_| {
            parse_error(line, tok.column, format!("unknown vertex {:?}", tok.text))
        })?;
        match self.n {
            Some(n) if v >= n => Err(parse_error(
                line,
                tok.column,
                format!("vertex {v} out of range for {n} vertices"),
            )),
            _ => Ok(v),
        }
    }
}

fn arity(line: usize, tokens: &[Token<'_>], expected: usize) -> Result<()> {
    if tokens.len() == expected + 1 {
        return Ok(());
    }
    let column = tokens.get(expected + 1).map_or(tokens[0].column, |t| t.column);
    Err(parse_error(
        line,
        column,
        format!("{} takes {expected} argument(s), got {}", tokens[0].text, tokens.len() - 1),
    ))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut problem = None;
    let mut names = Names { n: None, by_name: HashMap::new() };
    let mut labels = BTreeMap::new();
    let mut edges = Vec::new();
    let mut robots: Option<(usize, usize)> = None;
    let mut starts: Option<(usize, Vec<Vertex>)> = None;
    let mut rendezvous = None;
    let mut budget = None;
    let mut last_line = 0;

    // each keyword at most once, except label and edge
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (line, tokens) in lines(text) {
        last_line = line;
        let key = tokens[0];
        if !matches!(key.text, "label" | "edge") {
            if let Some(prev) = seen.insert(key.text, line) {
                return Err(parse_error(
                    line,
                    key.column,
                    format!("{} already given on line {prev}", key.text),
                ));
            }
        }
        let needs_vertices = |names: &Names<'_>| {
            if names.n.is_none() {
                Err(parse_error(line, key.column, format!("{} before vertices", key.text)))
            } else {
                Ok(())
            }
        };
        match key.text {
            "problem" => {
                arity(line, &tokens, 1)?;
                problem = Some(
                    tokens[1]
                        .text
                        .parse::<Problem>()
                        .map_err(|e| parse_error(line, tokens[1].column, e))?,
                );
            }
            "vertices" => {
                arity(line, &tokens, 1)?;
                let n: usize = number(line, tokens[1], "a vertex count")?;
                if n == 0 {
                    return Err(parse_error(line, tokens[1].column, "a tree needs at least one vertex"));
                }
                names.n = Some(n);
            }
            "label" => {
                needs_vertices(&names)?;
                arity(line, &tokens, 2)?;
                let v = names.vertex(line, tokens[1])?;
                let name = tokens[2];
                if name.text.parse::<u64>().is_ok() {
                    return Err(parse_error(line, name.column, "a label cannot be a number"));
                }
                if names.by_name.contains_key(name.text) {
                    return Err(parse_error(line, name.column, format!("label {:?} reused", name.text)));
                }
                if labels.insert(v, name.text.to_string()).is_some() {
                    return Err(parse_error(line, tokens[1].column, format!("vertex {v} labelled twice")));
                }
                names.by_name.insert(name.text, v);
            }
            "edge" => {
                needs_vertices(&names)?;
                arity(line, &tokens, 2)?;
                let a = names.vertex(line, tokens[1])?;
                let b = names.vertex(line, tokens[2])?;
                edges.push(((a, b), line, key.column));
            }
            "robots" => {
                arity(line, &tokens, 1)?;
                let k: usize = number(line, tokens[1], "a robot count")?;
                if k == 0 {
                    return Err(parse_error(line, tokens[1].column, "at least one robot is required"));
                }
                robots = Some((k, line));
            }
            "starts" => {
                needs_vertices(&names)?;
                if tokens.len() < 2 {
                    return Err(parse_error(line, key.column, "starts needs at least one vertex"));
                }
                let vs = tokens[1..]
                    .iter()
                    .map(|&t| names.vertex(line, t))
                    .collect::<Result<Vec<_>>>()?;
                starts = Some((line, vs));
            }
            "rendezvous" => {
                arity(line, &tokens, 1)?;
                let p: usize = number(line, tokens[1], "a rendezvous period")?;
                if p == 0 {
                    return Err(parse_error(line, tokens[1].column, "the rendezvous period must be positive"));
                }
                rendezvous = Some((p, line));
            }
            "budget" => {
                arity(line, &tokens, 1)?;
                budget = Some(number(line, tokens[1], "a budget")?);
            }
            other => {
                return Err(parse_error(line, key.column, format!("unknown keyword {other:?}")));
            }
        }
    }

    let end = last_line + 1;
    let problem = problem.ok_or_else(|| parse_error(end, 1, "missing problem line"))?;
    let n = names.n.ok_or_else(|| parse_error(end, 1, "missing vertices line"))?;
    let (start_line, starts) = starts.ok_or_else(|| parse_error(end, 1, "missing starts line"))?;
    if let Some((k, line)) = robots {
        if k != starts.len() {
            return Err(parse_error(
                line,
                1,
                format!("robots {k} but {} start(s) on line {start_line}", starts.len()),
            ));
        }
    }
    match (problem.has_rendezvous(), rendezvous) {
        (true, None) => {
            return Err(parse_error(end, 1, format!("{problem} needs a rendezvous line")));
        }
        (false, Some((_, line))) => {
            return Err(parse_error(line, 1, format!("{problem} takes no rendezvous period")));
        }
        _ => {}
    }
    let pairs: Vec<_> = edges.iter().map(|&(e, _, _)| e).collect();
    let tree = Tree::new(n, &pairs).map_err(|e| {
        // point at the offending edge when there is one
        let at = match e {
            crate::error::TreeError::SelfLoop(v) => edges.iter().find(|((a, b), _, _)| *a == v && *b == v),
            crate::error::TreeError::DuplicateEdge(x, y) => edges
                .iter()
                .filter(|((a, b), _, _)| (*a, *b) == (x, y) || (*a, *b) == (y, x))
                .nth(1),
            _ => None,
        };
        match at {
            Some(&(_, line, column)) => parse_error(line, column, e.to_string()),
            None => parse_error(end, 1, e.to_string()),
        }
    })?;
    Ok(Instance {
        problem,
        tree,
        labels,
        starts,
        rendezvous: rendezvous.map(|(p, _)| p),
        budget,
    })
}

/// Parses a strategy file. Labels are resolved against `instance` when given,
/// and vertex ids are then range-checked too.
pub fn parse_strategy(text: &str, instance: Option<&Instance>) -> Result<Strategy> {
    let names = Names {
        n: instance.map(|i| i.tree.len()),
        by_name: instance
            .map(|i| i.labels.iter().map(|(&v, s)| (s.as_str(), v)).collect())
            .unwrap_or_default(),
    };
    let mut walks = Vec::new();
    let mut last_line = 0;
    for (line, tokens) in lines(text) {
        last_line = line;
        if tokens[0].text != "walk" {
            return Err(parse_error(
                line,
                tokens[0].column,
                format!("expected walk, found {:?}", tokens[0].text),
            ));
        }
        if tokens.len() < 2 {
            return Err(parse_error(line, tokens[0].column, "a walk needs at least one vertex"));
        }
        let vs = tokens[1..]
            .iter()
            .map(|&t| names.vertex(line, t))
            .collect::<Result<Vec<_>>>()?;
        walks.push(Walk::new(vs));
    }
    if walks.is_empty() {
        return Err(parse_error(last_line + 1, 1, "no walks"));
    }
    Ok(Strategy::new(walks))
}

pub fn format_strategy(s: &Strategy) -> String {
    let mut out = String::new();
    for w in s.walks() {
        out.push_str("walk");
        for v in w.vertices() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz description of `instance`. With a strategy, each robot's path
/// edges are drawn solid in its own colour and its detour edges dashed.
pub fn to_dot(instance: &Instance, strategy: Option<&Strategy>) -> Result<String> {
    let tree = &instance.tree;
    let mut style: BTreeMap<(Vertex, Vertex), String> = BTreeMap::new();
    if let Some(s) = strategy {
        s.validate(tree)?;
        for (i, w) in s.walks().iter().enumerate() {
            let d = decompose_walk(tree, w);
            let color = PALETTE[i % PALETTE.len()];
            for e in &d.path_edges {
                let entry = style.entry(*e).or_default();
                if entry.is_empty() {
                    *entry = format!("color=\"{color}\", penwidth=2.5, label=\"r{i}\"");
                }
            }
            for e in &d.forest_edges {
                style
                    .entry(*e)
                    .or_insert_with(|| format!("color=\"{color}\", style=dashed"));
            }
        }
    }
    let mut starts = instance.starts.clone();
    starts.sort_unstable();
    starts.dedup();

    let mut out = String::new();
    writeln!(out, "graph tree {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in 0..tree.len() {
        let mut attrs = vec![format!("label={}", quote(&instance.name_of(v)))];
        if starts.binary_search(&v).is_ok() {
            attrs.push("shape=doublecircle".into());
        }
        writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
    }
    for (a, b) in tree.edges() {
        match style.get(&(a, b)) {
            Some(attrs) => writeln!(out, "  {a} -- {b} [{attrs}];").unwrap(),
            None if strategy.is_some() => writeln!(out, "  {a} -- {b} [color=gray];").unwrap(),
            None => writeln!(out, "  {a} -- {b};").unwrap(),
        }
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

/// Checks that the instance is internally consistent beyond what parsing
/// enforces.
pub fn check_instance(inst: &Instance) -> Result<()> {
    if let Some(&v) = inst.starts.iter().find(|&&v| !inst.tree.contains(v)) {
        return Err(invalid(format!("start vertex {v} out of range")));
    }
    if inst.problem.has_rendezvous() != inst.rendezvous.is_some() {
        return Err(invalid(format!(
            "{} {} a rendezvous period",
            inst.problem,
            if inst.problem.has_rendezvous() { "needs" } else { "takes no" }
        )));
    }
    Ok(())
}
