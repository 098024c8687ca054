//! Graphviz output for the tree and graph artifacts, plus a small reader
//! for the subset of DOT written here.

use std::collections::BTreeMap;
use std::fmt::Write;

use lotus_core::lotus::{Lotus, VertexId, VertexRole};

use crate::text::{curve_name, ew_name};
use crate::Artifact;

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

struct Writer {
    directed: bool,
    out: String,
}

impl Writer {
    fn new(name: &str, directed: bool) -> Writer {
        let kind = if directed { "digraph" } else { "graph" };
        Writer { directed, out: format!("{kind} {name} {{\n") }
    }

    fn node(&mut self, id: usize, label: &str, extra: &str) {
        let _ = writeln!(self.out, "  n{id} [label={}{extra}];", quote(label));
    }

    fn edge(&mut self, a: usize, b: usize, extra: &str) {
        let op = if self.directed { "->" } else { "--" };
        if extra.is_empty() {
            let _ = writeln!(self.out, "  n{a} {op} n{b};");
        } else {
            let _ = writeln!(self.out, "  n{a} {op} n{b} [{extra}];");
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

fn lotus_node(w: &mut Writer, l: &Lotus, v: VertexId, weight: Option<i64>) {
    let name = l.label(v);
    match (l.vertices[v].role, weight) {
        (VertexRole::Branch, _) => w.node(v, name, ", shape=plaintext"),
        (_, Some(k)) => w.node(v, &format!("{name}\n{k}"), ""),
        (_, None) => w.node(v, &format!("{name}\n{}", curve_name(name)), ", shape=box"),
    }
}

pub fn render(a: &Artifact) -> Option<String> {
    let out = match a {
        Artifact::FanTree(ft) => {
            let mut w = Writer::new("fan_tree", true);
            for (k, n) in ft.nodes.iter().enumerate() {
                w.node(k, &format!("{}\n{}", n.label, n.slope), "");
            }
            for (a, b) in ft.edges() {
                w.edge(a, b, "");
            }
            w.finish()
        }
        Artifact::EggersWall(t) => {
            let mut w = Writer::new("eggers_wall", true);
            for k in 0..t.nodes().len() {
                let n = t.node(k);
                w.node(k, &format!("{}\ne={},i={}", ew_name(t, k), n.exponent, n.index), "");
            }
            for (a, b) in t.edges() {
                w.edge(a, b, "");
            }
            w.finish()
        }
        Artifact::DualGraph { lotus, graph, .. } => {
            let mut w = Writer::new("dual_graph", false);
            for v in &graph.vertices {
                lotus_node(&mut w, lotus, v.id, v.weight);
            }
            for &(a, b) in &graph.edges {
                let (a, b) = if lotus.vertices[a].role == VertexRole::Branch { (b, a) } else { (a, b) };
                let extra = if lotus.vertices[b].role == VertexRole::Branch { "dir=forward" } else { "" };
                w.edge(a, b, extra);
            }
            w.finish()
        }
        Artifact::Enriques { lotus, tree } => {
            let mut w = Writer::new("enriques", true);
            for v in tree.vertices() {
                w.node(v, lotus.label(v), "");
            }
            for &(a, b) in &tree.edges {
                w.edge(a, b, "");
            }
            w.finish()
        }
        Artifact::Proximity { lotus, edges } => {
            let mut w = Writer::new("proximity", false);
            let weights = lotus_core::lotus::self_intersections(lotus);
            for (&v, &k) in &weights {
                lotus_node(&mut w, lotus, v, Some(k));
            }
            for &(a, b) in edges {
                w.edge(a, b, "");
            }
            w.finish()
        }
        _ => return None,
    };
    Some(out)
}

/// A parsed DOT document.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DotGraph {
    pub directed: bool,
    pub name: String,
    /// Node statements in order, with their attributes.
    pub nodes: Vec<(String, BTreeMap<String, String>)>,
    pub edges: Vec<(String, String, BTreeMap<String, String>)>,
}

impl DotGraph {
    pub fn attr(&self, node: &str, key: &str) -> Option<&str> {
        self.nodes.iter().find(|(n, _)| n == node).and_then(|(_, a)| a.get(key)).map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        match c {
            c if c.is_whitespace() => {}
            '{' => out.push(Tok::Punct("{")),
            '}' => out.push(Tok::Punct("}")),
            '[' => out.push(Tok::Punct("[")),
            ']' => out.push(Tok::Punct("]")),
            ';' => out.push(Tok::Punct(";")),
            ',' => out.push(Tok::Punct(",")),
            '=' => out.push(Tok::Punct("=")),
            '-' => match it.next() {
                Some((_, '-')) => out.push(Tok::Punct("--")),
                Some((_, '>')) => out.push(Tok::Punct("->")),
                _ => return Err(format!("stray `-` at byte {i}")),
            },
            '"' => {
                let mut s = String::new();
                loop {
                    match it.next() {
                        None => return Err(format!("unterminated string at byte {i}")),
                        Some((_, '"')) => break,
                        Some((_, '\\')) => match it.next() {
                            Some((_, 'n')) => s.push('\n'),
                            Some((_, e)) => s.push(e),
                            None => return Err(format!("unterminated string at byte {i}")),
                        },
                        Some((_, ch)) => s.push(ch),
                    }
                }
                out.push(Tok::Id(s));
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::from(c);
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '.' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Id(s));
            }
            other => return Err(format!("unexpected `{other}` at byte {i}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn punct(&mut self, p: &str) -> Result<(), String> {
        match self.toks.get(self.at) {
            Some(Tok::Punct(q)) if *q == p => {
                self.at += 1;
                Ok(())
            }
            other => Err(format!("expected `{p}`, found {other:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.toks.get(self.at) {
            Some(Tok::Id(s)) => {
                self.at += 1;
                Ok(s.clone())
            }
            other => Err(format!("expected an identifier, found {other:?}")),
        }
    }

    fn attrs(&mut self) -> Result<BTreeMap<String, String>, String> {
        let mut out = BTreeMap::new();
        if self.peek() != Some(&Tok::Punct("[")) {
            return Ok(out);
        }
        self.punct("[")?;
        while self.peek() != Some(&Tok::Punct("]")) {
            let k = self.id()?;
            self.punct("=")?;
            let v = self.id()?;
            out.insert(k, v);
            if self.peek() == Some(&Tok::Punct(",")) {
                self.at += 1;
            }
        }
        self.punct("]")?;
        Ok(out)
    }
}

/// Parses the DOT subset used by this crate: one graph of node and edge
/// statements, each ended by `;`. Edges must join declared nodes with the
/// operator matching the graph kind.
pub fn validate(text: &str) -> Result<DotGraph, String> {
    let mut p = Parser { toks: tokenize(text)?, at: 0 };
    let directed = match p.id()?.as_str() {
        "graph" => false,
        "digraph" => true,
        other => return Err(format!("expected `graph` or `digraph`, found `{other}`")),
    };
    let mut g = DotGraph { directed, name: p.id()?, ..DotGraph::default() };
    p.punct("{")?;
    let op = if g.directed { "->" } else { "--" };
    while p.peek() != Some(&Tok::Punct("}")) {
        let a = p.id()?;
        if p.peek() == Some(&Tok::Punct(op)) {
            p.at += 1;
            let b = p.id()?;
            for end in [&a, &b] {
                if !g.nodes.iter().any(|(n, _)| n == end) {
                    return Err(format!("edge uses undeclared node `{end}`"));
                }
            }
            let attrs = p.attrs()?;
            g.edges.push((a, b, attrs));
        } else {
            if g.nodes.iter().any(|(n, _)| *n == a) {
                return Err(format!("node `{a}` declared twice"));
            }
            let attrs = p.attrs()?;
            g.nodes.push((a, attrs));
        }
        p.punct(";")?;
    }
    p.punct("}")?;
    if p.at != p.toks.len() {
        return Err("text after the closing brace".into());
    }
    Ok(g)
}
