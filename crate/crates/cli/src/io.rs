//! Graph documents: JSON (`{"vertices": [...], "edges": [[a, b], ...]}`) and
//! a subset of DOT covering undirected simple graphs.

use std::collections::HashSet;
use std::fmt;

use raag_out::SimplicialGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

impl GraphFormat {
    /// Guesses from the first non-blank character: `{` means JSON.
    pub fn sniff(text: &str) -> Self {
        if text.trim_start().starts_with('{') {
            GraphFormat::Json
        } else {
            GraphFormat::Dot
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, column)
}

fn error_at(text: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let (line, column) = position(text, offset);
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Builds the graph, reporting the first invalid vertex or edge at the byte
/// offset recorded next to it.
fn build(
    text: &str,
    vertices: &[(String, usize)],
    edges: &[(String, String, usize)],
) -> Result<SimplicialGraph, ParseError> {
    let mut seen = HashSet::new();
    for (v, at) in vertices {
        if !seen.insert(v.as_str()) {
            return Err(error_at(text, *at, format!("duplicate vertex {v:?}")));
        }
    }
    let mut pairs = HashSet::new();
    for (a, b, at) in edges {
        for v in [a, b] {
            if !seen.contains(v.as_str()) {
                return Err(error_at(text, *at, format!("edge references unknown vertex {v:?}")));
            }
        }
        if a == b {
            return Err(error_at(text, *at, format!("self-loop at {a:?}")));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !pairs.insert(key) {
            return Err(error_at(text, *at, format!("duplicate edge {a:?} -- {b:?}")));
        }
    }
    let names: Vec<&str> = vertices.iter().map(|(v, _)| v.as_str()).collect();
    SimplicialGraph::from_named_edges(&names, edges.iter().map(|(a, b, _)| (a.as_str(), b.as_str())))
        .map_err(|e| error_at(text, 0, e.to_string()))
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimplicialGraph, ParseError> {
    match format {
        GraphFormat::Json => parse_json(text),
        GraphFormat::Dot => parse_dot(text),
    }
}

fn parse_json(text: &str) -> Result<SimplicialGraph, ParseError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let vertex_at = json_array_items(text, "vertices");
    let edge_at = json_array_items(text, "edges");
    let vertices: Vec<(String, usize)> = doc
        .vertices
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, vertex_at.get(i).copied().unwrap_or(0)))
        .collect();
    let edges: Vec<(String, String, usize)> = doc
        .edges
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| (a, b, edge_at.get(i).copied().unwrap_or(0)))
        .collect();
    build(text, &vertices, &edges)
}

/// Byte offsets of the elements of the top-level array under `key`. The
/// text is already known to be valid JSON.
fn json_array_items(text: &str, key: &str) -> Vec<usize> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut i = 0;
    let mut pending_key: Option<(usize, usize)> = None;
    while i < bytes.len() {
        match bytes[i] {
            b'"' => {
                let start = i + 1;
                i = skip_string(bytes, i);
                if depth == 1 {
                    pending_key = Some((start, i - 1));
                }
                continue;
            }
            b'{' | b'[' => depth += 1,
            b'}' | b']' => depth = depth.saturating_sub(1),
            b':' if depth == 1 => {
                if let Some((s, e)) = pending_key.take() {
                    if &text[s..e] == key {
                        return array_items_from(bytes, i + 1);
                    }
                }
            }
            _ => {}
        }
        i += 1;
    }
    Vec::new()
}

fn skip_string(bytes: &[u8], open: usize) -> usize {
    let mut i = open + 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'"' => return i + 1,
            _ => i += 1,
        }
    }
    i
}

fn array_items_from(bytes: &[u8], mut i: usize) -> Vec<usize> {
    while i < bytes.len() && bytes[i] != b'[' {
        i += 1;
    }
    i += 1;
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut expecting = true;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if depth == 0 {
            match c {
                b']' => break,
                b',' => {
                    expecting = true;
                    i += 1;
                    continue;
                }
                _ if expecting => {
                    out.push(i);
                    expecting = false;
                }
                _ => {}
            }
        }
        match c {
            b'"' => {
                i = skip_string(bytes, i);
                continue;
            }
            b'[' | b'{' => depth += 1,
            b']' | b'}' => depth -= 1,
            _ => {}
        }
        i += 1;
    }
    out
}

pub fn to_document(g: &SimplicialGraph) -> GraphDocument {
    GraphDocument {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .into_iter()
            .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
            .collect(),
    }
}

pub fn to_json(g: &SimplicialGraph) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(g)).expect("graph documents serialize");
    s.push('\n');
    s
}

fn dot_id(name: &str) -> String {
    let plain = !name.is_empty()
        && !name.starts_with(|c: char| c.is_ascii_digit())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name.to_ascii_lowercase().as_str(), "graph" | "node" | "edge" | "strict" | "digraph" | "subgraph");
    if plain {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Every vertex is declared before any edge so that the vertex order
/// survives a round trip.
pub fn to_dot(g: &SimplicialGraph) -> String {
    let mut out = String::from("graph G {\n");
    for name in g.names() {
        out.push_str(&format!("  {};\n", dot_id(name)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {} -- {};\n", dot_id(g.name(u)), dot_id(g.name(v))));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Quoted(String),
    Edge,
    Arrow,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
    Colon,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line_start = true;
    while i < chars.len() {
        let (at, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        if c == '\n' {
            line_start = true;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' && line_start {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        line_start = false;
        if c == '/' && next == Some('/') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '/' && next == Some('*') {
            i += 2;
            loop {
                match chars.get(i) {
                    None => return Err(error_at(text, at, "unterminated comment")),
                    Some(&(_, '*')) if chars.get(i + 1).map(|p| p.1) == Some('/') => {
                        i += 2;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            continue;
        }
        let simple = |t: Tok| Some(t);
        let tok = match c {
            '{' => simple(Tok::LBrace),
            '}' => simple(Tok::RBrace),
            '[' => simple(Tok::LBracket),
            ']' => simple(Tok::RBracket),
            ';' => simple(Tok::Semi),
            ',' => simple(Tok::Comma),
            '=' => simple(Tok::Eq),
            ':' => simple(Tok::Colon),
            _ => None,
        };
        if let Some(t) = tok {
            out.push((t, at));
            i += 1;
            continue;
        }
        if c == '-' && next == Some('-') {
            out.push((Tok::Edge, at));
            i += 2;
            continue;
        }
        if c == '-' && next == Some('>') {
            out.push((Tok::Arrow, at));
            i += 2;
            continue;
        }
        if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(error_at(text, at, "unterminated string")),
                    Some(&(_, '"')) => {
                        i += 1;
                        break;
                    }
                    Some(&(_, '\\')) if chars.get(i + 1).is_some_and(|p| p.1 == '"' || p.1 == '\\') => {
                        s.push(chars[i + 1].1);
                        i += 2;
                    }
                    Some(&(_, ch)) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push((Tok::Quoted(s), at));
            continue;
        }
        let is_id = |ch: char| ch.is_alphanumeric() || ch == '_' || ch == '.';
        if is_id(c) || (c == '-' && next.is_some_and(|n| n.is_ascii_digit() || n == '.')) {
            let mut s = String::from(c);
            i += 1;
            while let Some(&(_, ch)) = chars.get(i) {
                if !is_id(ch) {
                    break;
                }
                s.push(ch);
                i += 1;
            }
            out.push((Tok::Id(s), at));
            continue;
        }
        return Err(error_at(text, at, format!("unexpected character {c:?}")));
    }
    Ok(out)
}

struct DotParser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vertices: Vec<(String, usize)>,
    known: HashSet<String>,
    edges: Vec<(String, String, usize)>,
}

fn keyword(t: &Tok, word: &str) -> bool {
    matches!(t, Tok::Id(s) if s.eq_ignore_ascii_case(word))
}

impl DotParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |&(_, at)| at)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(error_at(self.text, self.offset(), message))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn id(&mut self) -> Result<(String, usize), ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Quoted(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, at))
            }
            Some(Tok::Id(s)) if !["graph", "node", "edge", "subgraph", "strict", "digraph"]
                .iter()
                .any(|k| s.eq_ignore_ascii_case(k)) =>
            {
                let s = s.clone();
                self.pos += 1;
                Ok((s, at))
            }
            _ => self.fail("expected a vertex identifier"),
        }
    }

    fn declare(&mut self, name: &str, at: usize) {
        if self.known.insert(name.to_string()) {
            self.vertices.push((name.to_string(), at));
        }
    }

    fn skip_port(&mut self) -> Result<(), ParseError> {
        while self.peek() == Some(&Tok::Colon) {
            self.pos += 1;
            self.id()?;
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<(), ParseError> {
        while self.peek() == Some(&Tok::LBracket) {
            self.pos += 1;
            while self.peek() != Some(&Tok::RBracket) {
                self.id()?;
                if self.peek() == Some(&Tok::Eq) {
                    self.pos += 1;
                    self.id()?;
                }
                if matches!(self.peek(), Some(Tok::Comma | Tok::Semi)) {
                    self.pos += 1;
                }
                if self.peek().is_none() {
                    return self.fail("unterminated attribute list");
                }
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn parse(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some_and(|t| keyword(t, "strict")) {
            self.pos += 1;
        }
        match self.peek() {
            Some(t) if keyword(t, "graph") => self.pos += 1,
            Some(t) if keyword(t, "digraph") => return self.fail("directed graphs are not supported"),
            _ => return self.fail("expected `graph`"),
        }
        if matches!(self.peek(), Some(Tok::Id(_) | Tok::Quoted(_))) {
            self.id()?;
        }
        self.expect(Tok::LBrace, "`{`")?;
        loop {
            match self.peek() {
                None => return self.fail("expected `}`"),
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Semi) => self.pos += 1,
                Some(t) if keyword(t, "subgraph") || *t == Tok::LBrace => {
                    return self.fail("subgraphs are not supported")
                }
                Some(t) if keyword(t, "graph") || keyword(t, "node") || keyword(t, "edge") => {
                    self.pos += 1;
                    self.attr_list()?;
                }
                Some(_) => self.statement()?,
            }
        }
        if self.pos < self.toks.len() {
            return self.fail("unexpected input after the graph body");
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let (first, at) = self.id()?;
        if self.peek() == Some(&Tok::Eq) {
            self.pos += 1;
            self.id()?;
            return Ok(());
        }
        self.skip_port()?;
        self.declare(&first, at);
        let mut prev = first;
        loop {
            match self.peek() {
                Some(Tok::Edge) => {
                    let edge_at = self.offset();
                    self.pos += 1;
                    let (next, at) = self.id()?;
                    self.skip_port()?;
                    self.declare(&next, at);
                    self.edges.push((prev, next.clone(), edge_at));
                    prev = next;
                }
                Some(Tok::Arrow) => return self.fail("directed edge `->` in an undirected graph"),
                _ => break,
            }
        }
        self.attr_list()
    }
}

fn parse_dot(text: &str) -> Result<SimplicialGraph, ParseError> {
    let mut p = DotParser {
        text,
        toks: lex(text)?,
        pos: 0,
        vertices: Vec::new(),
        known: HashSet::new(),
        edges: Vec::new(),
    };
    p.parse()?;
    build(text, &p.vertices, &p.edges)
}
