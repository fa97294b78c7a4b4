//! On-disk formats for permutation sets, and DOT export of selection graphs.
//!
//! Text format:
//!
//! ```text
//! # comments and blank lines are ignored
//! n=4 mode=inversion generator=sample seed=7 c=2
//! 2 3 1 4
//! 2 4 1 3
//! ```
//!
//! The header needs `n` and `mode`; `generator`, `seed` and `c` are
//! optional metadata. JSON format:
//! `{"n":4,"mode":"inversion","perms":[[2,3,1,4],...],"metadata":{...}}`.
//! Both are 1-based.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use permcover::completeness::{CriticalSelectionGraph, Mode, PermSet};
use permcover::perm::{Permutation, MAX_N};

/// A located parse failure. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, rename = "c", skip_serializing_if = "Option::is_none")]
    pub family_c: Option<usize>,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        self.generator.is_none() && self.seed.is_none() && self.family_c.is_none()
    }
}

/// A permutation set as written in a file. Member order is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermSetDocument {
    pub n: usize,
    pub mode: Mode,
    pub perms: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl PermSetDocument {
    pub fn from_set(set: &PermSet, metadata: Option<Metadata>) -> Self {
        PermSetDocument {
            n: set.n(),
            mode: set.mode(),
            perms: set.iter().map(Permutation::one_line).collect(),
            metadata: metadata.filter(|m| !m.is_empty()),
        }
    }

    /// Converts to a canonical set; the document must already be valid.
    pub fn to_set(&self) -> permcover::Result<PermSet> {
        let members = self
            .perms
            .iter()
            .map(|v| Permutation::new(v))
            .collect::<permcover::Result<Vec<_>>>()?;
        PermSet::new(self.n, self.mode, members)
    }

    /// Semantic checks shared by both formats. On failure returns the index
    /// of the offending permutation (if any) and its entry position.
    fn validate(&self) -> Result<(), (Option<(usize, usize)>, String)> {
        if !(2..=MAX_N).contains(&self.n) {
            return Err((None, format!("n={} must satisfy 2 <= n <= {MAX_N}", self.n)));
        }
        if let Some(Metadata {
            generator: Some(g), ..
        }) = &self.metadata
        {
            if g.is_empty() || g.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err((None, "generator must be a non-empty word".into()));
            }
        }
        let mut seen: Vec<&Vec<usize>> = Vec::with_capacity(self.perms.len());
        for (k, v) in self.perms.iter().enumerate() {
            check_values(self.n, v).map_err(|(entry, msg)| (Some((k, entry)), msg))?;
            if seen.contains(&v) {
                return Err((Some((k, 0)), "duplicate permutation".into()));
            }
            seen.push(v);
        }
        Ok(())
    }
}

fn check_values(n: usize, v: &[usize]) -> Result<(), (usize, String)> {
    let mut used = vec![false; n + 1];
    for (e, &x) in v.iter().enumerate() {
        if x == 0 || x > n {
            return Err((e, format!("value {x} is outside 1..={n}")));
        }
        if used[x] {
            return Err((e, format!("value {x} repeated")));
        }
        used[x] = true;
    }
    if v.len() != n {
        return Err((v.len(), format!("expected {n} values, found {}", v.len())));
    }
    Ok(())
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(at) => &line[..at],
        None => line,
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(move |(s, t)| (line[..s].chars().count() + 1, t))
}

/// Parses the text format.
pub fn parse_text(input: &str) -> Result<PermSetDocument, ParseError> {
    let mut header: Option<(usize, Mode, Metadata)> = None;
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut perm_lines: Vec<(usize, Vec<usize>)> = Vec::new();

    for (ln, raw) in input.lines().enumerate() {
        let ln = ln + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some((n, _, _)) = &header else {
            header = Some(parse_header(ln, line)?);
            continue;
        };
        let n = *n;
        let mut values = Vec::new();
        let mut cols = Vec::new();
        for (col, tok) in tokens(line) {
            let v: usize = tok.parse().map_err(|_| {
                ParseError::at(ln, col, format!("`{tok}` is not a positive integer"))
            })?;
            values.push(v);
            cols.push(col);
        }
        if let Err((entry, msg)) = check_values(n, &values) {
            let col = cols
                .get(entry)
                .copied()
                .unwrap_or_else(|| line.trim_end().chars().count() + 1);
            return Err(ParseError::at(ln, col, msg));
        }
        if let Some((first, _)) = perm_lines.iter().find(|(_, v)| *v == values) {
            return Err(ParseError::at(
                ln,
                cols[0],
                format!("duplicate of the permutation on line {first}"),
            ));
        }
        perm_lines.push((ln, values.clone()));
        perms.push(values);
    }

    let Some((n, mode, metadata)) = header else {
        let last = input.lines().count().max(1);
        return Err(ParseError::at(
            last,
            1,
            "missing header `n=<n> mode=<inversion|pair>`",
        ));
    };
    let doc = PermSetDocument {
        n,
        mode,
        perms,
        metadata: (!metadata.is_empty()).then_some(metadata),
    };
    Ok(doc)
}

fn parse_header(ln: usize, line: &str) -> Result<(usize, Mode, Metadata), ParseError> {
    let mut n = None;
    let mut mode = None;
    let mut meta = Metadata::default();
    for (col, tok) in tokens(line) {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(ParseError::at(
                ln,
                col,
                format!("expected key=value, found `{tok}`"),
            ));
        };
        let vcol = col + key.chars().count() + 1;
        let dup = || ParseError::at(ln, col, format!("repeated header key `{key}`"));
        let bad = |what: &str| ParseError::at(ln, vcol, format!("invalid {what} `{value}`"));
        match key {
            "n" => {
                if n.is_some() {
                    return Err(dup());
                }
                let v: usize = value.parse().map_err(|_| bad("size"))?;
                if !(2..=MAX_N).contains(&v) {
                    return Err(ParseError::at(
                        ln,
                        vcol,
                        format!("n={v} must satisfy 2 <= n <= {MAX_N}"),
                    ));
                }
                n = Some(v);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(dup());
                }
                mode = Some(value.parse::<Mode>().map_err(|_| bad("mode"))?);
            }
            "generator" => {
                if meta.generator.is_some() {
                    return Err(dup());
                }
                if value.is_empty() {
                    return Err(bad("generator"));
                }
                meta.generator = Some(value.to_string());
            }
            "seed" => {
                if meta.seed.is_some() {
                    return Err(dup());
                }
                meta.seed = Some(value.parse().map_err(|_| bad("seed"))?);
            }
            "c" => {
                if meta.family_c.is_some() {
                    return Err(dup());
                }
                meta.family_c = Some(value.parse().map_err(|_| bad("family level"))?);
            }
            _ => {
                return Err(ParseError::at(
                    ln,
                    col,
                    format!("unknown header key `{key}`"),
                ));
            }
        }
    }
    let n = n.ok_or_else(|| ParseError::at(ln, 1, "header is missing `n=`"))?;
    let mode = mode.ok_or_else(|| ParseError::at(ln, 1, "header is missing `mode=`"))?;
    Ok((n, mode, meta))
}

/// Writes the text format. `parse_text(&to_text(d)) == d` for every valid
/// document.
pub fn to_text(doc: &PermSetDocument) -> String {
    let mut out = format!("n={} mode={}", doc.n, doc.mode);
    if let Some(m) = &doc.metadata {
        if let Some(g) = &m.generator {
            write!(out, " generator={g}").unwrap();
        }
        if let Some(s) = m.seed {
            write!(out, " seed={s}").unwrap();
        }
        if let Some(c) = m.family_c {
            write!(out, " c={c}").unwrap();
        }
    }
    out.push('\n');
    for p in &doc.perms {
        let line: Vec<String> = p.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the JSON format.
pub fn parse_json(input: &str) -> Result<PermSetDocument, ParseError> {
    let doc: PermSetDocument = serde_json::from_str(input)
        .map_err(|e| ParseError::at(e.line().max(1), e.column().max(1), e.to_string()))?;
    doc.validate().map_err(|(at, msg)| {
        let msg = match at {
            Some((k, e)) => format!("perms[{k}][{e}]: {msg}"),
            None => msg,
        };
        ParseError::at(1, 1, msg)
    })?;
    Ok(doc)
}

/// Compact single-line JSON.
pub fn to_json(doc: &PermSetDocument) -> String {
    serde_json::to_string(doc).expect("documents always serialize")
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_document(input: &str) -> Result<PermSetDocument, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        let doc = parse_text(input)?;
        // the text parser has already checked everything but metadata words
        doc.validate()
            .map_err(|(_, msg)| ParseError::at(1, 1, msg))?;
        Ok(doc)
    }
}

/// Parses a subset of `[n]` written as `1,3,5` (spaces allowed, `{}`
/// optional). The result is sorted; duplicates are rejected.
pub fn parse_subset(input: &str) -> Result<Vec<usize>, ParseError> {
    let body = input.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body);
    let mut out = Vec::new();
    if body.trim().is_empty() {
        return Ok(out);
    }
    let mut col = input.find(body).unwrap_or(0) + 1;
    for part in body.split(',') {
        let tok = part.trim();
        let v: usize = tok
            .parse()
            .map_err(|_| ParseError::at(1, col, format!("`{tok}` is not a positive integer")))?;
        if v == 0 {
            return Err(ParseError::at(1, col, "subset elements start at 1"));
        }
        if out.contains(&v) {
            return Err(ParseError::at(1, col, format!("element {v} repeated")));
        }
        out.push(v);
        col += part.chars().count() + 1;
    }
    out.sort_unstable();
    Ok(out)
}

/// DOT rendering of one selection graph. Inversion-mode graphs are
/// undirected; pair-mode graphs are oriented along the critical pairs.
/// Each edge is labelled with its selecting permutation.
pub fn selection_graph_to_dot(g: &CriticalSelectionGraph, name: &str) -> String {
    let directed = g.mode() == Mode::Pair;
    let (kind, arrow) = if directed {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let mut out = format!("{kind} {name} {{\n");
    for v in 1..=g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        let (a, b) = if directed {
            (e.directed_pair.first, e.directed_pair.second)
        } else {
            (e.u, e.v)
        };
        writeln!(
            out,
            "  {a} {arrow} {b} [label=\"{}\", critical=\"{}\"];",
            e.selector, e.directed_pair
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
