//! Text formats: graph6 and a plain edge list.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`) into 6-bit groups, each written as
//! the byte `63 + value`, after a size header `N(n)`.
//!
//! The edge list is a header line `n m` followed by `m` lines `u v` with
//! 0-based endpoints. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    EdgeList,
    #[default]
    Auto,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" => Ok(Format::EdgeList),
            "auto" => Ok(Format::Auto),
            other => Err(Error::input(format!("unknown format {other:?}"))),
        }
    }
}

fn encode_size(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 0x3f) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 0x3f) as u8 + 63) as char);
        }
    }
}

/// graph6 encoding without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    out
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let value = |bs: &[u8]| {
        bs.iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize)
    };
    match bytes {
        [126, 126, rest @ ..] if rest.len() >= 6 => Ok((value(&rest[..6]), &rest[6..])),
        [126, 126, ..] => Err(Error::parse("truncated graph6 size header")),
        [126, rest @ ..] if rest.len() >= 3 => Ok((value(&rest[..3]), &rest[3..])),
        [126, ..] => Err(Error::parse("truncated graph6 size header")),
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
        [] => Err(Error::parse("empty graph6 string")),
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header is accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(bad) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::parse(format!("byte {bad:#04x} is not valid graph6")));
    }
    let (n, data) = decode_size(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    if data.len() != bits.div_ceil(6) {
        return Err(Error::parse(format!(
            "graph6 body has {} bytes, expected {} for order {n}",
            data.len(),
            bits.div_ceil(6)
        )));
    }
    if n == 0 {
        return Err(Error::parse("graph6 string encodes the empty graph"));
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = data[data.len() - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse("graph6 padding bits are not zero"));
        }
    }
    let mut g = Graph::new(n)?;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(format!("line {lineno}: expected two integers")))?;
        tok.parse().map_err(|_| {
            Error::parse(format!(
                "line {lineno}: {tok:?} is not a non-negative integer"
            ))
        })
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(Error::parse(format!("line {lineno}: trailing tokens")));
    }
    Ok(pair)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse("empty edge list"))?;
    let (n, m) = parse_pair(lineno, header)?;
    if n == 0 {
        return Err(Error::parse("edge list declares zero vertices"));
    }
    let mut g = Graph::new(n)?;
    let mut seen = 0;
    for (lineno, line) in lines {
        let (u, v) = parse_pair(lineno, line)?;
        g.add_edge(u, v)
            .map_err(|e| Error::parse(format!("line {lineno}: {e}")))?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(format!(
            "header declares {m} edges, found {seen}"
        )));
    }
    Ok(g)
}

/// True when the first content line looks like graph6.
pub fn looks_like_graph6(text: &str) -> bool {
    let Some((_, line)) = content_lines(text).next() else {
        return false;
    };
    line.starts_with(GRAPH6_HEADER) || line.bytes().all(|b| (63..=126).contains(&b))
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    let format = match format {
        Format::Auto if looks_like_graph6(text) => Format::Graph6,
        Format::Auto => Format::EdgeList,
        f => f,
    };
    match format {
        Format::Graph6 => {
            let (_, line) = content_lines(text)
                .next()
                .ok_or_else(|| Error::parse("no graph6 line in input"))?;
            parse_graph6(line)
        }
        _ => parse_edge_list(text),
    }
}
