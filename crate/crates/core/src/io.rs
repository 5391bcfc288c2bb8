//! graph6 reading/writing and DOT export.
//!
//! graph6 follows the standard layout: optional `>>graph6<<` header, the vertex
//! count `N(n)`, then the upper triangle of the adjacency matrix packed column by
//! column into 6-bit groups, each offset by 63.

use std::fmt::Write as _;

use thiserror::Error;

use crate::automorphism::OrbitCensus;
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 68_719_476_735;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph6 parse error at byte {offset}: {reason}")]
pub struct Graph6Error {
    pub offset: usize,
    pub reason: String,
}

fn err(offset: usize, reason: impl Into<String>) -> Graph6Error {
    Graph6Error {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line. Surrounding whitespace is ignored.
pub fn read_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let (bytes, base) = match body.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), lead + HEADER.len()),
        None if body.starts_with(">>") => return Err(err(lead, "malformed header")),
        None => (body.as_bytes(), lead),
    };
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(
            base + pos,
            format!(
                "byte 0x{:02x} outside the graph6 range 63..=126",
                bytes[pos]
            ),
        ));
    }
    let (n, header_len) = decode_order(bytes).map_err(|(o, r)| err(base + o, r))?;

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() != expected {
        let at = base + header_len + data.len().min(expected);
        return Err(err(
            at,
            format!(
                "expected {expected} adjacency bytes for {n} vertices, found {}",
                data.len()
            ),
        ));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (bits..expected * 6).any(bit) {
        return Err(err(
            base + header_len + expected - 1,
            "nonzero padding bits",
        ));
    }
    Ok(Graph::from_edges(n, edges).expect("upper-triangle edges are simple"))
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize), (usize, &'static str)> {
    let take = |from: usize, count: usize| -> Result<usize, (usize, &'static str)> {
        if bytes.len() < from + count {
            return Err((bytes.len(), "truncated vertex count"));
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63)))
    };
    match bytes.first() {
        None => Err((0, "empty input")),
        Some(&b) if b < 126 => Ok((usize::from(b - 63), 1)),
        Some(_) if bytes.get(1) == Some(&126) => Ok((take(2, 6)?, 8)),
        Some(_) => Ok((take(1, 3)?, 4)),
    }
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    assert!(n <= MAX_ORDER, "graph6 cannot encode order {n}");
    let push = |out: &mut Vec<u8>, groups: usize| {
        for g in (0..groups).rev() {
            out.push(((n >> (6 * g)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push(out, 3);
    } else {
        out.extend([126, 126]);
        push(out, 6);
    }
}

/// Encodes `g` without the optional header.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.is_adjacent(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

const PALETTE: [&str; 10] = [
    "black", "red", "blue", "green4", "orange", "purple", "cyan3", "brown", "magenta", "gray50",
];

/// DOT rendering; with a census each edge orbit gets its own colour.
pub fn write_dot(g: &Graph, census: Option<&OrbitCensus>) -> String {
    let mut color = vec![None; g.size()];
    if let Some(c) = census {
        for (i, orbit) in c.edge_orbits.iter().enumerate() {
            for &(u, v) in orbit {
                if let Some(idx) = g.edge_index(u, v) {
                    color[idx] = Some(i);
                }
            }
        }
    }
    let mut s = String::from("graph G {\n  node [shape=point];\n");
    for v in 0..g.order() {
        let _ = writeln!(s, "  {v};");
    }
    for (&(u, v), c) in g.edges().iter().zip(&color) {
        match c {
            Some(i) => {
                let _ = writeln!(
                    s,
                    "  {u} -- {v} [color=\"{}\", orbit={i}];",
                    PALETTE[i % PALETTE.len()]
                );
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    s
}
