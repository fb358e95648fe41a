//! graph6 and sparse6 text formats.
//!
//! graph6 writes the upper triangle column by column (`x(0,1), x(0,2),
//! x(1,2), x(0,3), ...`), six bits per byte, most significant bit first,
//! each byte offset by 63. Padding bits are written as zero and ignored on
//! reading.

use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

const G6_HEADER: &str = ">>graph6<<";
const S6_HEADER: &str = ">>sparse6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Returns `(n, bytes consumed)`.
fn decode_n(bytes: &[u8]) -> Result<(usize, usize)> {
    let digit = |i: usize| -> Result<usize> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(_) => Err(Error::parse(i, "byte outside the printable range 63..=126")),
            None => Err(Error::parse(i, "truncated vertex count")),
        }
    };
    let first = digit(0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if bytes.get(1) == Some(&126) {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | digit(i)?;
        }
        return Ok((n, 8));
    }
    let mut n = 0;
    for i in 1..4 {
        n = (n << 6) | digit(i)?;
    }
    Ok((n, 4))
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(G6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (n, start) = decode_n(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = start + bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(Error::parse(
            bytes.len().min(expected),
            format!("graph6 for n={n} needs {expected} bytes, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            let idx = start + pos / 6;
            let b = bytes[idx];
            if !(63..=126).contains(&b) {
                return Err(Error::parse(idx, "byte outside the printable range 63..=126"));
            }
            if (b - 63) >> (5 - pos % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            pos += 1;
        }
    }
    for (idx, &b) in bytes.iter().enumerate().skip(start + pos / 6) {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(idx, "byte outside the printable range 63..=126"));
        }
    }
    Ok(g)
}

/// Reads a (non-incremental) sparse6 string, with or without the leading `:`.
pub fn parse_sparse6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(S6_HEADER).unwrap_or(text);
    if text.starts_with(';') {
        return Err(Error::parse(0, "incremental sparse6 is not supported"));
    }
    let body = text.strip_prefix(':').unwrap_or(text);
    let offset = text.len() - body.len();
    let bytes = body.as_bytes();
    let (n, start) = decode_n(bytes).map_err(|e| shift_offset(e, offset))?;
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    let mut bits = Vec::with_capacity((bytes.len() - start) * 6);
    for (idx, &b) in bytes.iter().enumerate().skip(start) {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(offset + idx, "byte outside the printable range 63..=126"));
        }
        bits.extend((0..6).rev().map(|s| (b - 63) >> s & 1));
    }
    let mut g = Graph::new(n);
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let x = bits[pos + 1..pos + 1 + k]
            .iter()
            .fold(0usize, |acc, &bit| (acc << 1) | bit as usize);
        pos += 1 + k;
        if b == 1 {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(Error::parse(offset + start + pos / 6, "loops are not supported"));
        } else {
            g.add_edge(x, v);
        }
    }
    Ok(g)
}

fn shift_offset(err: Error, by: usize) -> Error {
    match err {
        Error::Parse { offset, reason } => Error::Parse {
            offset: offset + by,
            reason,
        },
        other => other,
    }
}

/// Parses one graph per line (graph6, or sparse6 when the line starts with
/// `:`). Blank lines and lines starting with `#` are skipped.
pub fn parse_graph_text(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            let parsed = if trimmed.starts_with(':') || trimmed.starts_with(S6_HEADER) {
                parse_sparse6(trimmed)
            } else {
                parse_graph6(trimmed)
            };
            let lead = line.len() - line.trim_start().len();
            out.push(parsed.map_err(|e| shift_offset(e, line_start + lead))?);
        }
        line_start += line.len();
    }
    Ok(out)
}

pub fn parse_graph_file(path: impl AsRef<Path>) -> Result<Vec<Graph>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_graph_text(&text)
}
