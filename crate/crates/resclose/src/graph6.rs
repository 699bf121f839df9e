/*!
The graph6 interchange format.

A record is an order header followed by the upper triangle of the adjacency
matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six
bits per byte MSB-first, each byte offset by 63 into the printable range.
Orders up to 62 use a single header byte; 63 and 64 use `~` plus three
sextet bytes. Decoding is strict: exact record length, bytes in range, and
zero padding bits, so a decoder round-trips byte for byte.
*/

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

/// File header some tools prepend to the first record of a stream.
pub const STREAM_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty record")]
    Empty,
    #[error("byte {byte:#04x} at offset {pos} outside graph6 range 63..=126")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("order {0} outside supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("record ends after {got} bytes, expected {expected}")]
    Truncated { expected: usize, got: usize },
    #[error("record has {got} bytes, expected {expected}")]
    TrailingData { expected: usize, got: usize },
    #[error("padding bits after the last edge bit are not zero")]
    NonzeroPadding,
}

/// A decode failure tagged with its 1-based line number in a stream.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {err}")]
pub struct Graph6LineError {
    pub line: usize,
    pub err: Graph6Error,
}

fn sextets(record: &[u8]) -> Result<Vec<u8>, Graph6Error> {
    record
        .iter()
        .enumerate()
        .map(|(pos, &byte)| {
            if (63..=126).contains(&byte) {
                Ok(byte - 63)
            } else {
                Err(Graph6Error::InvalidByte { pos, byte })
            }
        })
        .collect()
}

/// Decodes a single record occupying the whole input.
pub fn decode(record: &[u8]) -> Result<Graph, Graph6Error> {
    if record.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let s = sextets(record)?;
    // Order header: one sextet below 63, or 63 (`~`) introducing three more.
    // The eight-sextet form for huge orders starts with a second `~`, which
    // reads here as an order of at least 63 << 12 and fails the range check.
    let (n, body) = if s[0] < 63 {
        (s[0] as usize, &s[1..])
    } else if s.len() >= 4 {
        let n = (s[1] as usize) << 12 | (s[2] as usize) << 6 | s[3] as usize;
        (n, &s[4..])
    } else {
        return Err(Graph6Error::Truncated { expected: 4, got: s.len() });
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::OrderOutOfRange(n));
    }

    let bits = n * (n - 1) / 2;
    let expected = record.len() - body.len() + bits.div_ceil(6);
    match record.len() {
        l if l < expected => return Err(Graph6Error::Truncated { expected, got: l }),
        l if l > expected => return Err(Graph6Error::TrailingData { expected, got: l }),
        _ => {}
    }

    let bit = |i: usize| body[i / 6] >> (5 - i % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    for p in bits..body.len() * 6 {
        if bit(p) {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range by construction"))
}

/// Encodes one graph as a graph6 record (no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push((n >> 12) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Iterates the records of a multi-line stream. Blank lines are skipped and
/// an optional [`STREAM_HEADER`] prefix on the first record is dropped.
pub fn decode_lines(input: &str) -> impl Iterator<Item = Result<Graph, Graph6LineError>> + '_ {
    input
        .lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let mut line = raw.trim_end_matches('\r');
            if idx == 0 {
                line = line.strip_prefix(STREAM_HEADER).unwrap_or(line);
            }
            if line.is_empty() {
                return None;
            }
            Some(decode(line.as_bytes()).map_err(|err| Graph6LineError { line: idx + 1, err }))
        })
}
