//! graph6 encoding for orders up to 62 (single-byte order header).
//!
//! Layout: one byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order `(0,1), (0,2), (1,2), (0,3), ..`, packed six bits
//! per byte (most significant first), zero padded, each byte offset by 63.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order expressible with the one-byte header.
pub const MAX_GRAPH6_ORDER: usize = 62;

const OFFSET: u8 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    NonPrintable { offset: usize, byte: u8 },
    #[error("multi-byte order header at offset 0 is not supported (orders above {MAX_GRAPH6_ORDER})")]
    UnsupportedOrder,
    #[error("line ends at offset {offset}, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("trailing garbage starting at offset {offset}")]
    TrailingGarbage { offset: usize },
    #[error("non-zero padding bits in the final byte at offset {offset}")]
    NonZeroPadding { offset: usize },
    #[error("graph of order {0} cannot be written with a one-byte header")]
    OrderOutOfRange(usize),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(Graph6Error::NonPrintable { offset, byte });
    }
    if header == 126 {
        return Err(Graph6Error::UnsupportedOrder);
    }
    let n = (header - OFFSET) as usize;
    let expected = 1 + data_len(n);
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: bytes.len(),
            expected,
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingGarbage { offset: expected });
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let mut adj = vec![0u64; n];
    let mut k = 0;
    'cols: for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
            if k == pairs {
                break 'cols;
            }
        }
    }
    let used = pairs % 6;
    if used != 0 {
        let last = bytes[expected - 1] - OFFSET;
        if last & ((1u8 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding { offset: expected - 1 });
        }
    }
    Ok(Graph::from_rows(adj))
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::OrderOutOfRange(n));
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + OFFSET);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("read error after line {line}: {source}")]
    Io { line: usize, source: std::io::Error },
}

/// A graph read from a stream, tagged with its 1-based line number.
#[derive(Debug, Clone)]
pub struct NumberedGraph {
    pub line: usize,
    pub graph: Graph,
}

/// Reads one graph per line; blank lines are skipped.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> impl Iterator<Item = Result<NumberedGraph, StreamError>> {
    reader.lines().enumerate().filter_map(|(idx, line)| {
        let line_no = idx + 1;
        match line {
            Err(source) => Some(Err(StreamError::Io { line: line_no, source })),
            Ok(text) => {
                let text = text.trim_end_matches(['\r', '\n']);
                if text.trim().is_empty() {
                    return None;
                }
                Some(
                    parse_graph6(text)
                        .map(|graph| NumberedGraph { line: line_no, graph })
                        .map_err(|source| StreamError::Parse { line: line_no, source }),
                )
            }
        }
    })
}
