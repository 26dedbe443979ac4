//! graph6 encoding (short form only, n <= 62).

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn encode_graph6(g: &SmallGraph) -> String {
    let n = g.order();
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(63 + acc);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(63 + (acc << (6 - k)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 record. Trailing `\n` / `\r\n` is accepted; anything
/// else after the last data byte, or nonzero padding, is an error.
pub fn decode_graph6(bytes: &[u8]) -> Result<SmallGraph> {
    let bytes = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    let bytes = bytes.strip_suffix(b"\r").unwrap_or(bytes);
    let bytes = bytes.strip_prefix(HEADER.as_bytes()).unwrap_or(bytes);

    let &first = bytes.first().ok_or_else(|| g6_err(0, "empty record"))?;
    if first == 126 {
        return Err(g6_err(0, "long size prefix (n > 62) is not supported"));
    }
    if !(63..126).contains(&first) {
        return Err(g6_err(0, format!("invalid size byte {first}")));
    }
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(g6_err(0, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let nbits = n * (n - 1) / 2;
    let ndata = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < ndata {
        return Err(g6_err(
            bytes.len(),
            format!("expected {ndata} data bytes, found {}", data.len()),
        ));
    }
    if data.len() > ndata {
        return Err(g6_err(1 + ndata, "trailing bytes after adjacency data"));
    }
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(1 + i, format!("invalid data byte {b}")));
        }
    }

    let mut g = SmallGraph::empty(n)?;
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let pad = (data[ndata - 1] - 63) & ((1 << (6 - nbits % 6)) - 1);
        if pad != 0 {
            return Err(g6_err(ndata, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// One line of a graph6 stream.
#[derive(Debug)]
pub enum StreamItem {
    Graph {
        line: usize,
        graph: SmallGraph,
    },
    /// A sparse6 (`:`) or digraph6 (`&`) record, which is skipped.
    Skipped {
        line: usize,
    },
}

/// Line-oriented graph6 reader. Blank lines and a leading `>>graph6<<`
/// header are ignored; sparse6 records are reported as skipped.
pub struct Graph6Reader<R> {
    inner: R,
    line: usize,
    buf: Vec<u8>,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(inner: R) -> Self {
        Graph6Reader {
            inner,
            line: 0,
            buf: Vec::new(),
        }
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<StreamItem>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.inner.read_until(b'\n', &mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            let mut rec: &[u8] = &self.buf;
            while let Some(r) = rec.strip_suffix(b"\n").or_else(|| rec.strip_suffix(b"\r")) {
                rec = r;
            }
            if let Some(r) = rec.strip_prefix(HEADER.as_bytes()) {
                rec = r;
            }
            if rec.is_empty() {
                continue;
            }
            if rec.starts_with(b">>sparse6<<") || rec[0] == b':' || rec[0] == b'&' {
                return Some(Ok(StreamItem::Skipped { line: self.line }));
            }
            let line = self.line;
            return Some(
                decode_graph6(rec)
                    .map(|graph| StreamItem::Graph { line, graph })
                    .map_err(|e| match e {
                        Error::Graph6 { offset, message } => Error::Graph6 {
                            offset,
                            message: format!("line {line}: {message}"),
                        },
                        other => other,
                    }),
            );
        }
    }
}

/// Decodes every graph in `text`, one per line.
pub fn decode_stream(text: &str) -> Result<Vec<SmallGraph>> {
    Graph6Reader::new(text.as_bytes())
        .filter_map(|item| match item {
            Ok(StreamItem::Graph { graph, .. }) => Some(Ok(graph)),
            Ok(StreamItem::Skipped { .. }) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}
