//! On-disk graph formats.
//!
//! * `HCG-EDGES v1` text: first line `n m`, then `m` lines `u v` with
//!   `0 <= u < v < n`, ASCII decimal, LF-terminated. Edges are written in
//!   lexicographic order.
//! * `HCBM v1` binary: the 8-byte magic `HCBM0001`, `n` as a little-endian
//!   `u64`, then `n` rows of `ceil(n / 64)` little-endian `u64` words.
//! * JSON sidecar `{n, k, p, q, seed, planted}` for planted instances.

use super::generate::InstanceMeta;
use super::{bits, Graph};
use crate::error::{Error, Result};
use std::io::{BufRead, BufWriter, Read, Write};

pub const BINARY_MAGIC: &[u8; 8] = b"HCBM0001";

fn format_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Format(msg.into()))
}

pub fn write_edge_list<W: Write>(g: &Graph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut parts = line.split(' ');
    let (a, b) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => return format_err(format!("line {lineno}: expected two fields")),
    };
    let parse = |s: &str| -> Result<usize> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return format_err(format!("line {lineno}: bad integer {s:?}"));
        }
        s.parse()
            .map_err(|_| Error::Format(format!("line {lineno}: integer overflow {s:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.split(b'\n');
    let header = match lines.next() {
        Some(l) => l?,
        None => return format_err("missing header"),
    };
    let header =
        String::from_utf8(header).map_err(|_| Error::Format("header is not ASCII".into()))?;
    let (n, m) = parse_pair(&header, 1)?;
    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            // only the terminating LF may leave an empty tail
            continue;
        }
        let line = String::from_utf8(line)
            .map_err(|_| Error::Format(format!("line {} not ASCII", i + 2)))?;
        let (u, v) = parse_pair(&line, i + 2)?;
        if u >= v || v >= n {
            return format_err(format!("line {}: need u < v < n, got {u} {v}", i + 2));
        }
        if g.has_edge(u, v) {
            return format_err(format!("line {}: duplicate edge {u} {v}", i + 2));
        }
        g.set_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return format_err(format!("header declares {m} edges, found {seen}"));
    }
    Ok(g)
}

pub fn write_binary<W: Write>(g: &Graph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&(g.n() as u64).to_le_bytes())?;
    for w in g.raw_rows() {
        out.write_all(&w.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut input: R) -> Result<Graph> {
    let mut head = [0u8; 16];
    input
        .read_exact(&mut head)
        .map_err(|_| Error::Format("truncated header".into()))?;
    if &head[..8] != BINARY_MAGIC {
        return format_err("bad magic");
    }
    let n64 = u64::from_le_bytes(head[8..16].try_into().unwrap());
    let n = usize::try_from(n64).map_err(|_| Error::Format(format!("n = {n64} too large")))?;
    let stride = bits::words_for(n);
    let total = n
        .checked_mul(stride)
        .and_then(|w| w.checked_mul(8))
        .ok_or_else(|| Error::Format(format!("n = {n} too large")))?;
    let mut body = Vec::new();
    input.read_to_end(&mut body)?;
    if body.len() != total {
        return format_err(format!("expected {total} body bytes, found {}", body.len()));
    }
    let rows = body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Graph::from_rows(n, rows).map_err(Error::Format)
}

pub fn write_sidecar<W: Write>(meta: &InstanceMeta, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, meta)?;
    Ok(())
}

pub fn read_sidecar<R: Read>(input: R) -> Result<InstanceMeta> {
    Ok(serde_json::from_reader(input)?)
}
