//! Encoder and decoder for the standard graph6 ASCII format.
//!
//! Decoded graphs get labels `"0".."n-1"` in vertex order.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedGraph6(msg.into())
}

/// Parses a single graph6 value (an optional `>>graph6<<` header is
/// accepted and stripped).
pub fn parse(text: &str) -> Result<Graph> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
    }
    if s.is_empty() {
        return Err(bad("empty input"));
    }
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(format!("byte {b} out of printable range 63..=126")));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(bad("graphs with 2^18 or more vertices are not supported"));
        }
        if bytes.len() < 4 {
            return Err(bad("truncated vertex count"));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(bad(format!(
            "expected {} data bytes for {} vertices, found {}",
            nbytes,
            n,
            bytes.len() - pos
        )));
    }

    let mut g = Graph::with_vertices((0..n).map(|i| i.to_string()))?;
    let mut bit = 0usize;
    let mut current = 0u8;
    let mut left = 0u8;
    for v in 1..n {
        for u in 0..v {
            if left == 0 {
                current = bytes[pos] - 63;
                pos += 1;
                left = 6;
            }
            if current & (1 << (left - 1)) != 0 {
                g.add_edge(u, v)?;
            }
            left -= 1;
            bit += 1;
        }
    }
    debug_assert_eq!(bit, nbits);
    // Standard padding is all-zero; anything else means corruption.
    if left > 0 && current & ((1 << left) - 1) != 0 {
        return Err(bad("nonzero padding bits"));
    }
    Ok(g)
}

/// Encodes the graph in vertex-index order; labels are not stored.
pub fn emit(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n < (1 << 18), "graph too large for this encoder");
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut current = 0u8;
    let mut used = 0u8;
    for v in 1..n {
        for u in 0..v {
            current <<= 1;
            if g.has_edge(u, v) {
                current |= 1;
            }
            used += 1;
            if used == 6 {
                out.push(current + 63);
                current = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        current <<= 6 - used;
        out.push(current + 63);
    }
    String::from_utf8(out).expect("printable ascii")
}
