//! graph6 text format, short form (`n <= 62`).
//!
//! Bits of the upper triangle are taken column by column: `(0,1), (0,2),
//! (1,2), (0,3), ...`, packed big-endian into 6-bit groups, each offset by 63.

use super::{bit, Graph, GraphError};

const MAX_SHORT: usize = 62;

pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > MAX_SHORT {
        return Err(GraphError::TooLarge { n, max: MAX_SHORT });
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
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
    Ok(out)
}

pub fn decode_graph6(text: &str) -> Result<Graph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |m: &str| GraphError::Graph6(m.to_string());
    let (&head, body) = bytes.split_first().ok_or_else(|| bad("empty string"))?;
    if !(63..=126).contains(&head) {
        return Err(bad("invalid size character"));
    }
    if head == 126 {
        return Err(GraphError::TooLarge { n: 63, max: MAX_SHORT });
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} data characters for {n} vertices, got {}",
            nbits.div_ceil(6),
            body.len()
        )));
    }
    let mut adj = vec![0u64; n];
    let mut idx = 0usize;
    let mut data = Vec::with_capacity(body.len() * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(bad("data character out of range"));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            data.push((v >> k) & 1 == 1);
        }
    }
    if data[nbits.min(data.len())..].iter().any(|&x| x) {
        return Err(bad("non-zero padding bits"));
    }
    for j in 1..n {
        for i in 0..j {
            if data[idx] {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            idx += 1;
        }
    }
    Ok(Graph::from_masks(n, adj))
}
