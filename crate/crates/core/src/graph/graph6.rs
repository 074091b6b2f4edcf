//! graph6 encoding: one graph per line, printable bytes 63..=126.
//!
//! Size header `N(n)`: one byte for `n ≤ 62`, `~` plus three bytes for
//! `n ≤ 258047`, `~~` plus six bytes above that. The upper triangle is
//! packed column by column (`(0,1), (0,2), (1,2), (0,3), …`) six bits per
//! byte, high bit first, zero-padded.

use std::io::{self, BufRead, Write};

use super::Graph;
use crate::{Error, Result};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            bits += 1;
            if bits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|&b| !(BIAS..=126).contains(&b)) {
        return Err(err(skip + pos, format!("byte {:#04x} outside 63..=126", body[pos])));
    }
    let six = |pos: usize| -> Result<usize> {
        body.get(pos)
            .map(|&b| (b - BIAS) as usize)
            .ok_or_else(|| err(skip + pos, "truncated size header"))
    };
    let (n, mut pos) = match body.first() {
        None => return Err(err(skip, "empty input")),
        Some(&126) if body.get(1) == Some(&126) => {
            let mut n = 0;
            for k in 2..8 {
                n = (n << 6) | six(k)?;
            }
            (n, 8)
        }
        Some(&126) => {
            let mut n = 0;
            for k in 1..4 {
                n = (n << 6) | six(k)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - BIAS) as usize, 1),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let need = total_bits.div_ceil(6);
    let data = &body[pos..];
    if data.len() != need {
        let at = skip + pos + data.len().min(need);
        return Err(err(
            at,
            format!("expected {need} data bytes for n = {n}, found {}", data.len()),
        ));
    }
    let mut adj = vec![Vec::new(); n];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            bit += 1;
        }
    }
    if total_bits % 6 != 0 {
        let last = data[need - 1] - BIAS;
        let pad = 6 - total_bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            pos += need - 1;
            return Err(err(skip + pos, "nonzero padding bits"));
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Parse every non-empty line; errors carry the 1-based line number.
pub fn read_graph6<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_graph6(line.trim()).map_err(|e| match e {
            Error::Graph6 { offset, reason } => Error::Graph6 {
                offset,
                reason: format!("line {}: {reason}", i + 1),
            },
            other => other,
        })?);
    }
    Ok(out)
}

pub fn write_graph6<W: Write>(mut w: W, graphs: &[Graph]) -> io::Result<()> {
    for g in graphs {
        writeln!(w, "{}", emit_graph6(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use proptest::prelude::*;

    #[test]
    fn published_examples() {
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        // Reference example from the format description: n = 5 with edges
        // 0-2, 0-4, 1-3, 3-4 encodes as "DQc".
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(emit_graph6(&complete(4)), "C~");
        assert_eq!(emit_graph6(&path(3)), "Bg");
    }

    #[test]
    fn round_trip_named() {
        for g in [path(3), petersen(), star(7), kite(9, 4).unwrap()] {
            assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn large_header_round_trip() {
        let g = path(100);
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        assert_eq!(parse_graph6(&format!("{HEADER}{s}")).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        match parse_graph6("D?{!") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("D?"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse_graph6("D?{{"), Err(Error::Graph6 { .. })));
        // n = 3 has 3 bits, so the low 3 bits of the data byte are padding.
        assert!(matches!(parse_graph6("BA"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("~"), Err(Error::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn read_lines_skips_blanks() {
        let text = "Bg\n\nC~\n";
        let gs = read_graph6(text.as_bytes()).unwrap();
        assert_eq!(gs, vec![path(3), complete(4)]);
        let bad = "Bg\nC!\n";
        match read_graph6(bad.as_bytes()) {
            Err(Error::Graph6 { reason, .. }) => assert!(reason.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn random_graph_round_trip(n in 0usize..40, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed;
            for u in 0..n {
                for v in u + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 62 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let s = emit_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
