//! graph6 codec (bit-exact: 6-bit groups over the upper triangle in column
//! order, 63-offset printable bytes) plus a plain edge-list text format.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::io::{BufRead, Write};

/// Encode a graph as a graph6 byte string.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    // size header
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    } else {
        out.push('~');
        out.push('~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    // upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    let mut group = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            group = (group << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    out
}

/// Decode a graph6 byte string.
pub fn decode(bytes: &[u8]) -> Result<Graph> {
    let err = |offset: usize, msg: &str| Error::Parse {
        offset,
        msg: msg.to_string(),
    };
    let sextet = |offset: usize| -> Result<usize> {
        let b = *bytes
            .get(offset)
            .ok_or_else(|| err(offset, "unexpected end of input"))?;
        if !(63..=126).contains(&b) {
            return Err(err(offset, "byte outside the printable graph6 range"));
        }
        Ok((b - 63) as usize)
    };

    let (n, mut pos) = if bytes.first() == Some(&b'~') {
        if bytes.get(1) == Some(&b'~') {
            let mut n = 0usize;
            for i in 0..6 {
                n = (n << 6) | sextet(2 + i)?;
            }
            (n, 8)
        } else {
            let mut n = 0usize;
            for i in 0..3 {
                n = (n << 6) | sextet(1 + i)?;
            }
            (n, 4)
        }
    } else {
        (sextet(0)?, 1)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pos + pairs.div_ceil(6);
    if bytes.len() != expected {
        return Err(err(
            bytes.len().min(expected),
            &format!(
                "wrong length for n = {n}: expected {expected} bytes, got {}",
                bytes.len()
            ),
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut group = 0usize;
    let mut remaining = 0u8;
    for v in 1..n {
        for u in 0..v {
            if remaining == 0 {
                group = sextet(pos)?;
                pos += 1;
                remaining = 6;
            }
            if group >> 5 & 1 == 1 {
                g.add_edge(u, v)?;
            }
            group = (group << 1) & 0x3f;
            remaining -= 1;
        }
    }
    // trailing padding bits must be zero
    if remaining > 0 && group != 0 {
        return Err(err(pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

/// Write graphs one-per-line in graph6.
pub fn write_graph6_lines<W: Write>(mut w: W, graphs: &[Graph]) -> Result<()> {
    for g in graphs {
        writeln!(w, "{}", encode(g))?;
    }
    Ok(())
}

/// Read a one-graph-per-line graph6 stream.
pub fn read_graph6_lines<R: BufRead>(r: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() {
            out.push(decode(t.as_bytes())?);
        }
    }
    Ok(out)
}

/// Write the `n=<count>` / `u v` edge-list text format.
pub fn write_edge_list<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "n={}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// Read the `n=<count>` / `u v` edge-list text format.
pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse {
            offset: 0,
            msg: "empty edge-list input".to_string(),
        })?
        .map_err(Error::Io)?;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse {
            offset: 0,
            msg: format!("expected 'n=<count>' header, got {header:?}"),
        })?;
    let mut g = Graph::empty(n)?;
    let mut offset = header.len() + 1;
    for line in lines {
        let line = line.map_err(Error::Io)?;
        let t = line.trim();
        if !t.is_empty() {
            let mut it = t.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.and_then(|s| s.parse().ok()).ok_or(Error::Parse {
                    offset,
                    msg: format!("expected 'u v' edge line, got {line:?}"),
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    offset,
                    msg: format!("trailing tokens on edge line {line:?}"),
                });
            }
            g.add_edge(u, v)?;
        }
        offset += line.len() + 1;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rng::RngConfig;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&catalog::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&catalog::complete(5).unwrap()), "D~{");
    }

    #[test]
    fn decode_known() {
        let k3 = decode(b"Bw").unwrap();
        assert_eq!(k3, catalog::complete(3).unwrap());
        let e0 = decode(b"?").unwrap();
        assert_eq!(e0.n(), 0);
    }

    #[test]
    fn round_trip_random_graphs() {
        for seed in 0..1000u64 {
            let rng = RngConfig::new(seed, 0);
            let n = (seed % 30 + 1) as usize;
            let g = Graph::random_gnp(n, 0.4, &rng).unwrap();
            let enc = encode(&g);
            let back = decode(enc.as_bytes()).unwrap();
            assert_eq!(g, back, "round trip failed at seed {seed}");
        }
    }

    #[test]
    fn round_trip_long_form() {
        // n = 70 forces the 3-byte header
        let g = Graph::random_gnp(70, 0.1, &RngConfig::new(314, 0)).unwrap();
        let enc = encode(&g);
        assert!(enc.starts_with('~'));
        assert_eq!(decode(enc.as_bytes()).unwrap(), g);
    }

    #[test]
    fn decode_rejects_malformed() {
        // bad byte
        let e = decode(&[b'B', 0x07]).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 1, .. }), "{e}");
        // truncated body
        let e = decode(b"D").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        // trailing garbage
        let e = decode(b"Bww").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = catalog::petersen();
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &g).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n=10\n"));
        let back = read_edge_list(&buf[..]).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn edge_list_rejects_bad_header() {
        assert!(read_edge_list(&b"m=3\n0 1\n"[..]).is_err());
        assert!(read_edge_list(&b"n=3\n0 1 2\n"[..]).is_err());
    }
}
