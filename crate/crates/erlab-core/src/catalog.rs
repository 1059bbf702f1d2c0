//! Named small graphs and a tiny text syntax for them, shared by the CLI,
//! tests and experiment manifests.
//!
//! Accepted forms: `Kn` (complete), `Ka,b` (complete bipartite), `Cn`
//! (cycle), `Pn` (path on n vertices), `En` (edgeless), `petersen`, and
//! `g6:<graph6>` for anything else.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::domain(format!("cycle needs >= 3 vertices, got {n}")));
    }
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        g.add_edge(v, (v + 1) % n)?;
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(v - 1, v)?;
    }
    Ok(g)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let mut g = Graph::empty(a + b)?;
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    let n: usize = parts.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        offsets.push(acc);
        acc += p;
    }
    for (i, &pi) in parts.iter().enumerate() {
        for (j, &pj) in parts.iter().enumerate().skip(i + 1) {
            for a in 0..pi {
                for b in 0..pj {
                    g.add_edge(offsets[i] + a, offsets[j] + b)?;
                }
            }
        }
    }
    Ok(g)
}

pub fn petersen() -> Graph {
    let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
    let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
    Graph::from_edges(10, outer.into_iter().chain(spokes).chain(inner))
        .expect("static edge list is valid")
}

/// Parse a graph description (see module docs for the accepted forms).
pub fn parse_graph(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    if let Some(g6) = s.strip_prefix("g6:") {
        return graph6::decode(g6.as_bytes());
    }
    if s.eq_ignore_ascii_case("petersen") {
        return Ok(petersen());
    }
    let bad = || Error::Parse {
        offset: 0,
        msg: format!("unrecognized graph spec {spec:?}"),
    };
    let mut chars = s.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let rest: &str = &s[kind.len_utf8()..];
    match kind {
        'K' | 'k' => {
            if let Some((a, b)) = rest.split_once(',') {
                let a = a.trim().parse::<usize>().map_err(|_| bad())?;
                let b = b.trim().parse::<usize>().map_err(|_| bad())?;
                complete_bipartite(a, b)
            } else {
                complete(rest.parse::<usize>().map_err(|_| bad())?)
            }
        }
        'C' | 'c' => cycle(rest.parse::<usize>().map_err(|_| bad())?),
        'P' | 'p' => path(rest.parse::<usize>().map_err(|_| bad())?),
        'E' | 'e' => Graph::empty(rest.parse::<usize>().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}
