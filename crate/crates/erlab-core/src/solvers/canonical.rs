//! Canonical labelling for small graphs: iterated degree refinement plus a
//! minimal adjacency string over the refinement orbits, searched by
//! individualization. Intended for the enumeration scale (n <= 16); the
//! deduplication it backs is an optimization, with a disable flag upstream
//! for oracle runs.

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_CANONICAL_N: usize = 16;

/// Equitable refinement: split cells by the multiset of neighbour counts
/// into every cell, iterating to a fixed point. Cell order is derived from
/// invariants only, so it is isomorphism-invariant.
fn refine(g: &Graph, partition: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(partition.len());
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            // signature: per-cell neighbour counts
            let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            for &v in cell {
                let sig: Vec<usize> = partition
                    .iter()
                    .map(|c| c.iter().filter(|&&u| g.has_edge(u, v)).count())
                    .collect();
                match groups.iter_mut().find(|(s, _)| *s == sig) {
                    Some((_, members)) => members.push(v),
                    None => groups.push((sig, vec![v])),
                }
            }
            if groups.len() > 1 {
                changed = true;
            }
            groups.sort_by(|a, b| a.0.cmp(&b.0));
            for (_, members) in groups {
                next.push(members);
            }
        }
        *partition = next;
        if !changed {
            return;
        }
    }
}

/// Upper-triangle adjacency bits under a labelling, packed row by row; the
/// canonical key is the minimum over all labellings explored.
fn adjacency_key(g: &Graph, label_to_vertex: &[usize]) -> Vec<u8> {
    let n = label_to_vertex.len();
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            bits.push(g.has_edge(label_to_vertex[i], label_to_vertex[j]) as u8);
        }
    }
    bits
}

fn search(g: &Graph, partition: Vec<Vec<usize>>, best: &mut Option<Vec<u8>>, leaves: &mut u64) {
    if let Some(cell_idx) = partition.iter().position(|c| c.len() > 1) {
        for &v in &partition[cell_idx] {
            let mut split = Vec::with_capacity(partition.len() + 1);
            for (i, cell) in partition.iter().enumerate() {
                if i == cell_idx {
                    split.push(vec![v]);
                    split.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    split.push(cell.clone());
                }
            }
            refine(g, &mut split);
            search(g, split, best, leaves);
        }
    } else {
        *leaves += 1;
        let labelling: Vec<usize> = partition.iter().map(|c| c[0]).collect();
        let key = adjacency_key(g, &labelling);
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
    }
}

/// The canonical adjacency key of `g`: equal keys iff isomorphic graphs
/// (within the supported size range). The key starts with `n`.
pub fn canonical_key(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::budget(format!(
            "canonical form supported up to {MAX_CANONICAL_N} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(vec![0]);
    }
    // initial partition by degree
    let mut by_degree: Vec<(usize, Vec<usize>)> = Vec::new();
    for v in 0..n {
        let d = g.degree(v);
        match by_degree.iter_mut().find(|(deg, _)| *deg == d) {
            Some((_, cell)) => cell.push(v),
            None => by_degree.push((d, vec![v])),
        }
    }
    by_degree.sort_by_key(|(d, _)| *d);
    let mut partition: Vec<Vec<usize>> = by_degree.into_iter().map(|(_, c)| c).collect();
    refine(g, &mut partition);
    let mut best = None;
    let mut leaves = 0;
    search(g, partition, &mut best, &mut leaves);
    let mut key = vec![n as u8];
    key.extend(best.expect("n > 0 has at least one labelling"));
    Ok(key)
}

/// A canonical representative graph (rebuilt from the key).
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let key = canonical_key(g)?;
    let n = key[0] as usize;
    let mut out = Graph::empty(n)?;
    let mut idx = 1;
    for i in 0..n {
        for j in (i + 1)..n {
            if key[idx] == 1 {
                out.add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    Ok(out)
}

/// Isomorph-free augmentation: all graphs on exactly `n` vertices (up to
/// isomorphism) every one of whose induced prefixes passes `keep`. With a
/// hereditary `keep` (e.g. H-freeness) this reaches every such graph on `n`
/// vertices; with `keep = |_| true` it enumerates all graphs.
///
/// `keep` receives the candidate graph and the index of the vertex just
/// added, so hereditary properties only need to examine structures that
/// touch the new vertex.
pub fn enumerate_graphs<F>(n: usize, mut keep: F) -> Result<Vec<Graph>>
where
    F: FnMut(&Graph, usize) -> bool,
{
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?];
    for size in 2..=n {
        let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
        let mut next: Vec<Graph> = Vec::new();
        for parent in &level {
            for mask in 0u64..(1u64 << (size - 1)) {
                let mut child = Graph::empty(size)?;
                for (u, v) in parent.edges() {
                    child.add_edge(u, v)?;
                }
                for b in 0..size - 1 {
                    if mask >> b & 1 == 1 {
                        child.add_edge(b, size - 1)?;
                    }
                }
                if !keep(&child, size - 1) {
                    continue;
                }
                let key = canonical_key(&child)?;
                if seen.insert(key) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    Ok(level)
}
