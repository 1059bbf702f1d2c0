//! Two-sided incidence structures (bipartite graphs with named parts X, Y).

use crate::error::{Error, Result};
use std::io::{BufRead, Write};

/// A bipartite graph on parts `X` (indices `0..nx`) and `Y` (`0..ny`),
/// stored as sorted per-X neighbour lists. Hosts the point/line incidence
/// structures used by the blow-up constructions.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteIncidence {
    nx: usize,
    ny: usize,
    adj_x: Vec<Vec<u32>>,
}

impl BipartiteIncidence {
    pub fn new(nx: usize, ny: usize) -> Self {
        BipartiteIncidence {
            nx,
            ny,
            adj_x: vec![Vec::new(); nx],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(
        nx: usize,
        ny: usize,
        edges: I,
    ) -> Result<Self> {
        let mut k = BipartiteIncidence::new(nx, ny);
        for (x, y) in edges {
            k.add_edge(x, y)?;
        }
        Ok(k)
    }

    pub fn add_edge(&mut self, x: usize, y: usize) -> Result<()> {
        if x >= self.nx || y >= self.ny {
            return Err(Error::domain(format!(
                "incidence ({x}, {y}) out of range for X = {}, Y = {}",
                self.nx, self.ny
            )));
        }
        let row = &mut self.adj_x[x];
        match row.binary_search(&(y as u32)) {
            Ok(_) => Err(Error::domain(format!("duplicate incidence ({x}, {y})"))),
            Err(pos) => {
                row.insert(pos, y as u32);
                Ok(())
            }
        }
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Sorted Y-neighbours of an X-vertex.
    #[inline]
    pub fn neighbors_of_x(&self, x: usize) -> &[u32] {
        &self.adj_x[x]
    }

    pub fn degree_x(&self, x: usize) -> usize {
        self.adj_x[x].len()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj_x[x].binary_search(&(y as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj_x.iter().map(Vec::len).sum()
    }

    /// Sorted X-neighbour lists per Y-vertex (derived).
    pub fn adjacency_y(&self) -> Vec<Vec<u32>> {
        let mut adj_y = vec![Vec::new(); self.ny];
        for (x, row) in self.adj_x.iter().enumerate() {
            for &y in row {
                adj_y[y as usize].push(x as u32);
            }
        }
        adj_y
    }

    pub fn degrees_y(&self) -> Vec<usize> {
        let mut deg = vec![0; self.ny];
        for row in &self.adj_x {
            for &y in row {
                deg[y as usize] += 1;
            }
        }
        deg
    }

    /// Export as an edge list with an `X=<count> Y=<count>` header.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "X={} Y={}", self.nx, self.ny)?;
        for (x, row) in self.adj_x.iter().enumerate() {
            for &y in row {
                writeln!(w, "{x} {y}")?;
            }
        }
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse {
                offset: 0,
                msg: "empty incidence input".to_string(),
            })?
            .map_err(Error::Io)?;
        let parse_header = || -> Option<(usize, usize)> {
            let mut it = header.trim().split_whitespace();
            let nx = it.next()?.strip_prefix("X=")?.parse().ok()?;
            let ny = it.next()?.strip_prefix("Y=")?.parse().ok()?;
            it.next().is_none().then_some((nx, ny))
        };
        let (nx, ny) = parse_header().ok_or_else(|| Error::Parse {
            offset: 0,
            msg: format!("expected 'X=<count> Y=<count>' header, got {header:?}"),
        })?;
        let mut k = BipartiteIncidence::new(nx, ny);
        let mut offset = header.len() + 1;
        for line in lines {
            let line = line.map_err(Error::Io)?;
            let t = line.trim();
            if !t.is_empty() {
                let mut it = t.split_whitespace();
                let mut next = || -> Result<usize> {
                    it.next().and_then(|s| s.parse().ok()).ok_or(Error::Parse {
                        offset,
                        msg: format!("expected 'x y' incidence line, got {line:?}"),
                    })
                };
                let x = next()?;
                let y = next()?;
                k.add_edge(x, y)?;
            }
            offset += line.len() + 1;
        }
        Ok(k)
    }
}

impl std::fmt::Debug for BipartiteIncidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BipartiteIncidence(X={}, Y={}, m={})",
            self.nx,
            self.ny,
            self.edge_count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_duplicates() {
        let mut k = BipartiteIncidence::new(2, 3);
        k.add_edge(0, 0).unwrap();
        k.add_edge(0, 2).unwrap();
        k.add_edge(1, 2).unwrap();
        assert!(k.add_edge(0, 0).is_err());
        assert!(k.add_edge(2, 0).is_err());
        assert_eq!(k.degree_x(0), 2);
        assert_eq!(k.degrees_y(), vec![1, 0, 2]);
        assert_eq!(k.edge_count(), 3);
        assert_eq!(k.adjacency_y()[2], vec![0, 1]);
    }

    #[test]
    fn edge_list_round_trip() {
        let k = BipartiteIncidence::from_edges(3, 2, [(0, 0), (1, 1), (2, 0), (2, 1)]).unwrap();
        let mut buf = Vec::new();
        k.write_edge_list(&mut buf).unwrap();
        assert!(buf.starts_with(b"X=3 Y=2\n"));
        let back = BipartiteIncidence::read_edge_list(&buf[..]).unwrap();
        assert_eq!(k, back);
    }
}
