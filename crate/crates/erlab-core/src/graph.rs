//! Dense simple-graph kernel: bit-packed symmetric adjacency, induced
//! subgraphs, products, unions and random models.

use crate::bitset::{words_for, VertexSet};
use crate::error::{Error, Result};
use crate::numeric;
use crate::rng::RngConfig;
use rand::Rng;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 1 << 16;

/// An undirected simple graph on vertices `0..n`, one bit-packed adjacency
/// row per vertex. Rows stay symmetric and loop-free by construction; values
/// are immutable once built and safe to share across workers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::Size(format!(
                "graph on {n} vertices exceeds the {MAX_VERTICES}-vertex limit"
            )));
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Insert the edge `{u, v}`. Rejects loops and out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) out of range for n = {}",
                self.n
            )));
        }
        self.set_bit(u, v);
        self.set_bit(v, u);
        Ok(())
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Adjacency row of `v` as raw words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|v| self.degree(v)).sum();
        total / 2
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbourhood of `v` as an owned set.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("complement preserves size");
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("in range");
                }
            }
        }
        g
    }

    /// The induced subgraph `G[S]`, with the vertices of `S` renumbered
    /// `0..|S|` in their inherited (ascending) order.
    pub fn induced(&self, s: &VertexSet) -> Result<Graph> {
        if s.universe() != self.n {
            return Err(Error::domain(format!(
                "vertex set over universe {} used with graph on {} vertices",
                s.universe(),
                self.n
            )));
        }
        let verts = s.to_vec();
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Common neighbourhood `N(X)` = vertices adjacent to every member of
    /// `X`. The empty query is rejected.
    pub fn common_neighbourhood(&self, x: &VertexSet) -> Result<VertexSet> {
        if x.universe() != self.n {
            return Err(Error::domain(
                "query set over a different vertex universe".to_string(),
            ));
        }
        let mut iter = x.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::domain("common neighbourhood of the empty set".to_string()))?;
        let mut acc = self.neighbors(first);
        for v in iter {
            acc.intersect_words(self.row(v));
        }
        Ok(acc)
    }

    /// Common neighbourhood of an explicit vertex list (repeats allowed).
    pub fn common_neighbourhood_of(&self, xs: &[usize]) -> Result<VertexSet> {
        if xs.is_empty() {
            return Err(Error::domain("common neighbourhood of the empty set".to_string()));
        }
        let mut acc = self.neighbors(xs[0]);
        for &v in &xs[1..] {
            acc.intersect_words(self.row(v));
        }
        Ok(acc)
    }

    /// Lexicographic product: substitute a copy of `h` for each vertex of
    /// `self`, joining substituted copies completely along edges. Vertex
    /// `(u, a)` maps to index `u * h.n() + a`.
    pub fn lexicographic_product(&self, h: &Graph) -> Result<Graph> {
        let n = self
            .n
            .checked_mul(h.n)
            .filter(|&n| n <= MAX_VERTICES)
            .ok_or_else(|| {
                Error::Size(format!(
                    "product on {} x {} vertices exceeds the size limit",
                    self.n, h.n
                ))
            })?;
        let mut g = Graph::empty(n)?;
        let hn = h.n;
        for u in 0..self.n {
            // internal copies of h
            for a in 0..hn {
                for b in (a + 1)..hn {
                    if h.has_edge(a, b) {
                        g.add_edge(u * hn + a, u * hn + b)?;
                    }
                }
            }
            // complete joins along edges of self
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    for a in 0..hn {
                        for b in 0..hn {
                            g.add_edge(u * hn + a, v * hn + b)?;
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Edge-union of two graphs on the same vertex set.
    pub fn union_same_vertices(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::domain(format!(
                "union of graphs on {} and {} vertices",
                self.n, other.n
            )));
        }
        let mut g = self.clone();
        for (a, b) in g.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(g)
    }

    /// Erdős–Rényi model: each unordered pair is an edge independently with
    /// probability `p`. Deterministic given `rng`, regardless of worker
    /// count (sampling is a single pass in pair order).
    pub fn random_gnp(n: usize, p: f64, rng: &RngConfig) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("edge probability {p} outside [0, 1]")));
        }
        let threshold = numeric::probability_threshold(p);
        Graph::random_gnp_threshold(n, threshold, rng)
    }

    /// G(n,p) with `p` given as a 64-bit fixed-point threshold
    /// (`thr = round(p * 2^64)`); a pair is an edge iff the next draw is
    /// below `thr`. This is the primitive the schedule-driven constructions
    /// use so that probabilities derived in exact arithmetic sample exactly.
    pub fn random_gnp_threshold(n: usize, threshold: u128, rng: &RngConfig) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let mut r = rng.rng();
        for u in 0..n {
            for v in (u + 1)..n {
                let draw: u64 = r.random();
                if (draw as u128) < threshold {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Random `d`-regular graph via the pairing model, resampling until the
    /// pairing is simple. Used by the domination experiments.
    pub fn random_regular(n: usize, d: usize, rng: &RngConfig) -> Result<Graph> {
        if n * d % 2 != 0 || d >= n {
            return Err(Error::domain(format!(
                "no {d}-regular graph on {n} vertices"
            )));
        }
        let mut r = rng.rng();
        let mut points: Vec<usize> = (0..n * d).collect();
        'attempt: for _ in 0..10_000 {
            // Fisher-Yates over the points, then read off consecutive pairs.
            for i in (1..points.len()).rev() {
                let j = r.random_range(0..=i);
                points.swap(i, j);
            }
            let mut g = Graph::empty(n)?;
            for pair in points.chunks_exact(2) {
                let (u, v) = (pair[0] / d, pair[1] / d);
                if u == v || g.has_edge(u, v) {
                    continue 'attempt;
                }
                g.add_edge(u, v)?;
            }
            return Ok(g);
        }
        Err(Error::budget(format!(
            "pairing model failed to produce a simple {d}-regular graph on {n} vertices"
        )))
    }

    /// Average degree as an exact rational (2e/n).
    pub fn average_degree(&self) -> num_rational::Ratio<u64> {
        if self.n == 0 {
            return num_rational::Ratio::new(0, 1);
        }
        num_rational::Ratio::new(2 * self.edge_count() as u64, self.n as u64)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn induced_path_of_cycle() {
        let c5 = catalog::cycle(5).unwrap();
        let s = VertexSet::from_iter(5, [0, 1, 2]);
        let p = c5.induced(&s).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn induced_full_set_is_identity() {
        let g = catalog::petersen();
        let back = g.induced(&VertexSet::full(10)).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn induced_star_inside_k33() {
        // parts {0,1,2} and {3,4,5}
        let g = catalog::complete_bipartite(3, 3).unwrap();
        let s = VertexSet::from_iter(6, [0, 3, 4]);
        let star = g.induced(&s).unwrap();
        assert_eq!(star.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn induced_rejects_foreign_universe() {
        let g = catalog::cycle(5).unwrap();
        assert!(g.induced(&VertexSet::from_iter(6, [0, 1])).is_err());
    }

    #[test]
    fn common_neighbourhood_cases() {
        let k4 = catalog::complete(4).unwrap();
        let n = k4
            .common_neighbourhood(&VertexSet::from_iter(4, [0, 1]))
            .unwrap();
        assert_eq!(n.to_vec(), vec![2, 3]);

        let c5 = catalog::cycle(5).unwrap();
        let n = c5
            .common_neighbourhood(&VertexSet::from_iter(5, [0, 2]))
            .unwrap();
        assert_eq!(n.to_vec(), vec![1]);
        let n = c5
            .common_neighbourhood(&VertexSet::from_iter(5, [0, 1, 2]))
            .unwrap();
        assert!(n.is_empty());

        assert!(c5.common_neighbourhood(&VertexSet::empty(5)).is_err());
    }

    #[test]
    fn singleton_common_neighbourhood_is_the_row() {
        let g = catalog::petersen();
        for v in g.vertices() {
            let n = g
                .common_neighbourhood(&VertexSet::from_iter(10, [v]))
                .unwrap();
            assert_eq!(n, g.neighbors(v));
        }
    }

    #[test]
    fn product_k2_k2_is_k4() {
        let k2 = catalog::complete(2).unwrap();
        let p = k2.lexicographic_product(&k2).unwrap();
        assert_eq!(p, catalog::complete(4).unwrap());
    }

    #[test]
    fn product_with_empty_base_is_disjoint_copies() {
        let e2 = Graph::empty(2).unwrap();
        let c5 = catalog::cycle(5).unwrap();
        let p = e2.lexicographic_product(&c5).unwrap();
        assert_eq!(p.n(), 10);
        assert_eq!(p.edge_count(), 10);
        // no cross edges between the two copies
        for a in 0..5 {
            for b in 5..10 {
                assert!(!p.has_edge(a, b));
            }
        }
    }

    #[test]
    fn union_cases() {
        let mut g1 = Graph::empty(3).unwrap();
        g1.add_edge(0, 1).unwrap();
        let mut g2 = Graph::empty(3).unwrap();
        g2.add_edge(1, 2).unwrap();
        let u = g1.union_same_vertices(&g2).unwrap();
        assert_eq!(u.edges(), vec![(0, 1), (1, 2)]);

        let same = g1.union_same_vertices(&g1).unwrap();
        assert_eq!(same, g1);

        let c5 = catalog::cycle(5).unwrap();
        let k5 = c5.union_same_vertices(&c5.complement()).unwrap();
        assert_eq!(k5, catalog::complete(5).unwrap());

        assert!(g1
            .union_same_vertices(&Graph::empty(4).unwrap())
            .is_err());
    }

    #[test]
    fn gnp_extremes() {
        let rng = RngConfig::new(5, 0);
        let empty = Graph::random_gnp(20, 0.0, &rng).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = Graph::random_gnp(20, 1.0, &rng).unwrap();
        assert_eq!(full.edge_count(), 190);
        assert!(Graph::random_gnp(5, 1.5, &rng).is_err());
    }

    #[test]
    fn gnp_edge_count_concentrates() {
        // m = C(1000,2) pairs, mean mp = 249750, sigma = sqrt(mp(1-p))
        let g = Graph::random_gnp(1000, 0.5, &RngConfig::new(271828, 0)).unwrap();
        let mean = 249_750.0_f64;
        let sigma = (mean * 0.5).sqrt();
        let e = g.edge_count() as f64;
        assert!(
            (e - mean).abs() < 5.0 * sigma,
            "edge count {e} implausibly far from {mean}"
        );
    }

    #[test]
    fn gnp_is_reproducible() {
        let rng = RngConfig::new(99, 3);
        let a = Graph::random_gnp(64, 0.3, &rng).unwrap();
        let b = Graph::random_gnp(64, 0.3, &rng).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_regular_degrees() {
        let g = Graph::random_regular(30, 4, &RngConfig::new(7, 0)).unwrap();
        for v in g.vertices() {
            assert_eq!(g.degree(v), 4);
        }
        assert!(Graph::random_regular(5, 3, &RngConfig::new(7, 0)).is_err());
    }

    #[test]
    fn degrees_match_row_popcounts() {
        let g = Graph::random_gnp(100, 0.3, &RngConfig::new(1, 1)).unwrap();
        let total: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
        for v in g.vertices() {
            assert!(!g.has_edge(v, v));
            for u in g.neighbors(v).iter() {
                assert!(g.has_edge(u, v));
            }
        }
    }
}
