//! Exact and heuristic solvers for independence-type quantities: `alpha(G)`,
//! `alpha_F(G)` (largest F-free induced subgraph), counts of F-free sets,
//! and exact `f_{F,H}(n)` at enumeration scale.

pub mod canonical;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric;
use crate::pattern::{self, Pattern};
use crate::rng::RngConfig;
use rand::Rng;
use std::collections::HashSet;

/// Certified outcome of a solver run. The witness is always re-verified
/// against the relevant freeness predicate before being returned.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub witness: VertexSet,
    pub value: usize,
    /// Whether `value` is proved optimal (exact searches that completed).
    pub optimal: bool,
    pub nodes_explored: u64,
    pub seed: Option<RngConfig>,
}

pub const DEFAULT_COPY_BUDGET: u64 = 1_000_000;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
pub const ALPHA_F_EXACT_MAX_N: usize = 100;

// ---------------------------------------------------------------------------
// Copy hypergraph
// ---------------------------------------------------------------------------

/// The s-uniform hypergraph whose hyperedges are the vertex sets of copies
/// of `F` in `G` (deduplicated as sets). `induced` selects between
/// subgraph-copies (solver mode) and induced copies.
#[derive(Clone, Debug)]
pub struct CopyHypergraph {
    pub n: usize,
    pub edge_size: usize,
    pub edges: Vec<u128>,
}

impl CopyHypergraph {
    pub fn build(g: &Graph, f: &Pattern, induced: bool, budget: u64) -> Result<CopyHypergraph> {
        if g.n() > 128 {
            return Err(Error::budget(format!(
                "copy hypergraph is limited to 128 vertices, got {}",
                g.n()
            )));
        }
        let mut sets: HashSet<u128> = HashSet::new();
        enumerate_copy_sets(g, f, induced, budget, &mut sets)?;
        let mut edges: Vec<u128> = sets.into_iter().collect();
        edges.sort_unstable();
        Ok(CopyHypergraph {
            n: g.n(),
            edge_size: f.order(),
            edges,
        })
    }
}

/// DFS over all embeddings of `f` into `g`, recording each image vertex set.
fn enumerate_copy_sets(
    g: &Graph,
    f: &Pattern,
    induced: bool,
    budget: u64,
    out: &mut HashSet<u128>,
) -> Result<()> {
    let fg = f.graph();
    let s = fg.n();
    if s > g.n() {
        return Ok(());
    }
    // embed pattern vertices in a connectivity-first order
    let order = {
        let mut order = Vec::with_capacity(s);
        let mut placed = vec![false; s];
        for _ in 0..s {
            let best = (0..s)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let emb = order.iter().filter(|&&u| fg.has_edge(u, v)).count();
                    (emb, fg.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[best] = true;
            order.push(best);
        }
        order
    };
    let mut assignment = vec![usize::MAX; s];
    let mut used = VertexSet::empty(g.n());
    fn rec(
        g: &Graph,
        fg: &Graph,
        induced: bool,
        order: &[usize],
        depth: usize,
        assignment: &mut Vec<usize>,
        used: &mut VertexSet,
        budget: u64,
        out: &mut HashSet<u128>,
    ) -> Result<()> {
        if depth == order.len() {
            let mut mask = 0u128;
            for &gv in assignment.iter() {
                mask |= 1u128 << gv;
            }
            out.insert(mask);
            if out.len() as u64 > budget {
                return Err(Error::budget(format!(
                    "more than {budget} copies of the pattern"
                )));
            }
            return Ok(());
        }
        let fv = order[depth];
        let mut cand = VertexSet::full(g.n());
        cand.difference_assign(used);
        for u in 0..fg.n() {
            if assignment[u] == usize::MAX {
                continue;
            }
            if fg.has_edge(u, fv) {
                cand.intersect_words(g.row(assignment[u]));
            } else if induced {
                cand.difference_assign(&g.neighbors(assignment[u]));
            }
        }
        for gv in cand.iter() {
            if !induced && g.degree(gv) < fg.degree(fv) {
                continue;
            }
            assignment[fv] = gv;
            used.insert(gv);
            rec(g, fg, induced, order, depth + 1, assignment, used, budget, out)?;
            used.remove(gv);
            assignment[fv] = usize::MAX;
        }
        Ok(())
    }
    rec(
        g,
        fg,
        induced,
        &order,
        0,
        &mut assignment,
        &mut used,
        budget,
        out,
    )
}

// ---------------------------------------------------------------------------
// Hypergraph maximum independent set
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum VState {
    Undecided,
    Kept,
    Excluded,
}

struct HypergraphMis<'a> {
    h: &'a CopyHypergraph,
    incident: Vec<Vec<u32>>,
    state: Vec<VState>,
    /// per-edge counts of kept / excluded endpoints
    kept_in_edge: Vec<u32>,
    excluded_in_edge: Vec<u32>,
    kept_total: usize,
    best: usize,
    best_witness: u128,
    nodes: u64,
    budget: u64,
}

impl<'a> HypergraphMis<'a> {
    fn new(h: &'a CopyHypergraph, budget: u64) -> Self {
        let mut incident = vec![Vec::new(); h.n];
        for (i, &e) in h.edges.iter().enumerate() {
            let mut m = e;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                incident[v].push(i as u32);
            }
        }
        HypergraphMis {
            h,
            incident,
            state: vec![VState::Undecided; h.n],
            kept_in_edge: vec![0; h.edges.len()],
            excluded_in_edge: vec![0; h.edges.len()],
            kept_total: 0,
            best: 0,
            best_witness: 0,
            nodes: 0,
            budget,
        }
    }

    #[inline]
    fn edge_active(&self, e: usize) -> bool {
        self.excluded_in_edge[e] == 0
    }

    /// Keeping `v` would complete some active edge.
    fn blocked(&self, v: usize) -> bool {
        self.incident[v].iter().any(|&e| {
            let e = e as usize;
            self.edge_active(e) && self.kept_in_edge[e] as usize == self.h.edge_size - 1
        })
    }

    fn set(&mut self, v: usize, s: VState) {
        debug_assert!(self.state[v] == VState::Undecided);
        self.state[v] = s;
        for &e in &self.incident[v] {
            match s {
                VState::Kept => self.kept_in_edge[e as usize] += 1,
                VState::Excluded => self.excluded_in_edge[e as usize] += 1,
                VState::Undecided => unreachable!(),
            }
        }
        if s == VState::Kept {
            self.kept_total += 1;
        }
    }

    fn unset(&mut self, v: usize, s: VState) {
        debug_assert!(self.state[v] == s);
        self.state[v] = VState::Undecided;
        for &e in &self.incident[v] {
            match s {
                VState::Kept => self.kept_in_edge[e as usize] -= 1,
                VState::Excluded => self.excluded_in_edge[e as usize] -= 1,
                VState::Undecided => unreachable!(),
            }
        }
        if s == VState::Kept {
            self.kept_total -= 1;
        }
    }

    fn record_if_better(&mut self, extra: &[usize]) {
        let size = self.kept_total + extra.len();
        if size > self.best {
            self.best = size;
            let mut w = 0u128;
            for v in 0..self.h.n {
                if self.state[v] == VState::Kept {
                    w |= 1 << v;
                }
            }
            for &v in extra {
                w |= 1 << v;
            }
            self.best_witness = w;
        }
    }

    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::budget(format!(
                "independent-set search exceeded {} nodes",
                self.budget
            )));
        }
        // available = undecided and not blocked
        let available: Vec<usize> = (0..self.h.n)
            .filter(|&v| self.state[v] == VState::Undecided && !self.blocked(v))
            .collect();
        if self.kept_total + available.len() <= self.best {
            return Ok(());
        }
        // coverage = active edges through v; zero-coverage vertices are free
        let coverage: Vec<(usize, usize)> = available
            .iter()
            .map(|&v| {
                let c = self.incident[v]
                    .iter()
                    .filter(|&&e| self.edge_active(e as usize))
                    .count();
                (v, c)
            })
            .collect();
        if coverage.iter().all(|&(_, c)| c == 0) {
            // keeping all of them cannot complete any active edge...
            // ...unless an edge lies entirely inside `available`; with zero
            // coverage no active edge touches them at all, so keep them all.
            self.record_if_better(&available);
            return Ok(());
        }
        // branch on the vertex covering the most active edges
        let (v, _) = coverage
            .iter()
            .copied()
            .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))
            .unwrap();
        // exclude-first mirrors the hitting-set view
        self.set(v, VState::Excluded);
        self.dfs()?;
        self.unset(v, VState::Excluded);

        self.set(v, VState::Kept);
        self.dfs()?;
        self.unset(v, VState::Kept);
        Ok(())
    }

    fn solve(mut self) -> Result<(usize, u128, u64)> {
        // greedy warm start: keep vertices in ascending static coverage
        let mut order: Vec<usize> = (0..self.h.n).collect();
        order.sort_by_key(|&v| (self.incident[v].len(), v));
        let mut greedy_kept: Vec<usize> = Vec::new();
        for &v in &order {
            if !self.blocked(v) {
                self.set(v, VState::Kept);
                greedy_kept.push(v);
            }
        }
        self.record_if_better(&[]);
        for &v in greedy_kept.iter().rev() {
            self.unset(v, VState::Kept);
        }
        self.dfs()?;
        Ok((self.best, self.best_witness, self.nodes))
    }
}

fn mask_to_set(n: usize, mask: u128) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

// ---------------------------------------------------------------------------
// Independence number
// ---------------------------------------------------------------------------

/// Exact maximum independent set (clique search on the complement).
pub fn independence_number(g: &Graph) -> Result<SolveReport> {
    independence_number_budgeted(g, pattern::DEFAULT_CLIQUE_BUDGET)
}

pub fn independence_number_budgeted(g: &Graph, budget: u64) -> Result<SolveReport> {
    let comp = g.complement();
    let outcome = pattern::max_clique_budgeted(&comp, budget, usize::MAX);
    if !outcome.proved_optimal {
        return Err(Error::budget(format!(
            "independence search exhausted {budget} nodes"
        )));
    }
    let witness = VertexSet::from_iter(g.n(), outcome.witness.iter().copied());
    debug_assert!(is_independent(g, &witness));
    Ok(SolveReport {
        value: outcome.size,
        witness,
        optimal: true,
        nodes_explored: outcome.nodes_explored,
        seed: None,
    })
}

/// Greedy independent set: repeatedly take a minimum-degree vertex of the
/// remaining graph and delete its closed neighbourhood. The result has size
/// at least `n / (average degree + 1)`.
pub fn independence_greedy(g: &Graph) -> SolveReport {
    let mut remaining = VertexSet::full(g.n());
    let mut witness = VertexSet::empty(g.n());
    let mut nodes = 0;
    while let Some(_) = remaining.first() {
        nodes += 1;
        let v = remaining
            .iter()
            .min_by_key(|&v| (g.neighbors(v).intersection(&remaining).len(), v))
            .unwrap();
        witness.insert(v);
        remaining.remove(v);
        remaining.difference_assign(&g.neighbors(v));
    }
    debug_assert!(is_independent(g, &witness));
    SolveReport {
        value: witness.len(),
        witness,
        optimal: false,
        nodes_explored: nodes,
        seed: None,
    }
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    let verts = s.to_vec();
    verts
        .iter()
        .enumerate()
        .all(|(i, &u)| verts[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

// ---------------------------------------------------------------------------
// alpha_F
// ---------------------------------------------------------------------------

/// `true` iff `G[S]` contains no copy of `F` (mode per `induced`).
pub fn is_f_free(g: &Graph, f: &Pattern, s: &VertexSet, induced: bool) -> bool {
    !pattern::set_spans_copy(g, f, s, induced)
}

/// Exact `alpha_F`: maximum vertices spanning no (not necessarily induced)
/// copy of `F`, via maximum independent set in the copy hypergraph.
pub fn alpha_f_exact(g: &Graph, f: &Pattern) -> Result<SolveReport> {
    alpha_f_exact_budgeted(g, f, DEFAULT_COPY_BUDGET, DEFAULT_NODE_BUDGET)
}

pub fn alpha_f_exact_budgeted(
    g: &Graph,
    f: &Pattern,
    copy_budget: u64,
    node_budget: u64,
) -> Result<SolveReport> {
    if g.n() > ALPHA_F_EXACT_MAX_N {
        return Err(Error::budget(format!(
            "exact alpha_F is limited to {ALPHA_F_EXACT_MAX_N} vertices, got {}",
            g.n()
        )));
    }
    // K2 pattern: plain independence, solved on the complement
    if f.order() == 2 && f.graph().edge_count() == 1 {
        return independence_number_budgeted(g, node_budget);
    }
    let h = CopyHypergraph::build(g, f, false, copy_budget)?;
    if h.edges.is_empty() {
        return Ok(SolveReport {
            witness: VertexSet::full(g.n()),
            value: g.n(),
            optimal: true,
            nodes_explored: 0,
            seed: None,
        });
    }
    let (value, mask, nodes) = HypergraphMis::new(&h, node_budget).solve()?;
    let witness = mask_to_set(g.n(), mask);
    if !is_f_free(g, f, &witness, false) {
        return Err(Error::Construction(
            "alpha_F witness failed re-verification".to_string(),
        ));
    }
    Ok(SolveReport {
        value,
        witness,
        optimal: true,
        nodes_explored: nodes,
        seed: None,
    })
}

/// Randomized sparsify-and-delete: sample vertices with probability `p'`,
/// then delete one vertex per surviving copy until F-free. Runs a ladder of
/// retention probabilities and returns the best verified result.
pub fn alpha_f_greedy(g: &Graph, f: &Pattern, rng: &RngConfig) -> Result<SolveReport> {
    let n = g.n();
    let mut best: Option<SolveReport> = None;
    let mut nodes = 0u64;
    for (i, keep_tenths) in (2..=10).rev().enumerate() {
        let mut r = rng.substream(i as u64).rng();
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            if keep_tenths == 10 || r.random_range(0..10u32) < keep_tenths {
                s.insert(v);
            }
        }
        // delete one vertex per surviving copy
        loop {
            nodes += 1;
            let sub = g.induced(&s)?;
            let verts = s.to_vec();
            match pattern::contains_subgraph(&sub, f) {
                None => break,
                Some(w) => {
                    let victim = verts[*w.iter().max().unwrap()];
                    s.remove(victim);
                }
            }
        }
        debug_assert!(is_f_free(g, f, &s, false));
        if best.as_ref().is_none_or(|b| s.len() > b.value) {
            best = Some(SolveReport {
                value: s.len(),
                witness: s,
                optimal: false,
                nodes_explored: nodes,
                seed: Some(*rng),
            });
        }
    }
    let report = best.expect("ladder is nonempty");
    if !is_f_free(g, f, &report.witness, false) {
        return Err(Error::Construction(
            "greedy alpha_F witness failed re-verification".to_string(),
        ));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    Greedy,
}

pub fn alpha_f(g: &Graph, f: &Pattern, mode: SolveMode, rng: &RngConfig) -> Result<SolveReport> {
    match mode {
        SolveMode::Exact => alpha_f_exact(g, f),
        SolveMode::Greedy => alpha_f_greedy(g, f, rng),
    }
}

// ---------------------------------------------------------------------------
// Counting F-free sets
// ---------------------------------------------------------------------------

/// Exact number of `t`-subsets `T` with `G[T]` F-free, by lexicographic
/// subset DFS with copy pruning (a set containing a copy never extends to a
/// counted one; freeness is hereditary in both modes).
pub fn count_ffree_sets(
    g: &Graph,
    f: &Pattern,
    t: usize,
    induced: bool,
    budget: u128,
) -> Result<u128> {
    let n = g.n();
    if numeric::binomial(n as u64, t as u64) > budget {
        return Err(Error::budget(format!(
            "C({n}, {t}) exceeds the enumeration budget {budget}"
        )));
    }
    fn rec(
        g: &Graph,
        f: &Pattern,
        induced: bool,
        t: usize,
        start: usize,
        chosen: &mut VertexSet,
        chosen_len: usize,
        count: &mut u128,
    ) -> Result<()> {
        if chosen_len == t {
            *count += 1;
            return Ok(());
        }
        let n = g.n();
        for v in start..n {
            if n - v < t - chosen_len {
                break;
            }
            chosen.insert(v);
            // only copies through v can be new
            let sub = g.induced(chosen)?;
            let v_local = chosen.iter().position(|u| u == v).unwrap();
            let creates_copy =
                pattern::contains_subgraph_using(&sub, f, v_local, induced).is_some();
            if !creates_copy {
                rec(g, f, induced, t, v + 1, chosen, chosen_len + 1, count)?;
            }
            chosen.remove(v);
        }
        Ok(())
    }
    let mut count = 0u128;
    let mut chosen = VertexSet::empty(n);
    rec(g, f, induced, t, 0, &mut chosen, 0, &mut count)?;
    Ok(count)
}

// ---------------------------------------------------------------------------
// Exact f_{F,H}(n)
// ---------------------------------------------------------------------------

/// Result of the exhaustive `f_{F,H}(n)` computation.
#[derive(Clone, Debug)]
pub struct FExact {
    pub value: usize,
    /// An H-free graph attaining the minimum of `alpha_F`.
    pub witness: Graph,
    /// Set when `n < v(F)`, where freeness is vacuous and the value is `n`.
    pub vacuous: bool,
    /// Number of H-free graphs on `n` vertices examined (up to isomorphism
    /// when deduplication is on).
    pub graphs_considered: u64,
}

pub const F_EXACT_MAX_N: usize = 9;

/// `f_{F,H}(n)`: the minimum of `alpha_F(G)` over all H-free graphs `G` on
/// `n` vertices, by incremental augmentation with immediate H-pruning.
/// `dedup` enables canonical-form deduplication (the default); disabling it
/// enumerates labelled graphs instead, for oracle runs at tiny `n`.
pub fn f_exact(f: &Pattern, h: &Pattern, n: usize, dedup: bool) -> Result<FExact> {
    if n > F_EXACT_MAX_N {
        return Err(Error::budget(format!(
            "exact f is limited to n <= {F_EXACT_MAX_N}, got {n}"
        )));
    }
    if h.graph().edge_count() == 0 {
        return Err(Error::domain(
            "an edgeless forbidden graph H leaves no H-free graphs at this order".to_string(),
        ));
    }
    if !dedup && n > 6 {
        return Err(Error::budget(format!(
            "labelled (no-dedup) enumeration is limited to n <= 6, got {n}"
        )));
    }

    let hfree = |g: &Graph, added: usize| -> bool {
        pattern::contains_subgraph_using(g, h, added, false).is_none()
    };

    let graphs: Vec<Graph> = if dedup {
        canonical::enumerate_graphs(n, hfree)?
    } else {
        // labelled augmentation without isomorphism rejection
        let mut level = vec![Graph::empty(1.min(n))?];
        for size in 2..=n {
            let mut next = Vec::new();
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
                    if hfree(&child, size - 1) {
                        next.push(child);
                    }
                }
            }
            level = next;
        }
        level
    };

    let vacuous = n < f.order();
    let mut best: Option<(usize, Vec<u8>, Graph)> = None;
    for g in &graphs {
        let alpha = alpha_f_exact(g, f)?.value;
        let key = canonical::canonical_key(g)?;
        let better = match &best {
            None => true,
            Some((v, k, _)) => alpha < *v || (alpha == *v && key < *k),
        };
        if better {
            best = Some((alpha, key, g.clone()));
        }
    }
    let (value, _, witness) = best.ok_or_else(|| {
        Error::domain(format!("no H-free graphs on {n} vertices exist"))
    })?;
    Ok(FExact {
        value,
        witness,
        vacuous,
        graphs_considered: graphs.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pat(spec: &str) -> Pattern {
        Pattern::parse(spec).unwrap()
    }

    #[test]
    fn independence_small_graphs() {
        assert_eq!(independence_number(&catalog::cycle(5).unwrap()).unwrap().value, 2);
        assert_eq!(
            independence_number(&catalog::complete_bipartite(3, 3).unwrap())
                .unwrap()
                .value,
            3
        );
        assert_eq!(independence_number(&catalog::petersen()).unwrap().value, 4);
    }

    #[test]
    fn independence_greedy_meets_turan_bound() {
        for seed in 0..20u64 {
            let g = Graph::random_gnp(60, 0.2, &RngConfig::new(seed, 5)).unwrap();
            let rep = independence_greedy(&g);
            assert!(is_independent(&g, &rep.witness));
            // n / (avg degree + 1)
            let avg = g.average_degree();
            let bound = num_rational::Ratio::new(g.n() as u64, 1)
                / (avg + num_rational::Ratio::new(1, 1));
            assert!(
                num_rational::Ratio::new(rep.value as u64, 1) >= bound.floor(),
                "greedy {} below Turan bound {bound} at seed {seed}",
                rep.value
            );
        }
    }

    #[test]
    fn copy_hypergraph_counts() {
        // triangles of K4: 4 vertex sets
        let h = CopyHypergraph::build(&catalog::complete(4).unwrap(), &pat("K3"), false, 1000)
            .unwrap();
        assert_eq!(h.edges.len(), 4);
        // C4 spans of K4: every 4-set (one), since K4 contains C4
        let h = CopyHypergraph::build(&catalog::complete(4).unwrap(), &pat("C4"), false, 1000)
            .unwrap();
        assert_eq!(h.edges.len(), 1);
        // induced C4 copies in K4: none
        let h = CopyHypergraph::build(&catalog::complete(4).unwrap(), &pat("C4"), true, 1000)
            .unwrap();
        assert_eq!(h.edges.len(), 0);
    }

    #[test]
    fn alpha_f_known_values() {
        // alpha_{K3}(K_n) = 2
        for n in 3..7 {
            let rep = alpha_f_exact(&catalog::complete(n).unwrap(), &pat("K3")).unwrap();
            assert_eq!(rep.value, 2, "n = {n}");
        }
        // alpha_{C4}(K_{3,3}) = 4 (a K_{1,3} is C4-free)
        let rep = alpha_f_exact(&catalog::complete_bipartite(3, 3).unwrap(), &pat("C4")).unwrap();
        assert_eq!(rep.value, 4);
        // graph without the pattern: everything is kept
        let rep = alpha_f_exact(&catalog::cycle(5).unwrap(), &pat("K3")).unwrap();
        assert_eq!(rep.value, 5);
        assert!(rep.optimal);
    }

    /// 2^n brute-force oracle for alpha_F.
    fn alpha_f_oracle(g: &Graph, f: &Pattern, induced: bool) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let s = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            if s.len() > best && is_f_free(g, f, &s, induced) {
                best = s.len();
            }
        }
        best
    }

    #[test]
    fn alpha_f_matches_oracle_on_random_graphs() {
        let patterns = ["K2", "K3", "C4", "P3"];
        for seed in 0..30u64 {
            let n = 4 + (seed % 5) as usize;
            let g = Graph::random_gnp(n, 0.45, &RngConfig::new(seed, 9)).unwrap();
            for p in patterns {
                let f = pat(p);
                let exact = alpha_f_exact(&g, &f).unwrap().value;
                let oracle = alpha_f_oracle(&g, &f, false);
                assert_eq!(exact, oracle, "seed {seed}, F = {p}");
            }
        }
    }

    #[test]
    fn alpha_k2_equals_independence() {
        for seed in 0..20u64 {
            let g = Graph::random_gnp(8, 0.5, &RngConfig::new(seed, 4)).unwrap();
            assert_eq!(
                alpha_f_exact(&g, &pat("K2")).unwrap().value,
                independence_number(&g).unwrap().value
            );
        }
    }

    #[test]
    fn alpha_f_monotone_under_induced_subgraphs() {
        let f = pat("C4");
        for seed in 0..10u64 {
            let g = Graph::random_gnp(9, 0.4, &RngConfig::new(seed, 11)).unwrap();
            let whole = alpha_f_exact(&g, &f).unwrap().value;
            let mut r = RngConfig::new(seed, 12).rng();
            let s = pattern::random_subset(9, r.random_range(2..8usize), &mut r);
            let sub = g.induced(&s).unwrap();
            assert!(alpha_f_exact(&sub, &f).unwrap().value <= whole);
        }
    }

    #[test]
    fn alpha_f_full_iff_pattern_absent() {
        for seed in 0..20u64 {
            let g = Graph::random_gnp(8, 0.3, &RngConfig::new(seed, 13)).unwrap();
            let f = pat("C4");
            let rep = alpha_f_exact(&g, &f).unwrap();
            assert_eq!(
                rep.value == 8,
                pattern::contains_subgraph(&g, &f).is_none(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn greedy_alpha_f_always_verifies() {
        let f = pat("C4");
        for seed in 0..25u64 {
            let g = Graph::random_gnp(30, 0.3, &RngConfig::new(seed, 14)).unwrap();
            let rep = alpha_f_greedy(&g, &f, &RngConfig::new(seed, 15)).unwrap();
            assert!(is_f_free(&g, &f, &rep.witness, false), "seed {seed}");
            assert!(!rep.optimal);
            assert_eq!(rep.value, rep.witness.len());
        }
    }

    #[test]
    fn count_ffree_matches_independent_set_count_for_k2() {
        // independent t-set counter as the oracle
        fn independent_count(g: &Graph, t: usize) -> u128 {
            let n = g.n();
            let mut count = 0;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != t {
                    continue;
                }
                let s = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
                if is_independent(g, &s) {
                    count += 1;
                }
            }
            count
        }
        for seed in 0..10u64 {
            let g = Graph::random_gnp(9, 0.4, &RngConfig::new(seed, 16)).unwrap();
            for t in 1..5 {
                assert_eq!(
                    count_ffree_sets(&g, &pat("K2"), t, false, 1 << 30).unwrap(),
                    independent_count(&g, t),
                    "seed {seed}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn count_ffree_edge_cases() {
        // every 3-set of K4 is a triangle
        assert_eq!(
            count_ffree_sets(&catalog::complete(4).unwrap(), &pat("K3"), 3, false, 1 << 20)
                .unwrap(),
            0
        );
        // sets smaller than the pattern are always free: C(6,2) = 15
        assert_eq!(
            count_ffree_sets(&catalog::cycle(6).unwrap(), &pat("P3"), 2, false, 1 << 20).unwrap(),
            15
        );
        // budget guard
        assert!(count_ffree_sets(
            &Graph::empty(100).unwrap(),
            &pat("K2"),
            50,
            false,
            1000
        )
        .is_err());
    }

    #[test]
    fn f_exact_small_values() {
        let f = pat("K2");
        let h = pat("K3");
        let out = f_exact(&f, &h, 5, true).unwrap();
        assert_eq!(out.value, 2);
        assert!(!out.vacuous);
        // the witness is C5: triangle-free, 5 vertices, alpha = 2
        assert_eq!(
            canonical::canonical_key(&out.witness).unwrap(),
            canonical::canonical_key(&catalog::cycle(5).unwrap()).unwrap()
        );
    }

    #[test]
    fn f_exact_dedup_matches_labelled_oracle() {
        for (f, h) in [("K2", "K3"), ("P3", "K3"), ("K2", "C4")] {
            let f = pat(f);
            let h = pat(h);
            for n in 2..=5 {
                let with = f_exact(&f, &h, n, true).unwrap();
                let without = f_exact(&f, &h, n, false).unwrap();
                assert_eq!(with.value, without.value, "F={f:?} H={h:?} n={n}");
            }
        }
    }

    #[test]
    fn f_exact_vacuous_regime() {
        let f = pat("C5");
        let h = pat("K3");
        let out = f_exact(&f, &h, 3, true).unwrap();
        assert!(out.vacuous);
        assert_eq!(out.value, 3);
    }

    #[test]
    fn f_exact_full_when_h_inside_f() {
        // H = K3 inside F = K4: every H-free graph is F-free
        let out = f_exact(&pat("K4"), &pat("K3"), 5, true).unwrap();
        assert_eq!(out.value, 5);
    }

    #[test]
    fn f_exact_monotone_in_clique_strength() {
        // f_{F, K_{r+1}}(n) >= f_{F, K_r}(n)
        let f = pat("K2");
        for n in 3..=6 {
            let f3 = f_exact(&f, &pat("K3"), n, true).unwrap().value;
            let f4 = f_exact(&f, &pat("K4"), n, true).unwrap().value;
            assert!(f4 >= f3, "n = {n}: {f4} < {f3}");
        }
    }
}
