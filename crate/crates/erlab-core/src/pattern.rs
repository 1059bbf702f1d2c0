//! Decision and counting procedures for forbidden substructures: subgraph
//! containment, maximum clique, small-graph colourability, short even
//! cycles in incidence structures, and the rooted K4-subdivision test.

use crate::bipartite::BipartiteIncidence;
use crate::bitset::VertexSet;
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric;
use crate::rng::RngConfig;
use rand::Rng;
use std::collections::HashMap;

/// A forbidden graph `F` together with its order `s = v(F)` and minimum
/// degree, with the vertex set identified with `0..s`.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    min_degree: usize,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Pattern> {
        if graph.n() < 2 {
            return Err(Error::domain(format!(
                "a forbidden pattern needs at least 2 vertices, got {}",
                graph.n()
            )));
        }
        let min_degree = graph.min_degree();
        Ok(Pattern { graph, min_degree })
    }

    pub fn parse(spec: &str) -> Result<Pattern> {
        Pattern::new(catalog::parse_graph(spec)?)
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Order `s = v(F)`.
    #[inline]
    pub fn order(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn min_degree(&self) -> usize {
        self.min_degree
    }
}

// ---------------------------------------------------------------------------
// Subgraph containment
// ---------------------------------------------------------------------------

/// Processing order for the pattern vertices: start from the maximum-degree
/// vertex and grow connectivity-first (most embedded neighbours, then
/// higher degree, then lower index), which maximizes early pruning.
fn search_order(f: &Graph) -> Vec<usize> {
    let s = f.n();
    let mut order = Vec::with_capacity(s);
    let mut placed = vec![false; s];
    for _ in 0..s {
        let mut best: Option<(usize, usize, std::cmp::Reverse<usize>)> = None;
        let mut best_v = 0;
        for v in 0..s {
            if placed[v] {
                continue;
            }
            let embedded_neighbors = order.iter().filter(|&&u| f.has_edge(u, v)).count();
            let key = (embedded_neighbors, f.degree(v), std::cmp::Reverse(v));
            if best.is_none() || key > best.unwrap() {
                best = Some(key);
                best_v = v;
            }
        }
        placed[best_v] = true;
        order.push(best_v);
    }
    order
}

struct SubgraphSearch<'a> {
    g: &'a Graph,
    f: &'a Graph,
    order: Vec<usize>,
    induced: bool,
    /// When set, a witness must use this G-vertex somewhere.
    required: Option<usize>,
    assignment: Vec<usize>,
    used: VertexSet,
}

impl<'a> SubgraphSearch<'a> {
    fn new(g: &'a Graph, f: &'a Graph, induced: bool, required: Option<usize>) -> Self {
        SubgraphSearch {
            g,
            f,
            order: search_order(f),
            induced,
            required,
            assignment: vec![usize::MAX; f.n()],
            used: VertexSet::empty(g.n()),
        }
    }

    fn candidates(&self, fv: usize) -> VertexSet {
        let mut cand = VertexSet::full(self.g.n());
        cand.difference_assign(&self.used);
        for u in 0..self.f.n() {
            let gu = self.assignment[u];
            if gu == usize::MAX {
                continue;
            }
            if self.f.has_edge(u, fv) {
                cand.intersect_words(self.g.row(gu));
            } else if self.induced {
                cand.difference_assign(&self.g.neighbors(gu));
            }
        }
        cand
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self
                .required
                .is_none_or(|r| self.assignment.contains(&r));
        }
        let fv = self.order[depth];
        let deg_f = self.f.degree(fv);
        // If the required vertex is still unplaced and only this many slots
        // remain, it must go in one of them; no extra pruning needed beyond
        // the final check, but skipping candidates by degree keeps the tree
        // small.
        for gv in self.candidates(fv).iter() {
            if !self.induced && self.g.degree(gv) < deg_f {
                continue;
            }
            self.assignment[fv] = gv;
            self.used.insert(gv);
            if self.dfs(depth + 1) {
                return true;
            }
            self.used.remove(gv);
            self.assignment[fv] = usize::MAX;
        }
        false
    }
}

/// Find an injective, edge-preserving map `V(F) -> V(G)` (not necessarily
/// induced). Returns the deterministic first witness of the fixed search
/// order, as `witness[f_vertex] = g_vertex`.
pub fn contains_subgraph(g: &Graph, f: &Pattern) -> Option<Vec<usize>> {
    contains_subgraph_mode(g, f, false)
}

/// As [`contains_subgraph`], with non-edges also required to map to
/// non-edges when `induced` is set.
pub fn contains_subgraph_mode(g: &Graph, f: &Pattern, induced: bool) -> Option<Vec<usize>> {
    if f.order() > g.n() {
        return None;
    }
    let mut search = SubgraphSearch::new(g, f.graph(), induced, None);
    search.dfs(0).then(|| search.assignment.clone())
}

/// Containment restricted to witnesses that use `required`; backs the
/// incremental pruning in subset enumeration.
pub fn contains_subgraph_using(
    g: &Graph,
    f: &Pattern,
    required: usize,
    induced: bool,
) -> Option<Vec<usize>> {
    if f.order() > g.n() {
        return None;
    }
    let mut search = SubgraphSearch::new(g, f.graph(), induced, Some(required));
    search.dfs(0).then(|| search.assignment.clone())
}

/// `true` iff the set `t` spans a copy of `f` in `g` (mode-dependent).
pub fn set_spans_copy(g: &Graph, f: &Pattern, t: &VertexSet, induced: bool) -> bool {
    match g.induced(t) {
        Ok(sub) => contains_subgraph_mode(&sub, f, induced).is_some(),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// Maximum clique
// ---------------------------------------------------------------------------

/// Outcome of the clique branch-and-bound.
#[derive(Clone, Debug)]
pub struct CliqueOutcome {
    pub size: usize,
    pub witness: Vec<usize>,
    /// Whether the search ran to completion (false only on budget exhaustion).
    pub proved_optimal: bool,
    pub nodes_explored: u64,
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: usize,
    best_witness: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    stop_at: usize,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `cand`; returns (vertex, colour) in colour order.
    fn color_sort(&self, cand: &VertexSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.len());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                out.push((v, color));
                uncolored.remove(v);
                avail.remove(v);
                avail.difference_assign(&self.g.neighbors(v));
            }
        }
        out
    }

    fn expand(&mut self, cand: &VertexSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if cand.is_empty() {
            if self.current.len() > self.best {
                self.best = self.current.len();
                self.best_witness = self.current.clone();
            }
            return;
        }
        let ordered = self.color_sort(cand);
        let mut remaining = cand.clone();
        for &(v, color) in ordered.iter().rev() {
            if self.best >= self.stop_at {
                return;
            }
            if self.current.len() + color <= self.best {
                return; // every remaining vertex has colour <= this one
            }
            let mut next = remaining.clone();
            next.intersect_words(self.g.row(v));
            self.current.push(v);
            self.expand(&next);
            self.current.pop();
            if self.exhausted {
                return;
            }
            remaining.remove(v);
        }
    }
}

/// Exact maximum clique via branch-and-bound with a greedy-colouring bound.
/// `stop_at` allows decision use: the search returns as soon as a clique of
/// that size is found.
pub fn max_clique_budgeted(g: &Graph, budget: u64, stop_at: usize) -> CliqueOutcome {
    let mut search = CliqueSearch {
        g,
        best: 0,
        best_witness: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
        stop_at,
    };
    if g.n() > 0 {
        search.expand(&VertexSet::full(g.n()));
        if search.best == 0 {
            // n > 0 graphs always have a 1-clique; reachable only under
            // pathological budgets
            search.best = 1;
            search.best_witness = vec![0];
        }
    }
    search.best_witness.sort_unstable();
    CliqueOutcome {
        size: search.best,
        witness: search.best_witness,
        proved_optimal: !search.exhausted,
        nodes_explored: search.nodes,
    }
}

pub const DEFAULT_CLIQUE_BUDGET: u64 = 200_000_000;

/// Exact clique number with witness.
pub fn clique_number(g: &Graph) -> CliqueOutcome {
    max_clique_budgeted(g, DEFAULT_CLIQUE_BUDGET, usize::MAX)
}

/// Verdict of a `K_r`-freeness check.
#[derive(Clone, Debug)]
pub struct KrFreeness {
    pub free: bool,
    /// An `r`-clique when `free` is false.
    pub witness: Option<Vec<usize>>,
    pub proved: bool,
}

/// `true` iff `omega(G) < r`; on failure returns an `r`-clique certificate.
pub fn is_kr_free(g: &Graph, r: usize) -> Result<KrFreeness> {
    is_kr_free_budgeted(g, r, DEFAULT_CLIQUE_BUDGET)
}

pub fn is_kr_free_budgeted(g: &Graph, r: usize, budget: u64) -> Result<KrFreeness> {
    if r < 2 {
        return Err(Error::domain(format!("K_r-freeness needs r >= 2, got {r}")));
    }
    let outcome = max_clique_budgeted(g, budget, r);
    if outcome.size >= r {
        let mut witness = outcome.witness;
        witness.truncate(r);
        return Ok(KrFreeness {
            free: false,
            witness: Some(witness),
            proved: true,
        });
    }
    if !outcome.proved_optimal {
        return Err(Error::budget(format!(
            "clique search exhausted {budget} nodes without settling K_{r}-freeness"
        )));
    }
    Ok(KrFreeness {
        free: true,
        witness: None,
        proved: true,
    })
}

// ---------------------------------------------------------------------------
// Colourability
// ---------------------------------------------------------------------------

fn k_colorable_rec(
    g: &Graph,
    order: &[usize],
    colors: &mut [usize],
    depth: usize,
    k: usize,
    used_max: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::budget(format!(
            "colourability search exceeded {budget} nodes"
        )));
    }
    if depth == order.len() {
        return Ok(true);
    }
    let v = order[depth];
    // symmetry breaking: allow at most one fresh colour
    let limit = k.min(used_max + 1);
    for c in 1..=limit {
        let conflict = g.neighbors(v).iter().any(|u| colors[u] == c);
        if conflict {
            continue;
        }
        colors[v] = c;
        if k_colorable_rec(g, order, colors, depth + 1, k, used_max.max(c), nodes, budget)? {
            return Ok(true);
        }
        colors[v] = 0;
    }
    Ok(false)
}

/// Decision: is `g` properly `k`-colourable?
pub fn is_k_colorable(g: &Graph, k: usize, budget: u64) -> Result<bool> {
    if g.n() == 0 {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    // highest degree first
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![0usize; g.n()];
    let mut nodes = 0;
    k_colorable_rec(g, &order, &mut colors, 0, k, 0, &mut nodes, budget)
}

/// Exact chromatic number by descending decision searches from a greedy
/// upper bound, with the clique number as the floor.
pub fn chromatic_number(g: &Graph, budget: u64) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = max_clique_budgeted(g, budget, usize::MAX);
    if !lower.proved_optimal {
        return Err(Error::budget("clique bound within chromatic search"));
    }
    let mut k = lower.size;
    loop {
        if is_k_colorable(g, k, budget)? {
            return Ok(k);
        }
        k += 1;
    }
}

/// Verdict of [`every_small_subgraph_colorable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorableVerdict {
    /// Every `s`-subset was checked.
    PassExhaustive,
    /// Sampled mode found no counterexample among `sampled` subsets.
    NoCounterexampleFound { sampled: u64 },
    /// A concrete `s`-set whose induced subgraph is not `colors`-colourable.
    Counterexample { vertices: Vec<usize> },
}

/// Does every `s`-vertex subgraph of `g` admit a proper colouring with
/// `colors` colours? Exhaustive when `C(n, s) <= budget` (and `s <= 12`,
/// the exact-chromatic contract), otherwise samples `budget` subsets using
/// `rng`.
pub fn every_small_subgraph_colorable(
    g: &Graph,
    s: usize,
    colors: usize,
    budget: u64,
    rng: &RngConfig,
) -> Result<ColorableVerdict> {
    if s > g.n() {
        return Err(Error::domain(format!(
            "subset size {s} exceeds graph order {}",
            g.n()
        )));
    }
    if s > 12 {
        return Err(Error::budget(format!(
            "exact colourability is contracted only up to 12 vertices, got s = {s}"
        )));
    }
    let check = |t: &VertexSet| -> Result<bool> {
        let sub = g.induced(t)?;
        is_k_colorable(&sub, colors, 10_000_000)
    };
    if numeric::binomial(g.n() as u64, s as u64) <= budget as u128 {
        let mut verdict = ColorableVerdict::PassExhaustive;
        for_each_subset(g.n(), s, |t| {
            if !check(t)? {
                verdict = ColorableVerdict::Counterexample {
                    vertices: t.to_vec(),
                };
                return Ok(false);
            }
            Ok(true)
        })?;
        Ok(verdict)
    } else {
        let mut r = rng.rng();
        for _ in 0..budget {
            let t = random_subset(g.n(), s, &mut r);
            if !check(&t)? {
                return Ok(ColorableVerdict::Counterexample {
                    vertices: t.to_vec(),
                });
            }
        }
        Ok(ColorableVerdict::NoCounterexampleFound { sampled: budget })
    }
}

/// Visit all `k`-subsets of `0..n` in lexicographic order; the callback
/// returns `Ok(false)` to stop early.
pub fn for_each_subset<F>(n: usize, k: usize, mut f: F) -> Result<()>
where
    F: FnMut(&VertexSet) -> Result<bool>,
{
    if k > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let set = VertexSet::from_iter(n, idx.iter().copied());
        if !f(&set)? {
            return Ok(());
        }
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Uniform random `k`-subset of `0..n` (partial Fisher-Yates).
pub fn random_subset<R: Rng>(n: usize, k: usize, rng: &mut R) -> VertexSet {
    debug_assert!(k <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    VertexSet::from_iter(n, pool[..k].iter().copied())
}

// ---------------------------------------------------------------------------
// Short even cycles in incidence structures
// ---------------------------------------------------------------------------

/// A 4-cycle witness `(x1, x2, y1, y2)` with both x's incident to both y's.
pub fn find_c4(k: &BipartiteIncidence) -> Option<(usize, usize, usize, usize)> {
    // register each Y-pair per X-vertex; a repeat is a C4
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();
    for x in 0..k.nx() {
        let row = k.neighbors_of_x(x);
        for i in 0..row.len() {
            for j in (i + 1)..row.len() {
                let key = (row[i], row[j]);
                if let Some(&x0) = seen.get(&key) {
                    return Some((x0, x, key.0 as usize, key.1 as usize));
                }
                seen.insert(key, x);
            }
        }
    }
    None
}

pub fn bipartite_has_c4(k: &BipartiteIncidence) -> bool {
    find_c4(k).is_some()
}

/// A 6-cycle witness `(x1, y1, x2, y2, x3, y3)` in cyclic order.
pub fn find_c6(k: &BipartiteIncidence) -> Option<[usize; 6]> {
    let nx = k.nx();
    // pair graph on X: lists of common Y-neighbours per adjacent X-pair
    let mut common: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
    let adj_y = k.adjacency_y();
    for (y, xs) in adj_y.iter().enumerate() {
        for i in 0..xs.len() {
            for j in (i + 1)..xs.len() {
                common
                    .entry((xs[i] as usize, xs[j] as usize))
                    .or_default()
                    .push(y as u32);
            }
        }
    }
    let mut pair_adj = vec![VertexSet::empty(nx); nx];
    for &(a, b) in common.keys() {
        pair_adj[a].insert(b);
        pair_adj[b].insert(a);
    }
    // triangle in the pair graph with three distinct connecting Y's
    for a in 0..nx {
        for b in pair_adj[a].iter().filter(|&b| b > a) {
            let mut cs = pair_adj[a].intersection(&pair_adj[b]);
            cs = VertexSet::from_iter(nx, cs.iter().filter(|&c| c > b));
            for c in cs.iter() {
                let ab = &common[&(a, b)];
                let bc = &common[&(b, c)];
                let ac = &common[&(a, c)];
                for &y1 in ab {
                    for &y2 in bc {
                        if y2 == y1 {
                            continue;
                        }
                        for &y3 in ac {
                            if y3 != y1 && y3 != y2 {
                                return Some([
                                    a, y1 as usize, b, y2 as usize, c, y3 as usize,
                                ]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn bipartite_has_c6(k: &BipartiteIncidence) -> bool {
    find_c6(k).is_some()
}

// ---------------------------------------------------------------------------
// Rooted K4-subdivision
// ---------------------------------------------------------------------------

/// Does `k` contain a 1-subdivision of `K4` with the four branch vertices
/// on the X side? That needs four X-vertices and six distinct Y-vertices,
/// each incident to a distinct pair of the four.
///
/// The search runs over the "pair graph" on X (edges = X-pairs with a
/// common Y-neighbour, carrying their witness lists); a rooted subdivision
/// is a `K4` there together with a system of distinct representatives for
/// the six witness lists. C4-freeness of typical hosts makes those lists
/// singletons, which keeps this tight.
pub fn has_rooted_k4_subdivision(k: &BipartiteIncidence) -> Result<bool> {
    if k.nx() > 600 {
        return Err(Error::budget(format!(
            "rooted-subdivision search is limited to |X| <= 600, got {}",
            k.nx()
        )));
    }
    let nx = k.nx();
    let mut common: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
    for (y, xs) in k.adjacency_y().iter().enumerate() {
        for i in 0..xs.len() {
            for j in (i + 1)..xs.len() {
                common
                    .entry((xs[i] as usize, xs[j] as usize))
                    .or_default()
                    .push(y as u32);
            }
        }
    }
    let mut pair_adj = vec![VertexSet::empty(nx); nx];
    for &(a, b) in common.keys() {
        pair_adj[a].insert(b);
        pair_adj[b].insert(a);
    }

    let has_sdr = |quad: [usize; 4]| -> bool {
        let mut lists: Vec<&[u32]> = Vec::with_capacity(6);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let (a, b) = (quad[i].min(quad[j]), quad[i].max(quad[j]));
                lists.push(&common[&(a, b)]);
            }
        }
        // cheapest lists first, then backtrack
        lists.sort_by_key(|l| l.len());
        fn assign(lists: &[&[u32]], used: &mut Vec<u32>) -> bool {
            let Some((first, rest)) = lists.split_first() else {
                return true;
            };
            for &y in *first {
                if !used.contains(&y) {
                    used.push(y);
                    if assign(rest, used) {
                        return true;
                    }
                    used.pop();
                }
            }
            false
        }
        assign(&lists, &mut Vec::new())
    };

    for a in 0..nx {
        for b in pair_adj[a].iter().filter(|&b| b > a) {
            let cab = pair_adj[a].intersection(&pair_adj[b]);
            for c in cab.iter().filter(|&c| c > b) {
                let mut cabc = cab.intersection(&pair_adj[c]);
                cabc = VertexSet::from_iter(nx, cabc.iter().filter(|&d| d > c));
                for d in cabc.iter() {
                    if has_sdr([a, b, c, d]) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}
