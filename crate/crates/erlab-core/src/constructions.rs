//! Upper-bound constructions: random blow-ups of a forbidden pattern on
//! C4-free hosts, unions with scheduled random graphs, the
//! square-and-substitute recursion for clique-free graphs with small
//! K_{t,t}-free sets, its exponent-recursion arithmetic, and a greedy
//! generator for {C4, C6}-free bipartite hosts.

use crate::bipartite::BipartiteIncidence;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{self, PosInterval};
use crate::pattern::{self, ColorableVerdict, Pattern};
use crate::rng::RngConfig;
use crate::solvers;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Per-Y-vertex assignment of host neighbourhoods to pattern parts:
/// `parts[y]` lists `(x, part)` for every `x` adjacent to `y`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlowupPlan {
    pub pattern_order: usize,
    pub parts: Vec<Vec<(u32, u32)>>,
}

/// Blow up `f` inside every Y-neighbourhood: each `x` adjacent to `y` is
/// assigned a uniform part in `[s]`, and two X-vertices sharing a `y` are
/// joined iff their parts are adjacent in `f`.
fn random_blowup(k: &BipartiteIncidence, f: &Pattern, rng: &RngConfig) -> Result<(Graph, BlowupPlan)> {
    let s = f.order();
    let mut g = Graph::empty(k.nx())?;
    let mut plan = BlowupPlan {
        pattern_order: s,
        parts: Vec::with_capacity(k.ny()),
    };
    let mut r = rng.rng();
    for xs in k.adjacency_y() {
        let assignment: Vec<(u32, u32)> = xs
            .iter()
            .map(|&x| (x, r.random_range(0..s as u32)))
            .collect();
        for (i, &(xi, pi)) in assignment.iter().enumerate() {
            for &(xj, pj) in &assignment[i + 1..] {
                if pi != pj && f.graph().has_edge(pi as usize, pj as usize) {
                    g.add_edge(xi as usize, xj as usize)?;
                }
            }
        }
        plan.parts.push(assignment);
    }
    Ok((g, plan))
}

/// The pattern blow-up on a C4-free host (so each edge of the result is
/// contributed by a unique Y-vertex). The host condition is checked and a
/// violation carries the 4-cycle witness.
pub fn blowup_on_host(
    k: &BipartiteIncidence,
    f: &Pattern,
    rng: &RngConfig,
) -> Result<(Graph, BlowupPlan)> {
    if let Some((x1, x2, y1, y2)) = pattern::find_c4(k) {
        return Err(Error::precondition(format!(
            "host contains a C4 on X = {{{x1}, {x2}}}, Y = {{{y1}, {y2}}}"
        )));
    }
    random_blowup(k, f, rng)
}

/// `G0` unioned with `G(n, p)` at the schedule `p = n^(-2/r) / log2(n)`.
/// Returns the graph and the realized fixed-point threshold.
pub fn union_with_random(g0: &Graph, r: u64, rng: &RngConfig) -> Result<(Graph, u128)> {
    let n = g0.n();
    if n < 3 {
        return Err(Error::domain(format!(
            "the schedule needs n >= 3 for a positive log, got {n}"
        )));
    }
    let threshold = numeric::gnp_schedule_threshold(n as u64, r)?;
    let random = Graph::random_gnp_threshold(n, threshold, rng)?;
    Ok((g0.union_same_vertices(&random)?, threshold))
}

// ---------------------------------------------------------------------------
// Square-and-substitute recursion
// ---------------------------------------------------------------------------

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}

/// Audit data for one [`recursive_kttfree`] build.
#[derive(Clone, Debug)]
pub struct KttFreeAudit {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    /// clique number of the final product and whether the search proved it
    pub omega: usize,
    pub omega_proved: bool,
    /// greedy (always) and exact (budget permitting) values of
    /// `alpha_{K_{t,t}}` on the final product
    pub alpha_ktt_greedy: usize,
    pub alpha_ktt_exact: Option<usize>,
    /// small-subgraph colourability verdict at `s_check` vertices with
    /// `2^k - 1` colours
    pub colorable: ColorableVerdict,
    /// exact check of the product bound
    /// `alpha_{K_{t,t}}(H . H) <= t * alpha(H) * alpha_{K_{t,t}}(H)`,
    /// when both sides were exactly computable
    pub product_bound_holds: Option<bool>,
    /// realized sampling threshold of the random layer
    pub random_threshold: u128,
}

pub struct KttFreeConstruction {
    pub graph: Graph,
    pub audit: KttFreeAudit,
}

/// Build the level-`k` graph: take a level-`i` graph `G0` (empty at the
/// bottom), union it with a scheduled random graph `G1`
/// (`r = 2^(floor(k/2) - i)`), and square the union lexicographically.
/// `n` must be a perfect square; deeper levels round down to squares and
/// pad with isolated vertices, which the audit reflects.
pub fn recursive_kttfree(
    k: usize,
    i: usize,
    t: usize,
    s_check: usize,
    n: usize,
    rng: &RngConfig,
) -> Result<KttFreeConstruction> {
    if k < 1 || i < 1 || 2 * i > k {
        return Err(Error::domain(format!(
            "need 1 <= i <= k/2, got k = {k}, i = {i}"
        )));
    }
    let m = isqrt(n);
    if m * m != n {
        return Err(Error::domain(format!("n = {n} is not a perfect square")));
    }
    if n < 9 {
        return Err(Error::domain(format!("n = {n} too small for the schedule")));
    }
    let g0 = if i == 1 {
        // a K_2-free graph is empty
        Graph::empty(m)?
    } else {
        let m_sub = {
            let r = isqrt(m);
            r * r
        };
        let inner = recursive_kttfree(i, (i / 2).max(1), t, s_check, m_sub, &rng.substream(1))?;
        // pad to m vertices with isolated vertices
        let mut padded = Graph::empty(m)?;
        for (u, v) in inner.graph.edges() {
            padded.add_edge(u, v)?;
        }
        padded
    };
    let r_exp = k / 2 - i;
    let r_schedule = 1u64 << r_exp;
    let (h, random_threshold) = union_with_random(&g0, r_schedule, &rng.substream(2))?;
    let graph = h.lexicographic_product(&h)?;

    let ktt = Pattern::new(crate::catalog::complete_bipartite(t, t)?)?;
    let omega = pattern::max_clique_budgeted(&graph, 20_000_000, usize::MAX);
    let alpha_greedy = solvers::alpha_f_greedy(&graph, &ktt, &rng.substream(3))?;
    let alpha_exact = solvers::alpha_f_exact_budgeted(&graph, &ktt, 200_000, 5_000_000)
        .ok()
        .map(|r| r.value);
    let colorable = pattern::every_small_subgraph_colorable(
        &graph,
        s_check.min(graph.n()),
        (1usize << k) - 1,
        200_000,
        &rng.substream(4),
    )?;
    // product bound, exactly when both factors are small enough
    let product_bound_holds = if h.n() <= 40 {
        let alpha_h = solvers::independence_number_budgeted(&h, 20_000_000).ok();
        let ktt_h = solvers::alpha_f_exact_budgeted(&h, &ktt, 200_000, 5_000_000).ok();
        match (alpha_h, ktt_h, alpha_exact) {
            (Some(a), Some(kh), Some(kg)) => Some(kg <= t * a.value * kh.value),
            _ => None,
        }
    } else {
        None
    };
    Ok(KttFreeConstruction {
        graph,
        audit: KttFreeAudit {
            n,
            k,
            i,
            omega: omega.size,
            omega_proved: omega.proved_optimal,
            alpha_ktt_greedy: alpha_greedy.value,
            alpha_ktt_exact: alpha_exact,
            colorable,
            product_bound_holds,
            random_threshold,
        },
    })
}

// ---------------------------------------------------------------------------
// Exponent recursion arithmetic
// ---------------------------------------------------------------------------

/// Certified arithmetic for the exponent recursion
/// `rho(2^k) <= rho(2^i)/2 + 2^(i - floor(k/2))` with `i = floor(k/2 - sqrt(k))`
/// against the closed form `(C/k) (1 - k^(-1/3))`. All verdict fields are
/// certified by outward-rounded interval arithmetic; `bound` carries the
/// trivial value 1 whenever `k <= C/5`.
#[derive(Clone, Debug)]
pub struct RhoBoundReport {
    pub k: u64,
    pub c: u64,
    pub trivial_branch: bool,
    /// recursion index when the non-trivial branch ran
    pub i: Option<u64>,
    /// upper bound on the exponent from the recursion, as an enclosure
    pub bound: (f64, f64),
    /// the closed form `(C/k)(1 - k^(-1/3))`, as an enclosure
    pub closed_form: (f64, f64),
    /// certified: recursion bound <= closed form
    pub recursion_le_closed_form: bool,
    /// certified: `(C/k)((k/2)^(-1/3) - k^(-1/3)) >= C/(4 k^(4/3))`
    pub step_floor_certified: bool,
    /// certified verdict of the full step inequality
    /// `3C/k^(3/2) + 2^(1-sqrt(k)) <= (C/k)((k/2)^(-1/3) - k^(-1/3))`:
    /// `Some(true)` / `Some(false)` when decidable, `None` if unresolved
    pub step_inequality: Option<bool>,
}

/// `floor(k/2 - sqrt(k))` by exact integer arithmetic.
fn recursion_index(k: u64) -> Option<u64> {
    // largest j with 2j <= k and (k - 2j)^2 >= 4k
    (0..=k / 2)
        .rev()
        .find(|&j| {
            let d = k - 2 * j;
            d * d >= 4 * k
        })
}

fn rho_bound_interval(k: u64, c: u64) -> Result<(PosInterval, bool, Option<u64>)> {
    if k == 1 {
        // K_2-free graphs are empty: every vertex set is K_{t,t}-free
        return Ok((PosInterval::from_u64(1), true, None));
    }
    if 5 * k <= c {
        return Ok((PosInterval::from_u64(1), true, None));
    }
    let i = recursion_index(k).filter(|&i| i >= 1).ok_or_else(|| {
        Error::domain(format!("recursion index collapsed below 1 at k = {k}"))
    })?;
    let (inner, _, _) = rho_bound_interval(i, c)?;
    let half = inner.mul(&PosInterval::from_ratio(1, 2));
    let shift = k / 2 - i;
    let tail = PosInterval::from_ratio(1, 1u64 << shift.min(63));
    Ok((half.add(&tail), false, Some(i)))
}

fn closed_form_interval(k: u64, c: u64) -> Result<PosInterval> {
    let one = PosInterval::from_u64(1);
    let k_cbrt_recip = PosInterval::from_u64(k).nth_root(3).recip();
    let factor = one.sub(&k_cbrt_recip)?;
    Ok(PosInterval::from_ratio(c, k).mul(&factor))
}

/// Evaluate the recursion upper bound and verify it against the closed
/// form; `k >= 2` required.
pub fn rho_recursion_bound(k: u64, c: u64) -> Result<RhoBoundReport> {
    if k < 2 {
        return Err(Error::domain(format!("the recursion needs k >= 2, got {k}")));
    }
    if c == 0 {
        return Err(Error::domain("the constant C must be positive"));
    }
    let (bound, trivial_branch, i) = rho_bound_interval(k, c)?;
    let closed = closed_form_interval(k, c)?;
    let recursion_le_closed_form = bound.certainly_le(&closed);

    // step arithmetic: difference of inverse cube roots, its floor, and the
    // full inequality with the 3C/k^(3/2) + 2^(1-sqrt(k)) left side
    let k_int = PosInterval::from_u64(k);
    let cbrt_recip_k = k_int.nth_root(3).recip();
    let cbrt_recip_half_k = PosInterval::from_ratio(k, 2).nth_root(3).recip();
    let diff = cbrt_recip_half_k.sub(&cbrt_recip_k)?;
    let rhs = PosInterval::from_ratio(c, k).mul(&diff);
    let quarter_floor = PosInterval::from_ratio(c, 4 * k).mul(&cbrt_recip_k);
    let step_floor_certified = rhs.certainly_ge(&quarter_floor);

    let sqrt_k = k_int.nth_root(2);
    let k_three_halves = k_int.mul(&sqrt_k);
    let lhs = PosInterval::from_u64(3 * c)
        .div(&k_three_halves)
        .add(&PosInterval::from_u64(2).mul(&sqrt_k.exp2_neg()));
    let step_inequality = if lhs.certainly_le(&rhs) {
        Some(true)
    } else if lhs.certainly_ge(&rhs) {
        Some(false)
    } else {
        None
    };

    Ok(RhoBoundReport {
        k,
        c,
        trivial_branch,
        i,
        bound: (bound.lo_f64(), bound.hi_f64()),
        closed_form: (closed.lo_f64(), closed.hi_f64()),
        recursion_le_closed_form,
        step_floor_certified,
        step_inequality,
    })
}

// ---------------------------------------------------------------------------
// Triangle-free blow-up
// ---------------------------------------------------------------------------

/// Report accompanying [`trianglefree_blowup`].
#[derive(Clone, Debug)]
pub struct TriangleFreeBlowupReport {
    /// size of the largest F-free induced set found (exact when marked)
    pub largest_ffree_found: usize,
    pub largest_ffree_exact: bool,
    /// empirical threshold: every examined set of this size spanned a copy
    pub every_set_of_size_contains_f: usize,
}

/// Blow the triangle-free pattern up inside every B-neighbourhood of a
/// {C4, C6}-free bipartite host. With such hosts every triangle of the
/// result would need three distinct contributing B-vertices forming a
/// 6-cycle, so the output is triangle-free; callers assert that
/// exhaustively per seed.
pub fn trianglefree_blowup(
    host: &BipartiteIncidence,
    f: &Pattern,
    rng: &RngConfig,
) -> Result<(Graph, BlowupPlan, TriangleFreeBlowupReport)> {
    let k3 = Pattern::new(crate::catalog::complete(3)?)?;
    if pattern::contains_subgraph(f.graph(), &k3).is_some() {
        return Err(Error::precondition(
            "the blow-up pattern must be triangle-free".to_string(),
        ));
    }
    if let Some((x1, x2, y1, y2)) = pattern::find_c4(host) {
        return Err(Error::precondition(format!(
            "host contains a C4 on X = {{{x1}, {x2}}}, Y = {{{y1}, {y2}}}"
        )));
    }
    if let Some(w) = pattern::find_c6(host) {
        return Err(Error::precondition(format!(
            "host contains a C6 through X = {{{}, {}, {}}}, Y = {{{}, {}, {}}}",
            w[0], w[2], w[4], w[1], w[3], w[5]
        )));
    }
    let (g, plan) = random_blowup(host, f, rng)?;
    let report = match solvers::alpha_f_exact_budgeted(&g, f, 200_000, 5_000_000) {
        Ok(exact) => TriangleFreeBlowupReport {
            largest_ffree_found: exact.value,
            largest_ffree_exact: true,
            every_set_of_size_contains_f: exact.value + 1,
        },
        Err(_) => {
            let greedy = solvers::alpha_f_greedy(&g, f, &rng.substream(9))?;
            TriangleFreeBlowupReport {
                largest_ffree_found: greedy.value,
                largest_ffree_exact: false,
                every_set_of_size_contains_f: greedy.value + 1,
            }
        }
    };
    Ok((g, plan, report))
}

// ---------------------------------------------------------------------------
// {C4, C6}-free host generation
// ---------------------------------------------------------------------------

/// Greedy randomized edge insertion that rejects any edge closing a 4- or
/// 6-cycle, i.e. any edge between vertices at bipartite distance 3 or 5.
/// Stops at `target_edges` or at saturation; may deliver fewer edges.
pub fn generate_c4c6free(
    na: usize,
    nb: usize,
    target_edges: usize,
    rng: &RngConfig,
) -> Result<BipartiteIncidence> {
    let mut adj_a: Vec<Vec<u32>> = vec![Vec::new(); na];
    let mut adj_b: Vec<Vec<u32>> = vec![Vec::new(); nb];
    let mut edges = 0usize;
    let mut r = rng.rng();

    // adding (a, b) closes a C4 or C6 iff b already sits at bipartite
    // distance 3 or 5 from a
    let insertion_ok = |adj_a: &[Vec<u32>], adj_b: &[Vec<u32>], a: usize, b: usize| -> bool {
        let mut seen_a = vec![false; na];
        let mut seen_b = vec![false; nb];
        seen_a[a] = true;
        let mut frontier_a = vec![a];
        for round in 0..3usize {
            // A -> B step: odd distance 2 * round + 1
            let mut frontier_b = Vec::new();
            for &u in &frontier_a {
                for &w in &adj_a[u] {
                    let w = w as usize;
                    if !seen_b[w] {
                        seen_b[w] = true;
                        frontier_b.push(w);
                    }
                }
            }
            // distance 1 is impossible for a non-edge; 3 and 5 are the cycles
            if round > 0 && frontier_b.contains(&b) {
                return false;
            }
            if round == 2 {
                break;
            }
            // B -> A step: even distance
            let mut next_a = Vec::new();
            for &u in &frontier_b {
                for &w in &adj_b[u] {
                    let w = w as usize;
                    if !seen_a[w] {
                        seen_a[w] = true;
                        next_a.push(w);
                    }
                }
            }
            frontier_a = next_a;
        }
        true
    };

    loop {
        let mut candidates: Vec<(usize, usize)> = (0..na)
            .flat_map(|a| (0..nb).map(move |b| (a, b)))
            .filter(|&(a, b)| !adj_a[a].contains(&(b as u32)))
            .collect();
        if candidates.is_empty() || edges >= target_edges {
            break;
        }
        for i in (1..candidates.len()).rev() {
            let j = r.random_range(0..=i);
            candidates.swap(i, j);
        }
        let mut inserted_this_round = false;
        for (a, b) in candidates {
            if edges >= target_edges {
                break;
            }
            if adj_a[a].contains(&(b as u32)) {
                continue;
            }
            if insertion_ok(&adj_a, &adj_b, a, b) {
                adj_a[a].push(b as u32);
                adj_b[b].push(a as u32);
                edges += 1;
                inserted_this_round = true;
            }
        }
        if !inserted_this_round {
            break; // saturated
        }
    }
    let mut k = BipartiteIncidence::new(na, nb);
    for (a, row) in adj_a.iter().enumerate() {
        let mut sorted = row.clone();
        sorted.sort_unstable();
        for &b in &sorted {
            k.add_edge(a, b as usize)?;
        }
    }
    Ok(k)
}

// ---------------------------------------------------------------------------
// Random-graph property audit
// ---------------------------------------------------------------------------

/// Report-only audit of the scheduled random graph: fraction of sampled
/// `s`-subsets containing a vertex of internal degree at most `r - 1`
/// (the property that makes small subgraphs r-colourable).
#[derive(Clone, Debug)]
pub struct RandomGraphAudit {
    pub n: usize,
    pub r: u64,
    pub s: usize,
    pub samples: u64,
    pub with_low_degree_vertex: u64,
    pub alpha_greedy: usize,
}

pub fn audit_scheduled_random_graph(
    n: usize,
    r: u64,
    s: usize,
    samples: u64,
    rng: &RngConfig,
) -> Result<RandomGraphAudit> {
    let threshold = numeric::gnp_schedule_threshold(n as u64, r)?;
    let g = Graph::random_gnp_threshold(n, threshold, &rng.substream(0))?;
    let mut rs = rng.substream(1).rng();
    let mut hits = 0;
    for _ in 0..samples {
        let subset = pattern::random_subset(n, s.min(n), &mut rs);
        let sub = g.induced(&subset)?;
        if (0..sub.n()).any(|v| sub.degree(v) + 1 <= r as usize) {
            hits += 1;
        }
    }
    Ok(RandomGraphAudit {
        n,
        r,
        s,
        samples,
        with_low_degree_vertex: hits,
        alpha_greedy: solvers::independence_greedy(&g).value,
    })
}
