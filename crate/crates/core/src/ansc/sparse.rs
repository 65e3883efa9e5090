use crate::cycle_est::{cycle_estimation_dijkstra, CycleEstimates};
use crate::dist::Finite;
use crate::error::{invalid, Result};
use crate::graph::{degree_uniformize, Graph};
use crate::seed::split_seed;
use crate::spanners::{fault_tolerant_spanner, spanner_composite_2eps, spanner_k_kminus1, spanner_near_additive};
use crate::sssp::{multi_source_dijkstra, sample_hitting, sample_vertices, TruncationPolicy, Universe};

use super::{ansc_2approx, ansc_k_approx, AnscAlgorithm, AnscParams, AnscResult};

/// Stretch slack used by the inner weighted approximation runs.
const INNER_EPS_SIX_ONE: f64 = 0.25;
const INNER_EPS_SMALL: f64 = 0.5;
const INNER_EPS_K2: f64 = 0.1;

fn absorb(acc: &mut CycleEstimates, r: &AnscResult) -> Result<()> {
    acc.absorb(&CycleEstimates { est: r.estimates.clone(), runs: r.runs, scanned: r.scanned })
}

fn finish(acc: CycleEstimates, algorithm: AnscAlgorithm, params: AnscParams) -> AnscResult {
    let mut r = AnscResult::new(acc.est, algorithm, params);
    r.scanned = acc.scanned;
    r.runs = acc.runs;
    r
}

fn check_input(g: &Graph) -> Result<()> {
    g.require_undirected()?;
    g.require_unweighted()
}

/// Edges with at least one endpoint of degree at most `√n`.
fn low_degree_part(g: &Graph) -> Graph {
    let t = (g.n().max(1) as f64).sqrt();
    g.restrict_edges(|id| {
        let e = g.edge(id).unwrap();
        g.degree(e.u) as f64 <= t || g.degree(e.v) as f64 <= t
    })
}

/// Full estimation runs from each `s` in `sources`, each confined to the edges
/// accepted by `allowed(s, edge)`.
fn confined_runs(
    g: &Graph,
    sources: &[usize],
    allowed: &dyn Fn(usize, usize) -> bool,
    acc: &mut CycleEstimates,
) -> Result<()> {
    for &s in sources {
        let f = |id: usize| allowed(s, id);
        acc.absorb(&cycle_estimation_dijkstra(g, s, &TruncationPolicy::none().edges_where(&f))?)?;
    }
    Ok(())
}

/// `(6, 1)`-approximation for unweighted graphs.
///
/// Cycles avoiding edges between two high-degree vertices are found by a
/// 3-approximation on the low-degree part. Otherwise the cycle has a
/// high-degree vertex, so a `√n`-hitting sample `S` lands next to it; from each
/// `s ∈ S` a full run searches a fault-tolerant 5-spanner together with every
/// edge at a vertex whose nearest sample vertex is `s`.
pub fn ansc_6_1(g: &Graph, seed: u64) -> Result<AnscResult> {
    check_input(g)?;
    let n = g.n();
    let x = (n.max(1) as f64).sqrt();
    let params = AnscParams { x: Some(x), ..AnscParams::seeded(seed) };
    let mut acc = CycleEstimates::infinite(n);
    if g.m() == 0 {
        return Ok(finish(acc, AnscAlgorithm::SixOne, params));
    }
    let low = low_degree_part(g);
    absorb(&mut acc, &ansc_k_approx(&low, 3, INNER_EPS_SIX_ONE, split_seed(seed, 1))?)?;

    let p = fault_tolerant_spanner(g, 3, split_seed(seed, 2))?;
    let in_p = p.mask(g);
    let s = sample_vertices(g, x, split_seed(seed, 3));
    let owner = multi_source_dijkstra(g, &s.ids).nearest;
    let allowed = |s: usize, id: usize| {
        let e = g.edge(id).unwrap();
        in_p[id] || owner[e.u] == Some(s) || owner[e.v] == Some(s)
    };
    confined_runs(g, &s.ids, &allowed, &mut acc)?;
    Ok(finish(acc, AnscAlgorithm::SixOne, params))
}

/// Additive constant of the `(2 + ε)` approximation, from the surpluses of
/// its two inner spanners.
pub fn two_eps_beta(eps: f64, beta_low: f64, beta_composite: f64) -> f64 {
    let alpha = 2.0 + eps;
    let eps_half = eps / 2.0;
    let a = 28.0 * (alpha + 2.0).ceil() * (alpha + beta_low.max(beta_composite) + 1.0) + 8.0;
    let b = 2.0 * (2.0 + eps_half).ceil() * beta_low;
    let c = (5.0 + eps).ceil() * beta_composite + 2.0;
    a.max(b).max(c)
}

/// `(2 + ε, β)`-approximation for unweighted graphs, `β` reported in the
/// result parameters.
///
/// Three estimates are merged: a 2-approximation on a near-additive spanner
/// of the low-degree part; full runs from a `√n`-hitting sample `S` in a
/// `(2 + ε)`-type spanner enlarged by the edges at `S`; and the small-cycle
/// estimate with four levels.
pub fn ansc_2eps(g: &Graph, eps: f64, seed: u64) -> Result<AnscResult> {
    check_input(g)?;
    if !(eps > 0.0 && eps <= 2.0) {
        return Err(invalid(format!("epsilon must lie in (0, 2], got {eps}")));
    }
    let n = g.n();
    let x = (n.max(1) as f64).sqrt();
    let mut params = AnscParams { eps: Some(eps), x: Some(x), ..AnscParams::seeded(seed) };
    let mut acc = CycleEstimates::infinite(n);
    if g.m() == 0 {
        params.beta = Some(two_eps_beta(eps, 0.0, 0.0));
        return Ok(finish(acc, AnscAlgorithm::TwoEps, params));
    }

    let low = low_degree_part(g);
    let p = spanner_near_additive(&low, eps / 2.0, split_seed(seed, 1))?;
    absorb(&mut acc, &ansc_2approx(&p.graph(&low), split_seed(seed, 2))?)?;

    let h = spanner_composite_2eps(g, eps, split_seed(seed, 3))?;
    let in_h = h.mask(g);
    let s = sample_vertices(g, x, split_seed(seed, 4));
    let mut in_s = vec![false; n];
    for &v in &s.ids {
        in_s[v] = true;
    }
    let allowed = |_: usize, id: usize| {
        let e = g.edge(id).unwrap();
        in_h[id] || in_s[e.u] || in_s[e.v]
    };
    confined_runs(g, &s.ids, &allowed, &mut acc)?;

    absorb(&mut acc, &ansc_small_cycles(g, 4, split_seed(seed, 5))?)?;
    params.beta = Some(two_eps_beta(eps, p.beta, h.beta));
    Ok(finish(acc, AnscAlgorithm::TwoEps, params))
}

/// Estimate within `(2k − 1)·2^{k−2}·SC(v) + 2^{k−1}` for unweighted graphs.
///
/// `P` is a single-fault-tolerant `(2k − 1)`-spanner plus every edge at a
/// vertex of degree at most `n^{1/k}`. Spanner edges are spread over
/// degree-capped trees, the rest stay on their endpoints. Level `i` samples
/// `S_i` hitting every `n^{i/k}`-nearest set (`S_0` is every vertex); each
/// `s ∈ S_i` runs over the spanner plus all non-spanner edges at vertices it
/// is nearest to, stopping just short of the next level's nearest sample.
pub fn ansc_small_cycles(g: &Graph, k: usize, seed: u64) -> Result<AnscResult> {
    check_input(g)?;
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let n = g.n();
    let params = AnscParams { k: Some(k), ..AnscParams::seeded(seed) };
    let mut acc = CycleEstimates::infinite(n);
    if g.m() == 0 {
        return Ok(finish(acc, AnscAlgorithm::SmallCycles, params));
    }
    let nf = n as f64;
    let kf = k as f64;
    let low = nf.powf(1.0 / kf);
    let ft = fault_tolerant_spanner(g, k, split_seed(seed, 1))?;
    let mut in_p = ft.mask(g);
    for (id, e) in g.edges() {
        if g.degree(e.u) as f64 <= low || g.degree(e.v) as f64 <= low {
            in_p[id] = true;
        }
    }
    let pg = g.restrict_edges(|id| in_p[id]);
    let spanner_pass = if k == 2 {
        ansc_2approx(&pg, split_seed(seed, 2))?
    } else {
        ansc_k_approx(&pg, k, INNER_EPS_SMALL, split_seed(seed, 2))?
    };
    absorb(&mut acc, &spanner_pass)?;

    let cap = (low.ceil() as usize).max(2);
    let (h, map) = degree_uniformize(g, &|id| !in_p[id], cap)?;
    let base = g.edge_id_bound();
    let in_ph = |id: usize| id >= base || in_p[id];
    let originals: Vec<usize> = (0..n).collect();
    let mut levels: Vec<Vec<usize>> = vec![originals.clone()];
    for i in 1..k {
        let x = nf.powf(i as f64 / kf);
        levels.push(sample_hitting(Universe::Vertices, &originals, x, n, split_seed(seed, 10 + i as u64)).ids);
    }
    let trees: Vec<_> = levels.iter().map(|s| multi_source_dijkstra(&h, s)).collect();
    let mut hacc = CycleEstimates::infinite(h.n());
    for i in 0..k {
        let owner = &trees[i].nearest;
        for &s in &levels[i] {
            let radius = if i + 1 < k {
                match trees[i + 1].dist[s] {
                    Finite(0) => continue,
                    Finite(d) => Some(d - 1),
                    _ => None,
                }
            } else {
                None
            };
            let allowed = |id: usize| {
                in_ph(id) || {
                    let e = h.edge(id).unwrap();
                    owner[e.u] == Some(s) || owner[e.v] == Some(s)
                }
            };
            let mut policy = TruncationPolicy::none().edges_where(&allowed);
            policy.radius = radius;
            hacc.absorb(&cycle_estimation_dijkstra(&h, s, &policy)?)?;
        }
    }
    let pulled = CycleEstimates { est: map.pull_back_min(&hacc.est, crate::dist::Inf), runs: hacc.runs, scanned: hacc.scanned };
    acc.absorb(&pulled)?;
    Ok(finish(acc, AnscAlgorithm::SmallCycles, params))
}

/// Estimate within `k²·SC(v) + k³·2^{k+1}` for unweighted graphs: a
/// `k`-approximation on a `(k, k − 1)`-spanner merged with the small-cycle
/// estimate.
pub fn ansc_k2(g: &Graph, k: usize, seed: u64) -> Result<AnscResult> {
    check_input(g)?;
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let n = g.n();
    let params = AnscParams { k: Some(k), ..AnscParams::seeded(seed) };
    let mut acc = CycleEstimates::infinite(n);
    if g.m() == 0 {
        return Ok(finish(acc, AnscAlgorithm::KSquared, params));
    }
    let sp = spanner_k_kminus1(g, k, split_seed(seed, 1))?;
    let hg = sp.graph(g);
    let on_spanner = if k == 2 {
        ansc_2approx(&hg, split_seed(seed, 2))?
    } else {
        ansc_k_approx(&hg, k, INNER_EPS_K2, split_seed(seed, 2))?
    };
    absorb(&mut acc, &on_spanner)?;
    absorb(&mut acc, &ansc_small_cycles(g, k, split_seed(seed, 3))?)?;
    Ok(finish(acc, AnscAlgorithm::KSquared, params))
}
