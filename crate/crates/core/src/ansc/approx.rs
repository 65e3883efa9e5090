use crate::cycle_est::{cycle_estimation_dijkstra, cycle_estimation_run, CycleEstimates};
use crate::dist::Inf;
use crate::error::{invalid, Result};
use crate::graph::{degree_uniformize, Graph};
use crate::seed::split_seed;
use crate::sssp::{endpoints, multi_source_dijkstra, sample_edges, sample_vertices, TruncationPolicy};

use super::{AnscAlgorithm, AnscParams, AnscResult};

fn finish(acc: CycleEstimates, algorithm: AnscAlgorithm, params: AnscParams) -> AnscResult {
    let mut r = AnscResult::new(acc.est, algorithm, params);
    r.scanned = acc.scanned;
    r.runs = acc.runs;
    r
}

fn full_runs(g: &Graph, sources: &[usize], acc: &mut CycleEstimates) -> Result<()> {
    for &s in sources {
        acc.absorb(&cycle_estimation_dijkstra(g, s, &TruncationPolicy::none())?)?;
    }
    Ok(())
}

/// 2-approximation. Full estimation runs start at the endpoints of an edge
/// sample hitting every vertex's `m/√n` nearest edges; every vertex also runs
/// one truncated after `2m/√n` scanned arcs, enough to see its `m/√n` nearest
/// edges from both sides.
pub fn ansc_2approx(g: &Graph, seed: u64) -> Result<AnscResult> {
    g.require_undirected()?;
    let (n, m) = (g.n(), g.m());
    let x = (m as f64 / (n.max(1) as f64).sqrt()).max(1.0);
    let params = AnscParams { x: Some(x), ..AnscParams::seeded(seed) };
    let mut acc = CycleEstimates::infinite(n);
    if m > 0 {
        let sample = sample_edges(g, x, split_seed(seed, 1));
        full_runs(g, &endpoints(g, &sample.ids), &mut acc)?;
        let budget = TruncationPolicy::edge_budget(2 * x.ceil() as u64);
        for v in 0..n {
            acc.absorb(&cycle_estimation_dijkstra(g, v, &budget)?)?;
        }
    }
    Ok(finish(acc, AnscAlgorithm::TwoApprox, params))
}

/// `(k(1 + ε)³)`-approximation for weighted graphs, `k ≥ 3`.
///
/// Degrees are first capped near the average degree. A vertex sample `Q`
/// hitting every `n^{(k-1)/k}`-nearest set runs full estimations. Then for
/// each distance scale `D = (1 + ε)^i` every vertex starts "on" unless it lies
/// within `(k-1)D/2` of `Q`, and each remaining input vertex grows balls of
/// `n^{j/k}` on-vertices (`j = 1, 2, …`) until the radius jumps past
/// `(j+1)D/2`; the radius-`jD/2` ball is then switched off.
pub fn ansc_k_approx(g: &Graph, k: usize, eps: f64, seed: u64) -> Result<AnscResult> {
    g.require_undirected()?;
    if k < 3 {
        return Err(invalid("k must be at least 3"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid(format!("epsilon must be positive, got {eps}")));
    }
    let (n, m) = (g.n(), g.m());
    let mut params = AnscParams { k: Some(k), eps: Some(eps), ..AnscParams::seeded(seed) };
    if m == 0 {
        return Ok(AnscResult::new(vec![Inf; n], AnscAlgorithm::KApprox, params));
    }
    let cap = (2 * m).div_ceil(n).max(3);
    let (h, map) = degree_uniformize(g, &|_| false, cap)?;
    let nh = h.n();
    let kf = k as f64;
    let x = (nh as f64).powf((kf - 1.0) / kf);
    params.x = Some(x);
    let mut acc = CycleEstimates::infinite(nh);
    let q = sample_vertices(&h, x, split_seed(seed, 1));
    full_runs(&h, &q.ids, &mut acc)?;
    let near = multi_source_dijkstra(&h, &q.ids);
    let budget = |j: usize| -> usize {
        if j >= k {
            nh
        } else {
            ((nh as f64).powf(j as f64 / kf).ceil() as usize).clamp(1, nh)
        }
    };
    let top = ((n as f64 * g.max_weight() as f64).ln() / (1.0 + eps).ln()).ceil() as i32 + 2;
    let mut off = vec![false; nh];
    for i in 0..=top.max(0) {
        let d = (1.0 + eps).powi(i);
        for (v, o) in off.iter_mut().enumerate() {
            *o = near.dist[v].finite().is_some_and(|dv| dv as f64 <= (kf - 1.0) * d / 2.0);
        }
        for v in 0..n {
            if off[v] {
                continue;
            }
            let mut switch_off: Vec<usize> = Vec::new();
            {
                let on = |x: usize| !off[x];
                let mut grow = |j: usize| -> Result<(f64, Vec<(usize, u64)>)> {
                    let b = budget(j);
                    let policy = TruncationPolicy::vertex_budget(b).with_filter(&on);
                    let run = cycle_estimation_run(&h, v, &policy, false)?;
                    acc.absorb(&run.estimates)?;
                    let order = &run.tree.order;
                    let r = if order.len() < b { f64::INFINITY } else { run.tree.dist[*order.last().unwrap()].unwrap() as f64 };
                    Ok((r, order.iter().map(|&y| (y, run.tree.dist[y].unwrap())).collect()))
                };
                let (r1, _) = grow(1)?;
                if r1 >= d / 2.0 {
                    switch_off.push(v);
                } else {
                    let mut j = 1;
                    loop {
                        let (r_next, settled) = grow(j + 1)?;
                        if r_next >= (j + 1) as f64 * d / 2.0 {
                            let lim = j as f64 * d / 2.0;
                            switch_off.extend(settled.into_iter().filter(|&(_, dy)| dy as f64 <= lim).map(|(y, _)| y));
                            break;
                        }
                        j += 1;
                    }
                }
            }
            for y in switch_off {
                off[y] = true;
            }
            debug_assert!(off[v]);
        }
    }
    let est = map.pull_back_min(&acc.est, Inf);
    let acc = CycleEstimates { est, runs: acc.runs, scanned: acc.scanned };
    Ok(finish(acc, AnscAlgorithm::KApprox, params))
}

/// Number of edges with at least one endpoint within distance `r` of `v`
/// (unit weights).
pub fn edge_ball_size(g: &Graph, v: usize, r: u64) -> usize {
    let t = crate::sssp::dijkstra(g, v, &TruncationPolicy::radius(r));
    g.edges()
        .filter(|(_, e)| t.is_settled(e.u) || t.is_settled(e.v))
        .count()
}

/// For each vertex, the largest radius whose edge ball holds at most `x`
/// edges, and the vertices sorted by that radius, largest first.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeBallIndex {
    /// `-1` when even radius 0 is too large; `i64::MAX` when the whole
    /// component fits.
    pub radius: Vec<i64>,
    pub order: Vec<usize>,
    /// Position of each vertex in `order`.
    pub rank: Vec<usize>,
    pub x: f64,
}

impl EdgeBallIndex {
    pub fn build(g: &Graph, x: f64) -> Result<EdgeBallIndex> {
        g.require_undirected()?;
        g.require_unweighted()?;
        let n = g.n();
        let mut level = vec![u32::MAX; n];
        let mut stamp = vec![usize::MAX; n];
        let radius: Vec<i64> = (0..n).map(|v| Self::radius_of(g, v, x, &mut level, &mut stamp)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(radius[v]), v));
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Ok(EdgeBallIndex { radius, order, rank, x })
    }

    fn radius_of(g: &Graph, v: usize, x: f64, level: &mut [u32], stamp: &mut [usize]) -> i64 {
        let seen = |y: usize, stamp: &[usize]| stamp[y] == v;
        stamp[v] = v;
        level[v] = 0;
        let mut frontier = vec![v];
        let mut count = 0usize;
        let mut r: u32 = 0;
        loop {
            for &u in &frontier {
                for a in g.arcs(u) {
                    let y = a.to;
                    let counted_before = seen(y, stamp) && (level[y] < r || (level[y] == r && y < u));
                    if !counted_before {
                        count += 1;
                        if count as f64 > x {
                            return r as i64 - 1;
                        }
                    }
                }
            }
            let mut next = Vec::new();
            for &u in &frontier {
                for a in g.arcs(u) {
                    if !seen(a.to, stamp) {
                        stamp[a.to] = v;
                        level[a.to] = r + 1;
                        next.push(a.to);
                    }
                }
            }
            if next.is_empty() {
                return i64::MAX;
            }
            frontier = next;
            r += 1;
        }
    }
}

/// Additive approximation `SC(v) + 2⌈SC(v) / (2(k-1))⌉` for unweighted
/// graphs. With `x = (m²/n)^{1/k}`, full runs start at the endpoints of an
/// edge sample hitting every `x`-nearest edge set; then vertices are taken in
/// order of decreasing edge-ball radius and each runs a search capped at
/// `x^{k-1}` edges inside the subgraph induced by itself and its predecessors.
pub fn ansc_near_opt(g: &Graph, k: usize, seed: u64) -> Result<AnscResult> {
    g.require_undirected()?;
    g.require_unweighted()?;
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let (n, m) = (g.n(), g.m());
    let x = ((m as f64).powi(2) / n.max(1) as f64).powf(1.0 / k as f64).max(1.0);
    let params = AnscParams { k: Some(k), x: Some(x), ..AnscParams::seeded(seed) };
    let mut acc = CycleEstimates::infinite(n);
    if m > 0 {
        let sample = sample_edges(g, x, split_seed(seed, 1));
        full_runs(g, &endpoints(g, &sample.ids), &mut acc)?;
        let index = EdgeBallIndex::build(g, x)?;
        let arcs = 2 * x.powi(k as i32 - 1).ceil() as u64;
        for (i, &u) in index.order.iter().enumerate() {
            let prefix = |y: usize| index.rank[y] <= i;
            let policy = TruncationPolicy::edge_budget(arcs).within(&prefix);
            acc.absorb(&cycle_estimation_dijkstra(g, u, &policy)?)?;
        }
    }
    Ok(finish(acc, AnscAlgorithm::NearOpt, params))
}
