//! Spanner constructions. Each builder returns the kept edge ids of its input
//! graph together with the stretch contract `d_P(u, v) ≤ α·d_G(u, v) + β` it
//! claims and the edge-count bound it promises.

use rand::Rng;

use crate::dist::{Dist, Finite};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::seed;
use crate::sssp::{dijkstra, sample_vertices, TruncationPolicy};
use crate::tz::TzOracle;

/// Leading constant in every size bound below.
pub const SIZE_CONSTANT: f64 = 4.0;

/// Rounds of the fault-tolerance transform are `⌈FT_ROUNDS · ln n⌉`.
pub const FT_ROUNDS: f64 = 8.0;


#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpannerMethod {
    Identity,
    /// Randomized clustering with `k` phases.
    BaswanaSen,
    /// Union of level-cluster shortest-path trees with this many levels.
    Clusters(usize),
    /// Low-degree edges plus shortest-path trees from a dominating sample.
    AdditiveTwo,
    /// Near-additive spanner of a `(2, 1)`-spanner.
    Composite,
    /// Union over random vertex-induced subgraphs, plus bridges and repairs.
    FaultTolerant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spanner {
    /// Kept edge ids of the parent graph, increasing.
    pub edges: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
    /// 0, or 1 for the single-edge-fault contract.
    pub fault_tolerance: u8,
    pub edge_bound: f64,
    pub method: SpannerMethod,
    /// False when the output is larger than `edge_bound`.
    pub meets_size_bound: bool,
    /// Surplus of the inner near-additive stage, for composed contracts.
    pub inner_beta: Option<f64>,
}

impl Spanner {
    fn new(mut edges: Vec<usize>, alpha: f64, beta: f64, edge_bound: f64, method: SpannerMethod) -> Spanner {
        edges.sort_unstable();
        edges.dedup();
        let meets_size_bound = edges.len() as f64 <= edge_bound;
        Spanner { edges, alpha, beta, fault_tolerance: 0, edge_bound, method, meets_size_bound, inner_beta: None }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn graph(&self, parent: &Graph) -> Graph {
        parent.subgraph_from_ids(&self.edges)
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// Edge-id mask over the parent's id range.
    pub fn mask(&self, parent: &Graph) -> Vec<bool> {
        let mut m = vec![false; parent.edge_id_bound()];
        for &e in &self.edges {
            m[e] = true;
        }
        m
    }

    /// Whether `estimate` respects the contract for a pair at distance `exact`.
    pub fn admits(&self, exact: Dist, estimate: Dist) -> bool {
        match (exact, estimate) {
            (Finite(d), Finite(e)) => e as f64 <= self.alpha * d as f64 + self.beta + 1e-9,
            (Finite(_), _) => false,
            _ => true,
        }
    }
}

fn nf(g: &Graph) -> f64 {
    g.n().max(2) as f64
}

/// The graph itself, a `(1, 0)`-spanner.
pub fn identity_spanner(g: &Graph) -> Spanner {
    Spanner::new(g.edges().map(|(i, _)| i).collect(), 1.0, 0.0, g.m() as f64, SpannerMethod::Identity)
}

/// Randomized `(2k − 1)`-spanner for weighted graphs with at most
/// `SIZE_CONSTANT · k · n^{1+1/k}` edges in expectation.
pub fn spanner_2k_minus_1(g: &Graph, k: usize, seed: u64) -> Result<Spanner> {
    g.require_undirected()?;
    if k < 2 {
        return Err(invalid("k must be at least 2; the 1-spanner is identity_spanner"));
    }
    let kept = baswana_sen(g, k, seed);
    let bound = SIZE_CONSTANT * k as f64 * nf(g).powf(1.0 + 1.0 / k as f64);
    Ok(Spanner::new(kept, (2 * k - 1) as f64, 0.0, bound, SpannerMethod::BaswanaSen))
}

fn baswana_sen(g: &Graph, k: usize, seed: u64) -> Vec<usize> {
    let n = g.n();
    let mut rng = seed::rng(seed, 0xb5);
    let p = nf(g).powf(-1.0 / k as f64);
    let mut alive: Vec<bool> = (0..g.edge_id_bound()).map(|e| g.edge(e).is_some()).collect();
    let mut cluster: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut kept = Vec::new();
    // scratch: lightest alive edge from the current vertex into each cluster
    let mut best: Vec<Option<(u64, usize)>> = vec![None; n];
    let mut touched: Vec<usize> = Vec::new();
    let lightest = |v: usize, cluster: &[Option<usize>], alive: &[bool], best: &mut Vec<Option<(u64, usize)>>, touched: &mut Vec<usize>| {
        for &c in touched.iter() {
            best[c] = None;
        }
        touched.clear();
        for a in g.arcs(v) {
            if !alive[a.edge] {
                continue;
            }
            let c = cluster[a.to].expect("alive edges join clustered vertices");
            let key = (a.w, a.edge);
            match best[c] {
                None => {
                    best[c] = Some(key);
                    touched.push(c);
                }
                Some(cur) if key < cur => best[c] = Some(key),
                _ => {}
            }
        }
    };
    for _phase in 1..k {
        let mut sampled = vec![false; n];
        for c in 0..n {
            if cluster[c] == Some(c) && rng.gen_bool(p) {
                sampled[c] = true;
            }
        }
        let mut next: Vec<Option<usize>> = cluster.iter().map(|c| c.filter(|&c| sampled[c])).collect();
        let mut kill_to: Vec<(usize, usize)> = Vec::new();
        for v in 0..n {
            let Some(own) = cluster[v] else { continue };
            if sampled[own] {
                continue;
            }
            lightest(v, &cluster, &alive, &mut best, &mut touched);
            let join = touched
                .iter()
                .filter(|&&c| sampled[c])
                .map(|&c| (best[c].unwrap(), c))
                .min();
            match join {
                None => {
                    for &c in &touched {
                        kept.push(best[c].unwrap().1);
                        kill_to.push((v, c));
                    }
                }
                Some((key, c_s)) => {
                    kept.push(key.1);
                    next[v] = Some(c_s);
                    kill_to.push((v, c_s));
                    for &c in &touched {
                        let b = best[c].unwrap();
                        if b < key {
                            kept.push(b.1);
                            kill_to.push((v, c));
                        }
                    }
                }
            }
        }
        for (v, c) in kill_to {
            for a in g.arcs(v) {
                if cluster[a.to] == Some(c) {
                    alive[a.edge] = false;
                }
            }
        }
        cluster = next;
        for (id, e) in g.edges() {
            if alive[id] && (cluster[e.u].is_none() || cluster[e.u] == cluster[e.v] || cluster[e.v].is_none()) {
                alive[id] = false;
            }
        }
    }
    for v in 0..n {
        lightest(v, &cluster, &alive, &mut best, &mut touched);
        for &c in &touched {
            kept.push(best[c].unwrap().1);
        }
    }
    kept
}

/// Unweighted `(k, k − 1)`-spanner: the union of the shortest-path trees of
/// `k`-level clusters.
pub fn spanner_k_kminus1(g: &Graph, k: usize, seed: u64) -> Result<Spanner> {
    g.require_undirected()?;
    g.require_unweighted()?;
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let tz = TzOracle::build(g, k, seed::split_seed(seed, 0xcc))?;
    let bound = SIZE_CONSTANT * nf(g).powf(1.0 + 1.0 / k as f64);
    Ok(Spanner::new(tz.cluster_edges().to_vec(), k as f64, (k - 1) as f64, bound, SpannerMethod::Clusters(k)))
}

/// Largest `d_P(u, v) − α·d_G(u, v)` over all pairs connected in `g`, or 0
/// if never positive; infinite if `p` disconnects such a pair.
pub fn measure_surplus(g: &Graph, p: &Graph, alpha: f64) -> f64 {
    let n = g.n();
    let mut worst = 0.0f64;
    for s in 0..n {
        let dg = dijkstra(g, s, &TruncationPolicy::none()).dist;
        let dp = dijkstra(p, s, &TruncationPolicy::none()).dist;
        for v in 0..n {
            match (dg[v], dp[v]) {
                (Finite(a), Finite(b)) => worst = worst.max(b as f64 - alpha * a as f64),
                (Finite(_), _) => return f64::INFINITY,
                _ => {}
            }
        }
    }
    worst
}

/// Unweighted `(1 + ε, β)`-spanner with `β` measured on the output.
///
/// Built from `⌈1/ε⌉`-level clusters (at least two levels). If no attempt
/// fits in `SIZE_CONSTANT · n^{1+ε}` edges, the `(1, 2)`-additive spanner is
/// returned instead with `meets_size_bound` unset.
pub fn spanner_near_additive(g: &Graph, eps: f64, seed: u64) -> Result<Spanner> {
    g.require_undirected()?;
    g.require_unweighted()?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(invalid(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    let levels = ((1.0 / eps).ceil() as usize).max(2);
    let bound = SIZE_CONSTANT * nf(g).powf(1.0 + eps);
    let alpha = 1.0 + eps;
    for attempt in 0..3 {
        let tz = TzOracle::build(g, levels, seed::split_seed(seed, 0x100 + attempt))?;
        if tz.cluster_edges().len() as f64 <= bound {
            let edges = tz.cluster_edges().to_vec();
            let beta = measure_surplus(g, &g.subgraph_from_ids(&edges), alpha);
            return Ok(Spanner::new(edges, alpha, beta, bound, SpannerMethod::Clusters(levels)));
        }
    }
    let mut s = spanner_additive_two(g, seed)?;
    s.alpha = alpha;
    s.beta = measure_surplus(g, &s.graph(g), alpha);
    s.edge_bound = bound;
    s.meets_size_bound = s.len() as f64 <= bound;
    Ok(s)
}

/// `(1, 2)`-additive spanner: every edge at a vertex of degree below `√n`,
/// plus a shortest-path tree from each vertex of a sample dominating all
/// higher-degree vertices.
pub fn spanner_additive_two(g: &Graph, seed: u64) -> Result<Spanner> {
    g.require_undirected()?;
    g.require_unweighted()?;
    let n = g.n();
    let threshold = nf(g).sqrt();
    let heavy = |v: usize| g.degree(v) as f64 >= threshold;
    let mut keep = vec![false; g.edge_id_bound()];
    for (id, e) in g.edges() {
        if !heavy(e.u) || !heavy(e.v) {
            keep[id] = true;
        }
    }
    let mut dom = vec![false; n];
    for v in sample_vertices(g, threshold, seed::split_seed(seed, 0xad)).ids {
        dom[v] = true;
    }
    for v in 0..n {
        if heavy(v) && !dom[v] && !g.arcs(v).iter().any(|a| dom[a.to]) {
            dom[v] = true;
        }
    }
    for d in (0..n).filter(|&d| dom[d]) {
        let t = dijkstra(g, d, &TruncationPolicy::none());
        for v in t.order {
            if let Some(e) = t.parent_edge[v] {
                keep[e] = true;
            }
        }
    }
    let edges = (0..keep.len()).filter(|&e| keep[e]).collect();
    let bound = SIZE_CONSTANT * nf(g).powf(1.5) * nf(g).ln();
    Ok(Spanner::new(edges, 1.0, 2.0, bound, SpannerMethod::AdditiveTwo))
}

/// `(2 + ε, 2β′ + 1)`-spanner: a `(1 + ε/2, β′)`-spanner of a `(2, 1)`-spanner.
pub fn spanner_composite_2eps(g: &Graph, eps: f64, seed: u64) -> Result<Spanner> {
    let outer = spanner_k_kminus1(g, 2, seed::split_seed(seed, 1))?;
    let p1 = outer.graph(g);
    let inner = spanner_near_additive(&p1, (eps / 2.0).min(1.0), seed::split_seed(seed, 2))?;
    let bound = SIZE_CONSTANT * nf(g).powf(1.0 + eps / 2.0);
    let mut s = Spanner::new(inner.edges, 2.0 + eps, 2.0 * inner.beta + 1.0, bound, SpannerMethod::Composite);
    s.inner_beta = Some(inner.beta);
    Ok(s)
}

/// Single-edge-fault-tolerant `(2k − 1)`-spanner: for every edge `e` and pair
/// `(u, v)`, `d_{P∖e}(u, v) ≤ (2k − 1)·d_{G∖e}(u, v)`.
///
/// Unions `(2k − 1)`-spanners of `⌈8 ln n⌉` random vertex-induced subgraphs
/// (each vertex kept with probability 1/2) and every bridge. A final pass
/// checks each left-out edge `(x, y)` against every single fault on its
/// spanner detour and adds it if some fault stretches `x`–`y` too far, which
/// makes the contract hold deterministically.
pub fn fault_tolerant_spanner(g: &Graph, k: usize, seed: u64) -> Result<Spanner> {
    g.require_undirected()?;
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let n = g.n();
    let rounds = (FT_ROUNDS * nf(g).ln()).ceil() as u64;
    let mut keep = vec![false; g.edge_id_bound()];
    for r in 0..rounds {
        let mut rng = seed::rng(seed, 0xf000 + r);
        let mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let sub = g.induced(&mask);
        for e in baswana_sen(&sub, k, seed::split_seed(seed, 0xf100 + r)) {
            keep[e] = true;
        }
    }
    for e in bridges(g) {
        keep[e] = true;
    }
    let stretch = (2 * k - 1) as u64;
    let ids: Vec<usize> = g.edges().map(|(i, _)| i).collect();
    for &id in &ids {
        if keep[id] {
            continue;
        }
        let e = g.edge(id).unwrap();
        let limit = stretch * e.w;
        let ok = {
            let in_p = |x: usize| keep[x];
            let t = dijkstra(g, e.u, &TruncationPolicy::radius(limit).edges_where(&in_p).until(e.v));
            t.is_settled(e.v) && {
                let mut detour = Vec::new();
                let mut x = e.v;
                while let Some(f) = t.parent_edge[x] {
                    detour.push(f);
                    x = t.parent[x].unwrap();
                }
                detour.iter().all(|&f| {
                    let policy = TruncationPolicy::radius(limit).edges_where(&in_p).until(e.v).skipping(f);
                    dijkstra(g, e.u, &policy).is_settled(e.v)
                })
            }
        };
        if !ok {
            keep[id] = true;
        }
    }
    let edges = (0..keep.len()).filter(|&e| keep[e]).collect();
    let bound = SIZE_CONSTANT * k as f64 * nf(g).powf(1.0 + 1.0 / k as f64) * nf(g).ln();
    let mut s = Spanner::new(edges, stretch as f64, 0.0, bound, SpannerMethod::FaultTolerant);
    s.fault_tolerance = 1;
    Ok(s)
}

/// Edge ids whose removal disconnects their endpoints.
pub fn bridges(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut tin = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    for r in 0..n {
        if tin[r] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter it, next arc index)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(r, None, 0)];
        tin[r] = timer;
        low[r] = timer;
        timer += 1;
        while let Some(&mut (v, via, ref mut i)) = stack.last_mut() {
            if let Some(a) = g.arcs(v).get(*i) {
                *i += 1;
                if Some(a.edge) == via {
                    continue;
                }
                if tin[a.to] == usize::MAX {
                    tin[a.to] = timer;
                    low[a.to] = timer;
                    timer += 1;
                    stack.push((a.to, Some(a.edge), 0));
                } else {
                    low[v] = low[v].min(tin[a.to]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > tin[p] {
                        out.push(via.unwrap());
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}
