//! Distances for a linear number of prescribed vertex pairs.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::dist::{Dist, Finite, Inf};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::seed::{self, split_seed};
use crate::spanners::{spanner_2k_minus_1, spanner_composite_2eps, spanner_near_additive};
use crate::sssp::{dijkstra, endpoints, sample_edges, TruncationPolicy};
use crate::tz::TzOracle;

/// Default cap on the number of pairs, as a multiple of `n`.
pub const PAIR_FACTOR: usize = 4;

/// Cap on `|S|` and `|T|` for the set-to-set problem, as a multiple of `√n`.
pub const ST_FACTOR: f64 = 4.0;

/// Vertex pairs `(s, t)` with `s ≠ t`, at most `c·n` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairQuerySet {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairQuerySet {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<PairQuerySet> {
        Self::with_limit(n, pairs, PAIR_FACTOR)
    }

    pub fn with_limit(n: usize, pairs: Vec<(usize, usize)>, factor: usize) -> Result<PairQuerySet> {
        if pairs.len() > factor * n {
            return Err(invalid(format!("{} pairs exceed the limit of {} for n = {n}", pairs.len(), factor * n)));
        }
        for &(s, t) in &pairs {
            for v in [s, t] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if s == t {
                return Err(invalid(format!("pair ({s}, {t}) repeats a vertex")));
            }
        }
        Ok(PairQuerySet { n, pairs })
    }

    /// `count` uniformly random pairs of distinct vertices.
    pub fn random(n: usize, count: usize, seed: u64) -> Result<PairQuerySet> {
        if n < 2 && count > 0 {
            return Err(invalid("pairs need at least two vertices"));
        }
        let mut rng = seed::rng(seed, 0x9a);
        let pairs = (0..count)
            .map(|_| {
                let s = rng.gen_range(0..n);
                let t = (s + rng.gen_range(1..n)) % n;
                (s, t)
            })
            .collect();
        Self::new(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Reads lines `s t`; `#` starts a comment line.
    pub fn load<R: BufRead>(input: R, n: usize) -> Result<PairQuerySet> {
        let mut pairs = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let f: Vec<&str> = t.split_whitespace().collect();
            if f.len() != 2 {
                return Err(bad("expected `s t`"));
            }
            let s: usize = f[0].parse().map_err(|_| bad("bad source id"))?;
            let d: usize = f[1].parse().map_err(|_| bad("bad target id"))?;
            if s >= n || d >= n {
                return Err(bad(&format!("vertex out of range (n = {n})")));
            }
            if s == d {
                return Err(bad("pair repeats a vertex"));
            }
            pairs.push((s, d));
        }
        Self::new(n, pairs)
    }

    pub fn parse_str(s: &str, n: usize) -> Result<PairQuerySet> {
        Self::load(s.as_bytes(), n)
    }

    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        for &(s, t) in &self.pairs {
            writeln!(out, "{s} {t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NpspAlgorithm {
    Exact,
    Tz,
    SpannerCompose,
    TwoEps,
    SetToSet,
}

impl NpspAlgorithm {
    pub const ALL: [NpspAlgorithm; 5] = [
        NpspAlgorithm::Exact,
        NpspAlgorithm::Tz,
        NpspAlgorithm::SpannerCompose,
        NpspAlgorithm::TwoEps,
        NpspAlgorithm::SetToSet,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NpspAlgorithm::Exact => "npsp-exact",
            NpspAlgorithm::Tz => "tz",
            NpspAlgorithm::SpannerCompose => "spanner-tz",
            NpspAlgorithm::TwoEps => "npsp-2eps",
            NpspAlgorithm::SetToSet => "st",
        }
    }

    /// Upper bound promised for a pair at distance `d`.
    pub fn bound(self, params: &NpspParams, d: u64) -> f64 {
        let d = d as f64;
        let k = params.k.unwrap_or(0) as f64;
        let half_up = |x: f64| 2.0 * (x / 2.0).ceil();
        match self {
            NpspAlgorithm::Exact => d,
            NpspAlgorithm::Tz => (2.0 * k - 3.0) * d + half_up(d),
            NpspAlgorithm::SpannerCompose => (2.0 * k - 1.0) * (2.0 * k - 2.0) * d + half_up((2.0 * k - 1.0) * d),
            NpspAlgorithm::TwoEps => (2.0 + params.eps.unwrap_or(0.0)) * d + params.beta.unwrap_or(f64::INFINITY),
            NpspAlgorithm::SetToSet => 2.0 * d,
        }
    }
}

impl fmt::Display for NpspAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NpspAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NpspAlgorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| invalid(format!("unknown pair-distance algorithm '{s}'")))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NpspParams {
    pub k: Option<usize>,
    pub eps: Option<f64>,
    pub beta: Option<f64>,
    /// Ball size, in edges, of the set-to-set algorithm.
    pub r: Option<f64>,
    pub seed: u64,
}

impl NpspParams {
    pub fn seeded(seed: u64) -> NpspParams {
        NpspParams { seed, ..NpspParams::default() }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(e) = self.eps {
            parts.push(format!("eps={e}"));
        }
        if let Some(b) = self.beta {
            parts.push(format!("beta={b}"));
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r:.3}"));
        }
        parts.join(";")
    }
}

/// Answers to a pair query set, one per pair in order.
#[derive(Clone, Debug, PartialEq)]
pub struct NpspResult {
    pub queries: PairQuerySet,
    pub estimates: Vec<Dist>,
    pub exact: Option<Vec<Dist>>,
    pub algorithm: NpspAlgorithm,
    pub params: NpspParams,
    /// Arcs scanned plus bunch entries compared.
    pub work: u64,
}

impl NpspResult {
    fn new(queries: &PairQuerySet, estimates: Vec<Dist>, algorithm: NpspAlgorithm, params: NpspParams) -> NpspResult {
        NpspResult { queries: queries.clone(), estimates, exact: None, algorithm, params, work: 0 }
    }

    pub fn with_exact(mut self, exact: Vec<Dist>) -> Result<NpspResult> {
        if exact.len() != self.estimates.len() {
            return Err(Error::SizeMismatch(self.estimates.len(), exact.len()));
        }
        self.exact = Some(exact);
        Ok(self)
    }

    pub fn ratio(&self, i: usize) -> Option<f64> {
        match (self.estimates[i], self.exact.as_ref()?[i]) {
            (Finite(e), Finite(d)) if d > 0 => Some(e as f64 / d as f64),
            _ => None,
        }
    }

    /// Indices of pairs whose estimate is below the distance or above the bound.
    pub fn violations(&self) -> Vec<usize> {
        let Some(exact) = &self.exact else { return Vec::new() };
        (0..self.estimates.len())
            .filter(|&i| match (exact[i], self.estimates[i]) {
                (Finite(d), Finite(e)) => e < d || e as f64 > self.algorithm.bound(&self.params, d) + 1e-9,
                (Finite(_), Inf) => true,
                (Inf, e) => e != Inf,
            })
            .collect()
    }

    pub fn assert_bounds(&self) -> Result<()> {
        if let Some(&i) = self.violations().first() {
            let (s, t) = self.queries.pairs()[i];
            return Err(Error::BoundViolation(format!(
                "{}: pair ({s}, {t}) has estimate {} but distance {}",
                self.algorithm,
                self.estimates[i],
                self.exact.as_ref().unwrap()[i]
            )));
        }
        Ok(())
    }

    /// CSV with columns `s,t,estimate,exact,ratio,algorithm,params,seed`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "t", "estimate", "exact", "ratio", "algorithm", "params", "seed"])?;
        let params = self.params.describe();
        for (i, &(s, t)) in self.queries.pairs().iter().enumerate() {
            let exact = self.exact.as_ref().map(|e| e[i].to_string()).unwrap_or_default();
            let ratio = self.ratio(i).map(|r| format!("{r:.6}")).unwrap_or_default();
            w.write_record([
                s.to_string(),
                t.to_string(),
                self.estimates[i].to_string(),
                exact,
                ratio,
                self.algorithm.id().to_string(),
                params.clone(),
                self.params.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_pairs(g: &Graph, q: &PairQuerySet) -> Result<()> {
    if q.n() != g.n() {
        return Err(Error::SizeMismatch(g.n(), q.n()));
    }
    Ok(())
}

/// Exact distances, one full search per distinct source.
pub fn exact_npsp(g: &Graph, q: &PairQuerySet) -> Result<NpspResult> {
    check_pairs(g, q)?;
    let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &(s, _)) in q.pairs().iter().enumerate() {
        by_source.entry(s).or_default().push(i);
    }
    let mut sources: Vec<usize> = by_source.keys().copied().collect();
    sources.sort_unstable();
    let answered: Vec<(Vec<Dist>, u64)> = sources
        .par_iter()
        .map(|s| {
            let t = dijkstra(g, *s, &TruncationPolicy::none());
            (by_source[s].iter().map(|&i| t.dist[q.pairs()[i].1]).collect(), t.explored)
        })
        .collect();
    let mut est = vec![Inf; q.len()];
    let mut work = 0;
    for (s, (dists, explored)) in sources.iter().zip(answered) {
        work += explored;
        for (&i, d) in by_source[s].iter().zip(dists) {
            est[i] = d;
        }
    }
    let mut r = NpspResult::new(q, est, NpspAlgorithm::Exact, NpspParams::default());
    r.work = work;
    Ok(r)
}

fn tz_answers(tz: &TzOracle, q: &PairQuerySet) -> (Vec<Dist>, u64) {
    let mut work = 0;
    let est = q
        .pairs()
        .iter()
        .map(|&(s, t)| {
            let a = tz.query_intersect(s, t);
            work += a.merge_work + a.ascent_steps as u64;
            a.estimate
        })
        .collect();
    (est, work)
}

/// Level-sample oracle whose query first looks for a common bunch landmark:
/// `d ≤ d̂ ≤ (2k − 3)·d + 2⌈d/2⌉` on unit-weight graphs.
pub fn npsp_tz(g: &Graph, q: &PairQuerySet, k: usize, seed: u64) -> Result<NpspResult> {
    check_pairs(g, q)?;
    let tz = TzOracle::build(g, k, seed)?;
    let (est, work) = tz_answers(&tz, q);
    let mut r = NpspResult::new(q, est, NpspAlgorithm::Tz, NpspParams { k: Some(k), ..NpspParams::seeded(seed) });
    r.work = work;
    Ok(r)
}

/// The level-sample oracle run on a `(2k − 1)`-spanner.
pub fn npsp_spanner_compose(g: &Graph, q: &PairQuerySet, k: usize, seed: u64) -> Result<NpspResult> {
    check_pairs(g, q)?;
    let p = spanner_2k_minus_1(g, k, split_seed(seed, 1))?;
    let tz = TzOracle::build(&p.graph(g), k, split_seed(seed, 2))?;
    let (est, work) = tz_answers(&tz, q);
    let params = NpspParams { k: Some(k), ..NpspParams::seeded(seed) };
    let mut r = NpspResult::new(q, est, NpspAlgorithm::SpannerCompose, params);
    r.work = work;
    Ok(r)
}

/// Additive surplus of the `(2 + ε)` pair estimate: `2β′ + 1` from the
/// oracle on the near-additive spanner, `4 + 2ε + 2β″` from the detour through
/// a sampled vertex in the composite spanner.
pub fn npsp_2eps_beta(eps: f64, beta_low: f64, beta_composite: f64) -> f64 {
    (2.0 * beta_low + 1.0).max(4.0 + 2.0 * eps + 2.0 * beta_composite)
}

/// `(2 + ε, β)` pair distances on unweighted graphs.
///
/// A sample `S` of `⌈3√n ln n⌉` vertices is redrawn until every vertex with no
/// neighbor in `S` has degree at most `√n`. Paths using only edges at such
/// vertices are answered by the oracle with `k = 2` on a near-additive spanner
/// of those edges; the rest pass next to `S` and are answered by
/// `min_s d_H(u, s) + d_H(s, v)` in a composite spanner `H`.
pub fn npsp_2eps(g: &Graph, q: &PairQuerySet, eps: f64, seed: u64) -> Result<NpspResult> {
    check_pairs(g, q)?;
    g.require_undirected()?;
    g.require_unweighted()?;
    if !(eps > 0.0 && eps <= 2.0) {
        return Err(invalid(format!("epsilon must lie in (0, 2], got {eps}")));
    }
    let n = g.n();
    let nf = n.max(2) as f64;
    let size = ((3.0 * nf.sqrt() * nf.ln()).ceil() as usize).min(n);
    let threshold = nf.sqrt();
    let mut near_s = vec![false; n];
    let mut sample = Vec::new();
    for attempt in 0.. {
        let mut rng = seed::rng(seed, 0x2e00 + attempt);
        sample = rand::seq::index::sample(&mut rng, n, size).into_vec();
        sample.sort_unstable();
        near_s.fill(false);
        for &s in &sample {
            for a in g.arcs(s) {
                near_s[a.to] = true;
            }
        }
        if (0..n).all(|v| near_s[v] || g.degree(v) as f64 <= threshold) {
            break;
        }
    }
    let mut est = vec![Inf; q.len()];
    let mut work = 0;

    let sparse = g.restrict_edges(|id| {
        let e = g.edge(id).unwrap();
        !near_s[e.u] || !near_s[e.v]
    });
    let p = spanner_near_additive(&sparse, eps / 2.0, split_seed(seed, 1))?;
    let tz = TzOracle::build(&p.graph(&sparse), 2, split_seed(seed, 2))?;
    let (d1, w1) = tz_answers(&tz, q);
    work += w1;

    let h = spanner_composite_2eps(g, eps, split_seed(seed, 3))?;
    let hg = h.graph(g);
    for &s in &sample {
        let t = dijkstra(&hg, s, &TruncationPolicy::none());
        work += t.explored;
        for (i, &(u, v)) in q.pairs().iter().enumerate() {
            if let (Finite(a), Finite(b)) = (t.dist[u], t.dist[v]) {
                est[i] = est[i].min(Finite(a + b));
            }
        }
    }
    for (e, d) in est.iter_mut().zip(d1) {
        *e = (*e).min(d);
    }
    let params = NpspParams {
        eps: Some(eps),
        beta: Some(npsp_2eps_beta(eps, p.beta, h.beta)),
        ..NpspParams::seeded(seed)
    };
    let mut r = NpspResult::new(q, est, NpspAlgorithm::TwoEps, params);
    r.work = work;
    Ok(r)
}

/// Source and target sets of the set-to-set problem; every pair in `S × T`
/// is queried.
#[derive(Clone, Debug, PartialEq)]
pub struct StInstance {
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    /// Edges per ball; `m / n^{0.4}` when absent.
    pub r: Option<f64>,
}

impl StInstance {
    pub fn new(n: usize, sources: Vec<usize>, targets: Vec<usize>) -> Result<StInstance> {
        let cap = (ST_FACTOR * (n as f64).sqrt()).ceil() as usize;
        for set in [&sources, &targets] {
            if set.len() > cap {
                return Err(invalid(format!("set of {} vertices exceeds the limit of {cap}", set.len())));
            }
            if let Some(&v) = set.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(StInstance { sources, targets, r: None })
    }

    /// Disjoint random sets of `size` vertices each.
    pub fn random(n: usize, size: usize, seed: u64) -> Result<StInstance> {
        if 2 * size > n {
            return Err(invalid("sets do not fit"));
        }
        let mut rng = seed::rng(seed, 0x57);
        let picked = rand::seq::index::sample(&mut rng, n, 2 * size).into_vec();
        Self::new(n, picked[..size].to_vec(), picked[size..].to_vec())
    }

    pub fn pairs(&self, n: usize) -> Result<PairQuerySet> {
        let pairs = self
            .sources
            .iter()
            .flat_map(|&s| self.targets.iter().map(move |&t| (s, t)))
            .filter(|(s, t)| s != t)
            .collect();
        PairQuerySet::with_limit(n, pairs, usize::MAX / n.max(1))
    }
}

struct Ball {
    /// Settled vertices and every neighbor of one, with the best distance seen.
    reach: HashMap<usize, u64>,
    /// Distance of the last settled vertex; infinite if the search ran out.
    radius: Dist,
}

fn ball(g: &Graph, s: usize, arcs: u64) -> (Ball, u64) {
    let t = dijkstra(g, s, &TruncationPolicy::edge_budget(arcs));
    let mut reach = HashMap::new();
    for &v in &t.order {
        let dv = t.dist[v].unwrap();
        reach.insert(v, dv);
        for a in g.arcs(v) {
            let e = reach.entry(a.to).or_insert(u64::MAX);
            *e = (*e).min(dv + a.w);
        }
    }
    let radius = if t.explored < arcs { Inf } else { t.dist[*t.order.last().unwrap()] };
    (Ball { reach, radius }, t.explored)
}

/// 2-approximate distances for every pair in `S × T`.
///
/// Each endpoint grows a ball of about `r` edges. A pair whose balls meet is
/// answered through the best common vertex, exactly when one ball holds the
/// other endpoint. Otherwise the smaller ball contains an endpoint of a
/// sampled edge, and full searches from all sampled endpoints give the rest.
pub fn st_shortest_paths(g: &Graph, inst: &StInstance, seed: u64) -> Result<NpspResult> {
    g.require_undirected()?;
    let n = g.n();
    let q = inst.pairs(n)?;
    let m = g.m() as f64;
    let r = inst.r.unwrap_or(m / (n.max(2) as f64).powf(0.4)).max(1.0);
    let arcs = 2 * r.ceil() as u64;
    let mut work = 0;
    let mut balls: HashMap<usize, Ball> = HashMap::new();
    for &v in inst.sources.iter().chain(&inst.targets) {
        if let std::collections::hash_map::Entry::Vacant(slot) = balls.entry(v) {
            let (b, w) = ball(g, v, arcs);
            work += w;
            slot.insert(b);
        }
    }
    let mut est: Vec<Dist> = q
        .pairs()
        .iter()
        .map(|&(s, t)| {
            let (bs, bt) = (&balls[&s], &balls[&t]);
            let (small, large) = if bs.reach.len() <= bt.reach.len() { (bs, bt) } else { (bt, bs) };
            work += small.reach.len() as u64;
            small
                .reach
                .iter()
                .filter_map(|(v, &a)| large.reach.get(v).map(|&b| Finite(a + b)))
                .min()
                .unwrap_or(Inf)
        })
        .collect();
    let exhausted = balls.values().all(|b| b.radius.is_inf());
    if g.m() > 0 && !exhausted {
        let x = endpoints(g, &sample_edges(g, r, split_seed(seed, 1)).ids);
        for v in x {
            let t = dijkstra(g, v, &TruncationPolicy::none());
            work += t.explored;
            for (i, &(s, u)) in q.pairs().iter().enumerate() {
                if let (Finite(a), Finite(b)) = (t.dist[s], t.dist[u]) {
                    est[i] = est[i].min(Finite(a + b));
                }
            }
        }
    }
    let params = NpspParams { r: Some(r), ..NpspParams::seeded(seed) };
    let mut res = NpspResult::new(&q, est, NpspAlgorithm::SetToSet, params);
    res.work = work;
    Ok(res)
}

/// Pair distances encoded as shortest cycles: one new vertex per pair, joined
/// to both endpoints by edges of weight `10·n·M`.
#[derive(Clone, Debug)]
pub struct CycleReduction {
    pub graph: Graph,
    /// New vertex of each pair.
    pub added: Vec<usize>,
    pub weight: u64,
}

impl CycleReduction {
    /// Distances read back from shortest-cycle values of the reduced graph.
    pub fn recover(&self, sc: &[Dist]) -> Vec<Dist> {
        self.added
            .iter()
            .map(|&v| match sc[v] {
                Finite(c) => match c.checked_sub(2 * self.weight) {
                    Some(d) if d < self.weight => Finite(d),
                    _ => Inf,
                },
                Inf => Inf,
            })
            .collect()
    }
}

pub fn reduce_npsp_to_ansc(g: &Graph, q: &PairQuerySet) -> Result<CycleReduction> {
    check_pairs(g, q)?;
    g.require_undirected()?;
    let n = g.n();
    let weight = 10 * n as u64 * g.max_weight().max(1);
    let mut edges: Vec<(usize, usize, u64)> = g.canonical_edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    let mut added = Vec::with_capacity(q.len());
    for (i, &(s, t)) in q.pairs().iter().enumerate() {
        let v = n + i;
        added.push(v);
        edges.push((v, s, weight));
        edges.push((v, t, weight));
    }
    let graph = Graph::new(n + q.len(), false, &edges)?;
    Ok(CycleReduction { graph, added, weight })
}
