//! Instances produced by hardness reductions, each with the two thresholds
//! its exact answer can land on.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use rand::Rng;

use crate::ansc::exact_ansc;
use crate::dist::{Dist, Finite, Inf};
use crate::error::{invalid, Result};
use crate::graph::{gen_random, Graph};
use crate::npsp::{exact_npsp, PairQuerySet, PAIR_FACTOR};
use crate::seed;

/// Clique tests above this many candidate vertex sets are skipped when
/// labelling generated instances.
pub const BRUTE_FORCE_LIMIT: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryKind {
    /// Minimum distance over the query pairs.
    PairMinDistance,
    /// Maximum distance over the query pairs.
    PairDiameter,
    /// Minimum shortest-cycle value over all vertices.
    AnscGirth,
    /// Maximum shortest-cycle value over all vertices.
    AnscCycleDiameter,
    /// Shortest-cycle value of each target vertex, minimum taken overall.
    PerVertexTarget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayeredKind {
    Triangle3,
    Triangle4,
    SimplicialPairs,
    KCycle(usize),
    EdgeSubdivTriangle,
    SimplicialCycle,
    Disjointness,
}

impl LayeredKind {
    pub fn id(self) -> &'static str {
        match self {
            LayeredKind::Triangle3 => "triangle3",
            LayeredKind::Triangle4 => "triangle4",
            LayeredKind::SimplicialPairs => "simplicial-pairs",
            LayeredKind::KCycle(_) => "kcycle",
            LayeredKind::EdgeSubdivTriangle => "edge-subdiv-triangle",
            LayeredKind::SimplicialCycle => "simplicial-cycle",
            LayeredKind::Disjointness => "disjointness",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Clique { k: usize, t: usize, r: usize },
    Layered(LayeredKind),
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::Clique { k, t, r } => write!(f, "clique(k={k},t={t},r={r})"),
            GadgetKind::Layered(LayeredKind::KCycle(k)) => write!(f, "kcycle(k={k})"),
            GadgetKind::Layered(l) => f.write_str(l.id()),
        }
    }
}

/// `r`-uniform hypergraph; hyperedges are stored as sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub r: usize,
    edges: BTreeSet<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, r: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Hypergraph> {
        if r < 2 {
            return Err(invalid("hyperedges need at least two vertices"));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.len() != r || e.iter().any(|&v| v >= n) {
                return Err(invalid(format!("bad hyperedge {e:?} for n = {n}, r = {r}")));
            }
            set.insert(e);
        }
        Ok(Hypergraph { n, r, edges: set })
    }

    pub fn from_graph(g: &Graph) -> Hypergraph {
        let edges = g.edges().map(|(_, e)| vec![e.u.min(e.v), e.u.max(e.v)]).collect();
        Hypergraph { n: g.n(), r: 2, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Random hypergraph keeping each `r`-set with probability `p`.
    pub fn random(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
        let mut rng = seed::rng(seed, 0x4e);
        let mut edges = Vec::new();
        for_each_subset(n, r, &mut |s| {
            if rng.gen_bool(p) {
                edges.push(s.to_vec());
            }
        });
        Hypergraph::new(n, r, edges)
    }

    /// Adds every `r`-subset of `vertices`.
    pub fn plant_clique(&mut self, vertices: &[usize]) {
        let vs: Vec<usize> = vertices.to_vec();
        for_each_subset(vs.len(), self.r, &mut |idx| {
            let mut e: Vec<usize> = idx.iter().map(|&i| vs[i]).collect();
            e.sort_unstable();
            self.edges.insert(e);
        });
    }

    /// Distinct vertices all of whose `r`-subsets are hyperedges.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let mut ok = true;
        for_each_subset(sorted.len(), self.r, &mut |idx| {
            if ok {
                let e: Vec<usize> = idx.iter().map(|&i| sorted[i]).collect();
                ok = self.edges.contains(&e);
            }
        });
        ok
    }

    /// Whether some `k` vertices form a clique, or `None` if there are too
    /// many candidate sets to check.
    pub fn has_clique(&self, k: usize) -> Option<bool> {
        if binomial(self.n, k) > BRUTE_FORCE_LIMIT {
            return None;
        }
        let mut found = false;
        for_each_subset(self.n, k, &mut |s| {
            if !found && self.is_clique(s) {
                found = true;
            }
        });
        Some(found)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Calls `f` on every increasing `k`-subset of `0..n`.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Input of a layered reduction.
#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    Graph(Graph),
    /// Directed graph with a colour in `0..k` per vertex.
    Colored { graph: Graph, colors: Vec<usize> },
    /// Two bit vectors of length `n²`, read as `n` blocks of `n`.
    Bits { n: usize, x: Vec<bool>, y: Vec<bool> },
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub graph: Graph,
    pub query: QueryKind,
    pub pairs: Option<PairQuerySet>,
    /// Vertices whose shortest cycle is asked for, for per-vertex queries.
    pub targets: Vec<usize>,
    pub yes_value: Dist,
    pub no_value: Dist,
    /// True when the base has the property that forces the yes side.
    pub ground_truth: Option<bool>,
    /// Expected side of each target, for per-vertex queries.
    pub target_truth: Option<Vec<bool>>,
}

impl GadgetInstance {
    /// Values the query is about: one per pair, per target, or per vertex.
    pub fn exact_values(&self) -> Result<Vec<Dist>> {
        match self.query {
            QueryKind::PairMinDistance | QueryKind::PairDiameter => {
                Ok(exact_npsp(&self.graph, self.pairs.as_ref().expect("pair query"))?.estimates)
            }
            QueryKind::AnscGirth | QueryKind::AnscCycleDiameter => Ok(exact_ansc(&self.graph)?.estimates),
            QueryKind::PerVertexTarget => {
                let sc = exact_ansc(&self.graph)?.estimates;
                Ok(self.targets.iter().map(|&v| sc[v]).collect())
            }
        }
    }

    /// Folds per-item values into the single answer of the query.
    pub fn aggregate(&self, values: &[Dist]) -> Dist {
        let it = values.iter().copied();
        match self.query {
            QueryKind::PairDiameter | QueryKind::AnscCycleDiameter => it.max().unwrap_or(Inf),
            _ => it.min().unwrap_or(Inf),
        }
    }

    /// `Some(true)` at or below the yes threshold, `Some(false)` at or above
    /// the no threshold, `None` strictly between.
    pub fn classify(&self, answer: Dist) -> Option<bool> {
        if answer <= self.yes_value {
            Some(true)
        } else if answer >= self.no_value {
            Some(false)
        } else {
            None
        }
    }

    /// Exact answer of the query.
    pub fn solve(&self) -> Result<Dist> {
        Ok(self.aggregate(&self.exact_values()?))
    }

    /// `key=value` lines describing the instance.
    pub fn write_metadata<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "kind={}", self.kind)?;
        writeln!(out, "query={:?}", self.query)?;
        writeln!(out, "n={}", self.graph.n())?;
        writeln!(out, "m={}", self.graph.m())?;
        writeln!(out, "yes_value={}", self.yes_value)?;
        writeln!(out, "no_value={}", self.no_value)?;
        let truth = match self.ground_truth {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        writeln!(out, "ground_truth={truth}")?;
        if !self.targets.is_empty() {
            let t: Vec<String> = self.targets.iter().map(|v| v.to_string()).collect();
            writeln!(out, "targets={}", t.join(","))?;
        }
        Ok(())
    }
}

fn undirected(n: usize, edges: BTreeSet<(usize, usize)>) -> Result<Graph> {
    let e: Vec<(usize, usize, u64)> = edges.into_iter().map(|(a, b)| (a, b, 1)).collect();
    Graph::new(n, false, &e)
}

fn link(set: &mut BTreeSet<(usize, usize)>, a: usize, b: usize) {
    set.insert((a.min(b), a.max(b)));
}

fn pair_set(n: usize, pairs: Vec<(usize, usize)>) -> Result<PairQuerySet> {
    let factor = pairs.len().div_ceil(n.max(1)).max(PAIR_FACTOR);
    PairQuerySet::with_limit(n, pairs, factor)
}

/// Layered graph whose pair distances detect `k`-cliques in `base`.
///
/// Layer `i` (of `k + 1`) holds one node per `t`-tuple of base vertices. A
/// node `(v_i, …, v_{i+t-1})` is joined to `(v_{i+1}, …, v_{i+t})` in the next
/// layer when the `t + 1` vertices form a clique. Each tuple in the first
/// layer is paired with its copy in the last: some pair is at distance `k`
/// if `base` has a `k`-clique, otherwise every pair is at distance at least
/// `D = 2r(t+1) − (2r−3)k`.
pub fn gadget_clique_reduction(base: &Hypergraph, k: usize, t: usize, r: usize) -> Result<GadgetInstance> {
    if base.r != r {
        return Err(invalid(format!("base is {}-uniform, expected {r}", base.r)));
    }
    if !(k >= t + 2 && t + 1 >= r && r >= 2) {
        return Err(invalid(format!("need k - 1 >= t + 1 >= r >= 2, got k={k}, t={t}, r={r}")));
    }
    let d = 2 * r as i64 * (t as i64 + 1) - (2 * r as i64 - 3) * k as i64;
    if d <= k as i64 {
        return Err(invalid(format!("threshold {d} does not exceed k = {k}")));
    }
    let n0 = base.n;
    let per = n0.checked_pow(t as u32).ok_or_else(|| invalid("instance too large"))?;
    let node = |layer: usize, tuple: &[usize]| layer * per + tuple.iter().fold(0, |acc, &v| acc * n0 + v);
    let mut edges = BTreeSet::new();
    let mut tuple = vec![0usize; t + 1];
    let total = n0.checked_pow(t as u32 + 1).ok_or_else(|| invalid("instance too large"))?;
    for code in 0..total {
        let mut c = code;
        for slot in tuple.iter_mut().rev() {
            *slot = c % n0;
            c /= n0;
        }
        if !base.is_clique(&tuple) {
            continue;
        }
        for layer in 0..k {
            link(&mut edges, node(layer, &tuple[..t]), node(layer + 1, &tuple[1..]));
        }
    }
    let nn = (k + 1) * per;
    let pairs = (0..per).map(|i| (i, k * per + i)).collect();
    Ok(GadgetInstance {
        kind: GadgetKind::Clique { k, t, r },
        graph: undirected(nn, edges)?,
        query: QueryKind::PairMinDistance,
        pairs: Some(pair_set(nn, pairs)?),
        targets: Vec::new(),
        yes_value: Finite(k as u64),
        no_value: Finite(d as u64),
        ground_truth: base.has_clique(k),
        target_truth: None,
    })
}

pub fn has_triangle(g: &Graph) -> bool {
    (0..g.n()).any(|v| vertex_in_triangle(g, v))
}

fn vertex_in_triangle(g: &Graph, v: usize) -> bool {
    let nb = g.arcs(v);
    nb.iter().any(|a| nb.iter().any(|b| a.to < b.to && g.has_edge(a.to, b.to)))
}

pub fn edge_in_triangle(g: &Graph, u: usize, v: usize) -> bool {
    g.arcs(u).iter().any(|a| a.to != v && g.has_edge(a.to, v))
}

/// A vertex whose neighbours are pairwise adjacent.
pub fn has_simplicial_vertex(g: &Graph) -> bool {
    (0..g.n()).any(|v| {
        let nb = g.arcs(v);
        nb.iter().all(|a| nb.iter().all(|b| a.to == b.to || g.has_edge(a.to, b.to)))
    })
}

/// A directed cycle visiting colours `0, 1, …, k−1` in order.
pub fn has_colorful_cycle(g: &Graph, colors: &[usize], k: usize) -> bool {
    let n = g.n();
    (0..n).filter(|&s| colors[s] == 0).any(|s| {
        let mut cur = vec![false; n];
        cur[s] = true;
        for step in 1..k {
            let mut next = vec![false; n];
            for v in (0..n).filter(|&v| cur[v]) {
                for a in g.arcs(v) {
                    if colors[a.to] == step {
                        next[a.to] = true;
                    }
                }
            }
            cur = next;
        }
        (0..n).any(|v| cur[v] && g.arcs(v).iter().any(|a| a.to == s))
    })
}

fn block_intersects(n: usize, x: &[bool], y: &[bool], i: usize) -> bool {
    (0..n).any(|j| x[i * n + j] && y[i * n + j])
}

fn require_graph(kind: LayeredKind, base: &Base, min_n: usize) -> Result<&Graph> {
    match base {
        Base::Graph(g) if !g.is_directed() && g.n() >= min_n => Ok(g),
        Base::Graph(g) if g.n() < min_n => Err(invalid(format!("{} needs at least {min_n} base vertices", kind.id()))),
        _ => Err(invalid(format!("{} needs an undirected graph base", kind.id()))),
    }
}

/// Builds the reduction instance of `kind` from `base`. `pad` appends the
/// `n²` isolated vertices of the 3-layer construction.
pub fn gadget_layered(kind: LayeredKind, base: &Base, pad: bool) -> Result<GadgetInstance> {
    let mut inst = match kind {
        LayeredKind::Triangle3 => triangle3(require_graph(kind, base, 1)?, pad)?,
        LayeredKind::Triangle4 => triangle4(require_graph(kind, base, 1)?)?,
        LayeredKind::SimplicialPairs => simplicial_pairs(require_graph(kind, base, 3)?)?,
        LayeredKind::KCycle(k) => match base {
            Base::Colored { graph, colors } => kcycle(graph, colors, k)?,
            _ => return Err(invalid("kcycle needs a coloured directed base")),
        },
        LayeredKind::EdgeSubdivTriangle => edge_subdiv(require_graph(kind, base, 1)?)?,
        LayeredKind::SimplicialCycle => simplicial_cycle(require_graph(kind, base, 3)?)?,
        LayeredKind::Disjointness => match base {
            Base::Bits { n, x, y } => disjointness(*n, x, y)?,
            _ => return Err(invalid("disjointness needs a bit-vector base")),
        },
    };
    inst.kind = GadgetKind::Layered(kind);
    Ok(inst)
}

fn instance(graph: Graph, query: QueryKind, yes: Dist, no: Dist, truth: bool) -> GadgetInstance {
    GadgetInstance {
        kind: GadgetKind::Layered(LayeredKind::Triangle3),
        graph,
        query,
        pairs: None,
        targets: Vec::new(),
        yes_value: yes,
        no_value: no,
        ground_truth: Some(truth),
        target_truth: None,
    }
}

/// Three copies of `V`, each edge copied between consecutive layers; pair
/// `(v₁, u₃)` for every edge `uv`. A pair is at distance 2 exactly when its
/// edge lies in a triangle, otherwise at least 4 by bipartiteness.
fn triangle3(g: &Graph, pad: bool) -> Result<GadgetInstance> {
    let n = g.n();
    let mut edges = BTreeSet::new();
    let mut pairs = Vec::new();
    for (_, e) in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            link(&mut edges, a, n + b);
            link(&mut edges, n + a, 2 * n + b);
            pairs.push((a, 2 * n + b));
        }
    }
    let nn = 3 * n + if pad { n * n } else { 0 };
    let mut inst = instance(undirected(nn, edges)?, QueryKind::PairMinDistance, Finite(2), Finite(4), has_triangle(g));
    inst.pairs = Some(pair_set(nn, pairs)?);
    Ok(inst)
}

/// Four copies of `V`, each edge copied between consecutive layers; pair
/// `(v₁, v₄)` for every `v`. Distance 3 for a vertex on a triangle, else at
/// least 5.
fn triangle4(g: &Graph) -> Result<GadgetInstance> {
    let n = g.n();
    let mut edges = BTreeSet::new();
    for (_, e) in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            for layer in 0..3 {
                link(&mut edges, layer * n + a, (layer + 1) * n + b);
            }
        }
    }
    let mut inst = instance(undirected(4 * n, edges)?, QueryKind::PairMinDistance, Finite(3), Finite(5), has_triangle(g));
    inst.pairs = Some(pair_set(4 * n, (0..n).map(|v| (v, 3 * n + v)).collect())?);
    Ok(inst)
}

/// Like the 4-layer triangle instance but the middle layers are joined by
/// non-edges. The pair diameter is 3 if no vertex is simplicial and at least
/// 5 otherwise.
fn simplicial_pairs(g: &Graph) -> Result<GadgetInstance> {
    let n = g.n();
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if g.has_edge(u, v) {
                link(&mut edges, u, n + v);
                link(&mut edges, 2 * n + u, 3 * n + v);
            } else {
                link(&mut edges, n + u, 2 * n + v);
            }
        }
    }
    let truth = !has_simplicial_vertex(g);
    let mut inst = instance(undirected(4 * n, edges)?, QueryKind::PairDiameter, Finite(3), Finite(5), truth);
    inst.pairs = Some(pair_set(4 * n, (0..n).map(|v| (v, 3 * n + v)).collect())?);
    Ok(inst)
}

/// Keeps arcs from colour `i` to `i + 1`; arcs from colour `k − 1` back to
/// colour 0 are redirected to a copy of their head. Each colour-0 vertex is
/// paired with its copy, reachable exactly along a colourful `k`-cycle.
fn kcycle(g: &Graph, colors: &[usize], k: usize) -> Result<GadgetInstance> {
    if !g.is_directed() {
        return Err(crate::error::Error::UndirectedInput);
    }
    if k < 2 || colors.len() != g.n() || colors.iter().any(|&c| c >= k) {
        return Err(invalid("kcycle needs k >= 2 and one colour in 0..k per vertex"));
    }
    let n = g.n();
    let firsts: Vec<usize> = (0..n).filter(|&v| colors[v] == 0).collect();
    let mut copy = vec![usize::MAX; n];
    for (i, &v) in firsts.iter().enumerate() {
        copy[v] = n + i;
    }
    let mut arcs = Vec::new();
    for (_, e) in g.edges() {
        let (cu, cv) = (colors[e.u], colors[e.v]);
        if cu + 1 == cv {
            arcs.push((e.u, e.v, 1));
        } else if cu == k - 1 && cv == 0 {
            arcs.push((e.u, copy[e.v], 1));
        }
    }
    let nn = n + firsts.len();
    let graph = Graph::new(nn, true, &arcs)?;
    let mut inst = instance(graph, QueryKind::PairMinDistance, Finite(k as u64), Inf, has_colorful_cycle(g, colors, k));
    inst.pairs = Some(pair_set(nn, firsts.iter().map(|&v| (v, copy[v])).collect())?);
    Ok(inst)
}

/// Three copies of `V` joined pairwise by copies of `E`, with every edge
/// between the first two copies subdivided. A subdivision vertex lies on a
/// 4-cycle when its edge is on a triangle, otherwise on none shorter than 6.
fn edge_subdiv(g: &Graph) -> Result<GadgetInstance> {
    let n = g.n();
    let mut edges = BTreeSet::new();
    let mut targets = Vec::new();
    let mut truth = Vec::new();
    let mut next = 3 * n;
    for (_, e) in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            link(&mut edges, a, next);
            link(&mut edges, next, n + b);
            targets.push(next);
            truth.push(edge_in_triangle(g, a, b));
            next += 1;
            link(&mut edges, n + a, 2 * n + b);
            link(&mut edges, 2 * n + a, b);
        }
    }
    let any = truth.iter().any(|&t| t);
    let mut inst = instance(undirected(next, edges)?, QueryKind::PerVertexTarget, Finite(4), Finite(6), any);
    inst.targets = targets;
    inst.target_truth = Some(truth);
    Ok(inst)
}

/// Five copies of `V` plus four hubs. Every vertex has a cycle of length at
/// most 5 unless some base vertex is simplicial, in which case the middle
/// copy of that vertex has none shorter than 7.
fn simplicial_cycle(g: &Graph) -> Result<GadgetInstance> {
    let n = g.n();
    let c = |layer: usize, v: usize| layer * n + v;
    let z = 5 * n;
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if g.has_edge(u, v) {
                link(&mut edges, c(3, u), c(4, v));
                link(&mut edges, c(1, u), c(0, v));
            } else {
                link(&mut edges, c(0, u), c(4, v));
            }
        }
        link(&mut edges, c(1, u), c(2, u));
        link(&mut edges, c(2, u), c(3, u));
        link(&mut edges, z, c(0, u));
        link(&mut edges, z + 1, c(0, u));
        link(&mut edges, z + 2, c(4, u));
        link(&mut edges, z + 3, c(4, u));
    }
    link(&mut edges, z, z + 1);
    link(&mut edges, z + 2, z + 3);
    let truth = !has_simplicial_vertex(g);
    Ok(instance(undirected(5 * n + 4, edges)?, QueryKind::AnscCycleDiameter, Finite(5), Finite(7), truth))
}

/// Coordinate vertices `a_j`; for block `i`, vertices `u_i, v_i, w_i` with
/// `w_i` adjacent to both others, `u_i ~ a_j` iff `x_i[j]` and `v_i ~ a_j`
/// iff `y_i[j]`. `w_i` is on a 4-cycle iff the blocks intersect, otherwise
/// on nothing shorter than 6.
fn disjointness(n: usize, x: &[bool], y: &[bool]) -> Result<GadgetInstance> {
    if x.len() != n * n || y.len() != n * n {
        return Err(invalid(format!("bit vectors must have length {}", n * n)));
    }
    let (u, v, w) = (|i: usize| n + 3 * i, |i: usize| n + 3 * i + 1, |i: usize| n + 3 * i + 2);
    let mut edges = BTreeSet::new();
    for i in 0..n {
        link(&mut edges, u(i), w(i));
        link(&mut edges, v(i), w(i));
        for j in 0..n {
            if x[i * n + j] {
                link(&mut edges, u(i), j);
            }
            if y[i * n + j] {
                link(&mut edges, v(i), j);
            }
        }
    }
    let truth: Vec<bool> = (0..n).map(|i| block_intersects(n, x, y, i)).collect();
    let any = truth.iter().any(|&t| t);
    let mut inst = instance(undirected(4 * n, edges)?, QueryKind::PerVertexTarget, Finite(4), Finite(6), any);
    inst.targets = (0..n).map(w).collect();
    inst.target_truth = Some(truth);
    Ok(inst)
}

/// Random base for `kind` with `n` vertices (or blocks) and density `p`;
/// `plant` forces the yes side: a triangle, a colourful cycle, a shared
/// coordinate, or for the simplicial kinds a base with no simplicial vertex.
pub fn random_base(kind: LayeredKind, n: usize, p: f64, plant: bool, seed: u64) -> Result<Base> {
    let mut rng = seed::rng(seed, 0x6b);
    let p = p.clamp(0.0, 1.0);
    match kind {
        LayeredKind::KCycle(k) => {
            let colors: Vec<usize> = (0..n).map(|v| v % k.max(1)).collect();
            let mut arcs = BTreeSet::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(p) {
                        arcs.insert((a, b));
                    }
                }
            }
            if plant && n >= k {
                let cyc: Vec<usize> = (0..k).map(|c| c + k * rng.gen_range(0..=(n - 1 - c) / k)).collect();
                for i in 0..k {
                    arcs.insert((cyc[i], cyc[(i + 1) % k]));
                }
            }
            let arcs: Vec<_> = arcs.into_iter().map(|(a, b)| (a, b, 1)).collect();
            Ok(Base::Colored { graph: Graph::new(n, true, &arcs)?, colors })
        }
        LayeredKind::Disjointness => {
            let mut x: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(p)).collect();
            let mut y: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(p)).collect();
            if plant && n > 0 {
                let j = rng.gen_range(0..n * n);
                x[j] = true;
                y[j] = true;
            }
            Ok(Base::Bits { n, x, y })
        }
        LayeredKind::SimplicialPairs | LayeredKind::SimplicialCycle => {
            for attempt in 0..64 {
                let m = ((p * (n * n.saturating_sub(1) / 2) as f64).round() as usize).min(n * n.saturating_sub(1) / 2);
                let g = gen_random(n, m, 1, false, seed::split_seed(seed, attempt))?;
                if !plant || !has_simplicial_vertex(&g) {
                    return Ok(Base::Graph(g));
                }
            }
            if n < 4 {
                return Err(invalid("every graph on fewer than 4 vertices has a simplicial vertex"));
            }
            let cycle: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
            Ok(Base::Graph(Graph::new(n, false, &cycle)?))
        }
        _ => {
            let mut e = BTreeSet::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        e.insert((a, b));
                    }
                }
            }
            if plant && n >= 3 {
                let picks = rand::seq::index::sample(&mut rng, n, 3).into_vec();
                for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                    link(&mut e, picks[i], picks[j]);
                }
            }
            Ok(Base::Graph(undirected(n, e)?))
        }
    }
}
