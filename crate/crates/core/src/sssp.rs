//! Dijkstra with composable truncation, multi-source runs and hitting-set sampling.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::{Dist, Finite, Inf};
use crate::graph::Graph;

/// Stopping rules for a Dijkstra run; every rule that is set applies.
#[derive(Clone, Copy, Default)]
pub struct TruncationPolicy<'a> {
    /// Stop once this many arcs have been scanned.
    pub edge_budget: Option<u64>,
    /// Stop once this many vertices have been settled.
    pub vertex_budget: Option<usize>,
    /// With a vertex budget, only vertices passing this predicate are counted.
    pub counted: Option<&'a dyn Fn(usize) -> bool>,
    /// Settle only vertices at distance at most this value.
    pub radius: Option<u64>,
    /// Vertices failing the predicate are discarded when popped (the source is exempt).
    pub label_filter: Option<&'a dyn Fn(usize) -> bool>,
    /// Treat this edge id as deleted.
    pub skip_edge: Option<usize>,
    /// Restrict the search to the subgraph induced by vertices passing this
    /// predicate; arcs leaving it are neither scanned nor counted.
    pub induced: Option<&'a dyn Fn(usize) -> bool>,
    /// Restrict the search to edges whose id passes this predicate.
    pub edge_filter: Option<&'a dyn Fn(usize) -> bool>,
    /// Stop as soon as this vertex is settled.
    pub target: Option<usize>,
}

impl<'a> TruncationPolicy<'a> {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn edge_budget(b: u64) -> Self {
        Self { edge_budget: Some(b.max(1)), ..Self::default() }
    }

    pub fn vertex_budget(b: usize) -> Self {
        Self { vertex_budget: Some(b.max(1)), ..Self::default() }
    }

    pub fn radius(r: u64) -> Self {
        Self { radius: Some(r), ..Self::default() }
    }

    pub fn with_filter(mut self, f: &'a dyn Fn(usize) -> bool) -> Self {
        self.label_filter = Some(f);
        self
    }

    pub fn with_counted(mut self, f: &'a dyn Fn(usize) -> bool) -> Self {
        self.counted = Some(f);
        self
    }

    pub fn with_radius(mut self, r: u64) -> Self {
        self.radius = Some(r);
        self
    }

    pub fn skipping(mut self, edge: usize) -> Self {
        self.skip_edge = Some(edge);
        self
    }

    pub fn within(mut self, f: &'a dyn Fn(usize) -> bool) -> Self {
        self.induced = Some(f);
        self
    }

    pub fn edges_where(mut self, f: &'a dyn Fn(usize) -> bool) -> Self {
        self.edge_filter = Some(f);
        self
    }

    pub fn until(mut self, t: usize) -> Self {
        self.target = Some(t);
        self
    }

    /// Whether the search looks at this arc at all.
    pub(crate) fn admits(&self, a: &crate::graph::Arc) -> bool {
        Some(a.edge) != self.skip_edge
            && self.induced.is_none_or(|f| f(a.to))
            && self.edge_filter.is_none_or(|f| f(a.edge))
    }
}

/// Result of a (possibly truncated) Dijkstra run. Only settled vertices carry
/// finite distances.
#[derive(Clone, Debug)]
pub struct DistTree {
    pub sources: Vec<usize>,
    pub dist: Vec<Dist>,
    pub parent: Vec<Option<usize>>,
    pub parent_edge: Vec<Option<usize>>,
    pub nearest: Vec<Option<usize>>,
    /// Settled vertices in settling order.
    pub order: Vec<usize>,
    /// Arcs scanned during the run.
    pub explored: u64,
}

impl DistTree {
    pub fn is_settled(&self, v: usize) -> bool {
        self.dist[v].is_finite()
    }

    /// Settled vertices within distance `r`.
    pub fn ball(&self, r: u64) -> impl Iterator<Item = usize> + '_ {
        self.order
            .iter()
            .copied()
            .take_while(move |&v| self.dist[v] <= Finite(r))
    }

    /// The first `x` settled vertices.
    pub fn nearest_set(&self, x: usize) -> &[usize] {
        &self.order[..x.min(self.order.len())]
    }

    /// Distance of the `i`-th settled vertex (0-based), if that many were settled.
    pub fn radius_of(&self, i: usize) -> Option<u64> {
        self.order.get(i).map(|&v| self.dist[v].unwrap())
    }

    /// Tree path from the root of `v`'s tree down to `v`.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut p = vec![v];
        let mut x = v;
        while let Some(y) = self.parent[x] {
            p.push(y);
            x = y;
        }
        p.reverse();
        p
    }

    /// Settled non-source vertices paired with their parents.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.order
            .iter()
            .filter_map(|&v| self.parent[v].map(|p| (p, v)))
            .collect()
    }
}

pub fn dijkstra(g: &Graph, s: usize, policy: &TruncationPolicy) -> DistTree {
    run(g, &[s], policy)
}

/// Distances to the nearest of `sources`; ties go to the lowest source id and
/// every tree path stays inside one source's region.
pub fn multi_source_dijkstra(g: &Graph, sources: &[usize]) -> DistTree {
    run(g, sources, &TruncationPolicy::none())
}

fn run(g: &Graph, sources: &[usize], policy: &TruncationPolicy) -> DistTree {
    let n = g.n();
    let mut best: Vec<Option<(u64, usize)>> = vec![None; n];
    let mut tree = DistTree {
        sources: sources.to_vec(),
        dist: vec![Inf; n],
        parent: vec![None; n],
        parent_edge: vec![None; n],
        nearest: vec![None; n],
        order: Vec::new(),
        explored: 0,
    };
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        if best[s].is_none() {
            best[s] = Some((0, s));
            heap.push(Reverse((0u64, s, s)));
        }
    }
    let mut counted = 0usize;
    'outer: while let Some(Reverse((d, src, v))) = heap.pop() {
        if done[v] || best[v] != Some((d, src)) {
            continue;
        }
        if policy.radius.is_some_and(|r| d > r) {
            break;
        }
        if let Some(f) = policy.label_filter {
            if !f(v) && !sources.contains(&v) {
                done[v] = true;
                continue;
            }
        }
        done[v] = true;
        tree.dist[v] = Finite(d);
        tree.nearest[v] = Some(src);
        tree.order.push(v);
        if let Some(b) = policy.vertex_budget {
            if policy.counted.is_none_or(|c| c(v)) {
                counted += 1;
            }
            if counted >= b {
                break;
            }
        }
        if policy.target == Some(v) {
            break;
        }
        for a in g.arcs(v) {
            if !policy.admits(a) {
                continue;
            }
            if policy.edge_budget.is_some_and(|b| tree.explored >= b) {
                break 'outer;
            }
            tree.explored += 1;
            if done[a.to] {
                continue;
            }
            let cand = (d + a.w, src);
            if best[a.to].is_none_or(|cur| cand < cur) {
                best[a.to] = Some(cand);
                tree.parent[a.to] = Some(v);
                tree.parent_edge[a.to] = Some(a.edge);
                heap.push(Reverse((cand.0, cand.1, a.to)));
            }
        }
    }
    for v in 0..n {
        if !tree.dist[v].is_finite() {
            tree.parent[v] = None;
            tree.parent_edge[v] = None;
        }
    }
    tree
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    Vertices,
    Edges,
}

/// Random ids meant to intersect every vertex's `x` nearest vertices or edges.
#[derive(Clone, Debug, PartialEq)]
pub struct HittingSample {
    pub ids: Vec<usize>,
    pub universe: Universe,
    pub coverage: f64,
    pub seed: u64,
}

/// Multiplier in the hitting-set size `c · (U / x) · ln n`.
pub const HITTING_CONSTANT: f64 = 3.0;

pub fn hitting_sample_size(universe_size: usize, x: f64, n: usize) -> usize {
    let ln_n = (n.max(2) as f64).ln();
    let want = (HITTING_CONSTANT * (universe_size as f64 / x.max(1.0)) * ln_n).ceil() as usize;
    want.min(universe_size)
}

/// Samples from `universe` (vertex ids or edge ids of a graph with `n` vertices)
/// without replacement. Output ids are sorted.
pub fn sample_hitting(kind: Universe, universe: &[usize], x: f64, n: usize, seed: u64) -> HittingSample {
    let size = hitting_sample_size(universe.len(), x, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = index::sample(&mut rng, universe.len(), size)
        .into_iter()
        .map(|i| universe[i])
        .collect();
    ids.sort_unstable();
    HittingSample { ids, universe: kind, coverage: x, seed }
}

/// Vertex sample over all of `g`.
pub fn sample_vertices(g: &Graph, x: f64, seed: u64) -> HittingSample {
    let all: Vec<usize> = (0..g.n()).collect();
    sample_hitting(Universe::Vertices, &all, x, g.n(), seed)
}

/// Edge sample over all live edges of `g`.
pub fn sample_edges(g: &Graph, x: f64, seed: u64) -> HittingSample {
    let all: Vec<usize> = g.edges().map(|(i, _)| i).collect();
    sample_hitting(Universe::Edges, &all, x, g.n(), seed)
}

/// Sorted, deduplicated endpoints of the sampled edges.
pub fn endpoints(g: &Graph, edge_ids: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = edge_ids
        .iter()
        .flat_map(|&e| {
            let e = g.edge(e).expect("sampled edge exists");
            [e.u, e.v]
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_random;

    #[test]
    fn path_distances() {
        let g = Graph::parse_str("3 2 u\n0 1 1\n1 2 1").unwrap();
        let t = dijkstra(&g, 0, &TruncationPolicy::none());
        assert_eq!(t.dist, vec![Finite(0), Finite(1), Finite(2)]);
        assert_eq!(t.path_to(2), vec![0, 1, 2]);
    }

    #[test]
    fn vertex_budget_on_k4() {
        let g = gen_random(4, 6, 1, false, 0).unwrap();
        let t = dijkstra(&g, 0, &TruncationPolicy::vertex_budget(2));
        assert_eq!(t.order.len(), 2);
        assert_eq!(t.order, vec![0, 1]);
        assert_eq!(t.dist.iter().filter(|d| d.is_finite()).count(), 2);
    }

    #[test]
    fn radius_is_inclusive() {
        let g = Graph::parse_str("4 3 u\n0 1 2\n1 2 2\n2 3 2").unwrap();
        let t = dijkstra(&g, 0, &TruncationPolicy::radius(4));
        assert_eq!(t.order, vec![0, 1, 2]);
    }

    #[test]
    fn filter_blocks_paths() {
        let g = Graph::parse_str("4 4 u\n0 1 1\n1 3 1\n0 2 5\n2 3 5").unwrap();
        let off = |v: usize| v != 1;
        let t = dijkstra(&g, 0, &TruncationPolicy::none().with_filter(&off));
        assert_eq!(t.dist[3], Finite(10));
        assert_eq!(t.dist[1], Inf);
        let t = dijkstra(&g, 1, &TruncationPolicy::none().with_filter(&off));
        assert_eq!(t.dist[1], Finite(0));
    }

    #[test]
    fn skip_edge_punctures() {
        let g = Graph::parse_str("3 3 u\n0 1 1\n1 2 1\n2 0 1").unwrap();
        let t = dijkstra(&g, 0, &TruncationPolicy::none().skipping(0));
        assert_eq!(t.dist[1], Finite(2));
    }

    #[test]
    fn multi_source_ties_and_all_sources() {
        let g = Graph::parse_str("3 2 u\n0 1 1\n1 2 1").unwrap();
        let t = multi_source_dijkstra(&g, &[2, 0]);
        assert_eq!(t.nearest[1], Some(0));
        let all: Vec<usize> = (0..3).collect();
        let t = multi_source_dijkstra(&g, &all);
        assert!(t.dist.iter().all(|&d| d == Finite(0)));
    }

    #[test]
    fn sample_sizes() {
        let univ: Vec<usize> = (0..1000).collect();
        let s = sample_hitting(Universe::Vertices, &univ, 1000.0, 1000, 5);
        assert_eq!(s.ids.len(), (3.0 * (1000f64).ln()).ceil() as usize);
        assert_eq!(s, sample_hitting(Universe::Vertices, &univ, 1000.0, 1000, 5));
        let s = sample_hitting(Universe::Vertices, &univ, 1.0, 1000, 5);
        assert_eq!(s.ids.len(), 1000);
    }
}
