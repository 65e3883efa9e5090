//! Thorup–Zwick levels, pivots, bunches and clusters.
//!
//! Levels `A_0 = V ⊇ A_1 ⊇ … ⊇ A_{k-1}` are nested random samples and
//! `A_k = ∅`. For a landmark `w ∈ A_i \ A_{i+1}` the cluster is
//! `C(w) = { v : d(v, w) < d(v, A_{i+1}) }`; the bunch of `v` is the set of
//! landmarks whose cluster contains `v`. Clusters are closed under shortest
//! paths towards their landmark, so the union of the cluster shortest-path
//! trees is itself a useful spanner.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use crate::dist::{Dist, Finite, Inf};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::seed;
use crate::sssp::multi_source_dijkstra;

#[derive(Clone, Debug)]
pub struct TzOracle {
    k: usize,
    /// `levels[i]` lists `A_i` in increasing id order.
    levels: Vec<Vec<usize>>,
    /// Highest level containing each vertex.
    level: Vec<usize>,
    pivot: Vec<Vec<Option<usize>>>,
    pivot_dist: Vec<Vec<Dist>>,
    /// Per vertex: `(landmark, distance)` sorted by landmark.
    bunch: Vec<Vec<(usize, u64)>>,
    cluster_edges: Vec<usize>,
}

/// Outcome of one distance query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TzAnswer {
    pub estimate: Dist,
    /// Bunch entries compared by the intersection step.
    pub merge_work: u64,
    /// Number of pivot-ascent steps taken.
    pub ascent_steps: usize,
}

impl TzOracle {
    pub fn build(g: &Graph, k: usize, seed: u64) -> Result<TzOracle> {
        g.require_undirected()?;
        if k < 2 {
            return Err(invalid("k must be at least 2"));
        }
        let n = g.n();
        let mut rng = seed::rng(seed, 0x7a);
        let p = (n.max(2) as f64).powf(-1.0 / k as f64);
        let mut levels = vec![(0..n).collect::<Vec<usize>>()];
        for _ in 1..k {
            let prev = levels.last().unwrap();
            let mut next: Vec<usize> = prev.iter().copied().filter(|_| rng.gen_bool(p)).collect();
            if next.is_empty() && !prev.is_empty() {
                next.push(prev[rng.gen_range(0..prev.len())]);
            }
            levels.push(next);
        }
        let mut level = vec![0; n];
        for (i, a) in levels.iter().enumerate() {
            for &v in a {
                level[v] = i;
            }
        }
        let mut pivot = Vec::with_capacity(k + 1);
        let mut pivot_dist = Vec::with_capacity(k + 1);
        for a in &levels {
            if a.is_empty() {
                pivot.push(vec![None; n]);
                pivot_dist.push(vec![Inf; n]);
            } else {
                let t = multi_source_dijkstra(g, a);
                pivot.push(t.nearest);
                pivot_dist.push(t.dist);
            }
        }
        pivot.push(vec![None; n]);
        pivot_dist.push(vec![Inf; n]);

        let mut bunch: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        let mut in_tree = vec![false; g.edge_id_bound()];
        let mut dist = vec![0u64; n];
        let mut stamp = vec![usize::MAX; n];
        let mut done = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        for w in 0..n {
            let bound = &pivot_dist[level[w] + 1];
            if Finite(0) >= bound[w] {
                continue;
            }
            stamp[w] = w;
            dist[w] = 0;
            via[w] = usize::MAX;
            heap.push(Reverse((0u64, w)));
            while let Some(Reverse((d, v))) = heap.pop() {
                if done[v] == w || dist[v] != d {
                    continue;
                }
                done[v] = w;
                bunch[v].push((w, d));
                if via[v] != usize::MAX {
                    in_tree[via[v]] = true;
                }
                for a in g.arcs(v) {
                    let cand = d + a.w;
                    if Finite(cand) >= bound[a.to] || done[a.to] == w {
                        continue;
                    }
                    if stamp[a.to] != w || cand < dist[a.to] {
                        stamp[a.to] = w;
                        dist[a.to] = cand;
                        via[a.to] = a.edge;
                        heap.push(Reverse((cand, a.to)));
                    }
                }
            }
        }
        for b in &mut bunch {
            b.sort_unstable();
        }
        let cluster_edges = (0..in_tree.len()).filter(|&e| in_tree[e]).collect();
        Ok(TzOracle { k, levels, level, pivot, pivot_dist, bunch, cluster_edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.level.len()
    }

    pub fn level_set(&self, i: usize) -> &[usize] {
        &self.levels[i]
    }

    pub fn level_of(&self, v: usize) -> usize {
        self.level[v]
    }

    /// Nearest member of `A_i` (lowest id among ties) and its distance.
    pub fn pivot(&self, i: usize, v: usize) -> (Option<usize>, Dist) {
        (self.pivot[i][v], self.pivot_dist[i][v])
    }

    pub fn bunch(&self, v: usize) -> &[(usize, u64)] {
        &self.bunch[v]
    }

    pub fn bunch_dist(&self, v: usize, w: usize) -> Option<u64> {
        let b = &self.bunch[v];
        b.binary_search_by_key(&w, |&(x, _)| x).ok().map(|i| b[i].1)
    }

    pub fn total_bunch_size(&self) -> usize {
        self.bunch.iter().map(Vec::len).sum()
    }

    /// Edge ids of the union of all cluster shortest-path trees.
    pub fn cluster_edges(&self) -> &[usize] {
        &self.cluster_edges
    }

    /// Classic query: `w ← s`; while `w ∉ B(t)` climb a level, swap roles and
    /// move `w` to the next pivot.
    pub fn query(&self, s: usize, t: usize) -> Dist {
        self.ascend(s, t, 0).0
    }

    /// Best meeting landmark in `B(s) ∩ B(t)`, or the climb starting at level 1
    /// from whichever endpoint is closer to `A_1`, whichever is shorter. When
    /// neither endpoint has an `A_1` vertex within `⌈d/2⌉`, the midpoint of a
    /// shortest path lies in both bunches, so the first term is exact.
    pub fn query_intersect(&self, s: usize, t: usize) -> TzAnswer {
        let (bs, bt) = (&self.bunch[s], &self.bunch[t]);
        let (mut i, mut j) = (0, 0);
        let mut best = Inf;
        let mut merge_work = 0u64;
        while i < bs.len() && j < bt.len() {
            merge_work += 1;
            match bs[i].0.cmp(&bt[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    best = best.min(Finite(bs[i].1 + bt[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        let (u, v) = if self.pivot_dist[1][t] < self.pivot_dist[1][s] { (t, s) } else { (s, t) };
        let (climbed, ascent_steps) = self.ascend(u, v, 1);
        TzAnswer { estimate: best.min(climbed), merge_work, ascent_steps }
    }

    fn ascend(&self, mut u: usize, mut v: usize, start: usize) -> (Dist, usize) {
        let mut i = start;
        let mut steps = 0;
        loop {
            if i >= self.k {
                return (Inf, steps);
            }
            let (w, du) = if i == 0 { (Some(u), Finite(0)) } else { (self.pivot[i][u], self.pivot_dist[i][u]) };
            let Some(w) = w else { return (Inf, steps) };
            if let Some(dv) = self.bunch_dist(v, w) {
                return (du.plus(dv), steps);
            }
            i += 1;
            steps += 1;
            std::mem::swap(&mut u, &mut v);
        }
    }
}
