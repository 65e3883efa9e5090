//! Cycle estimation on top of a Dijkstra tree.
//!
//! After a (possibly truncated) Dijkstra from `s`, every edge `(u, v)` whose
//! endpoints are both settled but which is not a tree edge closes the cycle
//! `tree path u..v + (u, v)` of length `w + d_T(u, v)`. That length is pushed
//! onto every vertex of the tree path with a path-min update, so each settled
//! vertex ends up with the shortest such cycle passing through it.

use crate::dist::{Dist, Finite, Inf};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linkcut::{Backend, PathMinForest};
use crate::sssp::{dijkstra, DistTree, TruncationPolicy};

/// Per-vertex cycle upper bounds merged over one or more runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEstimates {
    pub est: Vec<Dist>,
    /// Number of runs merged into these estimates.
    pub runs: u64,
    /// Arcs scanned across those runs.
    pub scanned: u64,
}

impl CycleEstimates {
    pub fn infinite(n: usize) -> CycleEstimates {
        CycleEstimates { est: vec![Inf; n], runs: 0, scanned: 0 }
    }

    pub fn n(&self) -> usize {
        self.est.len()
    }

    /// Pointwise minimum; counters add up.
    pub fn merge(&self, other: &CycleEstimates) -> Result<CycleEstimates> {
        let mut out = self.clone();
        out.absorb(other)?;
        Ok(out)
    }

    pub fn absorb(&mut self, other: &CycleEstimates) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        for (a, &b) in self.est.iter_mut().zip(&other.est) {
            if b < *a {
                *a = b;
            }
        }
        self.runs += other.runs;
        self.scanned += other.scanned;
        Ok(())
    }
}

/// A single estimation run together with the tree it was computed on.
#[derive(Clone, Debug)]
pub struct CycleRun {
    pub estimates: CycleEstimates,
    pub tree: DistTree,
    /// Non-tree edges that triggered an update, with the value pushed.
    pub updates: Vec<(usize, Dist)>,
}

pub fn cycle_estimation_dijkstra(g: &Graph, s: usize, policy: &TruncationPolicy) -> Result<CycleEstimates> {
    cycle_estimation_run(g, s, policy, false).map(|r| r.estimates)
}

/// Like [`cycle_estimation_dijkstra`] but keeps the tree; `record` also keeps
/// the list of updates performed.
pub fn cycle_estimation_run(g: &Graph, s: usize, policy: &TruncationPolicy, record: bool) -> Result<CycleRun> {
    cycle_estimation_with(g, s, policy, record, Backend::Splay)
}

pub fn cycle_estimation_with(
    g: &Graph,
    s: usize,
    policy: &TruncationPolicy,
    record: bool,
    backend: Backend,
) -> Result<CycleRun> {
    g.require_undirected()?;
    g.check_vertex(s)?;
    let tree = dijkstra(g, s, policy);
    let k = tree.order.len();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in tree.order.iter().enumerate() {
        local[v] = i;
    }
    let tree_pairs: Vec<(usize, usize)> = tree
        .tree_edges()
        .into_iter()
        .map(|(p, c)| (local[p], local[c]))
        .collect();
    let mut forest = PathMinForest::build_with(backend, &tree_pairs, k)?;
    let lca = Lca::new(&tree, &local);
    let mut updates = Vec::new();
    // Replay exactly the arcs the search scanned, in the same order. An edge
    // between two settled vertices was scanned from the one settled first.
    let mut budget = tree.explored;
    'replay: for &u in &tree.order {
        for a in g.arcs(u) {
            if !policy.admits(a) {
                continue;
            }
            if budget == 0 {
                break 'replay;
            }
            budget -= 1;
            let v = a.to;
            if local[v] == usize::MAX || local[v] < local[u] {
                continue;
            }
            if tree.parent_edge[v] == Some(a.edge) {
                continue;
            }
            let (lu, lv) = (local[u], local[v]);
            let meet = tree.order[lca.query(lu, lv)];
            let dm = tree.dist[meet].unwrap();
            let len = a.w + tree.dist[u].unwrap() + tree.dist[v].unwrap() - 2 * dm;
            forest.path_min_update(lu, lv, Finite(len))?;
            if record {
                updates.push((a.edge, Finite(len)));
            }
        }
    }
    let mut est = vec![Inf; g.n()];
    for (i, &v) in tree.order.iter().enumerate() {
        est[v] = forest.query(i)?;
    }
    Ok(CycleRun { estimates: CycleEstimates { est, runs: 1, scanned: tree.explored }, tree, updates })
}

/// Binary-lifting ancestor table over the settled vertices, indexed by settle order.
struct Lca {
    depth: Vec<u32>,
    up: Vec<Vec<u32>>,
}

impl Lca {
    fn new(tree: &DistTree, local: &[usize]) -> Lca {
        let k = tree.order.len();
        let mut depth = vec![0u32; k];
        let mut parent = vec![0u32; k];
        for (i, &v) in tree.order.iter().enumerate() {
            match tree.parent[v] {
                Some(p) => {
                    let lp = local[p];
                    parent[i] = lp as u32;
                    depth[i] = depth[lp] + 1;
                }
                None => parent[i] = i as u32,
            }
        }
        let levels = (usize::BITS - k.max(1).leading_zeros()) as usize;
        let mut up = vec![parent];
        for j in 1..levels.max(1) {
            let prev = &up[j - 1];
            let next = prev.iter().map(|&x| prev[x as usize]).collect();
            up.push(next);
        }
        Lca { depth, up }
    }

    fn query(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u32, b as u32);
        if self.depth[a as usize] < self.depth[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        let diff = self.depth[a as usize] - self.depth[b as usize];
        for (j, row) in self.up.iter().enumerate() {
            if diff >> j & 1 == 1 {
                a = row[a as usize];
            }
        }
        if a == b {
            return a as usize;
        }
        for row in self.up.iter().rev() {
            if row[a as usize] != row[b as usize] {
                a = row[a as usize];
                b = row[b as usize];
            }
        }
        self.up[0][a as usize] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(g: &Graph, s: usize) -> Vec<Dist> {
        cycle_estimation_dijkstra(g, s, &TruncationPolicy::none()).unwrap().est
    }

    #[test]
    fn triangle_and_square() {
        let t = Graph::parse_str("3 3 u\n0 1 1\n1 2 1\n2 0 1").unwrap();
        for s in 0..3 {
            assert_eq!(full(&t, s), vec![Finite(3); 3]);
        }
        let c4 = Graph::parse_str("4 4 u\n0 1 1\n1 2 1\n2 3 1\n3 0 1").unwrap();
        for s in 0..4 {
            assert_eq!(full(&c4, s), vec![Finite(4); 4]);
        }
    }

    #[test]
    fn lollipop_bound() {
        // triangle 0,1,2 with tail 2-3-4, source 4
        let g = Graph::parse_str("5 5 u\n0 1 1\n1 2 1\n2 0 1\n2 3 1\n3 4 1").unwrap();
        let est = full(&g, 4);
        for v in 0..3 {
            assert!(est[v] >= Finite(3) && est[v] <= Finite(7), "{v}: {}", est[v]);
        }
        assert_eq!(est[3], Inf);
        assert_eq!(est[4], Inf);
    }

    #[test]
    fn rejects_directed() {
        let g = Graph::parse_str("2 1 d\n0 1 1").unwrap();
        assert!(matches!(
            cycle_estimation_dijkstra(&g, 0, &TruncationPolicy::none()),
            Err(Error::DirectedInput)
        ));
    }

    #[test]
    fn merge_rules() {
        let a = CycleEstimates { est: vec![Finite(3), Inf], runs: 1, scanned: 4 };
        let inf = CycleEstimates::infinite(2);
        assert_eq!(a.merge(&inf).unwrap().est, a.est);
        assert_eq!(a.merge(&inf).unwrap().runs, 1);
        assert!(a.merge(&CycleEstimates::infinite(3)).is_err());
    }

    #[test]
    fn zero_weight_tree_has_no_phantom_cycle() {
        let g = crate::graph::gen_random(40, 300, 3, false, 11).unwrap();
        let (h, map) = crate::graph::degree_uniformize(&g, &|_| false, 3).unwrap();
        for s in 0..h.n() {
            let est = full(&h, s);
            for (x, d) in est.iter().enumerate() {
                if let Finite(c) = d {
                    assert!(*c >= 3, "vertex {x} (origin {}) has cycle {c}", map.origin(x));
                }
            }
        }
    }
}
