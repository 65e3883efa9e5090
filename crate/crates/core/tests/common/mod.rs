//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's search code.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use girth::{Dist, Finite, Graph, Inf};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn adjacency(g: &Graph) -> Vec<Vec<(usize, u64, usize)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for (id, e) in g.edges() {
        adj[e.u].push((e.v, e.w, id));
        if !g.is_directed() {
            adj[e.v].push((e.u, e.w, id));
        }
    }
    adj
}

/// Shortest simple cycle through every vertex by enumerating all simple
/// cycles. Each cycle is generated from its smallest vertex.
pub fn enumerate_sc(g: &Graph) -> Vec<Dist> {
    let n = g.n();
    let adj = adjacency(g);
    let mut best = vec![Inf; n];
    let mut on = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for s in 0..n {
        on[s] = true;
        path.push(s);
        walk(g.is_directed(), &adj, s, s, None, 0, &mut on, &mut path, &mut best);
        path.pop();
        on[s] = false;
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn walk(
    directed: bool,
    adj: &[Vec<(usize, u64, usize)>],
    s: usize,
    v: usize,
    via: Option<usize>,
    len: u64,
    on: &mut [bool],
    path: &mut Vec<usize>,
    best: &mut [Dist],
) {
    for &(u, w, id) in &adj[v] {
        if Some(id) == via {
            continue;
        }
        if u == s {
            // undirected cycles need three vertices; directed ones two
            if directed || path.len() >= 3 {
                let c = Finite(len + w);
                for &x in path.iter() {
                    best[x] = best[x].min(c);
                }
            }
        } else if u > s && !on[u] {
            on[u] = true;
            path.push(u);
            walk(directed, adj, s, u, Some(id), len + w, on, path, best);
            path.pop();
            on[u] = false;
        }
    }
}

/// Plain binary-heap Dijkstra ignoring edge `skip`; returns distances and
/// the edge each vertex was reached by.
pub fn dijkstra_skip(g: &Graph, s: usize, skip: Option<usize>) -> (Vec<Dist>, Vec<Option<(usize, usize)>>) {
    let adj = adjacency(g);
    let mut dist = vec![Inf; g.n()];
    let mut via = vec![None; g.n()];
    let mut heap = BinaryHeap::new();
    dist[s] = Finite(0);
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if Finite(d) > dist[v] {
            continue;
        }
        for &(u, w, id) in &adj[v] {
            if Some(id) == skip {
                continue;
            }
            if Finite(d + w) < dist[u] {
                dist[u] = Finite(d + w);
                via[u] = Some((v, id));
                heap.push(Reverse((d + w, u)));
            }
        }
    }
    (dist, via)
}

pub fn distances(g: &Graph, s: usize) -> Vec<Dist> {
    dijkstra_skip(g, s, None).0
}

/// A shortest cycle through each vertex as `(length, vertices, edge ids)`.
pub fn cycle_witnesses(g: &Graph) -> Vec<Option<(u64, Vec<usize>, Vec<usize>)>> {
    let mut out: Vec<Option<(u64, Vec<usize>, Vec<usize>)>> = vec![None; g.n()];
    for (id, e) in g.edges() {
        let (dist, via) = dijkstra_skip(g, e.u, Some(id));
        let Finite(d) = dist[e.v] else { continue };
        let len = d + e.w;
        let mut verts = vec![e.v];
        let mut edges = vec![id];
        let mut x = e.v;
        while let Some((p, f)) = via[x] {
            verts.push(p);
            edges.push(f);
            x = p;
        }
        for &v in &verts {
            if out[v].as_ref().map_or(true, |c| len < c.0) {
                out[v] = Some((len, verts.clone(), edges.clone()));
            }
        }
    }
    out
}

/// Path-min forest by walking parent pointers of a rooted copy.
pub struct NaiveForest {
    pub val: Vec<Dist>,
    adj: Vec<Vec<usize>>,
}

impl NaiveForest {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> NaiveForest {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        NaiveForest { val: vec![Inf; n], adj }
    }

    /// Vertices on the tree path from `a` to `b`, or `None` if disconnected.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    queue.push_back(u);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut p = vec![b];
        let mut x = b;
        while x != a {
            x = prev[x];
            p.push(x);
        }
        Some(p)
    }

    pub fn update(&mut self, a: usize, b: usize, x: Dist) -> bool {
        match self.path(a, b) {
            Some(p) => {
                for v in p {
                    self.val[v] = self.val[v].min(x);
                }
                true
            }
            None => false,
        }
    }
}

/// Random forest on `n` vertices: each vertex after the first attaches to an
/// earlier one with probability `p`.
pub fn random_forest(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = Vec::new();
    for i in 1..n {
        if rng.gen_bool(p) {
            edges.push((perm[rng.gen_range(0..i)], perm[i]));
        }
    }
    edges
}

pub fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().map(|(_, e)| (e.u.min(e.v), e.u.max(e.v))).collect()
}

/// Some `k` distinct vertices all of whose `r`-subsets appear in `hyper`.
pub fn has_clique(n: usize, r: usize, hyper: &BTreeSet<Vec<usize>>, k: usize) -> bool {
    fn subsets(items: &[usize], r: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        fn go(items: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if cur.len() == r {
                return f(cur);
            }
            (start..items.len()).all(|i| {
                cur.push(items[i]);
                let ok = go(items, r, i + 1, cur, f);
                cur.pop();
                ok
            })
        }
        go(items, r, 0, &mut Vec::new(), f)
    }
    let all: Vec<usize> = (0..n).collect();
    !subsets(&all, k, &mut |set| !subsets(set, r, &mut |e| hyper.contains(e)))
}

pub fn triangle_through_edge(es: &BTreeSet<(usize, usize)>, n: usize, a: usize, b: usize) -> bool {
    let adj = |x: usize, y: usize| es.contains(&(x.min(y), x.max(y)));
    (0..n).any(|c| c != a && c != b && adj(a, c) && adj(b, c))
}

pub fn any_triangle(es: &BTreeSet<(usize, usize)>, n: usize) -> bool {
    es.iter().any(|&(a, b)| triangle_through_edge(es, n, a, b))
}

pub fn any_simplicial(es: &BTreeSet<(usize, usize)>, n: usize) -> bool {
    let adj = |x: usize, y: usize| es.contains(&(x.min(y), x.max(y)));
    (0..n).any(|v| {
        let nb: Vec<usize> = (0..n).filter(|&u| u != v && adj(u, v)).collect();
        nb.iter().all(|&a| nb.iter().all(|&b| a == b || adj(a, b)))
    })
}

/// Directed cycle `x_0 → x_1 → … → x_{k−1} → x_0` with `colors[x_i] = i`,
/// by trying every choice of one vertex per colour.
pub fn colorful_cycle(g: &Graph, colors: &[usize], k: usize) -> bool {
    let arcs: BTreeSet<(usize, usize)> = g.edges().map(|(_, e)| (e.u, e.v)).collect();
    let classes: Vec<Vec<usize>> = (0..k).map(|c| (0..g.n()).filter(|&v| colors[v] == c).collect()).collect();
    fn pick(classes: &[Vec<usize>], arcs: &BTreeSet<(usize, usize)>, chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == classes.len() {
            return arcs.contains(&(chosen[i - 1], chosen[0]));
        }
        classes[i].iter().any(|&v| {
            if i > 0 && !arcs.contains(&(chosen[i - 1], v)) {
                return false;
            }
            chosen.push(v);
            let ok = pick(classes, arcs, chosen);
            chosen.pop();
            ok
        })
    }
    pick(&classes, &arcs, &mut Vec::new())
}

pub fn ratio_ok(estimate: Dist, exact: Dist, bound: impl Fn(u64) -> f64) -> bool {
    match (exact, estimate) {
        (Finite(d), Finite(e)) => e >= d && e as f64 <= bound(d) + 1e-9,
        (Finite(_), Inf) => false,
        (Inf, e) => e == Inf,
    }
}
