//! Adjacency-array graphs with stable edge ids, the edge-list text format,
//! random generation and structural transforms.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

impl Edge {
    /// The endpoint opposite `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// One direction of an edge as seen from its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub to: usize,
    pub w: u64,
    pub edge: usize,
}

/// Immutable simple graph. Undirected edges appear as two arcs with one id.
///
/// Edge ids need not be dense: [`Graph::restrict_edges`] keeps the ids of the
/// surviving edges, so `edge_id_bound` may exceed `m`.
#[derive(Clone, Debug)]
pub struct Graph {
    directed: bool,
    n: usize,
    m: usize,
    max_weight: u64,
    edges: Vec<Option<Edge>>,
    offsets: Vec<usize>,
    arcs: Vec<Arc>,
}

impl Graph {
    /// Builds a graph from `(u, v, w)` triples with ids `0..edges.len()`.
    /// Weights must be at least 1.
    pub fn new(n: usize, directed: bool, edges: &[(usize, usize, u64)]) -> Result<Graph> {
        for &(u, v, w) in edges {
            if w == 0 {
                return Err(invalid(format!("edge ({u}, {v}) has weight 0")));
            }
        }
        let slots = edges
            .iter()
            .map(|&(u, v, w)| Some(Edge { u, v, w }))
            .collect();
        Graph::from_slots(n, directed, slots)
    }

    /// Accepts zero weights; used by transforms that add weightless gadget edges.
    pub(crate) fn from_slots(n: usize, directed: bool, edges: Vec<Option<Edge>>) -> Result<Graph> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut deg = vec![0usize; n + 1];
        let mut m = 0;
        let mut max_weight = 1;
        for e in edges.iter().flatten() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.u == e.v {
                return Err(invalid(format!("self-loop at vertex {}", e.u)));
            }
            let key = if directed { (e.u, e.v) } else { (e.u.min(e.v), e.u.max(e.v)) };
            if !seen.insert(key) {
                return Err(invalid(format!("parallel edge ({}, {})", e.u, e.v)));
            }
            deg[e.u] += 1;
            if !directed {
                deg[e.v] += 1;
            }
            m += 1;
            max_weight = max_weight.max(e.w);
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut arcs = vec![Arc { to: 0, w: 0, edge: 0 }; offsets[n]];
        for (id, e) in edges.iter().enumerate() {
            if let Some(e) = e {
                arcs[fill[e.u]] = Arc { to: e.v, w: e.w, edge: id };
                fill[e.u] += 1;
                if !directed {
                    arcs[fill[e.v]] = Arc { to: e.u, w: e.w, edge: id };
                    fill[e.v] += 1;
                }
            }
        }
        for v in 0..n {
            arcs[offsets[v]..offsets[v + 1]].sort_unstable_by_key(|a| (a.to, a.edge));
        }
        Ok(Graph { directed, n, m, max_weight, edges, offsets, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Largest edge weight, 1 for edgeless graphs.
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges().all(|(_, e)| e.w == 1)
    }

    /// One more than the largest edge id in use.
    pub fn edge_id_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> Option<Edge> {
        self.edges.get(id).copied().flatten()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, Edge)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (i, e)))
    }

    /// Outgoing arcs of `v`, sorted by head then edge id.
    pub fn arcs(&self, v: usize) -> &[Arc] {
        &self.arcs[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.find_edge(u, v).is_some()
    }

    /// Id of the edge from `u` to `v` (either orientation when undirected).
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let a = self.arcs(u);
        a.binary_search_by_key(&v, |x| x.to).ok().map(|i| a[i].edge)
    }

    pub fn require_undirected(&self) -> Result<()> {
        if self.directed {
            Err(Error::DirectedInput)
        } else {
            Ok(())
        }
    }

    pub fn require_unweighted(&self) -> Result<()> {
        if self.is_unweighted() {
            Ok(())
        } else {
            Err(Error::WeightedInput { max_weight: self.max_weight })
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Same vertex set, keeping the edges whose id satisfies `keep`.
    pub fn restrict_edges(&self, mut keep: impl FnMut(usize) -> bool) -> Graph {
        let slots = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| e.filter(|_| keep(i)))
            .collect();
        Graph::from_slots(self.n, self.directed, slots).expect("subgraph of a valid graph")
    }

    /// Edges in serialization order: by (min endpoint, max endpoint, weight).
    pub fn canonical_edges(&self) -> Vec<Edge> {
        let mut es: Vec<Edge> = self
            .edges()
            .map(|(_, e)| {
                if self.directed || e.u < e.v {
                    e
                } else {
                    Edge { u: e.v, v: e.u, w: e.w }
                }
            })
            .collect();
        es.sort_unstable_by_key(|e| (e.u.min(e.v), e.u.max(e.v), e.w, e.u));
        es
    }

    /// Writes the edge-list text format in canonical order.
    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        let f = if self.directed { 'd' } else { 'u' };
        writeln!(out, "{} {} {}", self.n, self.m, f)?;
        for e in self.canonical_edges() {
            writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.save(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parses the edge-list text format. Errors carry the 1-based line number.
    pub fn load<R: BufRead>(input: R) -> Result<Graph> {
        let mut header: Option<(usize, usize, bool, usize)> = None;
        let mut edges: Vec<(usize, usize, u64)> = Vec::new();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut last_line = 0;
        for (i, line) in input.lines().enumerate() {
            let lineno = i + 1;
            last_line = lineno;
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno, msg };
            let fields: Vec<&str> = text.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 3 {
                        return Err(err(format!("malformed header `{text}`, expected `n m u|d`")));
                    }
                    let n = fields[0]
                        .parse()
                        .map_err(|_| err(format!("malformed vertex count `{}`", fields[0])))?;
                    let m = fields[1]
                        .parse()
                        .map_err(|_| err(format!("malformed edge count `{}`", fields[1])))?;
                    let directed = match fields[2] {
                        "u" => false,
                        "d" => true,
                        other => return Err(err(format!("unknown graph kind `{other}`"))),
                    };
                    header = Some((n, m, directed, lineno));
                }
                Some((n, m, directed, _)) => {
                    if fields.len() != 3 {
                        return Err(err(format!("expected `u v w`, found `{text}`")));
                    }
                    if edges.len() == m {
                        return Err(err(format!("more than the declared {m} edges")));
                    }
                    let mut ids = [0usize; 2];
                    for (slot, f) in ids.iter_mut().zip(&fields[..2]) {
                        if f.starts_with('-') {
                            return Err(err(format!("negative vertex id `{f}`")));
                        }
                        *slot = f.parse().map_err(|_| err(format!("malformed vertex id `{f}`")))?;
                        if *slot >= n {
                            return Err(err(format!("vertex id {slot} out of range (n = {n})")));
                        }
                    }
                    let [u, v] = ids;
                    if fields[2].starts_with('-') {
                        return Err(err(format!("negative weight `{}`", fields[2])));
                    }
                    let w: u64 = fields[2]
                        .parse()
                        .map_err(|_| err(format!("malformed weight `{}`", fields[2])))?;
                    if w == 0 {
                        return Err(err("weight must be at least 1".into()));
                    }
                    if u == v {
                        return Err(err(format!("self-loop at vertex {u}")));
                    }
                    let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
                    if !seen.insert(key) {
                        return Err(err(format!("duplicate edge ({u}, {v})")));
                    }
                    edges.push((u, v, w));
                }
            }
        }
        let Some((n, m, directed, hline)) = header else {
            return Err(Error::Parse { line: last_line.max(1), msg: "missing header".into() });
        };
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges but {} were found", edges.len()),
            });
        }
        Graph::new(n, directed, &edges)
    }

    pub fn parse_str(s: &str) -> Result<Graph> {
        Graph::load(s.as_bytes())
    }

    pub fn load_path(path: impl AsRef<std::path::Path>) -> Result<Graph> {
        let f = std::fs::File::open(path)?;
        Graph::load(std::io::BufReader::new(f))
    }

    /// Vertex-induced subgraph on `keep`, preserving vertex and edge ids.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        self.restrict_edges(|id| {
            let e = self.edges[id].expect("live edge");
            keep[e.u] && keep[e.v]
        })
    }

    /// Union of edge-id sets, as a subgraph of `self`.
    pub fn subgraph_from_ids(&self, ids: &[usize]) -> Graph {
        let mut keep = vec![false; self.edges.len()];
        for &i in ids {
            keep[i] = true;
        }
        self.restrict_edges(|i| keep[i])
    }
}

impl PartialEq for Graph {
    /// Structural equality: same kind, vertex count and canonical edge list.
    fn eq(&self, other: &Graph) -> bool {
        self.directed == other.directed
            && self.n == other.n
            && self.canonical_edges() == other.canonical_edges()
    }
}

impl Eq for Graph {}

/// Maximum number of edges in a simple graph on `n` vertices.
pub fn max_edges(n: usize, directed: bool) -> usize {
    let pairs = n * n.saturating_sub(1);
    if directed {
        pairs
    } else {
        pairs / 2
    }
}

/// Uniform simple graph with exactly `m` edges and weights uniform in `1..=max_weight`.
pub fn gen_random(n: usize, m: usize, max_weight: u64, directed: bool, seed: u64) -> Result<Graph> {
    if m > max_edges(n, directed) {
        return Err(Error::InfeasibleEdgeCount { n, m });
    }
    if max_weight == 0 {
        return Err(invalid("max weight must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = max_edges(n, directed);
    let mut picks = index::sample(&mut rng, total, m).into_vec();
    picks.sort_unstable();
    let edges: Vec<_> = picks
        .into_iter()
        .map(|i| {
            let (u, v) = if directed { decode_ordered(i, n) } else { decode_unordered(i) };
            (u, v, rng.gen_range(1..=max_weight))
        })
        .collect();
    Graph::new(n, directed, &edges)
}

/// Connected undirected graph: a random spanning tree plus uniformly chosen extra edges.
pub fn gen_connected(n: usize, m: usize, max_weight: u64, seed: u64) -> Result<Graph> {
    if n == 0 || m + 1 < n || m > max_edges(n, false) {
        return Err(Error::InfeasibleEdgeCount { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut chosen: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let (a, b) = (perm[i], perm[rng.gen_range(0..i)]);
        chosen.insert((a.min(b), a.max(b)));
        edges.push((a, b, rng.gen_range(1..=max_weight)));
    }
    let total = max_edges(n, false);
    let extra = m - (n - 1);
    if extra > 0 {
        let free = total - (n - 1);
        let mut picks = index::sample(&mut rng, free, extra).into_vec();
        picks.sort_unstable();
        // the r-th free slot is the r-th pair index not taken by the tree
        let mut tree_idx: Vec<usize> = chosen.iter().map(|&(a, b)| b * (b - 1) / 2 + a).collect();
        tree_idx.sort_unstable();
        let mut t = 0;
        for rank in picks {
            let mut idx = rank + t;
            while t < tree_idx.len() && tree_idx[t] <= idx {
                t += 1;
                idx = rank + t;
            }
            let (u, v) = decode_unordered(idx);
            edges.push((u, v, rng.gen_range(1..=max_weight)));
        }
    }
    Graph::new(n, false, &edges)
}

fn decode_unordered(i: usize) -> (usize, usize) {
    // pairs (v, u) with v < u enumerated as u(u-1)/2 + v
    let mut u = ((1.0 + (1.0 + 8.0 * i as f64).sqrt()) / 2.0) as usize;
    while u * (u - 1) / 2 > i {
        u -= 1;
    }
    while (u + 1) * u / 2 <= i {
        u += 1;
    }
    (i - u * (u - 1) / 2, u)
}

fn decode_ordered(i: usize, n: usize) -> (usize, usize) {
    let u = i / (n - 1);
    let r = i % (n - 1);
    (u, if r >= u { r + 1 } else { r })
}

/// Maps vertices of a transformed graph back to the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    origin: Vec<usize>,
    is_original: Vec<bool>,
    n_original: usize,
}

impl VertexMap {
    pub fn identity(n: usize) -> VertexMap {
        VertexMap { origin: (0..n).collect(), is_original: vec![true; n], n_original: n }
    }

    /// Input vertex that `x` stands for.
    pub fn origin(&self, x: usize) -> usize {
        self.origin[x]
    }

    /// True for the single image of each input vertex that keeps its id.
    pub fn is_original(&self, x: usize) -> bool {
        self.is_original[x]
    }

    pub fn n_original(&self) -> usize {
        self.n_original
    }

    pub fn len(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }

    /// Per-input-vertex minimum of `values` over all vertices standing for it.
    pub fn pull_back_min<T: Ord + Copy>(&self, values: &[T], init: T) -> Vec<T> {
        let mut out = vec![init; self.n_original];
        for (x, &val) in values.iter().enumerate() {
            let o = self.origin[x];
            if val < out[o] {
                out[o] = val;
            }
        }
        out
    }
}

/// Replaces every vertex with more than `cap` non-protected incident edges by a
/// balanced binary tree of zero-weight edges rooted at the vertex itself. Its
/// non-protected edges are dealt out to the leaves, at most `cap` per leaf;
/// protected edges stay on the root. Input vertices keep their ids; new vertices
/// are appended, original edges keep their ids and tree edges follow them.
pub fn degree_uniformize(
    g: &Graph,
    protected: &dyn Fn(usize) -> bool,
    cap: usize,
) -> Result<(Graph, VertexMap)> {
    g.require_undirected()?;
    if cap < 2 {
        return Err(invalid("uniformization cap must be at least 2"));
    }
    let n = g.n();
    let mut origin: Vec<usize> = (0..n).collect();
    let mut slots: Vec<Option<Edge>> = g.edges.clone();
    // attach[(edge, endpoint-side)] -> replacement endpoint
    let mut new_end: Vec<[usize; 2]> = g
        .edges
        .iter()
        .map(|e| e.map_or([0, 0], |e| [e.u, e.v]))
        .collect();
    let mut tree_edges: Vec<Edge> = Vec::new();
    for v in 0..n {
        let replaced: Vec<usize> = g
            .arcs(v)
            .iter()
            .map(|a| a.edge)
            .filter(|&id| !protected(id))
            .collect();
        if replaced.len() <= cap {
            continue;
        }
        let leaves_needed = replaced.len().div_ceil(cap);
        let mut leaves = Vec::with_capacity(leaves_needed);
        let mut grow = |parent: usize, count: usize, origin: &mut Vec<usize>| {
            let mut stack = vec![(parent, count)];
            while let Some((p, c)) = stack.pop() {
                let x = origin.len();
                origin.push(v);
                tree_edges.push(Edge { u: p, v: x, w: 0 });
                if c == 1 {
                    leaves.push(x);
                } else {
                    stack.push((x, c / 2));
                    stack.push((x, c - c / 2));
                }
            }
        };
        grow(v, leaves_needed - leaves_needed / 2, &mut origin);
        grow(v, leaves_needed / 2, &mut origin);
        for (i, &id) in replaced.iter().enumerate() {
            let leaf = leaves[i / cap];
            let e = g.edges[id].expect("live edge");
            let side = if e.u == v { 0 } else { 1 };
            new_end[id][side] = leaf;
        }
    }
    for (id, slot) in slots.iter_mut().enumerate() {
        if let Some(e) = slot {
            e.u = new_end[id][0];
            e.v = new_end[id][1];
        }
    }
    slots.extend(tree_edges.into_iter().map(Some));
    let total = origin.len();
    let mut is_original = vec![false; total];
    is_original[..n].fill(true);
    let graph = Graph::from_slots(total, false, slots)?;
    Ok((graph, VertexMap { origin, is_original, n_original: n }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle_and_arc() {
        let g = Graph::parse_str("3 3 u\n0 1 1\n1 2 1\n2 0 1").unwrap();
        assert_eq!((g.n(), g.m(), g.is_directed()), (3, 3, false));
        assert_eq!(g.arcs.len(), 6);
        let d = Graph::parse_str("2 1 d\n0 1 5").unwrap();
        assert!(d.is_directed());
        assert_eq!(d.edge(0), Some(Edge { u: 0, v: 1, w: 5 }));
        assert_eq!(d.degree(1), 0);
    }

    #[test]
    fn parse_errors_name_lines() {
        let cases = [
            ("3 x u\n", 1),
            ("# c\n3 1 u\n0 1 -2\n", 3),
            ("3 1 u\n0 7 1\n", 2),
            ("3 2 u\n0 1 1\n1 0 1\n", 3),
            ("3 1 u\n1 1 1\n", 2),
            ("3 2 u\n0 1 1\n", 1),
        ];
        for (text, line) in cases {
            match Graph::parse_str(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn k4_is_forced() {
        let g = gen_random(4, 6, 1, false, 99).unwrap();
        assert_eq!(g.m(), 6);
        assert!((0..4).all(|v| g.degree(v) == 3));
        assert!(gen_random(4, 7, 1, false, 0).is_err());
    }

    #[test]
    fn random_graph_counts() {
        let g = gen_random(100, 300, 10, false, 7).unwrap();
        assert_eq!(g.m(), 300);
        assert!(g.max_degree() <= 99);
        assert!(g.edges().all(|(_, e)| (1..=10).contains(&e.w)));
        assert_eq!(g, gen_random(100, 300, 10, false, 7).unwrap());
    }

    #[test]
    fn decoders_are_bijective() {
        let n = 9;
        let mut all = HashSet::new();
        for i in 0..max_edges(n, false) {
            let (a, b) = decode_unordered(i);
            assert!(a < b && b < n);
            all.insert((a, b));
        }
        assert_eq!(all.len(), 36);
        let mut all = HashSet::new();
        for i in 0..max_edges(n, true) {
            let (a, b) = decode_ordered(i, n);
            assert!(a != b && a < n && b < n);
            all.insert((a, b));
        }
        assert_eq!(all.len(), 72);
    }

    #[test]
    fn connected_generator() {
        for seed in 0..50 {
            let g = gen_connected(30, 60, 3, seed).unwrap();
            assert_eq!(g.m(), 60);
            let mut seen = vec![false; 30];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for a in g.arcs(x) {
                    if !seen[a.to] {
                        seen[a.to] = true;
                        stack.push(a.to);
                    }
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
        assert_eq!(gen_connected(4, 6, 1, 1).unwrap().m(), 6);
    }

    #[test]
    fn restrict_keeps_ids() {
        let g = Graph::parse_str("3 3 u\n0 1 1\n1 2 1\n2 0 1").unwrap();
        assert_eq!(g.restrict_edges(|_| true), g);
        let none = g.restrict_edges(|_| false);
        assert_eq!((none.n(), none.m()), (3, 0));
        let p = g.restrict_edges(|id| id != 1);
        assert_eq!(p.m(), 2);
        assert_eq!(p.edge(2), g.edge(2));
        assert_eq!(p.edge(1), None);
    }

    #[test]
    fn uniformize_identity_when_under_cap() {
        let g = Graph::parse_str("3 3 u\n0 1 1\n1 2 1\n2 0 1").unwrap();
        let (h, map) = degree_uniformize(&g, &|_| false, 3).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, VertexMap::identity(3));
    }

    #[test]
    fn uniformize_caps_degree() {
        let g = gen_random(60, 600, 4, false, 3).unwrap();
        let (h, map) = degree_uniformize(&g, &|_| false, 4).unwrap();
        assert!(h.max_degree() <= 5);
        assert_eq!(map.len(), h.n());
        assert_eq!(h.m(), g.m() + (h.n() - g.n()));
        assert!((0..60).all(|v| map.is_original(v) && map.origin(v) == v));
        assert!((60..h.n()).all(|x| !map.is_original(x)));
    }
}
