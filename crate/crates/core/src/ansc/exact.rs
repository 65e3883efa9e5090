use rayon::prelude::*;

use crate::dist::{Dist, Inf};
use crate::error::Result;
use crate::graph::Graph;
use crate::sssp::{dijkstra, TruncationPolicy};

use super::{AnscAlgorithm, AnscParams, AnscResult};

/// `SC(v) = min over edges (v, u) of w(v, u) + d_{G∖(v,u)}(v, u)`, one full
/// search per edge on the graph with that edge removed.
pub fn exact_ansc(g: &Graph) -> Result<AnscResult> {
    g.require_undirected()?;
    let edges: Vec<_> = g.edges().collect();
    let cycles: Vec<(Dist, u64)> = edges
        .par_iter()
        .map(|&(id, e)| {
            let t = dijkstra(g, e.u, &TruncationPolicy::none().skipping(id));
            (t.dist[e.v].plus(e.w), t.explored)
        })
        .collect();
    let mut sc = vec![Inf; g.n()];
    let mut scanned = 0;
    let runs = edges.len() as u64;
    for (&(_, e), &(c, explored)) in edges.iter().zip(&cycles) {
        scanned += explored;
        for x in [e.u, e.v] {
            sc[x] = sc[x].min(c);
        }
    }
    let mut r = AnscResult::new(sc, AnscAlgorithm::Exact, AnscParams::default());
    r.scanned = scanned;
    r.runs = runs;
    Ok(r)
}

/// Shortest directed cycle through each vertex, as the distance from its
/// out-copy to its in-copy in the graph that doubles every vertex and joins
/// both copies of `u` to both copies of `v` for every arc `u → v`.
pub fn exact_ansc_directed(g: &Graph) -> Result<AnscResult> {
    if !g.is_directed() {
        return Err(crate::error::Error::UndirectedInput);
    }
    let n = g.n();
    let mut arcs = Vec::with_capacity(4 * g.m());
    for (_, e) in g.edges() {
        for a in [e.u, e.u + n] {
            for b in [e.v, e.v + n] {
                arcs.push((a, b, e.w));
            }
        }
    }
    let doubled = Graph::new(2 * n, true, &arcs)?;
    let runs: Vec<(Dist, u64)> = (0..n)
        .into_par_iter()
        .map(|v| {
            let t = dijkstra(&doubled, v, &TruncationPolicy::none().until(v + n));
            (t.dist[v + n], t.explored)
        })
        .collect();
    let sc: Vec<Dist> = runs.iter().map(|r| r.0).collect();
    let scanned = runs.iter().map(|r| r.1).sum();
    let mut r = AnscResult::new(sc, AnscAlgorithm::ExactDirected, AnscParams::default());
    r.scanned = scanned;
    r.runs = n as u64;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Finite;

    #[test]
    fn small_cases() {
        let t = Graph::parse_str("3 3 u\n0 1 1\n1 2 1\n2 0 1").unwrap();
        assert_eq!(exact_ansc(&t).unwrap().estimates, vec![Finite(3); 3]);
        let tree = Graph::parse_str("4 3 u\n0 1 1\n1 2 1\n1 3 1").unwrap();
        assert_eq!(exact_ansc(&tree).unwrap().estimates, vec![Inf; 4]);
        let dt = Graph::parse_str("3 3 d\n0 1 1\n1 2 1\n2 0 1").unwrap();
        assert_eq!(exact_ansc_directed(&dt).unwrap().estimates, vec![Finite(3); 3]);
        let dag = Graph::parse_str("3 3 d\n0 1 1\n1 2 1\n0 2 1").unwrap();
        assert_eq!(exact_ansc_directed(&dag).unwrap().estimates, vec![Inf; 3]);
        let two = Graph::parse_str("2 2 d\n0 1 2\n1 0 5").unwrap();
        assert_eq!(exact_ansc_directed(&two).unwrap().estimates, vec![Finite(7); 2]);
        assert!(exact_ansc(&dt).is_err());
        assert!(exact_ansc_directed(&t).is_err());
    }
}
