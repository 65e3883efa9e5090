//! Path-minimum assignment on a fixed forest.
//!
//! `path_min_update(a, b, x)` lowers every vertex weight on the tree path
//! between `a` and `b` to at most `x`; `query(v)` reads one weight back.
//! The default backend is a splay-based link-cut tree with lazy reversal and
//! lazy min tags. A parent-walk backend with the same interface serves as a
//! reference and is adequate for small forests.

use crate::dist::{Dist, Inf};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Splay,
    Naive,
}

#[derive(Clone, Debug)]
pub struct PathMinForest {
    inner: Inner,
    comp: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Inner {
    Splay(SplayForest),
    Naive(NaiveForest),
}

impl PathMinForest {
    pub fn build(tree_edges: &[(usize, usize)], n: usize) -> Result<PathMinForest> {
        PathMinForest::build_with(Backend::Splay, tree_edges, n)
    }

    /// Fails with [`Error::NotAForest`] if the edges close a cycle.
    pub fn build_with(backend: Backend, tree_edges: &[(usize, usize)], n: usize) -> Result<PathMinForest> {
        let mut dsu = Dsu::new(n);
        for &(a, b) in tree_edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if !dsu.union(a, b) {
                return Err(Error::NotAForest(a, b));
            }
        }
        let comp = (0..n).map(|v| dsu.find(v)).collect();
        let inner = match backend {
            Backend::Splay => {
                let mut f = SplayForest::new(n);
                for &(a, b) in tree_edges {
                    f.link(a, b);
                }
                Inner::Splay(f)
            }
            Backend::Naive => Inner::Naive(NaiveForest::new(n, tree_edges)),
        };
        Ok(PathMinForest { inner, comp })
    }

    pub fn n(&self) -> usize {
        self.comp.len()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn path_min_update(&mut self, a: usize, b: usize, x: Dist) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if self.comp[a] != self.comp[b] {
            return Err(Error::DifferentTrees(a, b));
        }
        match &mut self.inner {
            Inner::Splay(f) => f.update(a, b, x),
            Inner::Naive(f) => f.update(a, b, x),
        }
        Ok(())
    }

    pub fn query(&mut self, v: usize) -> Result<Dist> {
        self.check(v)?;
        Ok(match &mut self.inner {
            Inner::Splay(f) => f.query(v),
            Inner::Naive(f) => f.val[v],
        })
    }

    /// Structural work performed so far: rotations for the splay backend,
    /// vertices touched for the parent-walk backend.
    pub fn op_count(&self) -> u64 {
        match &self.inner {
            Inner::Splay(f) => f.ops,
            Inner::Naive(f) => f.ops,
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

const NIL: usize = usize::MAX;

#[derive(Clone, Debug)]
struct SplayForest {
    ch: Vec<[usize; 2]>,
    par: Vec<usize>,
    rev: Vec<bool>,
    val: Vec<Dist>,
    tag: Vec<Dist>,
    stack: Vec<usize>,
    ops: u64,
}

impl SplayForest {
    fn new(n: usize) -> SplayForest {
        SplayForest {
            ch: vec![[NIL, NIL]; n],
            par: vec![NIL; n],
            rev: vec![false; n],
            val: vec![Inf; n],
            tag: vec![Inf; n],
            stack: Vec::new(),
            ops: 0,
        }
    }

    fn is_splay_root(&self, x: usize) -> bool {
        let p = self.par[x];
        p == NIL || (self.ch[p][0] != x && self.ch[p][1] != x)
    }

    fn apply(&mut self, x: usize, t: Dist, flip: bool) {
        if x == NIL {
            return;
        }
        if t < self.val[x] {
            self.val[x] = t;
        }
        if t < self.tag[x] {
            self.tag[x] = t;
        }
        if flip {
            self.ch[x].swap(0, 1);
            self.rev[x] ^= true;
        }
    }

    fn push(&mut self, x: usize) {
        let (t, flip) = (self.tag[x], self.rev[x]);
        if t.is_inf() && !flip {
            return;
        }
        let [l, r] = self.ch[x];
        self.apply(l, t, flip);
        self.apply(r, t, flip);
        self.tag[x] = Inf;
        self.rev[x] = false;
    }

    fn rotate(&mut self, x: usize) {
        self.ops += 1;
        let y = self.par[x];
        let z = self.par[y];
        let dx = usize::from(self.ch[y][1] == x);
        if !self.is_splay_root(y) {
            let dy = usize::from(self.ch[z][1] == y);
            self.ch[z][dy] = x;
        }
        self.par[x] = z;
        let b = self.ch[x][dx ^ 1];
        self.ch[y][dx] = b;
        if b != NIL {
            self.par[b] = y;
        }
        self.ch[x][dx ^ 1] = y;
        self.par[y] = x;
    }

    fn splay(&mut self, x: usize) {
        self.stack.clear();
        let mut y = x;
        self.stack.push(y);
        while !self.is_splay_root(y) {
            y = self.par[y];
            self.stack.push(y);
        }
        while let Some(z) = self.stack.pop() {
            self.push(z);
        }
        while !self.is_splay_root(x) {
            let y = self.par[x];
            if !self.is_splay_root(y) {
                let z = self.par[y];
                let zig_zig = (self.ch[y][0] == x) == (self.ch[z][0] == y);
                self.rotate(if zig_zig { y } else { x });
            }
            self.rotate(x);
        }
    }

    fn access(&mut self, x: usize) {
        let mut last = NIL;
        let mut y = x;
        while y != NIL {
            self.splay(y);
            self.ch[y][1] = last;
            last = y;
            y = self.par[y];
        }
        self.splay(x);
    }

    fn evert(&mut self, x: usize) {
        self.access(x);
        self.apply(x, Inf, true);
    }

    fn link(&mut self, a: usize, b: usize) {
        self.evert(a);
        self.par[a] = b;
    }

    fn update(&mut self, a: usize, b: usize, x: Dist) {
        self.evert(a);
        self.access(b);
        self.apply(b, x, false);
    }

    fn query(&mut self, v: usize) -> Dist {
        self.splay(v);
        self.val[v]
    }
}

#[derive(Clone, Debug)]
struct NaiveForest {
    parent: Vec<usize>,
    depth: Vec<usize>,
    val: Vec<Dist>,
    ops: u64,
}

impl NaiveForest {
    fn new(n: usize, edges: &[(usize, usize)]) -> NaiveForest {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![NIL; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        for r in 0..n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut stack = vec![r];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = x;
                        depth[y] = depth[x] + 1;
                        stack.push(y);
                    }
                }
            }
        }
        NaiveForest { parent, depth, val: vec![Inf; n], ops: 0 }
    }

    fn update(&mut self, mut a: usize, mut b: usize, x: Dist) {
        loop {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            self.ops += 1;
            if x < self.val[a] {
                self.val[a] = x;
            }
            if a == b {
                return;
            }
            a = self.parent[a];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Finite;

    fn path3(backend: Backend) -> PathMinForest {
        PathMinForest::build_with(backend, &[(0, 1), (1, 2)], 3).unwrap()
    }

    #[test]
    fn empty_forest_is_infinite() {
        let mut f = PathMinForest::build(&[], 5).unwrap();
        assert_eq!(f.query(3).unwrap(), Inf);
        assert!(f.query(5).is_err());
        assert!(matches!(f.path_min_update(0, 1, Finite(1)), Err(Error::DifferentTrees(0, 1))));
    }

    #[test]
    fn rejects_cycles() {
        let r = PathMinForest::build(&[(0, 1), (1, 2), (2, 0)], 3);
        assert!(matches!(r, Err(Error::NotAForest(2, 0))));
    }

    #[test]
    fn path_updates() {
        for b in [Backend::Splay, Backend::Naive] {
            let mut f = path3(b);
            assert!((0..3).all(|v| f.query(v).unwrap() == Inf));
            f.path_min_update(0, 2, Finite(5)).unwrap();
            assert_eq!(f.query(1).unwrap(), Finite(5));
            f.path_min_update(0, 0, Finite(3)).unwrap();
            assert_eq!(f.query(0).unwrap(), Finite(3));
            assert_eq!(f.query(1).unwrap(), Finite(5));
            f.path_min_update(1, 1, Finite(0)).unwrap();
            assert_eq!(f.query(1).unwrap(), Finite(0));
            assert_eq!(f.query(2).unwrap(), Finite(5));
        }
    }

    #[test]
    fn branching_tree() {
        // 0 - 1 - 2, 1 - 3 - 4
        let edges = [(0, 1), (1, 2), (1, 3), (3, 4)];
        let mut f = PathMinForest::build(&edges, 5).unwrap();
        f.path_min_update(2, 4, Finite(7)).unwrap();
        let got: Vec<Dist> = (0..5).map(|v| f.query(v).unwrap()).collect();
        assert_eq!(got, vec![Inf, Finite(7), Finite(7), Finite(7), Finite(7)]);
        f.path_min_update(0, 2, Finite(9)).unwrap();
        f.path_min_update(4, 0, Finite(2)).unwrap();
        let got: Vec<Dist> = (0..5).map(|v| f.query(v).unwrap()).collect();
        assert_eq!(got, vec![Finite(2), Finite(2), Finite(7), Finite(2), Finite(2)]);
    }
}
