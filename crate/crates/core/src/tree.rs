//! Abstract and geometric trees.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{GeomEdge, PointSet};

/// An unlabeled-shape tree on vertices `0..len()`, stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractTree {
    adj: Vec<Vec<usize>>,
}

impl AbstractTree {
    /// Fails with `NotATree` unless the edges form a spanning tree on `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotATree("empty vertex set".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!("{} edges on {n} vertices", edges.len())));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::NotATree(format!("bad edge {u}-{v}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotATree(format!("repeated edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Self { adj };
        if tree.reachable_from(0, None).len() != n {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(tree)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path is a tree")
    }

    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).expect("star is a tree")
    }

    /// `S_k(m, n)`: centers `v` (m leaves) and `w` (n leaves) joined by a path
    /// with `k` internal vertices of degree 2. Vertex 0 is `v`.
    pub fn double_star_subdivided(k: usize, m: usize, n: usize) -> Self {
        let spine = k + 2;
        let total = spine + m + n;
        let mut edges: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
        let mut next = spine;
        for _ in 0..m {
            edges.push((0, next));
            next += 1;
        }
        for _ in 0..n {
            edges.push((spine - 1, next));
            next += 1;
        }
        Self::from_edges(total, &edges).expect("double star is a tree")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Vertices reachable from `start` without crossing any edge in `blocked`.
    pub fn reachable_from(&self, start: usize, blocked: Option<&[(usize, usize)]>) -> Vec<usize> {
        let is_blocked = |u: usize, v: usize| {
            blocked.is_some_and(|b| b.iter().any(|&(x, y)| (x == u && y == v) || (x == v && y == u)))
        };
        let mut seen = vec![false; self.len()];
        let mut out = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] && !is_blocked(u, v) {
                    seen[v] = true;
                    out.push(v);
                    queue.push_back(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The unique `u`-`v` path, `u` first.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            if a == v {
                break;
            }
            for &b in &self.adj[a] {
                if parent[b] == usize::MAX {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Induced subtree on `vertices`, relabeled to `0..vertices.len()` in the
    /// given order. Returns the subtree and the old-to-new map.
    pub fn induced(&self, vertices: &[usize]) -> Result<(AbstractTree, Vec<Option<usize>>)> {
        let mut map = vec![None; self.len()];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                edges.push((a, b));
            }
        }
        Ok((AbstractTree::from_edges(vertices.len(), &edges)?, map))
    }

    /// `self` with leaf `v` removed, relabeled densely. Returns the map too.
    pub fn without_leaf(&self, v: usize) -> Result<(AbstractTree, Vec<Option<usize>>)> {
        if self.degree(v) > 1 {
            return Err(Error::NotATree(format!("removing non-leaf {v} disconnects the tree")));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }
}

/// A tree drawn with straight edges on a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct GeomTree {
    ps: Arc<PointSet>,
    edges: Vec<GeomEdge>,
}

impl GeomTree {
    /// Edges are sorted and deduplicated; structure is not validated here.
    pub fn new(ps: Arc<PointSet>, edges: impl IntoIterator<Item = GeomEdge>) -> Result<Self> {
        let set: BTreeSet<GeomEdge> = edges.into_iter().collect();
        for e in &set {
            if e.b >= ps.len() {
                return Err(Error::InvalidParameter(format!("edge {e} out of range for {} points", ps.len())));
            }
        }
        Ok(Self { ps, edges: set.into_iter().collect() })
    }

    pub fn from_pairs(ps: Arc<PointSet>, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs.iter().map(|&(a, b)| GeomEdge::try_new(a, b)).collect::<Result<Vec<_>>>()?;
        Self::new(ps, edges)
    }

    pub fn point_set(&self) -> &PointSet {
        &self.ps
    }

    pub fn shared_point_set(&self) -> &Arc<PointSet> {
        &self.ps
    }

    pub fn edges(&self) -> &[GeomEdge] {
        &self.edges
    }

    pub fn contains(&self, e: GeomEdge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn abstract_tree(&self) -> Result<AbstractTree> {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        AbstractTree::from_edges(self.ps.len(), &pairs)
    }
}
