//! Tree recognizers: paths, stars, caterpillars, double stars, `S_k(m,n)`,
//! P4-symmetric trees, w-caterpillars and symmetric trees.

use std::collections::{BTreeMap, BTreeSet};

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, ConfigTag, GeomEdge, PointSet};
use crate::tree::{AbstractTree, GeomTree};

// ---------------------------------------------------------------------------
// AHU canonical codes
// ---------------------------------------------------------------------------

/// AHU code of the subtree rooted at `root`, restricted to vertices with `mask[v]`.
fn ahu_code(t: &AbstractTree, mask: &[bool], root: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = t
        .neighbors(root)
        .iter()
        .filter(|&&c| Some(c) != parent && mask[c])
        .map(|&c| ahu_code(t, mask, c, Some(root)))
        .collect();
    children.sort_unstable();
    let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
    s.push('(');
    for c in children {
        s.push_str(&c);
    }
    s.push(')');
    s
}

fn ahu_map(
    t: &AbstractTree,
    mask_a: &[bool],
    a: usize,
    pa: Option<usize>,
    mask_b: &[bool],
    b: usize,
    pb: Option<usize>,
    out: &mut Vec<(usize, usize)>,
) {
    out.push((a, b));
    let keyed = |mask: &[bool], v: usize, p: Option<usize>| {
        let mut kids: Vec<(String, usize)> = t
            .neighbors(v)
            .iter()
            .filter(|&&c| Some(c) != p && mask[c])
            .map(|&c| (ahu_code(t, mask, c, Some(v)), c))
            .collect();
        kids.sort_unstable();
        kids
    };
    let ka = keyed(mask_a, a, pa);
    let kb = keyed(mask_b, b, pb);
    for ((_, ca), (_, cb)) in ka.into_iter().zip(kb) {
        ahu_map(t, mask_a, ca, Some(a), mask_b, cb, Some(b), out);
    }
}

/// Rooted isomorphism between the components `mask_a` (rooted at `a`) and
/// `mask_b` (rooted at `b`) of the same tree. Returns `φ` as sorted pairs.
pub fn rooted_isomorphism(
    t: &AbstractTree,
    mask_a: &[bool],
    a: usize,
    mask_b: &[bool],
    b: usize,
) -> Option<Vec<(usize, usize)>> {
    if ahu_code(t, mask_a, a, None) != ahu_code(t, mask_b, b, None) {
        return None;
    }
    let mut phi = Vec::new();
    ahu_map(t, mask_a, a, None, mask_b, b, None, &mut phi);
    phi.sort_unstable();
    Some(phi)
}

/// Rooted AHU code of the whole tree.
pub fn rooted_code(t: &AbstractTree, root: usize) -> String {
    ahu_code(t, &vec![true; t.len()], root, None)
}

/// The one or two center vertices of a tree.
pub fn centers(t: &AbstractTree) -> Vec<usize> {
    let n = t.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in t.neighbors(v) {
                if deg[u] > 1 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Isomorphism-invariant canonical code of an unrooted tree.
pub fn canonical_code(t: &AbstractTree) -> String {
    centers(t).into_iter().map(|c| rooted_code(t, c)).min().unwrap_or_default()
}

pub fn isomorphic(a: &AbstractTree, b: &AbstractTree) -> bool {
    a.len() == b.len() && canonical_code(a) == canonical_code(b)
}

// ---------------------------------------------------------------------------
// Abstract recognizers
// ---------------------------------------------------------------------------

pub fn is_path(t: &AbstractTree) -> bool {
    (0..t.len()).all(|v| t.degree(v) <= 2)
}

pub fn is_star(t: &AbstractTree) -> bool {
    let n = t.len();
    n <= 2 || (0..n).any(|v| t.degree(v) == n - 1)
}

/// Vertices of `T′` (the tree with all leaves removed).
fn residue(t: &AbstractTree) -> Vec<usize> {
    (0..t.len()).filter(|&v| t.degree(v) >= 2).collect()
}

pub fn is_caterpillar(t: &AbstractTree) -> bool {
    let inner = residue(t);
    let is_inner = |v: usize| t.degree(v) >= 2;
    inner.iter().all(|&v| t.neighbors(v).iter().filter(|&&u| is_inner(u)).count() <= 2)
}

/// `(m, n)` with `m <= n` if `t` is the double star `S(m, n)`.
pub fn double_star(t: &AbstractTree) -> Option<(usize, usize)> {
    match residue(t).as_slice() {
        &[v, w] => {
            let (a, b) = (t.degree(v) - 1, t.degree(w) - 1);
            Some((a.min(b), a.max(b)))
        }
        _ => None,
    }
}

/// `(k, m, n)` with `m <= n` if `t` is `S_k(m, n)` with `m, n >= 1`: its residue
/// is a path whose interior vertices have degree 2 in `t`.
pub fn s_k(t: &AbstractTree) -> Option<(usize, usize, usize)> {
    let inner = residue(t);
    if inner.len() < 2 || !is_caterpillar(t) {
        return None;
    }
    let is_inner = |v: usize| t.degree(v) >= 2;
    let ends: Vec<usize> =
        inner.iter().copied().filter(|&v| t.neighbors(v).iter().filter(|&&u| is_inner(u)).count() == 1).collect();
    let [v, w] = ends.as_slice() else { return None };
    if inner.iter().any(|&u| u != *v && u != *w && t.degree(u) != 2) {
        return None;
    }
    let (a, b) = (t.degree(*v) - 1, t.degree(*w) - 1);
    Some((inner.len() - 2, a.min(b), a.max(b)))
}

/// True iff `t ≅ S_k(m, n)`, including degenerate parameters such as `S_2(0,0) = P_4`.
pub fn is_s_k(t: &AbstractTree, k: usize, m: usize, n: usize) -> bool {
    t.len() == k + 2 + m + n && isomorphic(t, &AbstractTree::double_star_subdivided(k, m, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum P4Type {
    Type1,
    Type2,
    /// 4-vertex trees, where the two types are not distinguished.
    Untyped,
}

/// A 4-path `u1u2u3u4` and index `i ∈ {2, 4}` witnessing P4-symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P4Witness {
    pub path: [usize; 4],
    pub i: usize,
    pub kind: P4Type,
    /// Component containing `u3` after deleting the path edges.
    pub a: Vec<usize>,
    /// Component containing `u_{6-i}`.
    pub b: Vec<usize>,
    /// `φ: A → B` with `φ(u3) = u_{6-i}`.
    pub phi: Vec<(usize, usize)>,
    /// Whether this witness makes `t` a w-caterpillar.
    pub w_caterpillar: bool,
    /// `Some(u1)` when only `t - u1` (not `t`) is a caterpillar.
    pub deleted: Option<usize>,
}

fn component_mask(t: &AbstractTree, start: usize, blocked: &[(usize, usize)]) -> Vec<bool> {
    let mut mask = vec![false; t.len()];
    for v in t.reachable_from(start, Some(blocked)) {
        mask[v] = true;
    }
    mask
}

/// Every P4-symmetry witness, in lexicographic order of `(path, i)`.
pub fn p4_witnesses(t: &AbstractTree) -> Vec<P4Witness> {
    let n = t.len();
    let whole_caterpillar = is_caterpillar(t);
    let mut out = Vec::new();
    for u1 in (0..n).filter(|&v| t.degree(v) == 1) {
        let u2 = t.neighbors(u1)[0];
        for &u3 in t.neighbors(u2).iter().filter(|&&v| v != u1) {
            for &u4 in t.neighbors(u3).iter().filter(|&&v| v != u2) {
                let path = [u1, u2, u3, u4];
                let blocked = [(u1, u2), (u2, u3), (u3, u4)];
                for i in [2usize, 4] {
                    // Deleting the path edges must isolate u1 and u_i.
                    let (isolated, need, partner) = if i == 4 { (u4, 1, u2) } else { (u2, 2, u4) };
                    if t.degree(isolated) != need {
                        continue;
                    }
                    let mask_a = component_mask(t, u3, &blocked);
                    let mask_b = component_mask(t, partner, &blocked);
                    let size_a = mask_a.iter().filter(|&&x| x).count();
                    let size_b = mask_b.iter().filter(|&&x| x).count();
                    if size_a + size_b + 2 != n {
                        continue;
                    }
                    let kind = if n == 4 {
                        P4Type::Untyped
                    } else if size_a < 2 || size_b < 2 {
                        continue;
                    } else if i == 4 {
                        P4Type::Type1
                    } else {
                        P4Type::Type2
                    };
                    let Some(phi) = rooted_isomorphism(t, &mask_a, u3, &mask_b, partner) else {
                        continue;
                    };
                    let (w_caterpillar, deleted) = if whole_caterpillar {
                        (true, None)
                    } else {
                        let minus = t.without_leaf(u1).map(|(s, _)| is_caterpillar(&s)).unwrap_or(false);
                        (minus, minus.then_some(u1))
                    };
                    let collect = |mask: &[bool]| (0..n).filter(|&v| mask[v]).collect::<Vec<_>>();
                    out.push(P4Witness {
                        path,
                        i,
                        kind,
                        a: collect(&mask_a),
                        b: collect(&mask_b),
                        phi,
                        w_caterpillar,
                        deleted,
                    });
                }
            }
        }
    }
    out
}

/// An edge `vw` whose two sides are isomorphic with `v ↦ w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricWitness {
    pub edge: (usize, usize),
    pub phi: Vec<(usize, usize)>,
}

pub fn symmetric_witness(t: &AbstractTree) -> Option<SymmetricWitness> {
    for (v, w) in t.edges() {
        let blocked = [(v, w)];
        let mask_a = component_mask(t, v, &blocked);
        let mask_b = component_mask(t, w, &blocked);
        if let Some(phi) = rooted_isomorphism(t, &mask_a, v, &mask_b, w) {
            return Some(SymmetricWitness { edge: (v, w), phi });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeClassReport {
    pub vertex_count: usize,
    pub is_path: bool,
    pub is_star: bool,
    pub double_star: Option<(usize, usize)>,
    pub s_k: Option<(usize, usize, usize)>,
    pub caterpillar: bool,
    /// A w-caterpillar witness when one exists, otherwise any P4 witness.
    pub p4_symmetric: Option<P4Witness>,
    pub w_caterpillar: bool,
    pub symmetric: Option<SymmetricWitness>,
}

pub fn classify(t: &AbstractTree) -> TreeClassReport {
    let witnesses = p4_witnesses(t);
    let w_caterpillar = witnesses.iter().any(|w| w.w_caterpillar);
    let p4_symmetric = witnesses.iter().find(|w| w.w_caterpillar).or_else(|| witnesses.first()).cloned();
    TreeClassReport {
        vertex_count: t.len(),
        is_path: is_path(t),
        is_star: is_star(t),
        double_star: double_star(t),
        s_k: s_k(t),
        caterpillar: is_caterpillar(t),
        p4_symmetric,
        w_caterpillar,
        symmetric: symmetric_witness(t),
    }
}

/// All unlabeled trees on `n` vertices, one representative each, in a
/// deterministic order (sorted by canonical code).
pub fn enumerate_trees(n: usize) -> Vec<AbstractTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, AbstractTree> = BTreeMap::new();
    let single = AbstractTree::from_edges(1, &[]).expect("single vertex");
    level.insert(canonical_code(&single), single);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            let mut edges = t.edges();
            for v in 0..t.len() {
                edges.push((v, size - 1));
                let grown = AbstractTree::from_edges(size, &edges).expect("leaf extension");
                edges.pop();
                next.entry(canonical_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// All w-caterpillars on `n` vertices.
pub fn enumerate_w_caterpillars(n: usize) -> Vec<AbstractTree> {
    enumerate_trees(n).into_iter().filter(|t| classify(t).w_caterpillar).collect()
}

// ---------------------------------------------------------------------------
// Geometric operations
// ---------------------------------------------------------------------------

/// True iff the edges form a tree covering every point.
pub fn is_spanning_tree(t: &GeomTree) -> bool {
    t.abstract_tree().is_ok()
}

/// True iff no two edges cross.
pub fn is_plane(t: &GeomTree) -> Result<bool> {
    first_crossing(t).map(|c| c.is_none())
}

/// The first crossing edge pair, in edge order.
pub fn first_crossing(t: &GeomTree) -> Result<Option<(GeomEdge, GeomEdge)>> {
    let ps = t.point_set();
    let edges = t.edges();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if ps.edges_cross(e, f)? {
                return Ok(Some((e, f)));
            }
        }
    }
    Ok(None)
}

/// Hull edges of the point set as `GeomEdge`s (circle sides for wheel sets).
pub fn hull_edges(ps: &PointSet) -> Result<BTreeSet<GeomEdge>> {
    if let ConfigTag::Wheel { n } = ps.tag() {
        let m = 2 * n - 1;
        return Ok((0..m).map(|i| GeomEdge::new(i, (i + 1) % m)).collect());
    }
    let hull = convex_hull(ps)?;
    let h = hull.len();
    Ok((0..h).map(|i| GeomEdge::new(hull[i], hull[(i + 1) % h])).collect())
}

/// Edges of `t` on the boundary of the convex hull of its point set.
pub fn boundary_edges(t: &GeomTree) -> Result<Vec<GeomEdge>> {
    let hull = hull_edges(t.point_set())?;
    Ok(t.edges().iter().copied().filter(|e| hull.contains(e)).collect())
}

/// Edges incident to the wheel center, ordered by circle endpoint.
pub fn radial_edges(t: &GeomTree) -> Result<Vec<GeomEdge>> {
    let x = t.point_set().wheel_center().ok_or(Error::NotWheelConfig)?;
    let mut out: Vec<GeomEdge> = t.edges().iter().copied().filter(|e| e.contains(x)).collect();
    out.sort_by_key(|e| e.other(x));
    Ok(out)
}

/// Vertex sequence of the unique `u`-`v` path in `t`.
pub fn unique_path(t: &GeomTree, u: usize, v: usize) -> Result<Vec<usize>> {
    let tree = t.abstract_tree()?;
    if u >= tree.len() || v >= tree.len() {
        return Err(Error::InvalidParameter(format!("vertex out of range: {u}, {v}")));
    }
    Ok(tree.path_between(u, v))
}

pub fn classify_geom(t: &GeomTree) -> Result<TreeClassReport> {
    Ok(classify(&t.abstract_tree()?))
}

/// A random plane spanning tree: edges in shuffled order are kept whenever
/// they join two components without crossing a kept edge. A maximal plane
/// forest on points in general position is connected.
pub fn random_plane_spanning_tree<R: Rng + ?Sized>(ps: Arc<PointSet>, rng: &mut R) -> Result<GeomTree> {
    let mut edges = ps.all_edges();
    edges.shuffle(rng);
    let mut parent: Vec<usize> = (0..ps.len()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut kept: Vec<GeomEdge> = Vec::with_capacity(ps.len().saturating_sub(1));
    for e in edges {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra == rb {
            continue;
        }
        let mut blocked = false;
        for &f in &kept {
            if ps.edges_cross(e, f)? {
                blocked = true;
                break;
            }
        }
        if !blocked {
            parent[ra] = rb;
            kept.push(e);
        }
    }
    let t = GeomTree::new(ps, kept)?;
    t.abstract_tree()?;
    Ok(t)
}
