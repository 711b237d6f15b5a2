//! Partitions of the complete graph on a regular wheel into plane spanning trees.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{GeomEdge, PointSet};
use crate::partition::Partition;
use crate::taxonomy::{
    boundary_edges, classify, is_caterpillar, isomorphic, p4_witnesses, radial_edges, P4Type, P4Witness,
};
use crate::tree::{AbstractTree, GeomTree};
use crate::verify::{check_observation1, verify_partition};

/// Which end of a chain hosts the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainEnd {
    Low,
    High,
}

/// Longest path from `root` inside `mask`, ties broken towards smaller indices.
fn longest_path_from(t: &AbstractTree, mask: &[bool], root: usize) -> Vec<usize> {
    fn dfs(t: &AbstractTree, mask: &[bool], v: usize, parent: Option<usize>) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for &c in t.neighbors(v) {
            if Some(c) == parent || !mask[c] {
                continue;
            }
            let sub = dfs(t, mask, c, Some(v));
            if sub.len() > best.len() {
                best = sub;
            }
        }
        let mut out = vec![v];
        out.extend(best);
        out
    }
    dfs(t, mask, root, None)
}

/// Places the component `mask` of `t` (rooted at `root`) on `chain`, a run of
/// points in convex position listed in boundary order. Returns `(vertex, point)`.
///
/// The root goes to the `anchor` end. Along a dominating path `p_0 = root, …, p_s`
/// the spine vertices alternate between the two ends of the unused arc; each
/// spine vertex fans its legs from the far end inward, and the next spine
/// vertex takes the following slot. The drawing is plane, and the only edges
/// joining chain-consecutive points (or the two chain ends) are the chord to
/// the first far-end vertex and the final spine edge.
pub fn place_on_chain(
    t: &AbstractTree,
    mask: &[bool],
    root: usize,
    chain: &[usize],
    anchor: ChainEnd,
) -> Result<Vec<(usize, usize)>> {
    let size = mask.iter().filter(|&&b| b).count();
    if size != chain.len() {
        return Err(Error::SizeMismatch { expected: size, actual: chain.len() });
    }
    if !mask[root] {
        return Err(Error::InvalidParameter(format!("root {root} is outside the component")));
    }
    let spine = longest_path_from(t, mask, root);
    let on_spine: BTreeSet<usize> = spine.iter().copied().collect();
    let mut legs: Vec<Vec<usize>> = Vec::with_capacity(spine.len());
    let mut covered = spine.len();
    for (i, &p) in spine.iter().enumerate() {
        let mine: Vec<usize> = t.neighbors(p).iter().copied().filter(|&c| mask[c] && !on_spine.contains(&c)).collect();
        for &c in &mine {
            if t.neighbors(c).iter().any(|&d| mask[d] && d != p) {
                return Err(Error::NotPlaceable(format!(
                    "vertex {c} is not adjacent to the path from {root} (spine position {i})"
                )));
            }
        }
        covered += mine.len();
        legs.push(mine);
    }
    debug_assert_eq!(covered, size);

    // Positions are indices into `chain`; `lo..=hi` is the unused arc.
    let (mut lo, mut hi) = (0usize, chain.len() - 1);
    let mut at_low = anchor == ChainEnd::Low;
    let mut out = Vec::with_capacity(size);
    let take = |low: bool, lo: &mut usize, hi: &mut usize| -> usize {
        if low {
            *lo += 1;
            *lo - 1
        } else {
            let v = *hi;
            *hi = hi.wrapping_sub(1);
            v
        }
    };
    out.push((spine[0], chain[take(at_low, &mut lo, &mut hi)]));
    for (i, leg_list) in legs.iter().enumerate() {
        at_low = !at_low;
        for &leg in leg_list {
            out.push((leg, chain[take(at_low, &mut lo, &mut hi)]));
        }
        if let Some(&next) = spine.get(i + 1) {
            out.push((next, chain[take(at_low, &mut lo, &mut hi)]));
        }
    }
    Ok(out)
}

/// Draws a caterpillar on `chain` with its spine head at the `anchor` end.
pub fn place_caterpillar_on_chain(
    ps: Arc<PointSet>,
    c: &AbstractTree,
    chain: &[usize],
    anchor: ChainEnd,
) -> Result<GeomTree> {
    if c.len() != chain.len() {
        return Err(Error::SizeMismatch { expected: c.len(), actual: chain.len() });
    }
    if !is_caterpillar(c) {
        return Err(Error::NotPlaceable("not a caterpillar".into()));
    }
    let mask = vec![true; c.len()];
    // A diameter endpoint: the farthest vertex from vertex 0.
    let far = *longest_path_from(c, &mask, 0).last().expect("non-empty");
    let placed = place_on_chain(c, &mask, far, chain, anchor)?;
    let mut at = vec![usize::MAX; c.len()];
    for (v, p) in placed {
        at[v] = p;
    }
    GeomTree::new(ps, c.edges().into_iter().map(|(u, v)| GeomEdge::new(at[u], at[v])))
}

/// Edges of `t` joining chain-consecutive points or the two chain ends.
pub fn chain_boundary_edges(t: &GeomTree, chain: &[usize]) -> Vec<GeomEdge> {
    let l = chain.len();
    if l < 2 {
        return Vec::new();
    }
    let mut sides: BTreeSet<GeomEdge> = (0..l - 1).map(|i| GeomEdge::new(chain[i], chain[i + 1])).collect();
    if l >= 3 {
        sides.insert(GeomEdge::new(chain[0], chain[l - 1]));
    }
    t.edges().iter().copied().filter(|e| sides.contains(e)).collect()
}

fn wheel_params(ps: &PointSet) -> Result<(usize, usize, usize)> {
    let n = ps.wheel_n().ok_or(Error::NotWheelConfig)?;
    let x = ps.wheel_center().ok_or(Error::NotWheelConfig)?;
    Ok((n, 2 * n - 1, x))
}

/// Rotates every circle endpoint anticlockwise by `steps`; the center stays.
pub fn rotate_tree(t: &GeomTree, steps: usize) -> Result<GeomTree> {
    let (_, m, x) = wheel_params(t.point_set())?;
    let f = |v: usize| if v == x { x } else { (v + steps) % m };
    GeomTree::new(t.shared_point_set().clone(), t.edges().iter().map(|e| GeomEdge::new(f(e.a), f(e.b))))
}

/// Builds `T_1`, its rotations `T_2..T_{n-1}`, and the complement `T_n`,
/// using the first w-caterpillar witness of `t`.
pub fn build_wheel_partition(ps: Arc<PointSet>, t: &AbstractTree) -> Result<Partition> {
    let witness = p4_witnesses(t)
        .into_iter()
        .find(|w| w.w_caterpillar)
        .ok_or_else(|| Error::NotWCaterpillar("no 4-path witnesses w-caterpillar structure".into()))?;
    build_wheel_partition_with(ps, t, &witness)
}

/// As [`build_wheel_partition`], for a chosen witness.
pub fn build_wheel_partition_with(ps: Arc<PointSet>, t: &AbstractTree, w: &P4Witness) -> Result<Partition> {
    let (n, m, x) = wheel_params(&ps)?;
    if t.len() != 2 * n {
        return Err(Error::SizeMismatch { expected: 2 * n, actual: t.len() });
    }
    if !w.w_caterpillar {
        return Err(Error::NotWCaterpillar("witness does not certify a w-caterpillar".into()));
    }
    let v = |i: usize| i % m;
    let [u1, u2, u3, u4] = w.path;
    let mut at = vec![usize::MAX; t.len()];
    at[u1] = x;
    at[u2] = v(1);
    at[u3] = v(n + 1);
    at[u4] = v(2);

    if n > 2 {
        let mask_of = |set: &[usize]| {
            let mut mask = vec![false; t.len()];
            for &s in set {
                mask[s] = true;
            }
            mask
        };
        let mask_a = mask_of(&w.a);
        // (A's chain, anchor, B's root, shift from A's chain onto B's chain)
        let (chain_a, anchor, b_root, shift) = match w.kind {
            P4Type::Type1 => ((3..=n + 1).map(v).collect::<Vec<_>>(), ChainEnd::High, u2, n - 1),
            P4Type::Type2 => ((n + 1..=2 * n - 1).map(v).collect::<Vec<_>>(), ChainEnd::Low, u4, n),
            P4Type::Untyped => return Err(Error::NotWCaterpillar("untyped witness needs exactly 4 vertices".into())),
        };
        let placed_a = place_on_chain(t, &mask_a, u3, &chain_a, anchor)?;
        let phi: std::collections::BTreeMap<usize, usize> = w.phi.iter().copied().collect();
        if phi.get(&u3) != Some(&b_root) {
            return Err(Error::InvariantViolation("witness map does not send u3 to B's root".into()));
        }
        for (a, p) in placed_a {
            at[a] = p;
            at[phi[&a]] = v(p + shift);
        }
    }
    if let Some(missing) = at.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvariantViolation(format!("vertex {missing} was not placed")));
    }
    let t1 = GeomTree::new(ps.clone(), t.edges().into_iter().map(|(a, b)| GeomEdge::new(at[a], at[b])))?;

    let mut trees = vec![t1.clone()];
    for i in 1..n - 1 {
        trees.push(rotate_tree(&t1, i)?);
    }
    let used: BTreeSet<GeomEdge> = trees.iter().flat_map(|t| t.edges().iter().copied()).collect();
    let rest: Vec<GeomEdge> = ps.all_edges().into_iter().filter(|e| !used.contains(e)).collect();
    trees.push(GeomTree::new(ps.clone(), rest)?);
    let p = Partition::new(ps, trees)?;

    let report = verify_partition(&p)?;
    if let Some(f) = report.failure {
        return Err(Error::InvariantViolation(format!("constructed partition fails verification: {f}")));
    }
    let last = &p.trees()[n - 1];
    let last_tree = last.abstract_tree()?;
    if !is_caterpillar(&last_tree) {
        return Err(Error::StructureViolation {
            lemma: "Theorem 1".into(),
            witness: "the complementary tree is not a caterpillar".into(),
        });
    }
    let boundary = boundary_edges(last)?;
    if boundary.len() != 1 {
        return Err(Error::StructureViolation {
            lemma: "Theorem 1".into(),
            witness: format!("the complementary tree has {} boundary edges", boundary.len()),
        });
    }
    Ok(p)
}

/// Which branch of the wheel case split a partition falls into, after
/// relabeling so the long radial run is `v_n, …, v_{2n-2}, v_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofCase {
    /// `v_1 v_{n+2}` lies in the tree with radial edge `x v_1`.
    I,
    /// `v_0 v_{n+1}` lies in that tree.
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeAnalysis {
    pub boundary_count: usize,
    pub radial_count: usize,
    /// `[x, v_i, v_{i+n}, v_{i+1}]` (or its mirror) when the tree has one radial edge.
    pub four_path: Option<[usize; 4]>,
    pub observation1: bool,
    pub is_path: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelAnalysis {
    pub one_boundary_tree: usize,
    pub radial_run: Vec<GeomEdge>,
    pub per_tree: Vec<TreeAnalysis>,
    /// `None` when `n = 2`, where the split is vacuous.
    pub case: Option<ProofCase>,
}

fn violation(lemma: &str, witness: String) -> Error {
    Error::StructureViolation { lemma: lemma.into(), witness }
}

/// Circle endpoints of `radials` form one contiguous anticlockwise run; returns its first index.
fn run_start(ends: &[usize], m: usize) -> Option<usize> {
    let set: BTreeSet<usize> = ends.iter().copied().collect();
    if set.len() == m {
        return Some(0);
    }
    let starts: Vec<usize> = set.iter().copied().filter(|&e| !set.contains(&((e + m - 1) % m))).collect();
    match starts.as_slice() {
        [s] => Some(*s),
        _ => None,
    }
}

/// Checks the structure every partition of the complete graph on a wheel
/// must have: boundary and radial edge counts per tree, the one special
/// tree, the 4-path at single radial edges, and the side bounds.
pub fn analyze_wheel_partition(p: &Partition) -> Result<WheelAnalysis> {
    let ps = p.point_set();
    let (n, m, x) = wheel_params(ps)?;
    let report = verify_partition(p)?;
    if let Some(f) = report.failure {
        return Err(Error::NotAPartition(f.to_string()));
    }
    if p.len() != n {
        return Err(Error::NotAPartition(format!("{} trees, expected {n}", p.len())));
    }
    let mut per_tree = Vec::with_capacity(n);
    let mut radial_lists = Vec::with_capacity(n);
    for (i, t) in p.trees().iter().enumerate() {
        let boundary = boundary_edges(t)?.len();
        let radials = radial_edges(t)?;
        // No boundary edge forces a radial star.
        if boundary == 0 && radials.len() != t.edges().len() {
            return Err(violation("Proposition 1", format!("tree {i} has no boundary edge but non-radial edges")));
        }
        // Every tree has a boundary edge.
        if boundary == 0 {
            return Err(violation("Lemma 3", format!("tree {i} has no boundary edge")));
        }
        let ends: Vec<usize> = radials.iter().map(|e| e.other(x)).collect();
        // One boundary edge forces a contiguous run of at least n radials.
        if boundary == 1 && (ends.len() < n || run_start(&ends, m).is_none()) {
            return Err(violation("Proposition 2", format!("tree {i} has one boundary edge but radial ends {ends:?}")));
        }
        // Fewer than n radials forces a second boundary edge.
        if radials.len() < n && boundary < 2 {
            return Err(violation("Proposition 3", format!("tree {i} has {} radials, 1 boundary edge", radials.len())));
        }
        let four_path = if radials.len() == 1 {
            let tree = t.abstract_tree()?;
            let vi = ends[0];
            let forward = [x, vi, (vi + n) % m, (vi + 1) % m];
            let mirrored = [x, vi, (vi + n - 1) % m, (vi + m - 1) % m];
            let has = |path: [usize; 4]| path.windows(2).all(|w| tree.has_edge(w[0], w[1]));
            [forward, mirrored].into_iter().find(|&path| has(path))
        } else {
            None
        };
        per_tree.push(TreeAnalysis {
            boundary_count: boundary,
            radial_count: radials.len(),
            four_path,
            observation1: check_observation1(t)?.ok,
            is_path: crate::taxonomy::is_path(&t.abstract_tree()?),
        });
        radial_lists.push((radials, ends));
    }
    // Exactly one tree has a single boundary edge and n radials; the others have two and one.
    let singles: Vec<usize> = (0..n).filter(|&i| per_tree[i].boundary_count == 1).collect();
    let [special] = singles.as_slice() else {
        return Err(violation("Lemma 4", format!("trees with one boundary edge: {singles:?}")));
    };
    let special = *special;
    let (run, ends) = &radial_lists[special];
    let start = match run_start(ends, m) {
        Some(s) if ends.len() == n => s,
        _ => return Err(violation("Lemma 4", format!("tree {special} radial ends {ends:?}"))),
    };
    for (i, a) in per_tree.iter().enumerate() {
        if i == special {
            continue;
        }
        if a.boundary_count != 2 || a.radial_count != 1 {
            return Err(violation(
                "Lemma 4",
                format!("tree {i} has {} boundary and {} radial edges", a.boundary_count, a.radial_count),
            ));
        }
        // A single radial edge continues as a 4-path.
        if a.four_path.is_none() {
            return Err(violation("Lemma 5", format!("tree {i} lacks the 4-path at its radial edge")));
        }
    }
    if let Some(i) = per_tree.iter().position(|a| !a.observation1) {
        return Err(violation("Observation 1", format!("tree {i}")));
    }
    // Relabel so the run is v_n..v_{2n-2}, v_0, either anticlockwise or (for
    // partitions built on the mirrored 4-paths) clockwise.
    let case = if n > 2 {
        let forward = move |label: usize| (label + start + m - n) % m;
        let mirrored = move |label: usize| (start + m - label % m) % m;
        let labelings: [&dyn Fn(usize) -> usize; 2] = [&forward, &mirrored];
        labelings.iter().find_map(|orig| {
            let holder = (0..n).find(|&i| i != special && radial_lists[i].1[0] == orig(1))?;
            let t = &p.trees()[holder];
            let has = |a: usize, b: usize| t.contains(GeomEdge::new(a, b));
            if !(has(orig(1), orig(n + 1)) && has(orig(n + 1), orig(2))) {
                return None;
            }
            if has(orig(1), orig(n + 2)) {
                Some(ProofCase::I)
            } else if has(orig(0), orig(n + 1)) {
                Some(ProofCase::II)
            } else {
                None
            }
        })
    } else {
        None
    };
    if n > 2 && case.is_none() {
        return Err(violation("Theorem 1 case split", "neither case (i) nor case (ii) applies".into()));
    }
    Ok(WheelAnalysis { one_boundary_tree: special, radial_run: run.clone(), per_tree, case })
}

/// Checks both implications of the double-star note on one partition.
pub fn check_note1(p: &Partition) -> Result<bool> {
    let analysis = analyze_wheel_partition(p)?;
    let special = analysis.one_boundary_tree;
    let trees: Vec<AbstractTree> = p.trees().iter().map(|t| t.abstract_tree()).collect::<Result<_>>()?;
    let others: Vec<&AbstractTree> = (0..trees.len()).filter(|&i| i != special).map(|i| &trees[i]).collect();
    let last = &trees[special];
    let all_double = others.iter().all(|t| classify(t).double_star.is_some());
    let pairwise = others.windows(2).all(|w| isomorphic(w[0], w[1]));
    if all_double && pairwise {
        return Ok(others.first().is_none_or(|t| isomorphic(t, last)));
    }
    if others.iter().all(|t| classify(t).w_caterpillar) {
        return Ok(others.iter().all(|t| !isomorphic(t, last)));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{default_wheel_seed, make_wheel, regular_polygon};
    use crate::taxonomy::{enumerate_trees, is_plane};

    fn wheel(n: usize) -> Arc<PointSet> {
        Arc::new(make_wheel(n, 1.0, default_wheel_seed(n)).unwrap())
    }

    fn pairs(t: &GeomTree) -> Vec<(usize, usize)> {
        t.edges().iter().map(|e| (e.a, e.b)).collect()
    }

    #[test]
    fn paths_on_chains() {
        for len in 3..=8 {
            let ps = Arc::new(regular_polygon(len, 1.0, 0.0).unwrap());
            let chain: Vec<usize> = (0..len).collect();
            for anchor in [ChainEnd::Low, ChainEnd::High] {
                let t = place_caterpillar_on_chain(ps.clone(), &AbstractTree::path(len), &chain, anchor).unwrap();
                assert!(is_plane(&t).unwrap());
                assert_eq!(chain_boundary_edges(&t, &chain).len(), 2, "len {len}");
            }
        }
    }

    #[test]
    fn every_caterpillar_gets_two_boundary_edges() {
        for len in 3..=9 {
            let ps = Arc::new(regular_polygon(len, 1.0, 0.0).unwrap());
            let chain: Vec<usize> = (0..len).collect();
            for c in enumerate_trees(len).into_iter().filter(is_caterpillar) {
                let t = place_caterpillar_on_chain(ps.clone(), &c, &chain, ChainEnd::Low).unwrap();
                assert!(is_plane(&t).unwrap());
                assert!(isomorphic(&t.abstract_tree().unwrap(), &c));
                assert_eq!(chain_boundary_edges(&t, &chain).len(), 2);
            }
        }
    }

    #[test]
    fn size_mismatch() {
        let ps = Arc::new(regular_polygon(5, 1.0, 0.0).unwrap());
        let err = place_caterpillar_on_chain(ps, &AbstractTree::path(4), &[0, 1, 2], ChainEnd::Low);
        assert_eq!(err, Err(Error::SizeMismatch { expected: 4, actual: 3 }));
    }

    #[test]
    fn rotation_identities() {
        let ps = wheel(3);
        let t = GeomTree::from_pairs(ps, &[(5, 2), (2, 0), (0, 3), (3, 4), (0, 1)]).unwrap();
        assert_eq!(rotate_tree(&t, 0).unwrap(), t);
        assert_eq!(rotate_tree(&t, 5).unwrap(), t);
        assert_eq!(pairs(&rotate_tree(&t, 1).unwrap()), vec![(0, 4), (1, 2), (1, 3), (1, 4), (3, 5)]);
    }

    #[test]
    fn n2_path() {
        let p = build_wheel_partition(wheel(2), &AbstractTree::path(4)).unwrap();
        assert_eq!(p.len(), 2);
        assert!(verify_partition(&p).unwrap().ok);
        assert!(check_note1(&p).unwrap());
    }

    #[test]
    fn fig3_a1_shape() {
        // Double star S(3,3) with the 4-path x v1 v5 v2 (labels as tree vertices 0..8).
        let t = AbstractTree::double_star_subdivided(0, 3, 3);
        let p = build_wheel_partition(wheel(4), &t).unwrap();
        let a = analyze_wheel_partition(&p).unwrap();
        assert_eq!(a.one_boundary_tree, 3);
        assert!(check_note1(&p).unwrap());
        let x = 7;
        let red = pairs(&p.trees()[0]);
        let mut want = vec![(1, x), (1, 5), (2, 5), (1, 6), (3, 5), (0, 1), (4, 5)];
        for e in &mut want {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        want.sort();
        assert_eq!(red, want);
    }

    #[test]
    fn corrupted_partition_rejected() {
        let t = AbstractTree::double_star_subdivided(0, 2, 2);
        let p = build_wheel_partition(wheel(3), &t).unwrap();
        let mut lists: Vec<Vec<GeomEdge>> = p.trees().iter().map(|t| t.edges().to_vec()).collect();
        let moved = lists[0].pop().unwrap();
        lists[1].push(moved);
        let bad = Partition::from_edge_lists(p.shared_point_set().clone(), &lists).unwrap();
        assert!(matches!(
            analyze_wheel_partition(&bad),
            Err(Error::NotAPartition(_)) | Err(Error::StructureViolation { .. })
        ));
    }
}
