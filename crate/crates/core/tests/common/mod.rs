//! Checks shared by the property suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use planetrees::halving::HalvingLine;
use planetrees::halving_partition::{lemma6_tree_twin_stars, lemma7_k4_intersections};
use planetrees::taxonomy::{boundary_edges, classify};
use planetrees::{AbstractTree, GeomEdge, GeomTree, PointSet};

/// A random labeled tree: vertex `v` attaches to a random earlier vertex,
/// then labels are shuffled.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> AbstractTree {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = (1..n).map(|v| (perm[v], perm[rng.gen_range(0..v)])).collect();
    AbstractTree::from_edges(n, &edges).unwrap()
}

/// Number of leaves of the tree left after deleting all leaves.
pub fn residue_leaves(t: &AbstractTree) -> usize {
    let inner: Vec<usize> = (0..t.len()).filter(|&v| t.degree(v) > 1).collect();
    if inner.len() < 2 {
        return 0;
    }
    inner.iter().filter(|&&v| t.neighbors(v).iter().filter(|&&u| t.degree(u) > 1).count() == 1).count()
}

/// For a plane tree on a convex polygon labeled in boundary order: every
/// non-boundary `v_i v_j` whose side `T[i, j]` holds exactly one boundary
/// edge has exactly one of `v_i v_{j-1}`, `v_j v_{i+1}`. Returns the first
/// offending directed edge.
pub fn chord_lemma_violation(t: &GeomTree) -> Option<(usize, usize)> {
    let size = t.point_set().len();
    let has = |a: usize, b: usize| t.contains(GeomEdge::new(a % size, b % size));
    for &e in t.edges() {
        for (i, j) in [(e.a, e.b), (e.b, e.a)] {
            let span = (j + size - i) % size;
            if span == 1 || span == size - 1 {
                continue;
            }
            let boundary = (0..span).filter(|&s| has(i + s, i + s + 1)).count();
            if boundary == 1 && has(i, i + span - 1) == has(j, i + 1) {
                return Some((i, j));
            }
        }
    }
    None
}

/// At least `max{2, k}` boundary edges, and two disjoint ones unless a star.
pub fn boundary_bound_holds(t: &GeomTree) -> bool {
    let a = t.abstract_tree().unwrap();
    if t.edges().len() < 2 {
        return true;
    }
    let boundary = boundary_edges(t).unwrap();
    if boundary.len() < residue_leaves(&a).max(2) {
        return false;
    }
    classify(&a).is_star
        || boundary.iter().enumerate().any(|(i, e)| boundary[i + 1..].iter().any(|f| !e.shares_endpoint(f)))
}

/// Builds the two star-pair trees on crossing halving lines `l1`, `l2` and
/// checks disjointness and the stated `K_4` intersections.
pub fn star_pair_disjointness_holds(ps: &Arc<PointSet>, l1: HalvingLine, l2: HalvingLine) -> bool {
    let (u1, u2) = (l1.i, l1.j);
    let (v1, v2) = (l2.i, l2.j);
    let t1 = lemma6_tree_twin_stars(ps.clone(), u2, u1, v1, v2).unwrap();
    let t2 = lemma6_tree_twin_stars(ps.clone(), v1, v2, u1, u2).unwrap();
    let e1: BTreeSet<GeomEdge> = t1.edges().iter().copied().collect();
    if t2.edges().iter().any(|e| e1.contains(e)) {
        return false;
    }
    let (k1, k2) = lemma7_k4_intersections(&t1, &t2, [u1, u2, v1, v2]);
    let set = |pairs: [(usize, usize); 3]| pairs.iter().map(|&(a, b)| GeomEdge::new(a, b)).collect::<BTreeSet<_>>();
    k1 == set([(v1, u2), (u2, u1), (u1, v2)]) && k2 == set([(u1, v1), (v1, v2), (v2, u2)])
}
