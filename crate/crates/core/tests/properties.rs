use std::collections::BTreeSet;
use std::sync::Arc;

mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planetrees::geom::{
    default_wheel_seed, make_wheel, orientation, random_convex, random_general, regular_polygon, segments_cross,
};
use planetrees::halving::{all_lines, h_labeling, k_halving_lines};
use planetrees::halving_partition::{random_theorem3_choices, theorem2_partition, theorem3_partition};
use planetrees::taxonomy::{canonical_code, classify, random_plane_spanning_tree};
use planetrees::tree::GeomTree;
use planetrees::verify::{check_observation1, verify_partition};
use planetrees::{AbstractTree, Orientation, Point};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..ProptestConfig::default() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn orientation_is_antisymmetric(c in prop::array::uniform6(-10.0f64..10.0)) {
        let (p, q, r) = (Point::new(c[0], c[1]).unwrap(), Point::new(c[2], c[3]).unwrap(), Point::new(c[4], c[5]).unwrap());
        let a = orientation(p, q, r).unwrap();
        prop_assert_eq!(orientation(q, p, r).unwrap(), a.reversed());
        prop_assert_eq!(orientation(q, r, p).unwrap(), a);
    }

    #[test]
    fn crossing_is_symmetric(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ps = random_general(6, &mut g).unwrap();
        let edges = ps.all_edges();
        let e = *edges.choose(&mut g).unwrap();
        let f = *edges.choose(&mut g).unwrap();
        prop_assert_eq!(segments_cross(e, f, &ps).unwrap(), segments_cross(f, e, &ps).unwrap());
        if e.shares_endpoint(&f) {
            prop_assert!(!segments_cross(e, f, &ps).unwrap());
        }
    }

    #[test]
    fn halving_counts_sum_to_all_pairs(seed in any::<u64>(), m in 2usize..=8) {
        let mut g = rng(seed);
        let ps = random_general(2 * m, &mut g).unwrap();
        let lines = all_lines(&ps).unwrap();
        prop_assert_eq!(lines.len(), m * (2 * m - 1));
        // Every point lies on at least one halving line.
        let zero = k_halving_lines(&ps, 0).unwrap();
        for v in 0..2 * m {
            prop_assert!(zero.iter().any(|l| l.touches(v)));
        }
        let convex = random_convex(2 * m, &mut g).unwrap();
        for k in 0..m {
            let want = if k == 0 { m } else { 2 * m };
            prop_assert_eq!(k_halving_lines(&convex, k).unwrap().len(), want);
        }
    }

    /// Non-boundary `v_i v_j` with exactly one boundary edge inside `T[i, j]`
    /// forces exactly one of `v_i v_{j-1}`, `v_j v_{i+1}`.
    #[test]
    fn convex_tree_chord_lemma(seed in any::<u64>(), size in 4usize..=14) {
        let mut g = rng(seed);
        let ps = Arc::new(regular_polygon(size, 1.0, 0.1).unwrap());
        let t = random_plane_spanning_tree(ps, &mut g).unwrap();
        prop_assert_eq!(common::chord_lemma_violation(&t), None, "{:?}", t.edges());
    }

    /// At least `max{2, k}` boundary edges, and two disjoint ones unless a star.
    #[test]
    fn convex_boundary_edge_bound(seed in any::<u64>(), size in 3usize..=14) {
        let mut g = rng(seed);
        let ps = Arc::new(regular_polygon(size, 1.0, 0.1).unwrap());
        let t = random_plane_spanning_tree(ps, &mut g).unwrap();
        prop_assert!(common::boundary_bound_holds(&t), "{:?}", t.edges());
    }

    /// Star-pair trees on two crossing halving lines are edge-disjoint and
    /// meet the `K_4` on the four endpoints in the two stated paths.
    #[test]
    fn crossing_star_pair_trees_are_disjoint(seed in any::<u64>(), m in 2usize..=8) {
        let mut g = rng(seed);
        let ps = Arc::new(random_convex(2 * m, &mut g).unwrap());
        let halving = k_halving_lines(&ps, 0).unwrap();
        let l1 = halving.choose(&mut g).unwrap();
        let l2 = halving.choose(&mut g).unwrap();
        prop_assume!(l1 != l2);
        // Halving lines of a convex set pairwise cross.
        prop_assert_ne!(ps.strict_orientation(l1.i, l1.j, l2.i).unwrap(), ps.strict_orientation(l1.i, l1.j, l2.j).unwrap());
        prop_assert!(common::star_pair_disjointness_holds(&ps, *l1, *l2));
    }

    #[test]
    fn wheel_trees_satisfy_side_bounds(seed in any::<u64>(), n in 2usize..=7) {
        let mut g = rng(seed);
        let ps = Arc::new(make_wheel(n, 1.0, default_wheel_seed(n)).unwrap());
        let t = random_plane_spanning_tree(ps, &mut g).unwrap();
        let report = check_observation1(&t).unwrap();
        prop_assert!(report.ok, "{:?}", report);
    }

    #[test]
    fn classification_ignores_labels(seed in any::<u64>(), n in 1usize..=14) {
        let mut g = rng(seed);
        let t = common::random_tree(n, &mut g);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut g);
        let relabeled = AbstractTree::from_edges(n, &t.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(canonical_code(&t), canonical_code(&relabeled));
        let (a, b) = (classify(&t), classify(&relabeled));
        prop_assert_eq!(a.is_path, b.is_path);
        prop_assert_eq!(a.is_star, b.is_star);
        prop_assert_eq!(a.caterpillar, b.caterpillar);
        prop_assert_eq!(a.double_star, b.double_star);
        prop_assert_eq!(a.s_k, b.s_k);
        prop_assert_eq!(a.w_caterpillar, b.w_caterpillar);
        prop_assert_eq!(a.symmetric.is_some(), b.symmetric.is_some());
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn star_pair_partitions_are_valid(seed in any::<u64>(), m in 2usize..=7, t in 0usize..=1) {
        let mut g = rng(seed);
        let ps = Arc::new(random_convex(2 * m, &mut g).unwrap());
        let p = theorem2_partition(ps, t).unwrap();
        prop_assert!(verify_partition(&p).unwrap().ok);
    }

    /// Random choice vectors on regular polygons: valid partitions, and the
    /// edges of each half of `T_0` have pairwise distinct index spans.
    #[test]
    fn symmetric_caterpillar_choices(seed in any::<u64>(), n in 2usize..=8) {
        let mut g = rng(seed);
        let ps = Arc::new(regular_polygon(2 * n, 1.0, 0.1).unwrap());
        prop_assert_eq!(h_labeling(&ps).unwrap().order, (0..2 * n).collect::<Vec<_>>());
        let r = g.gen_range(1..n);
        let choices = random_theorem3_choices(&ps, r, &mut g).unwrap();
        let p = theorem3_partition(ps, r, &choices).unwrap();
        prop_assert!(verify_partition(&p).unwrap().ok);
        let t0: &GeomTree = &p.trees()[0];
        for lo in [0, n] {
            let lift = |v: usize| if v < lo { v + 2 * n } else { v };
            let inside = |v: usize| (lo..=lo + n).contains(&lift(v));
            let spans: Vec<usize> = t0
                .edges()
                .iter()
                .filter(|e| inside(e.a) && inside(e.b))
                .map(|e| lift(e.a).abs_diff(lift(e.b)))
                .filter(|&d| d != n)
                .collect();
            let unique: BTreeSet<usize> = spans.iter().copied().collect();
            prop_assert_eq!(unique.len(), spans.len(), "{:?}", t0.edges());
        }
    }
}

#[test]
fn orientation_of_known_triangle() {
    let (p, q, r) = (Point::new(0.0, 0.0).unwrap(), Point::new(1.0, 0.0).unwrap(), Point::new(0.0, 1.0).unwrap());
    assert_eq!(orientation(p, q, r).unwrap(), Orientation::Ccw);
}
