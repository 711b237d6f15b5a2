use std::collections::BTreeSet;
use std::sync::Arc;

use planetrees::geom::{default_wheel_seed, make_wheel, regular_polygon};
use planetrees::halving::h_labeling;
use planetrees::halving_partition::{
    lemma6_tree, lemma6_tree_twin_stars, theorem2_partition, theorem2_partition_on, theorem3_partition,
    theorem4_construct, theorem4_partition, ConstructionChoices, ExtendSide, WType,
};
use planetrees::presets::{halving_preset, preset_points};
use planetrees::taxonomy::{classify, is_plane, is_s_k, is_spanning_tree, isomorphic};
use planetrees::verify::verify_partition;
use planetrees::{Error, GeomEdge, Partition};

fn set(pairs: &[(usize, usize)]) -> BTreeSet<GeomEdge> {
    pairs.iter().map(|&(a, b)| GeomEdge::new(a, b)).collect()
}

fn tree_sets(p: &Partition) -> Vec<BTreeSet<GeomEdge>> {
    p.trees().iter().map(|t| t.edges().iter().copied().collect()).collect()
}

fn assert_valid(p: &Partition) {
    let report = verify_partition(p).unwrap();
    assert!(report.ok, "{:?}", report.failure);
}

#[test]
fn fig4_drawn_tree_is_the_twin_star_variant() {
    let ps = Arc::new(preset_points("fig4").unwrap());
    let drawn = set(&[(1, 7), (10, 1), (10, 0), (10, 11), (10, 9), (10, 8), (5, 7), (5, 2), (5, 3), (5, 4), (5, 6)]);
    let twin = lemma6_tree_twin_stars(ps.clone(), 1, 7, 10, 5).unwrap();
    assert_eq!(twin.edges().iter().copied().collect::<BTreeSet<_>>(), drawn);
    let text = lemma6_tree(ps, 1, 7, 10, 5).unwrap();
    for t in [&twin, &text] {
        assert!(is_spanning_tree(t));
        assert!(is_plane(t).unwrap());
    }
}

#[test]
fn lemma6_errors() {
    let ps = Arc::new(preset_points("fig4").unwrap());
    assert!(matches!(lemma6_tree(ps.clone(), 1, 2, 10, 5), Err(Error::NotAHalvingLine(1, 2))));
    assert!(matches!(lemma6_tree(ps, 1, 7, 10, 0), Err(Error::SideViolation(_))));
}

#[test]
fn lemma6_smallest_case() {
    let ps = Arc::new(regular_polygon(4, 1.0, 0.3).unwrap());
    let t = lemma6_tree(ps, 0, 2, 1, 3).unwrap();
    assert_eq!(t.edges().len(), 3);
    assert!(is_spanning_tree(&t) && is_plane(&t).unwrap());
}

#[test]
fn fig5_red_and_all_colors() {
    let ps = Arc::new(preset_points("fig5").unwrap());
    let p = theorem2_partition(ps.clone(), 1).unwrap();
    assert_valid(&p);
    let golden = vec![
        set(&[(4, 0), (4, 1), (0, 5), (5, 7), (5, 6), (1, 3), (1, 2)]),
        set(&[(5, 1), (5, 2), (1, 6), (2, 4), (2, 3), (6, 0), (6, 7)]),
        set(&[(2, 6), (6, 3), (2, 7), (7, 1), (7, 0), (3, 5), (3, 4)]),
        set(&[(3, 7), (3, 0), (7, 4), (4, 5), (4, 6), (0, 1), (0, 2)]),
    ];
    let mut got = tree_sets(&p);
    got.sort();
    let mut want = golden;
    want.sort();
    assert_eq!(got, want);
    for t in p.trees() {
        assert!(is_s_k(&t.abstract_tree().unwrap(), 2, 2, 2));
    }
    let h = h_labeling(&ps).unwrap();
    assert_eq!(theorem2_partition_on(ps, 1, &h).unwrap(), p);
}

#[test]
fn octagon_double_stars() {
    let ps = Arc::new(regular_polygon(8, 1.0, 0.2).unwrap());
    let p = theorem2_partition(ps, 0).unwrap();
    assert_valid(&p);
    for t in p.trees() {
        assert_eq!(classify(&t.abstract_tree().unwrap()).double_star, Some((3, 3)));
    }
}

#[test]
fn square_gives_paths() {
    let ps = Arc::new(regular_polygon(4, 1.0, 0.2).unwrap());
    let p = theorem2_partition(ps, 1).unwrap();
    assert_valid(&p);
    assert_eq!(p.len(), 2);
    for t in p.trees() {
        assert!(classify(&t.abstract_tree().unwrap()).is_path);
    }
}

#[test]
fn fig6_t0() {
    let pre = halving_preset("fig6").unwrap();
    let ps = Arc::new(pre.points);
    let p = theorem3_partition(ps, pre.r, &pre.choices).unwrap();
    assert_valid(&p);
    let t0 = set(&[(0, 6), (6, 1), (1, 5), (5, 2), (5, 3), (5, 4), (0, 7), (7, 11), (11, 8), (11, 9), (11, 10)]);
    assert_eq!(tree_sets(&p)[0], t0);
    let first = p.trees()[0].abstract_tree().unwrap();
    for t in p.trees() {
        let a = t.abstract_tree().unwrap();
        let c = classify(&a);
        assert!(c.caterpillar && c.symmetric.is_some());
        assert!(isomorphic(&a, &first));
    }
}

#[test]
fn octagon_symmetric_caterpillars_with_defaults() {
    let ps = Arc::new(regular_polygon(8, 1.0, 0.2).unwrap());
    let p = theorem3_partition(ps, 1, &ConstructionChoices::default()).unwrap();
    assert_valid(&p);
    for t in p.trees() {
        let c = classify(&t.abstract_tree().unwrap());
        assert!(c.caterpillar && c.symmetric.is_some());
    }
}

#[test]
fn corrupted_extension_is_rejected() {
    let pre = halving_preset("fig6").unwrap();
    let ps = Arc::new(pre.points);
    // Growing right past v_6 would take a vertex of the mirrored half.
    let bad =
        ConstructionChoices { fan_line: Some((2, 6)), extend_side: vec![ExtendSide::Right], ..pre.choices.clone() };
    assert!(matches!(theorem3_partition(ps.clone(), 2, &bad), Err(Error::InvalidChoices(_))));
    let wrong_len = ConstructionChoices { extend_side: vec![ExtendSide::Right, ExtendSide::Left], ..pre.choices };
    assert!(matches!(theorem3_partition(ps, 2, &wrong_len), Err(Error::InvalidChoices(_))));
}

fn check_w_family(name: &str, t0: &[(usize, usize)], last: &[(usize, usize)]) {
    let pre = halving_preset(name).unwrap();
    let ps = Arc::new(pre.points);
    assert!(matches!(theorem4_partition(ps.clone(), pre.r, &pre.choices), Err(Error::HypothesisViolated(_))));
    let p = theorem4_construct(ps, pre.r, &pre.choices).unwrap();
    assert_valid(&p);
    let sets = tree_sets(&p);
    assert_eq!(sets[0], set(t0));
    let t1: BTreeSet<GeomEdge> = t0
        .iter()
        .map(|&(a, b)| {
            let f = |v: usize| if v == 13 { 13 } else { (v + 1) % 13 };
            GeomEdge::new(f(a), f(b))
        })
        .collect();
    assert_eq!(sets[1], t1);
    assert_eq!(sets[6], set(last));
    let first = p.trees()[0].abstract_tree().unwrap();
    for t in &p.trees()[..6] {
        let a = t.abstract_tree().unwrap();
        assert!(classify(&a).w_caterpillar);
        assert!(isomorphic(&a, &first));
    }
}

#[test]
#[rustfmt::skip]
fn fig7_type1_family() {
    check_w_family(
        "fig7",
        &[(6, 13), (6, 0), (0, 7), (0, 8), (8, 9), (8, 10), (8, 11), (8, 12), (6, 1), (1, 2), (1, 3), (1, 4), (1, 5)],
        &[(13, 12), (13, 0), (13, 1), (13, 2), (13, 3), (13, 4), (13, 5), (6, 12), (12, 7), (7, 8), (7, 9), (7, 10), (7, 11)],
    );
}

#[test]
#[rustfmt::skip]
fn fig8_type2_family() {
    check_w_family(
        "fig8",
        &[(6, 13), (6, 0), (0, 7), (7, 12), (0, 5), (12, 8), (12, 9), (12, 10), (12, 11), (5, 1), (5, 2), (5, 3), (5, 4)],
        &[(13, 12), (13, 0), (13, 1), (13, 2), (13, 3), (13, 4), (13, 5), (6, 12), (6, 11), (11, 7), (11, 8), (11, 9), (11, 10)],
    );
}

#[test]
fn wheels_with_defaults() {
    for n in 3..=6 {
        let ps = Arc::new(make_wheel(n, 1.0, default_wheel_seed(n)).unwrap());
        for kind in [WType::Type1, WType::Type2] {
            let choices = ConstructionChoices { type4: kind, ..Default::default() };
            for r in 1..n {
                match theorem4_partition(ps.clone(), r, &choices) {
                    Ok(p) => {
                        assert!(r >= 2, "n={n} r={r}");
                        assert_valid(&p);
                    }
                    Err(Error::NoFanLine { .. }) => assert_eq!(r, 1, "n={n}"),
                    Err(e) => panic!("n={n} r={r}: {e}"),
                }
            }
        }
    }
    let ps = Arc::new(make_wheel(2, 1.0, default_wheel_seed(2)).unwrap());
    let p = theorem4_partition(ps, 1, &ConstructionChoices::default()).unwrap();
    assert_valid(&p);
}
