//! Cross-module properties tying the frame algebra, morphisms, and
//! semantics together on enumerated and generated corpora.

use modal_planes::enumerate::quasi_1_planes_up_to;
use modal_planes::formula::Formula;
use modal_planes::frame::{check_o, compose, is_connected, OCondition, OneFrame};
use modal_planes::generators::{gen_pg2, gen_polarity_graph, gen_random_quasi, QuasiKind};
use modal_planes::morphism::{
    is_surjective, lift_2to1, plus, point_generated, pull_back_model, split_preimage,
};
use modal_planes::semantics::{truth_set, Model};
use modal_planes::{classify, i2_partition, FrameKind};
use std::collections::{BTreeMap, BTreeSet};

/// I is contained in I^3 and the powers settle into a two-step cycle
/// from exponent 2 on.
#[test]
fn power_laws_on_quasi_1_planes() {
    for frame in quasi_1_planes_up_to(5) {
        let i1 = compose(&frame, 1);
        let i2 = compose(&frame, 2);
        let i3 = compose(&frame, 3);
        let i4 = compose(&frame, 4);
        let i5 = compose(&frame, 5);
        assert!(i1.is_subset(&i3), "I must be contained in I^3 on {frame:?}");
        assert_eq!(i2, i4, "I^2 = I^4 on {frame:?}");
        assert_eq!(i3, i5, "I^3 = I^5 on {frame:?}");
    }
}

/// O2 characterises connectedness on quasi-1-planes.
#[test]
fn o2_iff_connected_on_quasi_1_planes() {
    for frame in quasi_1_planes_up_to(5) {
        assert_eq!(
            check_o(&frame, OCondition::O2).holds,
            is_connected(&frame),
            "O2 vs connectivity on {frame:?}"
        );
    }
}

/// On a connected quasi-1-plane, every edge has one endpoint in I^2(a)
/// and the other in I^3(a), for every anchor a.
#[test]
fn edges_cross_the_anchor_classes() {
    for frame in quasi_1_planes_up_to(5) {
        if !is_connected(&frame) {
            continue;
        }
        let i2 = compose(&frame, 2);
        let i3 = compose(&frame, 3);
        for a in 0..frame.n() {
            for (x, y) in frame.edges() {
                let crosses = (i2.get(a, x) && i3.get(a, y)) || (i2.get(a, y) && i3.get(a, x));
                assert!(crosses, "edge ({x},{y}) vs anchor {a} on {frame:?}");
            }
        }
    }
}

/// Satisfiability transfers backwards along surjective bounded
/// morphisms: a finite set of formulas true somewhere in the image is
/// true at some preimage point in the pulled-back model.
#[test]
fn satisfiability_transfers_to_preimages() {
    let sigma = [
        Formula::imp(Formula::bx(Formula::var("p")), Formula::var("q")),
        Formula::dia(Formula::var("p")),
        Formula::not(Formula::bx(Formula::var("q"))),
    ];
    for seed in 0..10u64 {
        for kind in [QuasiKind::Elliptic, QuasiKind::Projective] {
            let size = 2 + (seed as usize % 4);
            let Ok(target) = gen_random_quasi(size, kind, seed) else { continue };
            let (_, m) = split_preimage(&target).unwrap();
            let lifted = lift_2to1(&m).unwrap();
            assert!(is_surjective(&lifted));

            let n = target.n();
            let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
            valuation.insert("p".into(), (0..n).filter(|w| w % 2 == 0).collect());
            valuation.insert("q".into(), (0..n).filter(|w| (w + seed as usize).is_multiple_of(3)).collect());
            let model = Model::new(target.clone(), valuation).unwrap();

            let truths: Vec<Vec<bool>> =
                sigma.iter().map(|f| truth_set(&model, f)).collect();
            let Some(world) =
                (0..n).find(|&w| truths.iter().all(|t| t[w]))
            else {
                continue;
            };

            let pulled = pull_back_model(&lifted, &model).unwrap();
            let preimage = lifted
                .map()
                .iter()
                .position(|&img| img == world)
                .expect("surjective map covers the witness world");
            for f in &sigma {
                assert!(
                    truth_set(&pulled, f)[preimage],
                    "formula {f} lost at the preimage of world {world}"
                );
            }
        }
    }
}

/// The merge of a generated projective plane is a non-degenerate
/// projective 1-plane, for both generated prime orders.
#[test]
fn merged_projective_planes_classify_correctly() {
    for p in [2u64, 3] {
        let plane = gen_pg2(p).unwrap();
        let one = plus(&plane);
        let c = classify(&one);
        assert_eq!(c.kind, FrameKind::QuasiProjective);
        assert!(c.is_plane);
        assert!(c.is_nondegenerate);
        let classes = i2_partition(&one).unwrap();
        let expected = (p * p + p + 1) as usize;
        assert_eq!(classes[0].len(), expected);
        assert_eq!(classes[1].len(), expected);
    }
}

/// Point-generated subframes are inner, connected, and truth-preserving
/// at their own worlds.
#[test]
fn point_generated_subframes_preserve_truth() {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    edges.extend([(3, 4), (4, 5)]);
    let union = OneFrame::symmetric(6, &edges).unwrap();
    let (sub, incl) = point_generated(&union, 4).unwrap();
    assert_eq!(sub.n(), 3);
    assert!(is_connected(&sub));

    let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    valuation.insert("p".into(), [0usize, 4].into_iter().collect());
    let model = Model::new(union, valuation).unwrap();
    let restricted = pull_back_model(&incl, &model).unwrap();
    // The restricted valuation is the intersection with the subframe.
    assert_eq!(
        restricted.valuation().get("p"),
        Some(&[1usize].into_iter().collect())
    );
    let f = Formula::dia(Formula::var("p"));
    let inner_truth = truth_set(&restricted, &f);
    let outer_truth = truth_set(&model, &f);
    for (i, &orig) in incl.map().iter().enumerate() {
        assert_eq!(inner_truth[i], outer_truth[orig]);
    }
}

/// Merged two-sorted frames never loop back in an odd number of steps:
/// incidence only crosses the sorts.
#[test]
fn merged_two_frames_have_no_odd_cycles() {
    let one = plus(&gen_pg2(2).unwrap());
    for k in [1usize, 3, 5] {
        let ik = compose(&one, k);
        for a in 0..one.n() {
            assert!(!ik.get(a, a), "odd power {k} loops at {a}");
        }
    }
}

/// Classification is internally coherent: a non-trivial kind means
/// serial + symmetric + O1, and the kind matches the class count.
#[test]
fn classification_is_coherent_on_random_frames() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..300 {
        let n = rng.random_range(1..=6);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if rng.random_bool(0.4) {
                    edges.push((a, b));
                }
            }
        }
        let frame = OneFrame::new(n, &edges).unwrap();
        let c = classify(&frame);
        if c.kind != FrameKind::NotQuasi {
            assert!(c.is_serial && c.is_symmetric);
            assert!(c.satisfies(modal_planes::OCondition::O1));
            let classes = c.i2_classes.as_ref().unwrap();
            match c.kind {
                FrameKind::QuasiElliptic => assert_eq!(classes.len(), 1),
                FrameKind::QuasiProjective => assert_eq!(classes.len(), 2),
                FrameKind::NotQuasi => unreachable!(),
            }
        }
        assert_eq!(
            c.is_plane,
            c.satisfies(modal_planes::OCondition::O1)
                && c.satisfies(modal_planes::OCondition::O2)
                && c.satisfies(modal_planes::OCondition::O3)
        );
    }
}

/// The polarity graphs are elliptic 1-planes whose loops are exactly
/// the self-conjugate points.
#[test]
fn polarity_graphs_are_elliptic_planes() {
    for p in [2u64, 3] {
        let g = gen_polarity_graph(p).unwrap();
        let c = classify(&g);
        assert_eq!(c.kind, FrameKind::QuasiElliptic);
        assert!(c.is_plane);
        assert_eq!(
            (0..g.n()).filter(|&a| g.has_edge(a, a)).count() as u64,
            p + 1
        );
    }
}
