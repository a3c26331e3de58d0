mod common;

use proptest::prelude::*;

use pixtopo::invariants::{
    count_blocks, count_complement_components, count_components, count_holes, count_tunnels_direct,
    count_vertices, has_separating_tunnels, is_tunnel_free, tunnels_by_formula,
};
use pixtopo::{analyze, Adjacency, DigitalObject, PixelCoord};

fn library_counts(obj: &DigitalObject) -> (u64, u64, u64, u64, u64, u64) {
    analyze(obj).core_counts()
}

#[test]
fn frozen_values_from_oracle() {
    // Values listed for the named fixtures, recomputed by brute force.
    let domino = DigitalObject::from_pixels([(0, 0), (1, 0)]);
    let pair = DigitalObject::from_pixels([(0, 0), (1, 1)]);
    assert_eq!(common::vertices(&domino), 6);
    assert_eq!(common::vertices(&common::diamond()), 12);
    assert_eq!(common::blocks(&common::square(3)), 4);
    assert_eq!(common::components(&common::diamond(), true), 1);
    assert_eq!(common::components(&common::diamond(), false), 4);
    assert_eq!(common::holes(&common::ring()), 1);
    assert_eq!(common::holes(&common::diamond()), 1);
    assert_eq!(common::tunnels(&domino), 0);
    assert_eq!(common::tunnels(&pair), 1);
    assert_eq!(common::tunnels(&common::diamond()), 4);
    assert_eq!(common::counts(&common::square(2)), (4, 9, 1, 0, 1, 0));

    assert_eq!(count_vertices(&domino), 6);
    assert_eq!(count_tunnels_direct(&pair), 1);
    assert_eq!(library_counts(&common::diamond()), (4, 12, 1, 1, 0, 4));
    assert_eq!(tunnels_by_formula(4, 12, 1, 1, 0), 4);
}

#[test]
fn every_3x3_subset_matches_oracle() {
    for mask in 0u64..512 {
        let obj = common::from_mask(mask, 3, 3);
        assert_eq!(library_counts(&obj), common::counts(&obj), "mask {mask:#b}");
        assert_eq!(
            analyze(&obj).c1,
            Some(common::components(&obj, false)),
            "mask {mask:#b}"
        );
        for (adj, eight) in [(Adjacency::Zero, true), (Adjacency::One, false)] {
            assert_eq!(
                count_complement_components(&obj, adj),
                common::complement_components(&obj, eight)
            );
        }
    }
}

#[test]
fn every_4x4_subset_matches_oracle() {
    for mask in 0u64..1 << 16 {
        let obj = common::from_mask(mask, 4, 4);
        let r = analyze(&obj);
        assert_eq!(r.core_counts(), common::counts(&obj), "mask {mask:#x}");
        assert!(r.consistent, "mask {mask:#x}");
    }
}

#[test]
fn tunnel_notions() {
    let pair = DigitalObject::from_pixels([(0, 0), (1, 1)]);
    assert!(!has_separating_tunnels(&pair));
    assert!(has_separating_tunnels(&common::diamond()));
    assert!(!has_separating_tunnels(&common::ring()));
    assert!(is_tunnel_free(&DigitalObject::empty()));
}

fn object(max: i64, max_len: usize) -> impl Strategy<Value = DigitalObject> {
    prop::collection::vec((0..max, 0..max), 0..max_len).prop_map(DigitalObject::from_pixels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn random_objects_match_oracle(obj in object(12, 90)) {
        let r = analyze(&obj);
        prop_assert_eq!(r.core_counts(), common::counts(&obj));
        prop_assert!(r.consistent);
        prop_assert_eq!(count_blocks(&obj), common::blocks(&obj));
        prop_assert_eq!(count_components(&obj, Adjacency::One), common::components(&obj, false));
        prop_assert_eq!(count_holes(&obj), common::holes(&obj));
    }

    #[test]
    fn translation_and_symmetry_invariance(obj in object(8, 40), dx in -50i64..50, dy in -50i64..50) {
        let base = analyze(&obj);
        prop_assert_eq!(analyze(&obj.translated(dx, dy)), base);
        for sym in common::symmetries() {
            let image = obj.map(sym);
            prop_assert_eq!(analyze(&image).core_counts(), base.core_counts());
        }
    }

    #[test]
    fn bounds_and_parity(obj in object(10, 70)) {
        let r = analyze(&obj);
        prop_assert!(r.v <= 4 * r.p);
        prop_assert!(r.b <= r.p);
        prop_assert!(r.t_direct <= r.v);
        prop_assert!(r.c <= r.c1.unwrap());
        prop_assert_eq!((r.v + r.b + r.t_direct) % 2, 0);
    }

    #[test]
    fn separating_tunnels_imply_local_tunnels(obj in object(8, 40)) {
        if has_separating_tunnels(&obj) {
            prop_assert!(count_tunnels_direct(&obj) > 0);
        }
    }

    #[test]
    fn tunnel_free_objects_satisfy_the_identity_with_zero(obj in object(8, 40)) {
        let r = analyze(&obj);
        if is_tunnel_free(&obj) {
            prop_assert_eq!(tunnels_by_formula(r.p, r.v, r.c, r.h, r.b), 0);
        }
    }

    #[test]
    fn sparse_far_apart_pieces(
        a in object(4, 10),
        b in object(4, 10),
        far in 1_000i64..1_000_000_000,
    ) {
        let joined = DigitalObject::from_pixels(
            a.iter().chain(b.iter().map(|p| PixelCoord::new(p.x + far, p.y - far))),
        );
        let (ra, rb, rj) = (analyze(&a), analyze(&b), analyze(&joined));
        prop_assert_eq!(rj.p, ra.p + rb.p);
        prop_assert_eq!(rj.v, ra.v + rb.v);
        prop_assert_eq!(rj.c, ra.c + rb.c);
        prop_assert_eq!(rj.h, ra.h + rb.h);
        prop_assert_eq!(rj.t_direct, ra.t_direct + rb.t_direct);
        prop_assert!(rj.consistent);
    }
}
