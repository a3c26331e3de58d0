mod common;

use proptest::prelude::*;

use pixtopo::curves::{curve_report, is_general_curve, is_simple_arc, is_simple_closed_curve};
use pixtopo::generate::{generate_curve, CurveKind};
use pixtopo::{Adjacency, DigitalObject};

/// Identities checked from brute-force counts, independent of `curve_report`.
fn check_identities(obj: &DigitalObject, adjacency: Adjacency) -> Result<(), String> {
    let (p, v, _, h, b, t) = common::counts(obj);
    let (p, v, h, t) = (p as i64, v as i64, h as i64, t as i64);
    let closed = is_simple_closed_curve(obj, adjacency);
    let arc = is_simple_arc(obj, adjacency);
    let general = is_general_curve(obj, adjacency);
    if (closed || arc) && !general {
        return Err("simple curve that is not a curve".into());
    }
    if general && b != 0 {
        return Err(format!("curve with {b} blocks"));
    }
    if general && t != v - 2 * (p + 1 - h) {
        return Err(format!("curve identity: t={t} v={v} p={p} h={h}"));
    }
    if arc && (h != 0 || t != v - 2 * (p + 1)) {
        return Err(format!("arc identity: t={t} v={v} p={p} h={h}"));
    }
    if closed && (h != 1 || t != v - 2 * p) {
        return Err(format!("closed identity: t={t} v={v} p={p} h={h}"));
    }
    if closed && arc && p >= 3 {
        return Err("closed and arc at once".into());
    }
    if !curve_report(obj, adjacency).all_hold() {
        return Err("curve_report disagrees".into());
    }
    Ok(())
}

/// Bits of a grid `w` wide whose column is not the last one.
fn not_last_col(w: u32) -> u64 {
    (0..64)
        .filter(|i| i % w != w - 1)
        .fold(0, |m, i| m | 1 << i)
}

fn block_free(mask: u64, w: u32) -> bool {
    // Bit y*w+x; a block at (x,y) sets x, x+1, x+w, x+w+1.
    let pairs = mask & (mask >> 1) & not_last_col(w);
    pairs & (pairs >> w) == 0
}

/// 8-connectivity by repeated dilation inside the mask.
fn king_connected(mask: u64, w: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let right = not_last_col(w);
    let left = right << 1;
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let row = reached | (reached << 1 & left) | (reached >> 1 & right);
        let grown = (row | row << w | row >> w) & mask;
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

fn exhaustive(w: u32, h: u32) -> [usize; 3] {
    let mut seen = [0; 3];
    for mask in 0u64..1 << (w * h) {
        if !block_free(mask, w) || !king_connected(mask, w) {
            continue;
        }
        let obj = common::from_mask(mask, w as i64, h as i64);
        for adjacency in Adjacency::BOTH {
            if let Err(e) = check_identities(&obj, adjacency) {
                panic!("mask {mask:#x} adjacency {}: {e}", adjacency.level());
            }
            seen[0] += is_simple_closed_curve(&obj, adjacency) as usize;
            seen[1] += is_simple_arc(&obj, adjacency) as usize;
            seen[2] += is_general_curve(&obj, adjacency) as usize;
        }
    }
    seen
}

#[test]
fn bit_filters_agree_with_oracle() {
    for mask in 0u64..1 << 16 {
        let obj = common::from_mask(mask, 4, 4);
        assert_eq!(block_free(mask, 4), common::blocks(&obj) == 0);
        assert_eq!(king_connected(mask, 4), common::components(&obj, true) == 1);
    }
}

#[test]
fn every_4x4_curve_satisfies_its_identities() {
    let [closed, arcs, general] = exhaustive(4, 4);
    assert!(closed > 0 && arcs > 0 && general > 0);
}

#[test]
fn every_5x4_curve_satisfies_its_identities() {
    let [closed, arcs, general] = exhaustive(5, 4);
    assert_eq!([closed, arcs, general].map(|n| n > 0), [true; 3]);
    assert!(closed < arcs && arcs < general);
}

#[test]
fn pinned_curves() {
    let diamond = common::diamond();
    assert!(is_simple_closed_curve(&diamond, Adjacency::Zero));
    assert!(!is_simple_closed_curve(&diamond, Adjacency::One));
    assert_eq!(common::counts(&diamond), (4, 12, 1, 1, 0, 4));

    let ring = common::ring();
    assert!(is_simple_closed_curve(&ring, Adjacency::One));
    assert_eq!(common::counts(&ring), (8, 16, 1, 1, 0, 0));

    let bar = DigitalObject::from_pixels((0..5).map(|x| (x, 0)));
    assert!(is_simple_arc(&bar, Adjacency::One));
    assert!(is_simple_arc(&bar, Adjacency::Zero));
    assert_eq!(common::counts(&bar).1, 12);

    let single = DigitalObject::from_pixels([(3, 3)]);
    for a in Adjacency::BOTH {
        assert!(is_simple_arc(&single, a));
        assert!(!is_simple_closed_curve(&single, a));
    }
}

fn kind() -> impl Strategy<Value = CurveKind> {
    prop_oneof![
        Just(CurveKind::Closed),
        Just(CurveKind::Arc),
        Just(CurveKind::General)
    ]
}

fn adjacency() -> impl Strategy<Value = Adjacency> {
    prop_oneof![Just(Adjacency::Zero), Just(Adjacency::One)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_curves_satisfy_their_predicate(
        kind in kind(),
        a in adjacency(),
        steps in 1usize..60,
        seed in any::<u64>(),
    ) {
        let obj = generate_curve(kind, a, steps, seed).unwrap();
        let holds = match kind {
            CurveKind::Closed => is_simple_closed_curve(&obj, a),
            CurveKind::Arc => is_simple_arc(&obj, a) && obj.len() == steps,
            CurveKind::General => is_general_curve(&obj, a) && obj.len() == steps,
        };
        prop_assert!(holds);
        prop_assert_eq!(check_identities(&obj, a), Ok(()));
        prop_assert_eq!(generate_curve(kind, a, steps, seed).unwrap(), obj);
    }
}
