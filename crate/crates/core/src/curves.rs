//! Predicates for digital curves and the tunnel identities they imply.
//!
//! "One-dimensional" is operationalised as containing no 2x2 block. For
//! 1-adjacency the simple predicates also reject pinches: two pixels that
//! touch only diagonally with neither shared edge-neighbour in the set.
//! Such a pair is a 0-tunnel of the curve and splits its interior into
//! several 1-holes, so the curve is not simple.
//!
//! These are operational definitions. [`curve_report`] evaluates the
//! identities numerically, so a predicate that admits an object the
//! identities do not cover shows up as a failed check rather than being
//! assumed away.

use serde::{Deserialize, Serialize};

use crate::grid::{neighbors, Adjacency, DigitalObject, PixelCoord};
use crate::invariants::{analyze, count_blocks, count_components};

/// One evaluated identity: `lhs == rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: &str, lhs: i64, rhs: i64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVerdict {
    pub adjacency: u8,
    pub is_simple_closed: bool,
    pub is_simple_arc: bool,
    pub is_general_curve: bool,
    pub identity_checks: Vec<IdentityCheck>,
}

impl CurveVerdict {
    /// Whether every applicable identity held.
    pub fn all_hold(&self) -> bool {
        self.identity_checks.iter().all(|c| c.holds)
    }
}

fn connected(obj: &DigitalObject, adjacency: Adjacency) -> bool {
    count_components(obj, adjacency) == 1
}

fn has_pinch(obj: &DigitalObject) -> bool {
    obj.iter().any(|p| {
        [(1, 1), (-1, 1)].into_iter().any(|(dx, dy)| {
            let q = p.offset(dx, dy);
            obj.contains(q)
                && !obj.contains(PixelCoord::new(q.x, p.y))
                && !obj.contains(PixelCoord::new(p.x, q.y))
        })
    })
}

/// Shared part of the simple predicates.
fn simple_base(obj: &DigitalObject, adjacency: Adjacency) -> bool {
    !obj.is_empty()
        && connected(obj, adjacency)
        && count_blocks(obj) == 0
        && (adjacency == Adjacency::Zero || !has_pinch(obj))
}

fn degrees(obj: &DigitalObject, adjacency: Adjacency) -> impl Iterator<Item = usize> + '_ {
    obj.iter()
        .map(move |p| neighbors(p, adjacency).filter(|&q| obj.contains(q)).count())
}

/// Connected, block-free, every pixel with exactly two neighbours, at least
/// four pixels.
pub fn is_simple_closed_curve(obj: &DigitalObject, adjacency: Adjacency) -> bool {
    obj.len() >= 4 && simple_base(obj, adjacency) && degrees(obj, adjacency).all(|d| d == 2)
}

/// Connected, block-free, and either a single pixel or a path with exactly
/// two endpoints.
pub fn is_simple_arc(obj: &DigitalObject, adjacency: Adjacency) -> bool {
    if !simple_base(obj, adjacency) {
        return false;
    }
    if obj.len() == 1 {
        return true;
    }
    let mut ends = 0;
    for d in degrees(obj, adjacency) {
        match d {
            1 => ends += 1,
            2 => {}
            _ => return false,
        }
    }
    ends == 2
}

/// Connected and block-free.
pub fn is_general_curve(obj: &DigitalObject, adjacency: Adjacency) -> bool {
    !obj.is_empty() && connected(obj, adjacency) && count_blocks(obj) == 0
}

/// Evaluates the predicates and every identity that applies to the object.
pub fn curve_report(obj: &DigitalObject, adjacency: Adjacency) -> CurveVerdict {
    let is_simple_closed = is_simple_closed_curve(obj, adjacency);
    let is_simple_arc = is_simple_arc(obj, adjacency);
    let is_general_curve = is_general_curve(obj, adjacency);

    let r = analyze(obj);
    let (p, v, h, t) = (r.p as i64, r.v as i64, r.h as i64, r.t_direct as i64);
    let tunnel_free = t == 0;

    let mut checks = Vec::new();
    if is_general_curve {
        checks.push(IdentityCheck::new(
            "curve: t = v - 2(p + 1 - h)",
            t,
            v - 2 * (p + 1 - h),
        ));
        if tunnel_free {
            checks.push(IdentityCheck::new(
                "tunnel-free curve: v = 2(p + 1 - h)",
                v,
                2 * (p + 1 - h),
            ));
        }
    }
    if is_simple_arc {
        checks.push(IdentityCheck::new(
            "simple arc: t = v - 2(p + 1)",
            t,
            v - 2 * (p + 1),
        ));
        if tunnel_free {
            checks.push(IdentityCheck::new(
                "tunnel-free simple arc: v = 2(p + 1)",
                v,
                2 * (p + 1),
            ));
        }
    }
    if is_simple_closed {
        checks.push(IdentityCheck::new(
            "simple closed curve: t = v - 2p",
            t,
            v - 2 * p,
        ));
        if tunnel_free {
            checks.push(IdentityCheck::new(
                "tunnel-free simple closed curve: v = 2p",
                v,
                2 * p,
            ));
        }
    }

    CurveVerdict {
        adjacency: adjacency.level(),
        is_simple_closed,
        is_simple_arc,
        is_general_curve,
        identity_checks: checks,
    }
}
