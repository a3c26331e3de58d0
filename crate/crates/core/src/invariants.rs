//! Direct, from-scratch computation of the object invariants and the
//! tunnel identity `t = v - 2(p + c - h) + b`.
//!
//! Symbols used throughout the crate:
//!
//! * `p` pixels, `v` distinct pixel corners, `b` complete 2x2 blocks,
//! * `c` 0-connected components (`c1` for 1-connectivity, diagnostic only),
//! * `h` proper 1-holes, i.e. bounded 4-connected components of the complement,
//! * `t` 0-tunnels: lattice points shared by exactly two pixels that meet
//!   only at that point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{is_tunnel_mask, Adjacency, DigitalObject, Neighborhood, PixelCoord, BLOCK_MASK};
use crate::union_find::UnionFind;

/// All invariants of one object plus the verdict of the tunnel identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub p: u64,
    pub v: u64,
    #[serde(rename = "c0")]
    pub c: u64,
    /// 1-connected component count; absent when not computed (tracker snapshots).
    pub c1: Option<u64>,
    pub h: u64,
    pub b: u64,
    pub t_direct: u64,
    pub t_formula: i64,
    pub consistent: bool,
}

impl InvariantReport {
    /// Report from counted values; `t_formula` and `consistent` are derived.
    pub fn from_counts(p: u64, v: u64, c: u64, c1: Option<u64>, h: u64, b: u64, t: u64) -> Self {
        let t_formula = tunnels_by_formula(p, v, c, h, b);
        Self {
            p,
            v,
            c,
            c1,
            h,
            b,
            t_direct: t,
            t_formula,
            consistent: t_formula == t as i64,
        }
    }

    /// `(p, v, c, h, b, t_direct)`, the fields shared with tracker snapshots.
    pub fn core_counts(&self) -> (u64, u64, u64, u64, u64, u64) {
        (self.p, self.v, self.c, self.h, self.b, self.t_direct)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("the candidate separator is not a subset of the ambient object (pixel {0} missing)")]
    NotSubset(PixelCoord),
}

pub fn count_pixels(obj: &DigitalObject) -> u64 {
    obj.len() as u64
}

/// Per-corner tallies gathered in a single pass.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
struct CornerCounts {
    vertices: u64,
    blocks: u64,
    tunnels: u64,
}

// Each lattice point is visited once: by the pixel holding the lowest set
// bit of its window mask.
fn corner_counts(obj: &DigitalObject) -> CornerCounts {
    let mut counts = CornerCounts::default();
    // Window position of the owning pixel for each corner, in `corners` order.
    const OWN_BIT: [u8; 4] = [3, 2, 1, 0];
    for p in obj.iter() {
        let masks = Neighborhood::probe(p, |q| obj.contains(q)).corner_masks();
        for (mask, own) in masks.into_iter().zip(OWN_BIT) {
            if mask.trailing_zeros() as u8 != own {
                continue;
            }
            counts.vertices += 1;
            if mask == BLOCK_MASK {
                counts.blocks += 1;
            } else if is_tunnel_mask(mask) {
                counts.tunnels += 1;
            }
        }
    }
    counts
}

/// Number of distinct lattice points that are a corner of some pixel.
pub fn count_vertices(obj: &DigitalObject) -> u64 {
    corner_counts(obj).vertices
}

/// Number of complete 2x2 pixel squares.
pub fn count_blocks(obj: &DigitalObject) -> u64 {
    corner_counts(obj).blocks
}

/// Lattice points incident to exactly two pixels forming a diagonal pair.
pub fn count_tunnels_direct(obj: &DigitalObject) -> u64 {
    corner_counts(obj).tunnels
}

/// `v - 2(p + c - h) + b`. Negative results are returned as-is; they only
/// arise from inconsistent inputs.
pub fn tunnels_by_formula(p: u64, v: u64, c: u64, h: u64, b: u64) -> i64 {
    v as i64 - 2 * (p as i64 + c as i64 - h as i64) + b as i64
}

/// Inclusive horizontal run `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Run {
    lo: i64,
    hi: i64,
}

/// Pixels grouped into maximal horizontal runs, one entry per occupied row.
struct RowRuns {
    rows: Vec<(i64, Vec<Run>)>,
}

impl RowRuns {
    fn new(obj: &DigitalObject) -> Self {
        let mut rows: Vec<(i64, Vec<Run>)> = Vec::new();
        for p in obj.iter() {
            match rows.last_mut() {
                Some((y, runs)) if *y == p.y => match runs.last_mut() {
                    Some(run) if run.hi + 1 == p.x => run.hi = p.x,
                    _ => runs.push(Run { lo: p.x, hi: p.x }),
                },
                _ => rows.push((p.y, vec![Run { lo: p.x, hi: p.x }])),
            }
        }
        Self { rows }
    }

    /// Maximal white runs of each occupied row; the unbounded end gaps are
    /// clipped to `i64::MIN` / `i64::MAX`.
    fn gaps(&self) -> Vec<(i64, Vec<Run>)> {
        self.rows
            .iter()
            .map(|(y, runs)| {
                let mut gaps = Vec::with_capacity(runs.len() + 1);
                let mut lo = i64::MIN;
                for run in runs {
                    gaps.push(Run { lo, hi: run.lo - 1 });
                    lo = run.hi + 1;
                }
                gaps.push(Run { lo, hi: i64::MAX });
                (*y, gaps)
            })
            .collect()
    }
}

/// Horizontal tolerance between runs of vertically adjacent rows.
fn reach(adjacency: Adjacency) -> i64 {
    match adjacency {
        Adjacency::One => 0,
        Adjacency::Zero => 1,
    }
}

fn runs_touch(a: Run, b: Run, reach: i64) -> bool {
    a.lo <= b.hi.saturating_add(reach) && b.lo <= a.hi.saturating_add(reach)
}

/// Labels runs of consecutive rows. `rows` must be sorted by `y`. Nodes are
/// numbered row by row starting at `first_id`. `on_open_row` receives the
/// node range of every row whose upper or lower neighbour row is unoccupied.
fn link_rows(
    rows: &[(i64, Vec<Run>)],
    uf: &mut UnionFind,
    first_id: usize,
    reach: i64,
    mut on_open_row: impl FnMut(&mut UnionFind, std::ops::Range<usize>),
) {
    let mut start = first_id;
    let mut prev: Option<(i64, &[Run], usize)> = None;
    for (k, (y, runs)) in rows.iter().enumerate() {
        let next_y = rows.get(k + 1).map(|(ny, _)| *ny);
        match prev {
            Some((py, prev_runs, prev_start)) if py + 1 == *y => {
                let (mut i, mut j) = (0, 0);
                while i < prev_runs.len() && j < runs.len() {
                    if runs_touch(prev_runs[i], runs[j], reach) {
                        uf.union(prev_start + i, start + j);
                    }
                    if prev_runs[i].hi < runs[j].hi {
                        i += 1;
                    } else {
                        j += 1;
                    }
                }
            }
            _ => on_open_row(uf, start..start + runs.len()),
        }
        if next_y != Some(y + 1) {
            on_open_row(uf, start..start + runs.len());
        }
        prev = Some((*y, runs, start));
        start += runs.len();
    }
}

/// Number of maximal `adjacency`-connected subsets.
pub fn count_components(obj: &DigitalObject, adjacency: Adjacency) -> u64 {
    let rows = RowRuns::new(obj).rows;
    let n: usize = rows.iter().map(|(_, r)| r.len()).sum();
    let mut uf = UnionFind::with_len(n);
    link_rows(&rows, &mut uf, 0, reach(adjacency), |_, _| {});
    uf.sets() as u64
}

/// Components of the complement inside the bounding box inflated by one
/// pixel, with everything reaching the frame counted as a single region.
/// Always at least 1.
pub fn count_complement_components(obj: &DigitalObject, adjacency: Adjacency) -> u64 {
    const EXTERIOR: usize = 0;
    let gaps = RowRuns::new(obj).gaps();
    let n: usize = gaps.iter().map(|(_, r)| r.len()).sum();
    let mut uf = UnionFind::with_len(n + 1);
    let mut id = 1;
    for (_, row) in &gaps {
        // End gaps run off to the frame.
        uf.union(EXTERIOR, id);
        uf.union(EXTERIOR, id + row.len() - 1);
        id += row.len();
    }
    // A row with no pixels is entirely white and reaches the frame.
    link_rows(&gaps, &mut uf, 1, reach(adjacency), |uf, range| {
        for node in range {
            uf.union(EXTERIOR, node);
        }
    });
    uf.sets() as u64
}

/// Number of proper 1-holes: bounded 4-components of the complement.
pub fn count_holes(obj: &DigitalObject) -> u64 {
    count_complement_components(obj, Adjacency::One) - 1
}

/// Whether some proper 1-hole escapes through a diagonal gap, i.e. the
/// complement has more 1-components than 0-components.
pub fn has_separating_tunnels(obj: &DigitalObject) -> bool {
    count_complement_components(obj, Adjacency::One)
        > count_complement_components(obj, Adjacency::Zero)
}

pub fn is_tunnel_free(obj: &DigitalObject) -> bool {
    count_tunnels_direct(obj) == 0
}

/// Whether removing `separator` from `ambient` leaves a set that is not
/// `adjacency`-connected. An empty remainder counts as connected.
pub fn is_k_separating(
    separator: &DigitalObject,
    ambient: &DigitalObject,
    adjacency: Adjacency,
) -> Result<bool, InvariantError> {
    if let Some(missing) = separator.iter().find(|&q| !ambient.contains(q)) {
        return Err(InvariantError::NotSubset(missing));
    }
    let rest = ambient.difference(separator);
    Ok(count_components(&rest, adjacency) >= 2)
}

/// Computes every invariant directly and checks the tunnel identity.
pub fn analyze(obj: &DigitalObject) -> InvariantReport {
    let CornerCounts {
        vertices,
        blocks,
        tunnels,
    } = corner_counts(obj);
    InvariantReport::from_counts(
        count_pixels(obj),
        vertices,
        count_components(obj, Adjacency::Zero),
        Some(count_components(obj, Adjacency::One)),
        count_holes(obj),
        blocks,
        tunnels,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj<const N: usize>(pts: [(i64, i64); N]) -> DigitalObject {
        DigitalObject::from_pixels(pts)
    }

    fn square(n: i64) -> DigitalObject {
        DigitalObject::from_pixels((0..n).flat_map(|y| (0..n).map(move |x| (x, y))))
    }

    fn ring() -> DigitalObject {
        square(3).difference(&obj([(1, 1)]))
    }

    fn diamond() -> DigitalObject {
        obj([(1, 0), (0, 1), (2, 1), (1, 2)])
    }

    #[test]
    fn pixel_counts() {
        assert_eq!(count_pixels(&DigitalObject::empty()), 0);
        assert_eq!(count_pixels(&obj([(0, 0)])), 1);
        assert_eq!(count_pixels(&diamond()), 4);
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(count_vertices(&obj([(0, 0)])), 4);
        assert_eq!(count_vertices(&obj([(0, 0), (1, 0)])), 6);
        assert_eq!(count_vertices(&diamond()), 12);
    }

    #[test]
    fn block_counts() {
        assert_eq!(count_blocks(&obj([(0, 0)])), 0);
        assert_eq!(count_blocks(&square(2)), 1);
        assert_eq!(count_blocks(&square(3)), 4);
    }

    #[test]
    fn component_counts() {
        assert_eq!(count_components(&obj([(0, 0)]), Adjacency::Zero), 1);
        assert_eq!(count_components(&diamond(), Adjacency::Zero), 1);
        assert_eq!(count_components(&diamond(), Adjacency::One), 4);
        assert_eq!(count_components(&obj([(0, 0), (5, 5)]), Adjacency::Zero), 2);
        assert_eq!(
            count_components(&DigitalObject::empty(), Adjacency::Zero),
            0
        );
        // U shape joined only through the bottom row.
        let u = obj([(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (2, 2)]);
        assert_eq!(count_components(&u, Adjacency::One), 1);
    }

    #[test]
    fn hole_counts() {
        assert_eq!(count_holes(&obj([(0, 0)])), 0);
        assert_eq!(count_holes(&ring()), 1);
        assert_eq!(count_holes(&diamond()), 1);
        assert_eq!(count_holes(&DigitalObject::empty()), 0);
        assert_eq!(count_holes(&square(3)), 0);
        // Hole spanning several rows with a gap row fully inside.
        let tall = DigitalObject::from_pixels(
            (0..5)
                .flat_map(|y| (0..3).map(move |x| (x, y)))
                .filter(|&(x, y)| !(x == 1 && (1..4).contains(&y))),
        );
        assert_eq!(count_holes(&tall), 1);
    }

    #[test]
    fn direct_tunnels() {
        assert_eq!(count_tunnels_direct(&obj([(0, 0), (1, 0)])), 0);
        assert_eq!(count_tunnels_direct(&obj([(0, 0), (1, 1)])), 1);
        assert_eq!(count_tunnels_direct(&diamond()), 4);
    }

    #[test]
    fn formula_values() {
        assert_eq!(tunnels_by_formula(1, 4, 1, 0, 0), 0);
        assert_eq!(tunnels_by_formula(4, 12, 1, 1, 0), 4);
        assert_eq!(tunnels_by_formula(0, 0, 0, 0, 0), 0);
        assert_eq!(tunnels_by_formula(3, 0, 0, 0, 0), -6);
    }

    #[test]
    fn reports() {
        let r = analyze(&obj([(0, 0)]));
        assert_eq!(r.core_counts(), (1, 4, 1, 0, 0, 0));
        assert_eq!(r.c1, Some(1));
        assert_eq!(r.t_formula, 0);
        assert!(r.consistent);

        let r = analyze(&diamond());
        assert_eq!(
            r,
            InvariantReport {
                p: 4,
                v: 12,
                c: 1,
                c1: Some(4),
                h: 1,
                b: 0,
                t_direct: 4,
                t_formula: 4,
                consistent: true
            }
        );

        let r = analyze(&square(2));
        assert_eq!(r.core_counts(), (4, 9, 1, 0, 1, 0));
        assert_eq!(r.c1, Some(1));
        assert!(r.consistent);

        let r = analyze(&DigitalObject::empty());
        assert_eq!(r.core_counts(), (0, 0, 0, 0, 0, 0));
        assert_eq!(r.c1, Some(0));
        assert!(r.consistent);
    }

    #[test]
    fn tunnel_freedom() {
        assert!(is_tunnel_free(&obj([(0, 0), (1, 0)])));
        assert!(!is_tunnel_free(&obj([(0, 0), (1, 1)])));
        assert!(is_tunnel_free(&DigitalObject::empty()));
    }

    #[test]
    fn separation() {
        let s = square(3);
        let center = obj([(1, 1)]);
        assert_eq!(is_k_separating(&center, &s, Adjacency::One), Ok(false));
        assert_eq!(is_k_separating(&center, &s, Adjacency::Zero), Ok(false));
        let column = obj([(1, 0), (1, 1), (1, 2)]);
        assert_eq!(is_k_separating(&column, &s, Adjacency::One), Ok(true));
        assert_eq!(is_k_separating(&column, &s, Adjacency::Zero), Ok(true));
        assert_eq!(is_k_separating(&s, &s, Adjacency::One), Ok(false));
        assert_eq!(
            is_k_separating(&obj([(7, 7)]), &s, Adjacency::One),
            Err(InvariantError::NotSubset(PixelCoord::new(7, 7)))
        );
    }

    #[test]
    fn tunnel_notions_differ() {
        let pair = obj([(0, 0), (1, 1)]);
        assert_eq!(count_tunnels_direct(&pair), 1);
        assert!(!has_separating_tunnels(&pair));
        assert_eq!(count_tunnels_direct(&diamond()), 4);
        assert!(has_separating_tunnels(&diamond()));
        assert!(!has_separating_tunnels(&ring()));
    }

    #[test]
    fn huge_sparse_extent_is_cheap() {
        let far = obj([(0, 0), (1_000_000_000, -1_000_000_000), (1, 1)]);
        let r = analyze(&far);
        assert_eq!(r.core_counts(), (3, 11, 2, 0, 0, 1));
        assert!(r.consistent);
    }
}
