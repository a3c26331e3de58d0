//! Brute-force reference counters used by the integration tests.
//!
//! Nothing here shares code with the library beyond `DigitalObject` and
//! `PixelCoord`: corners are collected into sets, components come from BFS
//! and holes from a dense flood fill over the bounding box plus a one-pixel
//! frame.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use pixtopo::{DigitalObject, PixelCoord};

pub const EDGE: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
pub const KING: [(i64, i64); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
];

pub fn steps(eight: bool) -> &'static [(i64, i64)] {
    if eight {
        &KING
    } else {
        &EDGE
    }
}

fn pixel_corners(p: PixelCoord) -> [(i64, i64); 4] {
    [
        (p.x, p.y),
        (p.x + 1, p.y),
        (p.x, p.y + 1),
        (p.x + 1, p.y + 1),
    ]
}

pub fn vertices(obj: &DigitalObject) -> u64 {
    obj.iter()
        .flat_map(pixel_corners)
        .collect::<BTreeSet<_>>()
        .len() as u64
}

pub fn blocks(obj: &DigitalObject) -> u64 {
    obj.iter()
        .filter(|p| {
            [(1, 0), (0, 1), (1, 1)]
                .iter()
                .all(|&(dx, dy)| obj.contains(PixelCoord::new(p.x + dx, p.y + dy)))
        })
        .count() as u64
}

/// Points with exactly two incident pixels that share no edge.
pub fn tunnels(obj: &DigitalObject) -> u64 {
    let mut incident: BTreeMap<(i64, i64), Vec<PixelCoord>> = BTreeMap::new();
    for p in obj.iter() {
        for c in pixel_corners(p) {
            incident.entry(c).or_default().push(p);
        }
    }
    incident
        .values()
        .filter(|ps| ps.len() == 2 && (ps[0].x - ps[1].x).abs() + (ps[0].y - ps[1].y).abs() == 2)
        .count() as u64
}

fn bfs_components(cells: &HashSet<(i64, i64)>, eight: bool) -> Vec<Vec<(i64, i64)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut sorted: Vec<_> = cells.iter().copied().collect();
    sorted.sort_unstable();
    for start in sorted {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some((x, y)) = queue.pop_front() {
            for &(dx, dy) in steps(eight) {
                let n = (x + dx, y + dy);
                if cells.contains(&n) && seen.insert(n) {
                    comp.push(n);
                    queue.push_back(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn components(obj: &DigitalObject, eight: bool) -> u64 {
    let cells: HashSet<_> = obj.iter().map(|p| (p.x, p.y)).collect();
    bfs_components(&cells, eight).len() as u64
}

/// `(x0, y0, x1, y1)`, inclusive.
type Frame = (i64, i64, i64, i64);

/// Complement cells of the bounding box inflated by one.
fn complement_cells(obj: &DigitalObject) -> (HashSet<(i64, i64)>, Frame) {
    let Some((lo, hi)) = obj.bounding_box() else {
        return (HashSet::new(), (0, 0, -1, -1));
    };
    let frame = (lo.x - 1, lo.y - 1, hi.x + 1, hi.y + 1);
    let mut cells = HashSet::new();
    for y in frame.1..=frame.3 {
        for x in frame.0..=frame.2 {
            if !obj.contains(PixelCoord::new(x, y)) {
                cells.insert((x, y));
            }
        }
    }
    (cells, frame)
}

/// Complement components inside the inflated box; the frame-touching ones
/// count as one region. 1 for the empty object.
pub fn complement_components(obj: &DigitalObject, eight: bool) -> u64 {
    let (cells, (x0, y0, x1, y1)) = complement_cells(obj);
    if cells.is_empty() {
        return 1;
    }
    let comps = bfs_components(&cells, eight);
    let on_frame = |&(x, y): &(i64, i64)| x == x0 || x == x1 || y == y0 || y == y1;
    let exterior = comps.iter().filter(|c| c.iter().any(on_frame)).count();
    assert_eq!(exterior, 1, "frame ring must be a single region");
    comps.len() as u64
}

pub fn holes(obj: &DigitalObject) -> u64 {
    complement_components(obj, false) - 1
}

/// `(p, v, c, h, b, t)` from the brute-force counters.
pub fn counts(obj: &DigitalObject) -> (u64, u64, u64, u64, u64, u64) {
    (
        obj.len() as u64,
        vertices(obj),
        components(obj, true),
        holes(obj),
        blocks(obj),
        tunnels(obj),
    )
}

pub fn square(n: i64) -> DigitalObject {
    DigitalObject::from_pixels((0..n).flat_map(|y| (0..n).map(move |x| (x, y))))
}

pub fn ring() -> DigitalObject {
    DigitalObject::from_pixels(
        (0..3)
            .flat_map(|y| (0..3).map(move |x| (x, y)))
            .filter(|&c| c != (1, 1)),
    )
}

pub fn diamond() -> DigitalObject {
    DigitalObject::from_pixels([(1, 0), (0, 1), (2, 1), (1, 2)])
}

/// Subset of the `w x h` grid selected by `mask` (bit `y * w + x`).
pub fn from_mask(mask: u64, w: i64, h: i64) -> DigitalObject {
    DigitalObject::from_pixels(
        (0..w * h)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i % w, i / w)),
    )
}

/// The 8 symmetries of the square grid.
pub fn symmetries() -> [fn(PixelCoord) -> PixelCoord; 8] {
    [
        |p| p,
        |p| PixelCoord::new(-p.y, p.x),
        |p| PixelCoord::new(-p.x, -p.y),
        |p| PixelCoord::new(p.y, -p.x),
        |p| PixelCoord::new(-p.x, p.y),
        |p| PixelCoord::new(p.x, -p.y),
        |p| PixelCoord::new(p.y, p.x),
        |p| PixelCoord::new(-p.y, -p.x),
    ]
}
