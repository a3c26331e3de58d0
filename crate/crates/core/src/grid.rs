//! Pixels, lattice points, adjacency relations and finite digital objects.
//!
//! A pixel is the closed unit square whose lower-left corner sits at its
//! [`PixelCoord`]; its four corners are therefore a pure translation of
//! `{(0,0), (1,0), (0,1), (1,1)}`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer position of a unit pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PixelCoord {
    pub x: i64,
    pub y: i64,
}

impl PixelCoord {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub const fn offset(self, dx: i64, dy: i64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }
}

impl From<(i64, i64)> for PixelCoord {
    fn from((x, y): (i64, i64)) -> Self {
        Self::new(x, y)
    }
}

impl fmt::Display for PixelCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

// Row-major: (y, x).
impl Ord for PixelCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for PixelCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A grid vertex. Incident to at most four pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// The (up to) four pixels having this point as a corner, in the fixed
    /// window order `[(x-1,y-1), (x,y-1), (x-1,y), (x,y)]`.
    ///
    /// Bit `i` of a [`window_mask`] refers to entry `i` of this array.
    pub const fn incident_pixels(self) -> [PixelCoord; 4] {
        [
            PixelCoord::new(self.x - 1, self.y - 1),
            PixelCoord::new(self.x, self.y - 1),
            PixelCoord::new(self.x - 1, self.y),
            PixelCoord::new(self.x, self.y),
        ]
    }
}

/// Pixel adjacency: `Zero` shares at least a vertex (8 neighbours), `One`
/// shares an edge (4 neighbours).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Adjacency {
    Zero,
    One,
}

const EDGE_OFFSETS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const DIAGONAL_OFFSETS: [(i64, i64); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

impl Adjacency {
    pub const BOTH: [Adjacency; 2] = [Adjacency::Zero, Adjacency::One];

    /// Parses the numeric level used on the command line (`0` or `1`).
    pub fn from_level(level: u8) -> Option<Self> {
        match level {
            0 => Some(Self::Zero),
            1 => Some(Self::One),
            _ => None,
        }
    }

    pub const fn level(self) -> u8 {
        match self {
            Self::Zero => 0,
            Self::One => 1,
        }
    }

    /// Neighbour offsets; edge offsets come first for both kinds.
    pub fn offsets(self) -> &'static [(i64, i64)] {
        const ZERO: [(i64, i64); 8] = [
            EDGE_OFFSETS[0],
            EDGE_OFFSETS[1],
            EDGE_OFFSETS[2],
            EDGE_OFFSETS[3],
            DIAGONAL_OFFSETS[0],
            DIAGONAL_OFFSETS[1],
            DIAGONAL_OFFSETS[2],
            DIAGONAL_OFFSETS[3],
        ];
        match self {
            Self::Zero => &ZERO,
            Self::One => &EDGE_OFFSETS,
        }
    }

    /// Whether two pixels are adjacent. A pixel is not adjacent to itself.
    pub fn adjacent(self, p: PixelCoord, q: PixelCoord) -> bool {
        let dx = (p.x - q.x).abs();
        let dy = (p.y - q.y).abs();
        match self {
            Self::Zero => dx.max(dy) == 1,
            Self::One => dx + dy == 1,
        }
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.level())
    }
}

/// The four corners of a pixel: `(x,y), (x+1,y), (x,y+1), (x+1,y+1)`.
pub const fn corners(p: PixelCoord) -> [LatticePoint; 4] {
    [
        LatticePoint::new(p.x, p.y),
        LatticePoint::new(p.x + 1, p.y),
        LatticePoint::new(p.x, p.y + 1),
        LatticePoint::new(p.x + 1, p.y + 1),
    ]
}

/// The 8 (`Zero`) or 4 (`One`) neighbours of `p`, excluding `p`.
pub fn neighbors(p: PixelCoord, adjacency: Adjacency) -> impl Iterator<Item = PixelCoord> {
    adjacency
        .offsets()
        .iter()
        .map(move |&(dx, dy)| p.offset(dx, dy))
}

/// Occupancy of the 2x2 pixel window around a lattice point, one bit per
/// entry of [`LatticePoint::incident_pixels`].
pub fn window_mask(point: LatticePoint, contains: impl Fn(PixelCoord) -> bool) -> u8 {
    point
        .incident_pixels()
        .iter()
        .enumerate()
        .fold(
            0u8,
            |mask, (i, &q)| if contains(q) { mask | (1 << i) } else { mask },
        )
}

/// Window masks in which exactly two pixels meet at the point only
/// (the two diagonal pairs).
pub const TUNNEL_MASKS: [u8; 2] = [0b1001, 0b0110];

pub const fn is_tunnel_mask(mask: u8) -> bool {
    mask == TUNNEL_MASKS[0] || mask == TUNNEL_MASKS[1]
}

pub const BLOCK_MASK: u8 = 0b1111;

/// Occupancy of the 3x3 neighbourhood of a pixel, indexed `[dy + 1][dx + 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighborhood([[bool; 3]; 3]);

impl Neighborhood {
    pub fn probe(center: PixelCoord, contains: impl Fn(PixelCoord) -> bool) -> Self {
        let mut cells = [[false; 3]; 3];
        for (dy, row) in cells.iter_mut().enumerate() {
            for (dx, cell) in row.iter_mut().enumerate() {
                *cell = contains(center.offset(dx as i64 - 1, dy as i64 - 1));
            }
        }
        Self(cells)
    }

    pub fn get(&self, dx: i64, dy: i64) -> bool {
        self.0[(dy + 1) as usize][(dx + 1) as usize]
    }

    pub fn set_center(&mut self, present: bool) {
        self.0[1][1] = present;
    }

    /// Window masks of the centre pixel's four corners, in [`corners`] order.
    pub fn corner_masks(&self) -> [u8; 4] {
        // Offset of window entry 0 relative to the centre for each corner.
        const ORIGINS: [(i64, i64); 4] = [(-1, -1), (0, -1), (-1, 0), (0, 0)];
        const WINDOW: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];
        ORIGINS.map(|(ox, oy)| {
            WINDOW.iter().enumerate().fold(0u8, |mask, (i, &(wx, wy))| {
                if self.get(ox + wx, oy + wy) {
                    mask | (1 << i)
                } else {
                    mask
                }
            })
        })
    }
}

/// A finite set of pixels.
///
/// Immutable once built. Iteration is in row-major `(y, x)` order and
/// membership is a hash lookup.
#[derive(Debug, Clone, Default)]
pub struct DigitalObject {
    sorted: Vec<PixelCoord>,
    index: HashSet<PixelCoord>,
}

impl PartialEq for DigitalObject {
    fn eq(&self, other: &Self) -> bool {
        self.sorted == other.sorted
    }
}

impl Eq for DigitalObject {}

impl DigitalObject {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an object from arbitrary coordinates; duplicates collapse.
    pub fn from_pixels<I>(coords: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<PixelCoord>,
    {
        let mut sorted: Vec<PixelCoord> = coords.into_iter().map(Into::into).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let index = sorted.iter().copied().collect();
        Self { sorted, index }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, p: PixelCoord) -> bool {
        self.index.contains(&p)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = PixelCoord> + '_ {
        self.sorted.iter().copied()
    }

    /// Pixels in row-major order.
    pub fn as_slice(&self) -> &[PixelCoord] {
        &self.sorted
    }

    /// Tight box `(min, max)` over pixel coordinates, `None` when empty.
    pub fn bounding_box(&self) -> Option<(PixelCoord, PixelCoord)> {
        let first = *self.sorted.first()?;
        let last = *self.sorted.last()?;
        let (min_x, max_x) = self
            .sorted
            .iter()
            .fold((i64::MAX, i64::MIN), |(lo, hi), p| {
                (lo.min(p.x), hi.max(p.x))
            });
        Some((
            PixelCoord::new(min_x, first.y),
            PixelCoord::new(max_x, last.y),
        ))
    }

    pub fn is_subset(&self, other: &DigitalObject) -> bool {
        self.len() <= other.len() && self.iter().all(|p| other.contains(p))
    }

    /// `self \ other`.
    pub fn difference(&self, other: &DigitalObject) -> DigitalObject {
        Self::from_pixels(self.iter().filter(|&p| !other.contains(p)))
    }

    pub fn with_pixel(&self, p: PixelCoord) -> DigitalObject {
        Self::from_pixels(self.iter().chain(std::iter::once(p)))
    }

    pub fn translated(&self, dx: i64, dy: i64) -> DigitalObject {
        Self::from_pixels(self.iter().map(|p| p.offset(dx, dy)))
    }

    /// Image under a map of the pixel grid.
    pub fn map(&self, f: impl Fn(PixelCoord) -> PixelCoord) -> DigitalObject {
        Self::from_pixels(self.iter().map(f))
    }

    /// Occupancy of the 2x2 window around `point`.
    pub fn window_mask(&self, point: LatticePoint) -> u8 {
        window_mask(point, |q| self.contains(q))
    }

    /// Number of pixels of `self` among the `adjacency` neighbours of `p`.
    pub fn degree(&self, p: PixelCoord, adjacency: Adjacency) -> usize {
        neighbors(p, adjacency)
            .filter(|&q| self.contains(q))
            .count()
    }
}

impl FromIterator<PixelCoord> for DigitalObject {
    fn from_iter<T: IntoIterator<Item = PixelCoord>>(iter: T) -> Self {
        Self::from_pixels(iter)
    }
}

impl<'a> IntoIterator for &'a DigitalObject {
    type Item = PixelCoord;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, PixelCoord>>;

    fn into_iter(self) -> Self::IntoIter {
        self.sorted.iter().copied()
    }
}
