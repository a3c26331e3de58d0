//! Insert-only maintenance of the invariants.
//!
//! Each insertion touches the 3x3 neighbourhood of the new pixel, its four
//! corners and at most eight union-find roots. `v`, `b`, `t` and `c` are
//! tracked; `h` is never computed by traversal but solved from the tunnel
//! identity: `h = p + c + (t - v - b) / 2`.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{
    corners, is_tunnel_mask, Adjacency, DigitalObject, LatticePoint, Neighborhood, PixelCoord,
    BLOCK_MASK,
};
use crate::invariants::InvariantReport;
use crate::union_find::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackerError {
    #[error("pixel {0} is already present")]
    Duplicate(PixelCoord),
    #[error("tracker state is corrupt: {0}")]
    Corrupt(String),
}

/// Change of every counter caused by one insertion (`dp` is always 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct InsertionDelta {
    pub dv: i64,
    pub dc: i64,
    pub dh: i64,
    pub db: i64,
    pub dt: i64,
}

impl InsertionDelta {
    /// `dv - 2(1 + dc - dh) + db - dt`; zero for every real insertion.
    pub fn imbalance(&self) -> i64 {
        self.dv - 2 * (1 + self.dc - self.dh) + self.db - self.dt
    }

    pub fn is_balanced(&self) -> bool {
        self.imbalance() == 0
    }

    /// Name of the first impossible transition this delta exhibits, if any.
    pub fn forbidden_transition(&self) -> Option<&'static str> {
        if self.db < 0 {
            Some("b decreased")
        } else if self.dh > 0 && self.dc > 0 {
            Some("h and c both increased")
        } else if self.db > 0 && self.dc > 0 {
            Some("b and c both increased")
        } else if self.dh < 0 && self.dc != 0 {
            Some("h decreased while c changed")
        } else {
            None
        }
    }

    /// Whether every component lies in its feasible range.
    pub fn in_range(&self) -> bool {
        (0..=4).contains(&self.dv)
            && (-3..=1).contains(&self.dc)
            && (-1..=3).contains(&self.dh)
            && (0..=4).contains(&self.db)
            && (-4..=4).contains(&self.dt)
    }
}

impl fmt::Display for InsertionDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dv={:+} dc={:+} dh={:+} db={:+} dt={:+}",
            self.dv, self.dc, self.dh, self.db, self.dt
        )
    }
}

/// Insertion case labels.
///
/// Groups are keyed by how `(c, h, b)` change:
///
/// | case | dc | dh | db | dv |
/// |------|----|----|----|----|
/// | 1a-1d | 0 | 0 | 0 | 2, 3, 1, 0 |
/// | 2 | +1 | 0 | 0 | 4 |
/// | 3a, 3b, 3c | -1, -2, -3 | 0 | 0 | |
/// | 4 | 0 | -1 | 0 | |
/// | 5a, 5b, 5c | 0 | +1, +2, +3 | 0 | |
/// | 6a, 6b | 0 | 0 | +1 | 0, 1 |
/// | 6c | 0 | 0 | +2 | |
/// | 7 | 0 | +1 | +1 | |
/// | 8a-8d | 0 | -1 | +1..+4 | |
/// | 9 | -1 | 0 | +1 | |
/// | 10a, 10b, 10c | -1, -2, -1 | +1, +1, +2 | 0 | |
///
/// Within a balanced delta `dt` is fixed by the other four, so `dv` alone
/// separates the sub-cases that share a `(dc, dh, db)` signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    C1a,
    C1b,
    C1c,
    C1d,
    C2,
    C3a,
    C3b,
    C3c,
    C4,
    C5a,
    C5b,
    C5c,
    C6a,
    C6b,
    C6c,
    C7,
    C8a,
    C8b,
    C8c,
    C8d,
    C9,
    C10a,
    C10b,
    C10c,
}

impl CaseId {
    pub const ALL: [CaseId; 24] = [
        CaseId::C1a,
        CaseId::C1b,
        CaseId::C1c,
        CaseId::C1d,
        CaseId::C2,
        CaseId::C3a,
        CaseId::C3b,
        CaseId::C3c,
        CaseId::C4,
        CaseId::C5a,
        CaseId::C5b,
        CaseId::C5c,
        CaseId::C6a,
        CaseId::C6b,
        CaseId::C6c,
        CaseId::C7,
        CaseId::C8a,
        CaseId::C8b,
        CaseId::C8c,
        CaseId::C8d,
        CaseId::C9,
        CaseId::C10a,
        CaseId::C10b,
        CaseId::C10c,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::C1a => "1a",
            CaseId::C1b => "1b",
            CaseId::C1c => "1c",
            CaseId::C1d => "1d",
            CaseId::C2 => "2",
            CaseId::C3a => "3a",
            CaseId::C3b => "3b",
            CaseId::C3c => "3c",
            CaseId::C4 => "4",
            CaseId::C5a => "5a",
            CaseId::C5b => "5b",
            CaseId::C5c => "5c",
            CaseId::C6a => "6a",
            CaseId::C6b => "6b",
            CaseId::C6c => "6c",
            CaseId::C7 => "7",
            CaseId::C8a => "8a",
            CaseId::C8b => "8b",
            CaseId::C8c => "8c",
            CaseId::C8d => "8d",
            CaseId::C9 => "9",
            CaseId::C10a => "10a",
            CaseId::C10b => "10b",
            CaseId::C10c => "10c",
        }
    }

    pub fn from_label(label: &str) -> Option<CaseId> {
        CaseId::ALL.into_iter().find(|c| c.label() == label)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Maps a delta onto its case; `None` is the unmatched verdict (an
/// unbalanced delta or a signature outside the table).
pub fn classify_case(d: &InsertionDelta) -> Option<CaseId> {
    if !d.is_balanced() || !d.in_range() {
        return None;
    }
    let case = match (d.dc, d.dh, d.db) {
        (0, 0, 0) => match d.dv {
            2 => CaseId::C1a,
            3 => CaseId::C1b,
            1 => CaseId::C1c,
            0 => CaseId::C1d,
            _ => return None,
        },
        (1, 0, 0) if d.dv == 4 => CaseId::C2,
        (-1, 0, 0) => CaseId::C3a,
        (-2, 0, 0) => CaseId::C3b,
        (-3, 0, 0) => CaseId::C3c,
        (0, -1, 0) => CaseId::C4,
        (0, 1, 0) => CaseId::C5a,
        (0, 2, 0) => CaseId::C5b,
        (0, 3, 0) => CaseId::C5c,
        (0, 0, 1) => match d.dv {
            0 => CaseId::C6a,
            1 => CaseId::C6b,
            _ => return None,
        },
        (0, 0, 2) => CaseId::C6c,
        (0, 1, 1) => CaseId::C7,
        (0, -1, 1) => CaseId::C8a,
        (0, -1, 2) => CaseId::C8b,
        (0, -1, 3) => CaseId::C8c,
        (0, -1, 4) => CaseId::C8d,
        (-1, 0, 1) => CaseId::C9,
        (-1, 1, 0) => CaseId::C10a,
        (-2, 1, 0) => CaseId::C10b,
        (-1, 2, 0) => CaseId::C10c,
        _ => return None,
    };
    Some(case)
}

/// Incremental invariant state for a growing object.
#[derive(Debug, Clone, Default)]
pub struct Tracker {
    /// Pixel -> union-find node.
    pixels: FxHashMap<PixelCoord, u32>,
    /// Lattice point -> number of incident pixels (1..=4).
    corner_incidence: FxHashMap<LatticePoint, u8>,
    components: UnionFind,
    b: u64,
    t: u64,
}

impl Tracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(pixels: usize) -> Self {
        Self {
            pixels: FxHashMap::with_capacity_and_hasher(pixels, Default::default()),
            corner_incidence: FxHashMap::with_capacity_and_hasher(pixels * 2, Default::default()),
            components: UnionFind::new(),
            b: 0,
            t: 0,
        }
    }

    pub fn p(&self) -> u64 {
        self.pixels.len() as u64
    }

    pub fn v(&self) -> u64 {
        self.corner_incidence.len() as u64
    }

    pub fn c(&self) -> u64 {
        self.components.sets() as u64
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn contains(&self, p: PixelCoord) -> bool {
        self.pixels.contains_key(&p)
    }

    /// Number of pixels incident to `q`.
    pub fn incidence(&self, q: LatticePoint) -> u8 {
        self.corner_incidence.get(&q).copied().unwrap_or(0)
    }

    /// Current pixel set.
    pub fn object(&self) -> DigitalObject {
        DigitalObject::from_pixels(self.pixels.keys().copied())
    }

    /// `h` solved from the tunnel identity.
    pub fn derived_holes(&self) -> Result<u64, TrackerError> {
        let excess = self.t as i64 - self.v() as i64 - self.b as i64;
        if excess % 2 != 0 {
            return Err(TrackerError::Corrupt(format!(
                "t - v - b = {excess} is odd"
            )));
        }
        let h = self.p() as i64 + self.c() as i64 + excess / 2;
        u64::try_from(h)
            .map_err(|_| TrackerError::Corrupt(format!("derived hole count {h} is negative")))
    }

    /// Inserts `pixel` and returns the resulting change of every counter.
    pub fn add_pixel(&mut self, pixel: PixelCoord) -> Result<InsertionDelta, TrackerError> {
        if self.contains(pixel) {
            return Err(TrackerError::Duplicate(pixel));
        }
        let h_before = self.derived_holes()? as i64;
        let mut hood = Neighborhood::probe(pixel, |q| self.pixels.contains_key(&q));
        let before = hood.corner_masks();
        hood.set_center(true);
        let after = hood.corner_masks();

        let mut dv = 0;
        let mut db = 0;
        let mut dt = 0;
        for ((q, old), new) in corners(pixel).into_iter().zip(before).zip(after) {
            let count = self.corner_incidence.entry(q).or_insert(0);
            if *count == 0 {
                dv += 1;
            }
            *count += 1;
            debug_assert_eq!(*count as u32, new.count_ones());
            if new == BLOCK_MASK {
                db += 1;
            }
            dt += is_tunnel_mask(new) as i64 - is_tunnel_mask(old) as i64;
        }

        let node = self.components.push();
        let mut dc = 1;
        for n in crate::grid::neighbors(pixel, Adjacency::Zero) {
            if let Some(&other) = self.pixels.get(&n) {
                if self.components.union(node, other as usize) {
                    dc -= 1;
                }
            }
        }
        self.pixels.insert(pixel, node as u32);

        self.b = (self.b as i64 + db) as u64;
        self.t = (self.t as i64 + dt) as u64;
        let h_after = self.derived_holes()? as i64;

        let delta = InsertionDelta {
            dv,
            dc,
            dh: h_after - h_before,
            db,
            dt,
        };
        debug_assert!(delta.is_balanced());
        Ok(delta)
    }

    /// Current invariants. `h` comes from the identity, `c1` is not tracked.
    pub fn snapshot(&self) -> Result<InvariantReport, TrackerError> {
        let h = self.derived_holes()?;
        let report =
            InvariantReport::from_counts(self.p(), self.v(), self.c(), None, h, self.b, self.t);
        if !report.consistent {
            return Err(TrackerError::Corrupt(format!(
                "snapshot does not satisfy the identity: {report:?}"
            )));
        }
        Ok(report)
    }
}

/// Frequency of each case over a run of insertions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStats {
    pub counts: BTreeMap<CaseId, u64>,
    pub unmatched: Vec<InsertionDelta>,
    pub forbidden: Vec<(InsertionDelta, String)>,
}

impl CaseStats {
    pub fn record(&mut self, delta: &InsertionDelta) -> Option<CaseId> {
        if let Some(why) = delta.forbidden_transition() {
            self.forbidden.push((*delta, why.to_string()));
        }
        let case = classify_case(delta);
        match case {
            Some(c) => *self.counts.entry(c).or_default() += 1,
            None => self.unmatched.push(*delta),
        }
        case
    }

    pub fn merge(&mut self, other: CaseStats) {
        for (case, n) in other.counts {
            *self.counts.entry(case).or_default() += n;
        }
        self.unmatched.extend(other.unmatched);
        self.forbidden.extend(other.forbidden);
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum::<u64>() + self.unmatched.len() as u64
    }

    pub fn count(&self, case: CaseId) -> u64 {
        self.counts.get(&case).copied().unwrap_or(0)
    }

    /// Two-column table of every label, including unobserved ones.
    pub fn table(&self) -> String {
        let mut out = String::from("case   count\n");
        for case in CaseId::ALL {
            out.push_str(&format!("{:<6} {}\n", case.label(), self.count(case)));
        }
        out.push_str(&format!("{:<6} {}\n", "none", self.unmatched.len()));
        out
    }
}
