//! Batch checks of the tunnel identity: exhaustive enumeration of small
//! grids, seeded random objects, and incremental-vs-recompute comparison.

use std::fmt;

use rand::seq::SliceRandom;
use rand::RngCore;
use serde::Serialize;

use crate::generate::{generate_random, rng_from_seed, unit_f64};
use crate::grid::{DigitalObject, PixelCoord};
use crate::incremental::{CaseStats, Tracker};
use crate::invariants::{analyze, InvariantReport};

/// Densities cycled through when none is given.
pub const DEFAULT_DENSITIES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Largest `width * height` accepted for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_CELLS: u32 = 24;

/// A tracker snapshot that disagrees with the from-scratch analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncrementalMismatch {
    /// Number of pixels inserted when the mismatch was seen.
    pub step: usize,
    pub pixel: PixelCoord,
    pub detail: String,
}

impl fmt::Display for IncrementalMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "after inserting {} (step {}): {}",
            self.pixel, self.step, self.detail
        )
    }
}

/// Counters accumulated over a verification run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifySummary {
    pub objects: u64,
    pub inconsistent: u64,
    /// Objects where `t = 0` and `v - 2(p + c - h) + b = 0` disagree.
    pub zero_tunnel_violations: u64,
    pub sequences: u64,
    pub insertions: u64,
    pub incremental_mismatches: Vec<IncrementalMismatch>,
    /// First few inconsistent objects, as pixel lists.
    pub examples: Vec<Vec<(i64, i64)>>,
    #[serde(skip)]
    pub cases: CaseStats,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.inconsistent == 0
            && self.zero_tunnel_violations == 0
            && self.incremental_mismatches.is_empty()
            && self.cases.unmatched.is_empty()
            && self.cases.forbidden.is_empty()
    }

    /// Direct-vs-formula check on one object.
    pub fn record_object(&mut self, obj: &DigitalObject) -> InvariantReport {
        let r = analyze(obj);
        self.objects += 1;
        if !r.consistent {
            self.inconsistent += 1;
            if self.examples.len() < 5 {
                self.examples.push(obj.iter().map(|p| (p.x, p.y)).collect());
            }
        }
        if (r.t_direct == 0) != (r.t_formula == 0) {
            self.zero_tunnel_violations += 1;
        }
        r
    }

    /// Feeds `sequence` through a fresh tracker, classifying every delta.
    /// With `every_step` the snapshot is compared against [`analyze`] after
    /// each insertion, otherwise only at the end.
    pub fn record_sequence(&mut self, sequence: &[PixelCoord], every_step: bool) {
        self.sequences += 1;
        if let Err(m) = run_sequence(sequence, every_step, &mut self.cases) {
            self.incremental_mismatches.push(m);
        }
        self.insertions += sequence.len() as u64;
    }

    pub fn merge(&mut self, other: VerifySummary) {
        self.objects += other.objects;
        self.inconsistent += other.inconsistent;
        self.zero_tunnel_violations += other.zero_tunnel_violations;
        self.sequences += other.sequences;
        self.insertions += other.insertions;
        self.incremental_mismatches
            .extend(other.incremental_mismatches);
        let room = 5usize.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self.cases.merge(other.cases);
    }
}

/// Inserts `sequence` into a new tracker and compares against the direct
/// counters. Stops at the first disagreement.
pub fn run_sequence(
    sequence: &[PixelCoord],
    every_step: bool,
    stats: &mut CaseStats,
) -> Result<Tracker, IncrementalMismatch> {
    let mut tracker = Tracker::with_capacity(sequence.len());
    let mismatch = |step: usize, pixel: PixelCoord, detail: String| IncrementalMismatch {
        step,
        pixel,
        detail,
    };
    for (i, &pixel) in sequence.iter().enumerate() {
        let delta = tracker
            .add_pixel(pixel)
            .map_err(|e| mismatch(i + 1, pixel, e.to_string()))?;
        stats.record(&delta);
        let last = i + 1 == sequence.len();
        if every_step || last {
            let snap = tracker
                .snapshot()
                .map_err(|e| mismatch(i + 1, pixel, e.to_string()))?;
            let oracle = analyze(&DigitalObject::from_pixels(sequence[..=i].iter().copied()));
            if snap.core_counts() != oracle.core_counts() {
                return Err(mismatch(
                    i + 1,
                    pixel,
                    format!(
                        "tracker (p,v,c,h,b,t)={:?} vs direct {:?}",
                        snap.core_counts(),
                        oracle.core_counts()
                    ),
                ));
            }
        }
    }
    Ok(tracker)
}

/// Every subset of the `width x height` grid, in mask order (bit
/// `y * width + x` set means pixel `(x, y)` present).
pub fn grid_subsets(width: u32, height: u32) -> impl Iterator<Item = DigitalObject> {
    let cells = width * height;
    assert!(cells <= MAX_EXHAUSTIVE_CELLS, "grid too large to enumerate");
    (0u64..1 << cells).map(move |mask| {
        DigitalObject::from_pixels(
            (0..cells)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| PixelCoord::new((i % width) as i64, (i / width) as i64)),
        )
    })
}

/// Checks every subset of the grid directly, and via the tracker in
/// row-major insertion order.
pub fn verify_exhaustive(width: u32, height: u32) -> VerifySummary {
    let mut summary = VerifySummary::default();
    for obj in grid_subsets(width, height) {
        summary.record_object(&obj);
        summary.record_sequence(obj.as_slice(), false);
    }
    summary
}

/// Parameters for [`verify_random`].
#[derive(Debug, Clone)]
pub struct RandomPlan {
    /// Maximum grid size; each run draws its width and height uniformly
    /// from `1..=max_width` and `1..=max_height`.
    pub max_width: u32,
    pub max_height: u32,
    pub densities: Vec<f64>,
    pub seed: u64,
    pub runs: u64,
    /// Compare the tracker after every insertion instead of only at the end.
    pub every_step: bool,
}

impl Default for RandomPlan {
    fn default() -> Self {
        Self {
            max_width: 20,
            max_height: 20,
            densities: DEFAULT_DENSITIES.to_vec(),
            seed: 0,
            runs: 1000,
            every_step: false,
        }
    }
}

/// Random objects: run `i` uses density `densities[i % len]`, and a master
/// generator seeded with `seed` supplies the grid size, the object seed and
/// the tracker insertion order.
pub fn verify_random(plan: &RandomPlan) -> VerifySummary {
    let mut summary = VerifySummary::default();
    let mut master = rng_from_seed(plan.seed);
    let densities = if plan.densities.is_empty() {
        DEFAULT_DENSITIES.to_vec()
    } else {
        plan.densities.clone()
    };
    for run in 0..plan.runs {
        let width = 1 + (master.next_u64() % plan.max_width.max(1) as u64) as u32;
        let height = 1 + (master.next_u64() % plan.max_height.max(1) as u64) as u32;
        let density = densities[(run % densities.len() as u64) as usize];
        let obj = generate_random(width, height, density, master.next_u64())
            .expect("plan dimensions are within the cap");
        summary.record_object(&obj);
        let mut order = obj.as_slice().to_vec();
        order.shuffle(&mut master);
        summary.record_sequence(&order, plan.every_step);
    }
    summary
}

/// `len` distinct pixels drawn uniformly from the `width x height` grid
/// (clamped to the number of cells).
pub fn random_insertion_sequence(
    rng: &mut impl RngCore,
    width: u32,
    height: u32,
    len: usize,
) -> Vec<PixelCoord> {
    let mut cells: Vec<PixelCoord> = (0..height as i64)
        .flat_map(|y| (0..width as i64).map(move |x| PixelCoord::new(x, y)))
        .collect();
    let len = len.min(cells.len());
    let (chosen, _) = cells.partial_shuffle(rng, len);
    chosen.to_vec()
}

/// Draws a sequence length in `1..=max_len`.
pub fn random_length(rng: &mut impl RngCore, max_len: usize) -> usize {
    1 + (unit_f64(rng) * max_len as f64) as usize
}
