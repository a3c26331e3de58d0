//! Seeded random objects and curve fixtures.
//!
//! All generators draw from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`.
//! A uniform fraction is `(next_u64 >> 11) * 2^-53`, so the sequence of
//! objects for a given seed is fixed across platforms.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curves::{is_general_curve, is_simple_arc, is_simple_closed_curve};
use crate::grid::{neighbors, Adjacency, DigitalObject, PixelCoord};

/// Default limit on `width * height` for [`generate_random`].
pub const DEFAULT_CELL_CAP: u64 = 10_000_000;
/// Largest accepted `steps` for [`generate_curve`].
pub const MAX_CURVE_STEPS: usize = 2_000;
/// Restarts allowed before a curve generator gives up.
pub const MAX_ATTEMPTS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("grid of {cells} cells exceeds the cap of {cap}")]
    TooLarge { cells: u64, cap: u64 },
    #[error("density {0} is not in [0, 1]")]
    InvalidDensity(f64),
    #[error("steps must be in 1..={max}, got {steps}")]
    InvalidSteps { steps: usize, max: usize },
    #[error("no valid curve after {attempts} attempts; try another seed")]
    GenerationFailed { attempts: usize },
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[0, 1)` with 53 bits of precision.
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bernoulli field on `[0, width) x [0, height)`, cells visited row by row,
/// each kept when its draw is below `density`.
pub fn generate_random(
    width: u32,
    height: u32,
    density: f64,
    seed: u64,
) -> Result<DigitalObject, GenerateError> {
    generate_random_capped(width, height, density, seed, DEFAULT_CELL_CAP)
}

pub fn generate_random_capped(
    width: u32,
    height: u32,
    density: f64,
    seed: u64,
    cap: u64,
) -> Result<DigitalObject, GenerateError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(GenerateError::InvalidDensity(density));
    }
    let cells = width as u64 * height as u64;
    if cells > cap {
        return Err(GenerateError::TooLarge { cells, cap });
    }
    let mut rng = rng_from_seed(seed);
    let mut pixels = Vec::new();
    for y in 0..height as i64 {
        for x in 0..width as i64 {
            if unit_f64(&mut rng) < density {
                pixels.push(PixelCoord::new(x, y));
            }
        }
    }
    Ok(DigitalObject::from_pixels(pixels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Simple closed curve enclosing `steps` pixels.
    Closed,
    /// Simple arc of `steps` pixels.
    Arc,
    /// Connected block-free object of `steps` pixels.
    General,
}

/// Seeded curve fixture that satisfies the matching predicate for
/// `adjacency`.
pub fn generate_curve(
    kind: CurveKind,
    adjacency: Adjacency,
    steps: usize,
    seed: u64,
) -> Result<DigitalObject, GenerateError> {
    if !(1..=MAX_CURVE_STEPS).contains(&steps) {
        return Err(GenerateError::InvalidSteps {
            steps,
            max: MAX_CURVE_STEPS,
        });
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_ATTEMPTS {
        let found = match kind {
            CurveKind::Closed => grow_closed(adjacency, steps, &mut rng),
            CurveKind::Arc => walk_arc(adjacency, steps, &mut rng),
            CurveKind::General => grow_general(adjacency, steps, &mut rng),
        };
        if let Some(obj) = found {
            return Ok(obj);
        }
    }
    Err(GenerateError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// The outer boundary of `region` that forms an `adjacency` curve: cells
/// 4-adjacent to it for 0-curves, 8-adjacent for 1-curves.
fn enclosing_curve(region: &HashSet<PixelCoord>, adjacency: Adjacency) -> DigitalObject {
    let reach = match adjacency {
        Adjacency::Zero => Adjacency::One,
        Adjacency::One => Adjacency::Zero,
    };
    region
        .iter()
        .flat_map(|&p| neighbors(p, reach))
        .filter(|q| !region.contains(q))
        .collect()
}

fn grow_closed(adjacency: Adjacency, size: usize, rng: &mut ChaCha8Rng) -> Option<DigitalObject> {
    let mut region: HashSet<PixelCoord> = HashSet::from([PixelCoord::new(0, 0)]);
    let mut curve = enclosing_curve(&region, adjacency);
    while region.len() < size {
        let mut frontier: Vec<PixelCoord> = region
            .iter()
            .flat_map(|&p| neighbors(p, Adjacency::One))
            .filter(|q| !region.contains(q))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        frontier.sort_unstable();
        frontier.shuffle(rng);
        let grown = frontier.into_iter().find_map(|cell| {
            region.insert(cell);
            let candidate = enclosing_curve(&region, adjacency);
            if is_simple_closed_curve(&candidate, adjacency) {
                Some(candidate)
            } else {
                region.remove(&cell);
                None
            }
        });
        curve = grown?;
    }
    Some(curve)
}

fn walk_arc(adjacency: Adjacency, len: usize, rng: &mut ChaCha8Rng) -> Option<DigitalObject> {
    let mut path = vec![PixelCoord::new(0, 0)];
    while path.len() < len {
        let head = *path.last().expect("path is never empty");
        let mut options: Vec<PixelCoord> = neighbors(head, adjacency)
            .filter(|q| !path.contains(q))
            .collect();
        options.shuffle(rng);
        let next = options.into_iter().find(|&q| {
            let candidate = DigitalObject::from_pixels(path.iter().copied().chain([q]));
            is_simple_arc(&candidate, adjacency)
        })?;
        path.push(next);
    }
    Some(DigitalObject::from_pixels(path))
}

fn grow_general(adjacency: Adjacency, size: usize, rng: &mut ChaCha8Rng) -> Option<DigitalObject> {
    let mut set: HashSet<PixelCoord> = HashSet::from([PixelCoord::new(0, 0)]);
    let completes_block = |set: &HashSet<PixelCoord>, q: PixelCoord| {
        [(0, 0), (-1, 0), (0, -1), (-1, -1)]
            .iter()
            .any(|&(ox, oy)| {
                let base = q.offset(ox, oy);
                [(0, 0), (1, 0), (0, 1), (1, 1)]
                    .iter()
                    .map(|&(dx, dy)| base.offset(dx, dy))
                    .all(|c| c == q || set.contains(&c))
            })
    };
    while set.len() < size {
        let mut frontier: Vec<PixelCoord> = set
            .iter()
            .flat_map(|&p| neighbors(p, adjacency))
            .filter(|q| !set.contains(q))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        frontier.sort_unstable();
        frontier.shuffle(rng);
        let next = frontier.into_iter().find(|&q| !completes_block(&set, q))?;
        set.insert(next);
    }
    let obj = DigitalObject::from_pixels(set);
    is_general_curve(&obj, adjacency).then_some(obj)
}
