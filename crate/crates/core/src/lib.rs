//! Topological invariants of finite 2D digital objects.
//!
//! For a set of unit pixels the crate counts pixels `p`, distinct corners
//! `v`, 0-connected components `c`, proper 1-holes `h`, 2x2 blocks `b` and
//! 0-tunnels `t`, and checks the identity
//!
//! ```text
//! t = v - 2(p + c - h) + b
//! ```
//!
//! both from scratch ([`invariants::analyze`]) and incrementally under
//! pixel insertion ([`incremental::Tracker`]), where `h` is recovered from
//! the identity instead of by flood fill. [`curves`] classifies digital
//! curves and evaluates the identities specialised to them.
//!
//! ```
//! use pixtopo::{analyze, DigitalObject};
//!
//! let diamond = DigitalObject::from_pixels([(1, 0), (0, 1), (2, 1), (1, 2)]);
//! let r = analyze(&diamond);
//! assert_eq!((r.p, r.v, r.c, r.h, r.b, r.t_direct), (4, 12, 1, 1, 0, 4));
//! assert!(r.consistent);
//! ```

pub mod curves;
pub mod generate;
pub mod grid;
pub mod incremental;
pub mod invariants;
pub mod io;
pub mod report;
pub mod union_find;
pub mod verify;

pub use curves::{curve_report, CurveVerdict};
pub use grid::{corners, neighbors, Adjacency, DigitalObject, LatticePoint, PixelCoord};
pub use incremental::{classify_case, CaseId, InsertionDelta, Tracker, TrackerError};
pub use invariants::{analyze, InvariantReport};
