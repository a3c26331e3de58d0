//! Raster input and output.
//!
//! Both formats map the character or bit at column `x` of raster row `y`
//! (row 0 first) to the pixel `(x, y)`.

pub mod ascii;
pub mod pbm;

use thiserror::Error;

use crate::grid::DigitalObject;

pub use ascii::{emit_ascii_grid, parse_ascii_grid};
pub use pbm::{emit_pbm_plain, emit_pbm_raw, parse_pbm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: unexpected character {found:?}")]
    Ascii {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("byte {offset}: {message}")]
    Pbm { offset: usize, message: String },
}

/// Input format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Ascii,
    Pbm,
    /// PBM when the data starts with `P1` or `P4`, ASCII otherwise.
    Auto,
}

pub fn looks_like_pbm(bytes: &[u8]) -> bool {
    matches!(bytes, [b'P', b'1' | b'4', ..])
}

pub fn parse_bytes(bytes: &[u8], format: InputFormat) -> Result<DigitalObject, ParseError> {
    let pbm = match format {
        InputFormat::Pbm => true,
        InputFormat::Ascii => false,
        InputFormat::Auto => looks_like_pbm(bytes),
    };
    if pbm {
        parse_pbm(bytes)
    } else {
        let text = String::from_utf8_lossy(bytes);
        parse_ascii_grid(&text)
    }
}

/// Raster extent used when writing an object: the box from the origin (or
/// the minimum corner, if that is negative) to the maximum corner.
pub(crate) fn raster_frame(obj: &DigitalObject) -> (i64, i64, usize, usize) {
    match obj.bounding_box() {
        None => (0, 0, 0, 0),
        Some((lo, hi)) => {
            let x0 = lo.x.min(0);
            let y0 = lo.y.min(0);
            (x0, y0, (hi.x - x0 + 1) as usize, (hi.y - y0 + 1) as usize)
        }
    }
}
