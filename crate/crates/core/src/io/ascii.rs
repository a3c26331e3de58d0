//! Plain text grids: `#` or `1` marks a pixel, `.`, `0` or space is empty.

use super::{raster_frame, ParseError};
use crate::grid::{DigitalObject, PixelCoord};

/// Parses a text grid. Lines may have different lengths; missing cells are
/// empty. A trailing `\r` on each line is ignored.
pub fn parse_ascii_grid(text: &str) -> Result<DigitalObject, ParseError> {
    let mut pixels = Vec::new();
    for (y, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        for (x, ch) in line.chars().enumerate() {
            match ch {
                '#' | '1' => pixels.push(PixelCoord::new(x as i64, y as i64)),
                '.' | '0' | ' ' => {}
                found => {
                    return Err(ParseError::Ascii {
                        line: y + 1,
                        column: x + 1,
                        found,
                    })
                }
            }
        }
    }
    Ok(DigitalObject::from_pixels(pixels))
}

/// Writes the object as `#`/`.` rows, one line per raster row. Objects with
/// negative coordinates are shifted so their minimum lands on row/column 0.
pub fn emit_ascii_grid(obj: &DigitalObject) -> String {
    let (x0, y0, width, height) = raster_frame(obj);
    let mut out = String::with_capacity((width + 1) * height);
    for row in 0..height as i64 {
        for col in 0..width as i64 {
            let filled = obj.contains(PixelCoord::new(x0 + col, y0 + row));
            out.push(if filled { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}
