//! Netpbm bitmaps: `P1` (plain) and `P4` (raw).
//!
//! Header: magic, then width and height as decimal integers separated by
//! whitespace, with `#` comments running to end of line. `P4` rasters start
//! after exactly one whitespace byte; each row is padded to a whole byte,
//! most significant bit first. A set bit is a pixel.

use super::{raster_frame, ParseError};
use crate::grid::{DigitalObject, PixelCoord};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Pbm {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn header_number(&mut self, what: &str) -> Result<usize, ParseError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.bytes.get(self.pos) {
                None => self.error(format!("unexpected end of header, expected {what}")),
                Some(_) => self.error(format!("non-numeric {what}")),
            };
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error(format!("{what} out of range"))
        })
    }
}

/// Parses a `P1` or `P4` bitmap. Data after the first image is ignored.
pub fn parse_pbm(bytes: &[u8]) -> Result<DigitalObject, ParseError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let raw = match bytes {
        [b'P', b'1', ..] => false,
        [b'P', b'4', ..] => true,
        _ => return cur.error("bad magic number, expected P1 or P4"),
    };
    cur.pos = 2;
    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;

    let mut pixels = Vec::new();
    if raw {
        match cur.bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            Some(_) => return cur.error("expected whitespace after header"),
            None if width * height == 0 => {}
            None => return cur.error("unexpected end of raster"),
        }
        let stride = width.div_ceil(8);
        let needed = stride
            .checked_mul(height)
            .filter(|n| cur.pos.checked_add(*n).is_some());
        let Some(needed) = needed else {
            return cur.error("raster size overflows");
        };
        if cur.bytes.len() - cur.pos < needed {
            cur.pos = cur.bytes.len();
            return cur.error("unexpected end of raster");
        }
        let raster = &cur.bytes[cur.pos..cur.pos + needed];
        for (y, row) in raster.chunks(stride.max(1)).take(height).enumerate() {
            for x in 0..width {
                if row[x / 8] & (0x80 >> (x % 8)) != 0 {
                    pixels.push(PixelCoord::new(x as i64, y as i64));
                }
            }
        }
    } else {
        let total = width.checked_mul(height).ok_or_else(|| ParseError::Pbm {
            offset: cur.pos,
            message: "raster size overflows".into(),
        })?;
        for i in 0..total {
            cur.skip_whitespace_and_comments();
            match cur.bytes.get(cur.pos) {
                Some(b'1') => pixels.push(PixelCoord::new((i % width) as i64, (i / width) as i64)),
                Some(b'0') => {}
                Some(_) => return cur.error("expected 0 or 1 in raster"),
                None => return cur.error("unexpected end of raster"),
            }
            cur.pos += 1;
        }
    }
    Ok(DigitalObject::from_pixels(pixels))
}

fn header(magic: &str, width: usize, height: usize) -> Vec<u8> {
    format!("{magic}\n{width} {height}\n").into_bytes()
}

/// `P4` encoding over the same raster frame as the ASCII writer.
pub fn emit_pbm_raw(obj: &DigitalObject) -> Vec<u8> {
    let (x0, y0, width, height) = raster_frame(obj);
    let stride = width.div_ceil(8);
    let mut out = header("P4", width, height);
    let start = out.len();
    out.resize(start + stride * height, 0);
    for p in obj.iter() {
        let (x, y) = ((p.x - x0) as usize, (p.y - y0) as usize);
        out[start + y * stride + x / 8] |= 0x80 >> (x % 8);
    }
    out
}

/// `P1` encoding, one raster row per line.
pub fn emit_pbm_plain(obj: &DigitalObject) -> Vec<u8> {
    let (x0, y0, width, height) = raster_frame(obj);
    let mut out = header("P1", width, height);
    for row in 0..height as i64 {
        let line: Vec<&str> = (0..width as i64)
            .map(|col| {
                if obj.contains(PixelCoord::new(x0 + col, y0 + row)) {
                    "1"
                } else {
                    "0"
                }
            })
            .collect();
        out.extend_from_slice(line.join(" ").as_bytes());
        out.push(b'\n');
    }
    out
}
