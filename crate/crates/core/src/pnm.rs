//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.
//!
//! Header comments (`#` to end of line) are accepted on load. Saving always
//! emits the canonical form `P5\n<w> <h>\n255\n<raw>`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::Image;

pub fn load_pnm(bytes: &[u8]) -> Result<Image> {
    let mut cursor = HeaderCursor { bytes, pos: 0 };

    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        Some([b'P', b'2' | b'3']) => {
            return Err(Error::parse(0, "ASCII PNM (P2/P3) is not supported"))
        }
        _ => return Err(Error::parse(0, "expected magic P5 or P6")),
    };
    if !matches!(bytes.get(2), Some(b) if b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::parse(2, "expected whitespace after magic number"));
    }
    cursor.pos = 2;

    let width = cursor.field("width")?;
    let height = cursor.field("height")?;
    let maxval_at = cursor.skip_space_and_comments();
    let maxval = cursor.field("maxval")?;
    if maxval != 255 {
        return Err(Error::parse(
            maxval_at,
            format!("maxval must be 255, got {maxval}"),
        ));
    }
    if width == 0 || height == 0 {
        return Err(Error::parse(2, format!("zero dimension {width}x{height}")));
    }

    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(cursor.pos) {
        Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
        Some(_) => return Err(Error::parse(cursor.pos, "expected whitespace after maxval")),
        None => return Err(Error::parse(cursor.pos, "missing pixel data")),
    }

    let len = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::parse(2, "image dimensions overflow"))?;
    let start = cursor.pos;
    let available = bytes.len() - start;
    if available < len {
        return Err(Error::parse(
            bytes.len(),
            format!("truncated pixel data: expected {len} bytes, found {available}"),
        ));
    }
    Image::new(width, height, channels, bytes[start..start + len].to_vec())
}

pub fn save_pnm(img: &Image) -> Vec<u8> {
    let magic = if img.channels() == 1 { "P5" } else { "P6" };
    let header = format!("{magic}\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.data().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.data());
    out
}

pub fn read_pnm_file(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    load_pnm(&bytes)
}

pub fn write_pnm_file(path: impl AsRef<Path>, img: &Image) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, save_pnm(img)).map_err(|e| Error::io(path, e))
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_space_and_comments(&mut self) -> usize {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.pos
    }

    fn field(&mut self, name: &str) -> Result<usize> {
        let start = self.skip_space_and_comments();
        let digits = self.bytes[start..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            return Err(Error::parse(start, format!("expected decimal {name}")));
        }
        self.pos = start + digits;
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, format!("{name} out of range")))
    }
}
