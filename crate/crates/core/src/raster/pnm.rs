//! Binary PGM (P5) and PPM (P6), maxval 255.

use thiserror::Error;

use super::{RasterBuffer, MAXVAL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnmError {
    #[error("malformed PNM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported PNM variant: {0}")]
    UnsupportedFormat(String),
    #[error("truncated pixel data: expected {expected} bytes, found {found}")]
    TruncatedData { expected: usize, found: usize },
}

fn malformed(msg: impl Into<String>) -> PnmError {
    PnmError::MalformedHeader(msg.into())
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, PnmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.data.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or_else(|| malformed(format!("{what} is too large")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.data.get(self.pos) {
                None => malformed(format!("unexpected end of header before {what}")),
                Some(_) => malformed(format!("expected decimal {what} at byte {}", self.pos)),
            });
        }
        Ok(value)
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<RasterBuffer, PnmError> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        Some([b'P', d @ (b'1' | b'2' | b'3' | b'4' | b'7')]) => {
            return Err(PnmError::UnsupportedFormat(format!(
                "P{} (only binary P5/P6 are supported)",
                *d as char
            )))
        }
        _ => return Err(malformed("missing P5/P6 magic number")),
    };
    let mut header = Header { data: bytes, pos: 2 };
    match bytes.get(2) {
        Some(b) if b.is_ascii_whitespace() || *b == b'#' => {}
        Some(_) => return Err(malformed("magic number must be followed by whitespace")),
        None => return Err(malformed("unexpected end of header")),
    }
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(malformed(format!("zero dimension {width}x{height}")));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(malformed(format!("maxval {maxval} outside 1..=65535")));
    }
    if maxval != u64::from(MAXVAL) {
        return Err(PnmError::UnsupportedFormat(format!(
            "maxval {maxval} (only 255 is supported)"
        )));
    }
    match bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        Some(_) => return Err(malformed("maxval must be followed by a single whitespace byte")),
        None => return Err(malformed("unexpected end of header after maxval")),
    }

    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| malformed(format!("dimensions {width}x{height} overflow")))?;
    let payload = &bytes[header.pos..];
    if payload.len() < expected {
        return Err(PnmError::TruncatedData {
            expected,
            found: payload.len(),
        });
    }
    Ok(RasterBuffer {
        width: width as usize,
        height: height as usize,
        channels: channels as usize,
        pixels: payload[..expected].to_vec(),
    })
}

/// Canonical encoding: `P5\n<w> <h>\n255\n` (or `P6`) followed by the raw samples.
pub fn encode_pnm(raster: &RasterBuffer) -> Vec<u8> {
    let magic = if raster.channels == 1 { "P5" } else { "P6" };
    let header = format!("{magic}\n{} {}\n{MAXVAL}\n", raster.width, raster.height);
    let mut out = Vec::with_capacity(header.len() + raster.pixels.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&raster.pixels);
    out
}
