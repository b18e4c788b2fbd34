//! 8-bit rasters, the binary PGM/PPM codec, and the bridge between pixel
//! codes and the model's open interval.

mod blur;
mod pnm;
mod quantize;

use thiserror::Error;

pub use blur::{gaussian_correction, InvalidSigma};
pub use pnm::{decode_pnm, encode_pnm, PnmError};
pub use quantize::{dequantize, from_model, quantize, render_contrast, to_model, DisplayMode, LEVELS};

/// Only 8-bit rasters are supported.
pub const MAXVAL: u16 = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RasterError {
    #[error("raster must be at least 1x1, got {width}x{height}")]
    Empty { width: usize, height: usize },
    #[error("unsupported channel count {0}, expected 1 or 3")]
    Channels(usize),
    #[error("{width}x{height}x{channels} raster needs {expected} samples, got {got}")]
    SampleCount {
        width: usize,
        height: usize,
        channels: usize,
        expected: usize,
        got: usize,
    },
}

/// Integer pixel grid, row-major, interleaved RGB for color.
#[derive(Clone, PartialEq, Eq)]
pub struct RasterBuffer {
    width: usize,
    height: usize,
    channels: usize,
    pixels: Vec<u8>,
}

impl RasterBuffer {
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        pixels: Vec<u8>,
    ) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::Empty { width, height });
        }
        if channels != 1 && channels != 3 {
            return Err(RasterError::Channels(channels));
        }
        let expected = width * height * channels;
        if pixels.len() != expected {
            return Err(RasterError::SampleCount {
                width,
                height,
                channels,
                expected,
                got: pixels.len(),
            });
        }
        Ok(RasterBuffer {
            width,
            height,
            channels,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn maxval(&self) -> u16 {
        MAXVAL
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }
}

impl std::fmt::Debug for RasterBuffer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RasterBuffer")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("channels", &self.channels)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape() {
        assert!(RasterBuffer::new(2, 1, 1, vec![0, 0]).is_ok());
        assert_eq!(RasterBuffer::new(0, 1, 1, vec![]), Err(RasterError::Empty { width: 0, height: 1 }));
        assert_eq!(RasterBuffer::new(1, 1, 2, vec![0, 0]), Err(RasterError::Channels(2)));
        assert!(matches!(
            RasterBuffer::new(2, 2, 3, vec![0; 11]),
            Err(RasterError::SampleCount { expected: 12, got: 11, .. })
        ));
    }
}
