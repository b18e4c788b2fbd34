//! Deterministic synthetic rasters used as stand-in test images.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::raster::{RasterBuffer, RasterError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// Diagonal ramp over the full code range.
    Gradient,
    /// Dark left half, bright right half.
    Step,
    /// Uniform random codes.
    Noise,
    /// Smooth shading, a bright disc and mild noise, tinted blue when color.
    Scene,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::Gradient, Pattern::Step, Pattern::Noise, Pattern::Scene];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Gradient => "gradient",
            Pattern::Step => "step",
            Pattern::Noise => "noise",
            Pattern::Scene => "scene",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pattern `{s}`"))
    }
}

fn code(x: f64) -> u8 {
    x.round().clamp(0.0, 255.0) as u8
}

/// A `width`×`height` raster with 1 or 3 channels. Identical arguments give
/// identical bytes.
pub fn synthesize(
    pattern: Pattern,
    width: usize,
    height: usize,
    channels: usize,
    seed: u64,
) -> Result<RasterBuffer, RasterError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (width.max(1) as f64, height.max(1) as f64);
    let mut pixels = Vec::with_capacity(width * height * channels);
    for y in 0..height {
        for x in 0..width {
            let (u, v) = ((x as f64 + 0.5) / w, (y as f64 + 0.5) / h);
            for c in 0..channels {
                let p = match pattern {
                    Pattern::Gradient => code(255.0 * (u + v) / 2.0 + 20.0 * c as f64),
                    Pattern::Step => {
                        if x < width / 2 {
                            40 + 10 * c as u8
                        } else {
                            200 - 10 * c as u8
                        }
                    }
                    Pattern::Noise => rng.random(),
                    Pattern::Scene => {
                        let shade = 60.0 + 120.0 * u * (1.0 - 0.5 * v);
                        let (dx, dy) = (u - 0.6, v - 0.4);
                        let disc = if dx * dx + dy * dy < 0.04 { 70.0 } else { 0.0 };
                        let tint = if channels == 3 { [-25.0, -5.0, 30.0][c] } else { 0.0 };
                        code(shade + disc + tint + rng.random_range(-6.0..6.0))
                    }
                };
                pixels.push(p);
            }
        }
    }
    RasterBuffer::new(width, height, channels, pixels)
}
