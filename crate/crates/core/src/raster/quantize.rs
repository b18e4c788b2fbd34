//! Mid-riser quantizer between 8-bit codes and gray levels.
//!
//! Code `p` maps to `(2p + 1 - L) / L` with `L = 256`, the centre of the
//! p-th of L equal cells of (-1, 1). Both ends stay strictly inside the
//! interval and the map is odd around code 127.5.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::RasterBuffer;
use crate::color::ColorVec;
use crate::gray::GrayLevel;
use crate::image::{ImagePlane, Plane};

pub const LEVELS: usize = 256;

fn table() -> &'static [GrayLevel; LEVELS] {
    static TABLE: OnceLock<[GrayLevel; LEVELS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|p| {
            let l = LEVELS as f64;
            GrayLevel::new((2.0 * p as f64 + 1.0 - l) / l).expect("mid-riser codes are interior")
        })
    })
}

/// Gray level of an 8-bit code.
#[inline]
pub fn dequantize(p: u8) -> GrayLevel {
    table()[p as usize]
}

/// 8-bit code of a value: `round((v·L + L − 1) / 2)`, halves away from zero,
/// clamped to [0, 255].
#[inline]
pub fn quantize(v: f64) -> u8 {
    let l = LEVELS as f64;
    ((v * l + l - 1.0) / 2.0).round().clamp(0.0, 255.0) as u8
}

pub fn to_model(raster: &RasterBuffer) -> ImagePlane {
    let (w, h) = (raster.width(), raster.height());
    let px = raster.pixels();
    if raster.channels() == 1 {
        let samples = px.par_iter().map(|&p| dequantize(p)).collect();
        ImagePlane::Gray(Plane::new(w, h, samples).expect("raster shape is valid"))
    } else {
        let samples = px
            .par_chunks_exact(3)
            .map(|c| ColorVec::from_levels(dequantize(c[0]), dequantize(c[1]), dequantize(c[2])))
            .collect();
        ImagePlane::Color(Plane::new(w, h, samples).expect("raster shape is valid"))
    }
}

fn encode_with(f: &ImagePlane, code: impl Fn(GrayLevel) -> u8 + Sync + Send) -> RasterBuffer {
    let (w, h) = f.dims();
    match f {
        ImagePlane::Gray(p) => {
            let px = p.samples().par_iter().map(|&v| code(v)).collect();
            RasterBuffer::new(w, h, 1, px).expect("image shape is valid")
        }
        ImagePlane::Color(p) => {
            let px = p
                .samples()
                .par_iter()
                .flat_map_iter(|c| c.channels().map(&code))
                .collect();
            RasterBuffer::new(w, h, 3, px).expect("image shape is valid")
        }
    }
}

pub fn from_model(f: &ImagePlane) -> RasterBuffer {
    encode_with(f, |v| quantize(v.value()))
}

/// How contrast maps are turned into pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DisplayMode {
    /// |v| in [0, 1) spread over the full code range; zero contrast is black.
    #[default]
    Magnitude,
    /// v in (-1, 1) through the ordinary quantizer; zero contrast is mid-gray.
    Signed,
}

pub fn render_contrast(map: &ImagePlane, mode: DisplayMode) -> RasterBuffer {
    match mode {
        DisplayMode::Signed => from_model(map),
        DisplayMode::Magnitude => encode_with(map, |v| quantize(2.0 * v.value().abs() - 1.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dequantize_examples() {
        let close = |p: u8, v: f64| (dequantize(p).value() - v).abs() <= 2.0 * f64::EPSILON;
        assert!(close(128, 0.00390625));
        assert!(close(0, -0.99609375));
        assert!(close(255, 0.99609375));
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize(1.0 / 256.0), 128);
        assert_eq!(quantize(0.0), 128);
        assert_eq!(quantize(0.99999), 255);
        assert_eq!(quantize(-0.99999), 0);
    }

    #[test]
    fn every_code_round_trips() {
        for p in 0..=255u8 {
            assert_eq!(quantize(dequantize(p).value()), p);
            assert_eq!(dequantize(p), -dequantize(255 - p));
            assert!(dequantize(p).value().abs() < 1.0);
        }
    }

    #[test]
    fn raster_round_trip() {
        let gray = RasterBuffer::new(16, 16, 1, (0..=255).collect()).unwrap();
        assert_eq!(from_model(&to_model(&gray)), gray);
        let px: Vec<u8> = (0..=255u8).flat_map(|p| [p, 255 - p, p.wrapping_mul(37)]).collect();
        let color = RasterBuffer::new(32, 8, 3, px).unwrap();
        let model = to_model(&color);
        assert!(model.as_color().is_some());
        assert_eq!(from_model(&model), color);
    }

    #[test]
    fn contrast_rendering() {
        let map = ImagePlane::gray(
            3,
            1,
            vec![GrayLevel::ZERO, GrayLevel::new(0.6).unwrap(), GrayLevel::new(-0.6).unwrap()],
        )
        .unwrap();
        let mag = render_contrast(&map, DisplayMode::Magnitude);
        assert_eq!(mag.pixels(), &[0, 153, 153]);
        let signed = render_contrast(&map, DisplayMode::Signed);
        assert_eq!(signed.pixels(), &[128, 204, 51]);
    }
}
