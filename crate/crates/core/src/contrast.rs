//! Relative, absolute and per-pixel contrast, and contour maps built from them.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gray::GrayLevel;
use crate::image::{ImagePlane, Plane};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelCoord {
    pub x: usize,
    pub y: usize,
}

impl PixelCoord {
    pub const fn new(x: usize, y: usize) -> Self {
        PixelCoord { x, y }
    }

    /// Euclidean distance in pixel units.
    pub fn distance(self, other: PixelCoord) -> f64 {
        let dx = self.x.abs_diff(other.x) as f64;
        let dy = self.y.abs_diff(other.y) as f64;
        dx.hypot(dy)
    }
}

impl fmt::Display for PixelCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Four,
    Eight,
}

impl Connectivity {
    fn offsets(self) -> &'static [(isize, isize)] {
        const FOUR: [(isize, isize); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];
        const EIGHT: [(isize, isize); 8] = [
            (-1, -1),
            (0, -1),
            (1, -1),
            (-1, 0),
            (1, 0),
            (-1, 1),
            (0, 1),
            (1, 1),
        ];
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }
}

impl TryFrom<u32> for Connectivity {
    type Error = ContrastError;

    fn try_from(n: u32) -> Result<Self, Self::Error> {
        match n {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            other => Err(ContrastError::BadConnectivity(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContrastMode {
    /// `C_R(p[i, j+1], p[i, j])`, last column zero.
    Horizontal,
    /// `C_R(p[i, j], p[i+1, j])`, last row zero.
    Vertical,
    /// Logarithmic mean of absolute contrasts to the neighbors.
    Pixel,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContrastError {
    #[error("contrast between a pixel and itself is undefined at {0}")]
    SamePixel(PixelCoord),
    #[error("pixel {pixel} outside {width}x{height} image")]
    OutOfBounds {
        pixel: PixelCoord,
        width: usize,
        height: usize,
    },
    #[error("pairwise contrast needs a gray image")]
    NotGray,
    #[error("{width}x{height} image too small for {mode:?} contrast")]
    DimensionTooSmall {
        mode: ContrastMode,
        width: usize,
        height: usize,
    },
    #[error("neighborhood connectivity must be 4 or 8, got {0}")]
    BadConnectivity(u32),
}

fn gray_plane(f: &ImagePlane) -> Result<&Plane<GrayLevel>, ContrastError> {
    f.as_gray().ok_or(ContrastError::NotGray)
}

fn check_inside(f: &Plane<GrayLevel>, p: PixelCoord) -> Result<(), ContrastError> {
    if p.x < f.width() && p.y < f.height() {
        Ok(())
    } else {
        Err(ContrastError::OutOfBounds {
            pixel: p,
            width: f.width(),
            height: f.height(),
        })
    }
}

/// `(1/d) <x> (f(p1) <-> f(p2))` with pixels assumed valid and distinct.
#[inline]
fn relative(f: &Plane<GrayLevel>, p1: PixelCoord, p2: PixelCoord) -> GrayLevel {
    let diff = f.get(p1.x, p1.y) - f.get(p2.x, p2.y);
    diff.scale(1.0 / p1.distance(p2))
}

fn checked_pair(
    f: &Plane<GrayLevel>,
    p1: PixelCoord,
    p2: PixelCoord,
) -> Result<(), ContrastError> {
    check_inside(f, p1)?;
    check_inside(f, p2)?;
    if p1 == p2 {
        return Err(ContrastError::SamePixel(p1));
    }
    Ok(())
}

/// Signed relative contrast between two distinct pixels of a gray image.
pub fn rel_contrast(
    f: &ImagePlane,
    p1: PixelCoord,
    p2: PixelCoord,
) -> Result<GrayLevel, ContrastError> {
    let plane = gray_plane(f)?;
    checked_pair(plane, p1, p2)?;
    Ok(relative(plane, p1, p2))
}

/// Magnitude of [`rel_contrast`].
pub fn abs_contrast(
    f: &ImagePlane,
    p1: PixelCoord,
    p2: PixelCoord,
) -> Result<GrayLevel, ContrastError> {
    rel_contrast(f, p1, p2).map(GrayLevel::abs)
}

fn neighbors(
    width: usize,
    height: usize,
    p: PixelCoord,
    connectivity: Connectivity,
) -> impl Iterator<Item = PixelCoord> {
    connectivity.offsets().iter().filter_map(move |&(dx, dy)| {
        let x = p.x.checked_add_signed(dx)?;
        let y = p.y.checked_add_signed(dy)?;
        (x < width && y < height).then_some(PixelCoord { x, y })
    })
}

fn pixel_mean(f: &Plane<GrayLevel>, p: PixelCoord, connectivity: Connectivity) -> GrayLevel {
    let (sum, n) = neighbors(f.width(), f.height(), p, connectivity).fold(
        (GrayLevel::ZERO, 0usize),
        |(sum, n), q| (sum + relative(f, p, q).abs(), n + 1),
    );
    debug_assert!(n > 0);
    sum.scale(1.0 / n as f64)
}

/// Logarithmic mean of the absolute contrasts between `p` and its in-image
/// neighbors. Border pixels average over fewer neighbors.
pub fn pixel_contrast(
    f: &ImagePlane,
    p: PixelCoord,
    connectivity: Connectivity,
) -> Result<GrayLevel, ContrastError> {
    let plane = gray_plane(f)?;
    check_inside(plane, p)?;
    if plane.len() < 2 {
        return Err(ContrastError::DimensionTooSmall {
            mode: ContrastMode::Pixel,
            width: plane.width(),
            height: plane.height(),
        });
    }
    Ok(pixel_mean(plane, p, connectivity))
}

fn gray_map(
    f: &Plane<GrayLevel>,
    mode: ContrastMode,
    connectivity: Connectivity,
) -> Result<Plane<GrayLevel>, ContrastError> {
    let (w, h) = f.dims();
    let too_small = match mode {
        ContrastMode::Horizontal => w < 2,
        ContrastMode::Vertical => h < 2,
        ContrastMode::Pixel => w * h < 2,
    };
    if too_small {
        return Err(ContrastError::DimensionTooSmall {
            mode,
            width: w,
            height: h,
        });
    }
    let samples: Vec<GrayLevel> = (0..w * h)
        .into_par_iter()
        .map(|i| {
            let p = PixelCoord::new(i % w, i / w);
            match mode {
                ContrastMode::Horizontal if p.x + 1 < w => {
                    relative(f, PixelCoord::new(p.x + 1, p.y), p)
                }
                ContrastMode::Vertical if p.y + 1 < h => {
                    relative(f, p, PixelCoord::new(p.x, p.y + 1))
                }
                ContrastMode::Pixel => pixel_mean(f, p, connectivity),
                _ => GrayLevel::ZERO,
            }
        })
        .collect();
    Ok(Plane::new(w, h, samples).expect("same dimensions as input"))
}

/// Contour map of a gray or color image.
///
/// Color images are processed per channel and merged by taking, at each
/// pixel, the largest channel magnitude, so color maps are never negative.
pub fn contrast_map(
    f: &ImagePlane,
    mode: ContrastMode,
    connectivity: Connectivity,
) -> Result<ImagePlane, ContrastError> {
    match f {
        ImagePlane::Gray(p) => gray_map(p, mode, connectivity).map(ImagePlane::Gray),
        ImagePlane::Color(p) => {
            let maps = [0, 1, 2]
                .map(|c| gray_map(&p.channel(c), mode, connectivity));
            let [r, g, b] = maps;
            let (r, g, b) = (r?, g?, b?);
            let rg = r
                .zip_map(&g, max_magnitude)
                .expect("channel maps share dimensions");
            let merged = rg
                .zip_map(&b, max_magnitude)
                .expect("channel maps share dimensions");
            Ok(ImagePlane::Gray(merged))
        }
    }
}

fn max_magnitude(a: GrayLevel, b: GrayLevel) -> GrayLevel {
    let (a, b) = (a.abs(), b.abs());
    if b.norm() > a.norm() {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::ColorVec;
    use crate::image::Kind;

    // tanh(arctanh(0.5) / 2), 40-digit reference.
    const HALF_OF_HALF: f64 = 0.267_949_192_431_122_706_472_553_7;

    fn g(v: f64) -> GrayLevel {
        GrayLevel::new(v).unwrap()
    }

    fn image(w: usize, h: usize, values: &[f64]) -> ImagePlane {
        ImagePlane::gray(w, h, values.iter().map(|&v| g(v)).collect()).unwrap()
    }

    fn pc(x: usize, y: usize) -> PixelCoord {
        PixelCoord::new(x, y)
    }

    fn step_image() -> ImagePlane {
        // top two rows 0.8, bottom two rows 0.5
        let mut v = vec![0.8; 8];
        v.extend([0.5; 8]);
        image(4, 4, &v)
    }

    #[test]
    fn rel_contrast_examples() {
        let flat = image(3, 3, &[0.4; 9]);
        assert_eq!(rel_contrast(&flat, pc(0, 0), pc(2, 1)).unwrap(), GrayLevel::ZERO);
        let f = image(3, 1, &[0.8, 0.5, 0.5]);
        let adj = rel_contrast(&f, pc(0, 0), pc(1, 0)).unwrap();
        assert!((adj.value() - 0.5).abs() <= 1e-15);
        let far = rel_contrast(&f, pc(0, 0), pc(2, 0)).unwrap();
        assert!((far.value() - HALF_OF_HALF).abs() <= 1e-15);
    }

    #[test]
    fn rel_contrast_errors() {
        let f = image(2, 2, &[0.1, 0.2, 0.3, 0.4]);
        assert_eq!(
            rel_contrast(&f, pc(1, 1), pc(1, 1)),
            Err(ContrastError::SamePixel(pc(1, 1)))
        );
        assert!(matches!(
            rel_contrast(&f, pc(0, 0), pc(2, 0)),
            Err(ContrastError::OutOfBounds { .. })
        ));
        let color = ImagePlane::zero(2, 2, Kind::Color).unwrap();
        assert_eq!(rel_contrast(&color, pc(0, 0), pc(1, 0)), Err(ContrastError::NotGray));
    }

    #[test]
    fn abs_contrast_examples() {
        let flat = image(2, 1, &[-0.2, -0.2]);
        assert_eq!(abs_contrast(&flat, pc(0, 0), pc(1, 0)).unwrap(), GrayLevel::ZERO);
        let f = image(2, 1, &[0.5, 0.8]);
        let c = abs_contrast(&f, pc(0, 0), pc(1, 0)).unwrap();
        assert!((c.value() - 0.5).abs() <= 1e-15);
        assert_eq!(c, abs_contrast(&f, pc(1, 0), pc(0, 0)).unwrap());
    }

    #[test]
    fn pixel_contrast_examples() {
        let flat = image(3, 3, &[0.7; 9]);
        for y in 0..3 {
            for x in 0..3 {
                let c = pixel_contrast(&flat, pc(x, y), Connectivity::Four).unwrap();
                assert_eq!(c, GrayLevel::ZERO);
            }
        }
        // corner of a 2x1 image has a single neighbor
        let pair = image(2, 1, &[0.8, 0.5]);
        let single = pixel_contrast(&pair, pc(0, 0), Connectivity::Four).unwrap();
        assert!((single.value() - 0.5).abs() <= 1e-15);
        // middle of 3x1: two neighbors, both with contrast 0.5
        let row = image(3, 1, &[0.5, 0.8, 0.5]);
        let mid = pixel_contrast(&row, pc(1, 0), Connectivity::Four).unwrap();
        assert!((mid.value() - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn pixel_contrast_needs_two_pixels() {
        let one = image(1, 1, &[0.0]);
        assert!(matches!(
            pixel_contrast(&one, pc(0, 0), Connectivity::Eight),
            Err(ContrastError::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn eight_connectivity_uses_diagonal_distance() {
        let f = image(2, 2, &[0.8, 0.8, 0.8, 0.5]);
        let c = pixel_contrast(&f, pc(0, 0), Connectivity::Eight).unwrap();
        let diag = g(0.8) - g(0.5);
        let expected = diag.scale(std::f64::consts::FRAC_1_SQRT_2).scale(1.0 / 3.0);
        assert!((c.phi().get() - expected.phi().get()).abs() <= 1e-15);
        assert_eq!(Connectivity::try_from(8).unwrap(), Connectivity::Eight);
        assert_eq!(Connectivity::try_from(6), Err(ContrastError::BadConnectivity(6)));
    }

    #[test]
    fn constant_maps_are_null() {
        let flat = image(4, 3, &[0.25; 12]);
        for mode in [ContrastMode::Horizontal, ContrastMode::Vertical, ContrastMode::Pixel] {
            assert!(contrast_map(&flat, mode, Connectivity::Four).unwrap().is_zero());
        }
    }

    #[test]
    fn step_image_maps() {
        let f = step_image();
        let h = contrast_map(&f, ContrastMode::Horizontal, Connectivity::Four).unwrap();
        assert!(h.is_zero());
        let v = contrast_map(&f, ContrastMode::Vertical, Connectivity::Four).unwrap();
        let v = v.as_gray().unwrap();
        for y in 0..4 {
            for x in 0..4 {
                let got = v.get(x, y).value();
                if y == 1 {
                    assert!((got - 0.5).abs() <= 1e-15);
                } else {
                    assert_eq!(got, 0.0);
                }
            }
        }
    }

    #[test]
    fn directional_maps_need_extent() {
        let column = image(1, 3, &[0.1, 0.2, 0.3]);
        assert!(matches!(
            contrast_map(&column, ContrastMode::Horizontal, Connectivity::Four),
            Err(ContrastError::DimensionTooSmall { .. })
        ));
        assert!(contrast_map(&column, ContrastMode::Vertical, Connectivity::Four).is_ok());
    }

    #[test]
    fn color_map_takes_largest_channel_magnitude() {
        let a = ColorVec::new(0.8, 0.1, -0.3).unwrap();
        let b = ColorVec::new(0.5, 0.1, 0.6).unwrap();
        let f = ImagePlane::color(2, 1, vec![a, b]).unwrap();
        let m = contrast_map(&f, ContrastMode::Horizontal, Connectivity::Four).unwrap();
        let m = m.as_gray().unwrap();
        let expected = (b.b - a.b).abs();
        assert_eq!(m.get(0, 0), expected);
        assert_eq!(m.get(1, 0), GrayLevel::ZERO);
    }
}
