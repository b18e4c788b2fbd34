//! Gray and color images with the pointwise-lifted algebra and the discrete
//! L² scalar product.
//!
//! Every operation allocates a new image; inputs are never mutated. Pointwise
//! operations are split across rayon workers and are bit-identical for any
//! worker count. Reductions sum each row with compensated summation and then
//! combine the row totals in row order, so they are deterministic too.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;
use thiserror::Error;

use crate::color::ColorVec;
use crate::gray::GrayLevel;
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("image must be at least 1x1, got {width}x{height}")]
    Empty { width: usize, height: usize },
    #[error("{width}x{height} image needs {expected} samples, got {got}")]
    SampleCount {
        width: usize,
        height: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: {}x{} vs {}x{}", .left.0, .left.1, .right.0, .right.1)]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("kind mismatch: {left} image vs {right} image")]
    KindMismatch { left: Kind, right: Kind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Gray,
    Color,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gray => "gray",
            Kind::Color => "color",
        })
    }
}

/// Element type of an image: anything carrying the logarithmic vector-space
/// operations and a scalar product.
pub trait LogVector:
    Copy
    + PartialEq
    + Send
    + Sync
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    const ZERO: Self;
    const KIND: Kind;

    fn scale(self, lambda: f64) -> Self;
    fn dot(self, other: Self) -> f64;
    /// Pointwise `max(self, 0)` (per channel for colors).
    fn positive_part(self) -> Self;
    /// Pointwise `min(self, 0)` (per channel for colors).
    fn negative_part(self) -> Self;
}

impl LogVector for GrayLevel {
    const ZERO: Self = GrayLevel::ZERO;
    const KIND: Kind = Kind::Gray;

    #[inline]
    fn scale(self, lambda: f64) -> Self {
        GrayLevel::scale(self, lambda)
    }

    #[inline]
    fn dot(self, other: Self) -> f64 {
        GrayLevel::dot(self, other)
    }

    #[inline]
    fn positive_part(self) -> Self {
        if self.coord() > 0.0 {
            self
        } else {
            GrayLevel::ZERO
        }
    }

    #[inline]
    fn negative_part(self) -> Self {
        if self.coord() < 0.0 {
            self
        } else {
            GrayLevel::ZERO
        }
    }
}

impl LogVector for ColorVec {
    const ZERO: Self = ColorVec::ZERO;
    const KIND: Kind = Kind::Color;

    #[inline]
    fn scale(self, lambda: f64) -> Self {
        ColorVec::scale(self, lambda)
    }

    #[inline]
    fn dot(self, other: Self) -> f64 {
        ColorVec::dot(self, other)
    }

    #[inline]
    fn positive_part(self) -> Self {
        self.map(LogVector::positive_part)
    }

    #[inline]
    fn negative_part(self) -> Self {
        self.map(LogVector::negative_part)
    }
}

/// A single gray or color sample, e.g. a constant operand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pixel {
    Gray(GrayLevel),
    Color(ColorVec),
}

impl Pixel {
    pub fn kind(&self) -> Kind {
        match self {
            Pixel::Gray(_) => Kind::Gray,
            Pixel::Color(_) => Kind::Color,
        }
    }
}

impl From<GrayLevel> for Pixel {
    fn from(v: GrayLevel) -> Self {
        Pixel::Gray(v)
    }
}

impl From<ColorVec> for Pixel {
    fn from(v: ColorVec) -> Self {
        Pixel::Color(v)
    }
}

/// A row-major W×H raster of one sample type.
#[derive(Clone, PartialEq)]
pub struct Plane<T> {
    width: usize,
    height: usize,
    samples: Vec<T>,
}

impl<T> Plane<T> {
    pub fn new(width: usize, height: usize, samples: Vec<T>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::Empty { width, height });
        }
        let expected = width * height;
        if samples.len() != expected {
            return Err(ImageError::SampleCount {
                width,
                height,
                expected,
                got: samples.len(),
            });
        }
        Ok(Plane {
            width,
            height,
            samples,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn row(&self, y: usize) -> &[T] {
        &self.samples[y * self.width..(y + 1) * self.width]
    }

    fn check_dims<U>(&self, other: &Plane<U>) -> Result<(), ImageError> {
        if self.dims() == other.dims() {
            Ok(())
        } else {
            Err(ImageError::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            })
        }
    }
}

impl<T: Copy> Plane<T> {
    pub fn filled(width: usize, height: usize, value: T) -> Result<Self, ImageError> {
        Plane::new(width, height, vec![value; width * height])
    }

    /// Sample at column `x`, row `y`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) outside image");
        self.samples[y * self.width + x]
    }
}

impl<T: Copy + Send + Sync> Plane<T> {
    pub fn map<U: Send>(&self, f: impl Fn(T) -> U + Sync + Send) -> Plane<U> {
        Plane {
            width: self.width,
            height: self.height,
            samples: self.samples.par_iter().map(|&s| f(s)).collect(),
        }
    }

    pub fn zip_map<U: Copy + Send + Sync, V: Send>(
        &self,
        other: &Plane<U>,
        f: impl Fn(T, U) -> V + Sync + Send,
    ) -> Result<Plane<V>, ImageError> {
        self.check_dims(other)?;
        Ok(Plane {
            width: self.width,
            height: self.height,
            samples: self
                .samples
                .par_iter()
                .zip(other.samples.par_iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl<T: LogVector> Plane<T> {
    pub fn zero(width: usize, height: usize) -> Result<Self, ImageError> {
        Plane::filled(width, height, T::ZERO)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ImageError> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ImageError> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        assert!(lambda.is_finite(), "scalar must be finite, got {lambda}");
        self.map(|a| a.scale(lambda))
    }

    pub fn pos_part(&self) -> Self {
        self.map(LogVector::positive_part)
    }

    pub fn neg_part(&self) -> Self {
        self.map(LogVector::negative_part)
    }

    /// Discrete L² scalar product with unit pixel area.
    pub fn dot(&self, other: &Self) -> Result<f64, ImageError> {
        self.check_dims(other)?;
        let rows: Vec<f64> = self
            .samples
            .par_chunks(self.width)
            .zip(other.samples.par_chunks(other.width))
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.dot(*y))
                    .sum::<CompensatedSum>()
                    .total()
            })
            .collect();
        Ok(rows.into_iter().sum::<CompensatedSum>().total())
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).expect("same dimensions").sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|s| *s == T::ZERO)
    }
}

impl Plane<ColorVec> {
    /// One color channel (0 = r, 1 = g, 2 = b) as a gray plane.
    pub fn channel(&self, index: usize) -> Plane<GrayLevel> {
        assert!(index < 3, "color channel index {index} out of range");
        self.map(|c| c[index])
    }

    pub fn from_channels(
        r: &Plane<GrayLevel>,
        g: &Plane<GrayLevel>,
        b: &Plane<GrayLevel>,
    ) -> Result<Self, ImageError> {
        let rg = r.zip_map(g, |r, g| (r, g))?;
        rg.zip_map(b, |(r, g), b| ColorVec::from_levels(r, g, b))
    }
}

impl<T: fmt::Debug> fmt::Debug for Plane<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Plane")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("samples", &self.samples.len())
            .finish()
    }
}

/// A gray or color image on the pixel grid [0, W) × [0, H).
#[derive(Debug, Clone, PartialEq)]
pub enum ImagePlane {
    Gray(Plane<GrayLevel>),
    Color(Plane<ColorVec>),
}

macro_rules! dispatch {
    ($img:expr, $p:ident => $body:expr) => {
        match $img {
            ImagePlane::Gray($p) => ImagePlane::Gray($body),
            ImagePlane::Color($p) => ImagePlane::Color($body),
        }
    };
}

impl ImagePlane {
    pub fn gray(width: usize, height: usize, samples: Vec<GrayLevel>) -> Result<Self, ImageError> {
        Plane::new(width, height, samples).map(ImagePlane::Gray)
    }

    pub fn color(width: usize, height: usize, samples: Vec<ColorVec>) -> Result<Self, ImageError> {
        Plane::new(width, height, samples).map(ImagePlane::Color)
    }

    /// Image whose every sample is `value`.
    pub fn constant(width: usize, height: usize, value: impl Into<Pixel>) -> Result<Self, ImageError> {
        match value.into() {
            Pixel::Gray(v) => Plane::filled(width, height, v).map(ImagePlane::Gray),
            Pixel::Color(v) => Plane::filled(width, height, v).map(ImagePlane::Color),
        }
    }

    /// The null image of the given kind.
    pub fn zero(width: usize, height: usize, kind: Kind) -> Result<Self, ImageError> {
        match kind {
            Kind::Gray => Plane::zero(width, height).map(ImagePlane::Gray),
            Kind::Color => Plane::zero(width, height).map(ImagePlane::Color),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            ImagePlane::Gray(_) => Kind::Gray,
            ImagePlane::Color(_) => Kind::Color,
        }
    }

    pub fn width(&self) -> usize {
        match self {
            ImagePlane::Gray(p) => p.width(),
            ImagePlane::Color(p) => p.width(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ImagePlane::Gray(p) => p.height(),
            ImagePlane::Color(p) => p.height(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width(), self.height())
    }

    pub fn pixel(&self, x: usize, y: usize) -> Pixel {
        match self {
            ImagePlane::Gray(p) => Pixel::Gray(p.get(x, y)),
            ImagePlane::Color(p) => Pixel::Color(p.get(x, y)),
        }
    }

    pub fn as_gray(&self) -> Option<&Plane<GrayLevel>> {
        match self {
            ImagePlane::Gray(p) => Some(p),
            ImagePlane::Color(_) => None,
        }
    }

    pub fn as_color(&self) -> Option<&Plane<ColorVec>> {
        match self {
            ImagePlane::Color(p) => Some(p),
            ImagePlane::Gray(_) => None,
        }
    }

    fn pair<'a>(
        &'a self,
        other: &'a ImagePlane,
    ) -> Result<PairRef<'a>, ImageError> {
        if self.dims() != other.dims() {
            return Err(ImageError::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        match (self, other) {
            (ImagePlane::Gray(a), ImagePlane::Gray(b)) => Ok(PairRef::Gray(a, b)),
            (ImagePlane::Color(a), ImagePlane::Color(b)) => Ok(PairRef::Color(a, b)),
            _ => Err(ImageError::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            }),
        }
    }

    pub fn add(&self, other: &ImagePlane) -> Result<ImagePlane, ImageError> {
        match self.pair(other)? {
            PairRef::Gray(a, b) => a.add(b).map(ImagePlane::Gray),
            PairRef::Color(a, b) => a.add(b).map(ImagePlane::Color),
        }
    }

    pub fn sub(&self, other: &ImagePlane) -> Result<ImagePlane, ImageError> {
        match self.pair(other)? {
            PairRef::Gray(a, b) => a.sub(b).map(ImagePlane::Gray),
            PairRef::Color(a, b) => a.sub(b).map(ImagePlane::Color),
        }
    }

    pub fn neg(&self) -> ImagePlane {
        dispatch!(self, p => p.neg())
    }

    pub fn scale(&self, lambda: f64) -> ImagePlane {
        dispatch!(self, p => p.scale(lambda))
    }

    pub fn pos_part(&self) -> ImagePlane {
        dispatch!(self, p => p.pos_part())
    }

    pub fn neg_part(&self) -> ImagePlane {
        dispatch!(self, p => p.neg_part())
    }

    pub fn l2_dot(&self, other: &ImagePlane) -> Result<f64, ImageError> {
        match self.pair(other)? {
            PairRef::Gray(a, b) => a.dot(b),
            PairRef::Color(a, b) => a.dot(b),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        match self {
            ImagePlane::Gray(p) => p.norm(),
            ImagePlane::Color(p) => p.norm(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ImagePlane::Gray(p) => p.is_zero(),
            ImagePlane::Color(p) => p.is_zero(),
        }
    }
}

enum PairRef<'a> {
    Gray(&'a Plane<GrayLevel>, &'a Plane<GrayLevel>),
    Color(&'a Plane<ColorVec>, &'a Plane<ColorVec>),
}

pub fn img_add(a: &ImagePlane, b: &ImagePlane) -> Result<ImagePlane, ImageError> {
    a.add(b)
}

pub fn img_sub(a: &ImagePlane, b: &ImagePlane) -> Result<ImagePlane, ImageError> {
    a.sub(b)
}

pub fn img_neg(f: &ImagePlane) -> ImagePlane {
    f.neg()
}

pub fn img_scale(lambda: f64, f: &ImagePlane) -> ImagePlane {
    f.scale(lambda)
}

pub fn pos_part(f: &ImagePlane) -> ImagePlane {
    f.pos_part()
}

pub fn neg_part(f: &ImagePlane) -> ImagePlane {
    f.neg_part()
}

pub fn l2_dot(a: &ImagePlane, b: &ImagePlane) -> Result<f64, ImageError> {
    a.l2_dot(b)
}

pub fn l2_norm(f: &ImagePlane) -> f64 {
    f.l2_norm()
}

pub fn constant_image(
    width: usize,
    height: usize,
    value: impl Into<Pixel>,
) -> Result<ImagePlane, ImageError> {
    ImagePlane::constant(width, height, value)
}
