//! The real vector space of gray levels on the open interval (-1, 1).
//!
//! A [`GrayLevel`] is stored by its logarithmic coordinate `arctanh(v)`.
//! Addition, subtraction and real scaling are then ordinary real arithmetic
//! on that coordinate, which keeps the isomorphism identities exact to
//! rounding even for values a few ulps away from ±1, where the value itself
//! can no longer resolve them. The value is recovered with `tanh` and a
//! saturation clamp whenever it is read.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest representable value strictly below 1.
pub const MAX_VALUE: f64 = 1.0 - f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GrayError {
    #[error("gray level {0} is outside the open interval (-1, 1)")]
    OutOfRange(f64),
    #[error("logarithmic coordinate must be finite, got {0}")]
    NonFinite(f64),
}

/// `arctanh(v)` evaluated as `(ln(1+v) - ln(1-v)) / 2` with `ln_1p` on both terms.
///
/// Exactly odd: `phi(-v) == -phi(v)` for every `v`.
#[inline]
pub fn phi(v: f64) -> f64 {
    0.5 * (v.ln_1p() - (-v).ln_1p())
}

/// Clamps a value into the open interval, mapping anything that rounded to ±1
/// onto the adjacent representable value.
#[inline]
pub fn saturate(v: f64) -> f64 {
    v.clamp(-MAX_VALUE, MAX_VALUE)
}

/// A point of the real line, the isomorphic image of a gray level.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct LogCoord(f64);

impl LogCoord {
    pub const ZERO: LogCoord = LogCoord(0.0);

    pub fn new(x: f64) -> Result<Self, GrayError> {
        if x.is_finite() {
            Ok(LogCoord(x))
        } else {
            Err(GrayError::NonFinite(x))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<LogCoord> for f64 {
    fn from(c: LogCoord) -> f64 {
        c.0
    }
}

/// A gray level, an element of E = (-1, 1).
///
/// `0` is the neutral element (mid-gray); values tend to -1 (black) and
/// +1 (white) without reaching them.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct GrayLevel {
    coord: f64,
}

impl GrayLevel {
    pub const ZERO: GrayLevel = GrayLevel { coord: 0.0 };

    /// Builds a gray level from its value, rejecting NaN and anything outside (-1, 1).
    pub fn new(value: f64) -> Result<Self, GrayError> {
        if value > -1.0 && value < 1.0 {
            Ok(Self::from_coord(phi(value)))
        } else {
            Err(GrayError::OutOfRange(value))
        }
    }

    /// Inverse isomorphism: the gray level whose coordinate is `x`.
    #[inline]
    pub fn from_phi(x: LogCoord) -> Self {
        Self::from_coord(x.0)
    }

    /// Keeps the coordinate finite and normalizes `-0.0` to `0.0`.
    #[inline]
    pub(crate) fn from_coord(x: f64) -> Self {
        debug_assert!(!x.is_nan());
        GrayLevel {
            coord: x.clamp(-f64::MAX, f64::MAX) + 0.0,
        }
    }

    /// The gray value, always strictly inside (-1, 1).
    #[inline]
    pub fn value(self) -> f64 {
        saturate(self.coord.tanh())
    }

    #[inline]
    pub fn phi(self) -> LogCoord {
        LogCoord(self.coord)
    }

    #[inline]
    pub(crate) fn coord(self) -> f64 {
        self.coord
    }

    /// Real scalar multiplication `lambda <x> self`.
    ///
    /// # Panics
    ///
    /// Panics if `lambda` is not finite.
    #[inline]
    pub fn scale(self, lambda: f64) -> Self {
        assert!(lambda.is_finite(), "scalar must be finite, got {lambda}");
        Self::from_coord(lambda * self.coord)
    }

    /// Scalar product `phi(self) * phi(other)`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.coord * other.coord
    }

    /// `|phi(self)|`.
    #[inline]
    pub fn norm(self) -> f64 {
        self.coord.abs()
    }

    #[inline]
    pub fn abs(self) -> Self {
        GrayLevel {
            coord: self.coord.abs(),
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.coord == 0.0
    }
}

impl TryFrom<f64> for GrayLevel {
    type Error = GrayError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        GrayLevel::new(value)
    }
}

impl fmt::Debug for GrayLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrayLevel({})", self.value())
    }
}

impl fmt::Display for GrayLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value(), f)
    }
}

impl Add for GrayLevel {
    type Output = GrayLevel;

    #[inline]
    fn add(self, rhs: GrayLevel) -> GrayLevel {
        GrayLevel::from_coord(self.coord + rhs.coord)
    }
}

impl Sub for GrayLevel {
    type Output = GrayLevel;

    #[inline]
    fn sub(self, rhs: GrayLevel) -> GrayLevel {
        GrayLevel::from_coord(self.coord - rhs.coord)
    }
}

impl Neg for GrayLevel {
    type Output = GrayLevel;

    #[inline]
    fn neg(self) -> GrayLevel {
        GrayLevel::from_coord(-self.coord)
    }
}

impl Mul<GrayLevel> for f64 {
    type Output = GrayLevel;

    #[inline]
    fn mul(self, rhs: GrayLevel) -> GrayLevel {
        rhs.scale(self)
    }
}

/// Inverse of [`phi`] on the model: `tanh(x)` clamped into the open interval.
pub fn phi_inv(x: LogCoord) -> GrayLevel {
    GrayLevel::from_phi(x)
}

pub fn gadd(a: GrayLevel, b: GrayLevel) -> GrayLevel {
    a + b
}

pub fn gsub(a: GrayLevel, b: GrayLevel) -> GrayLevel {
    a - b
}

pub fn gneg(v: GrayLevel) -> GrayLevel {
    -v
}

pub fn gscale(lambda: f64, v: GrayLevel) -> GrayLevel {
    v.scale(lambda)
}

pub fn gdot(a: GrayLevel, b: GrayLevel) -> f64 {
    a.dot(b)
}

pub fn gnorm(v: GrayLevel) -> f64 {
    v.norm()
}
