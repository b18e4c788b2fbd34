//! Componentwise extension of the gray algebra to the color cube (-1, 1)³.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::gray::{GrayError, GrayLevel};

/// An (r, g, b) triple of gray levels.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ColorVec {
    pub r: GrayLevel,
    pub g: GrayLevel,
    pub b: GrayLevel,
}

impl ColorVec {
    pub const ZERO: ColorVec = ColorVec {
        r: GrayLevel::ZERO,
        g: GrayLevel::ZERO,
        b: GrayLevel::ZERO,
    };

    pub const fn from_levels(r: GrayLevel, g: GrayLevel, b: GrayLevel) -> Self {
        ColorVec { r, g, b }
    }

    pub fn new(r: f64, g: f64, b: f64) -> Result<Self, GrayError> {
        Ok(ColorVec {
            r: GrayLevel::new(r)?,
            g: GrayLevel::new(g)?,
            b: GrayLevel::new(b)?,
        })
    }

    /// Lifts a gray level onto the achromatic axis `(c, c, c)`.
    pub const fn broadcast(c: GrayLevel) -> Self {
        ColorVec { r: c, g: c, b: c }
    }

    pub fn values(self) -> [f64; 3] {
        [self.r.value(), self.g.value(), self.b.value()]
    }

    pub fn channels(self) -> [GrayLevel; 3] {
        [self.r, self.g, self.b]
    }

    #[inline]
    pub fn map(self, f: impl Fn(GrayLevel) -> GrayLevel) -> Self {
        ColorVec {
            r: f(self.r),
            g: f(self.g),
            b: f(self.b),
        }
    }

    #[inline]
    pub fn zip_with(self, other: Self, f: impl Fn(GrayLevel, GrayLevel) -> GrayLevel) -> Self {
        ColorVec {
            r: f(self.r, other.r),
            g: f(self.g, other.g),
            b: f(self.b, other.b),
        }
    }

    #[inline]
    pub fn scale(self, lambda: f64) -> Self {
        self.map(|c| c.scale(lambda))
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.r.dot(other.r) + self.g.dot(other.g) + self.b.dot(other.b)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Index<usize> for ColorVec {
    type Output = GrayLevel;

    fn index(&self, i: usize) -> &GrayLevel {
        match i {
            0 => &self.r,
            1 => &self.g,
            2 => &self.b,
            _ => panic!("color channel index {i} out of range"),
        }
    }
}

impl fmt::Debug for ColorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, g, b] = self.values();
        write!(f, "ColorVec({r}, {g}, {b})")
    }
}

impl fmt::Display for ColorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, g, b] = self.values();
        write!(f, "({r}, {g}, {b})")
    }
}

impl Add for ColorVec {
    type Output = ColorVec;

    #[inline]
    fn add(self, rhs: ColorVec) -> ColorVec {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for ColorVec {
    type Output = ColorVec;

    #[inline]
    fn sub(self, rhs: ColorVec) -> ColorVec {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for ColorVec {
    type Output = ColorVec;

    #[inline]
    fn neg(self) -> ColorVec {
        self.map(|c| -c)
    }
}

impl Mul<ColorVec> for f64 {
    type Output = ColorVec;

    #[inline]
    fn mul(self, rhs: ColorVec) -> ColorVec {
        rhs.scale(self)
    }
}

pub fn cadd(a: ColorVec, b: ColorVec) -> ColorVec {
    a + b
}

pub fn csub(a: ColorVec, b: ColorVec) -> ColorVec {
    a - b
}

pub fn cneg(v: ColorVec) -> ColorVec {
    -v
}

pub fn cscale(lambda: f64, v: ColorVec) -> ColorVec {
    v.scale(lambda)
}

pub fn cdot(a: ColorVec, b: ColorVec) -> f64 {
    a.dot(b)
}

pub fn cnorm(v: ColorVec) -> f64 {
    v.norm()
}

pub fn broadcast_gray(c: GrayLevel) -> ColorVec {
    ColorVec::broadcast(c)
}
