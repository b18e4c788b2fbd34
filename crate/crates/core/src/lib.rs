//! Bounded logarithmic image algebra on the open interval (-1, 1): gray and
//! color vector spaces, images over them, contrast operators, a small
//! transform language and 8-bit raster I/O.

pub mod color;
pub mod contrast;
pub mod dsl;
pub mod gray;
pub mod image;
pub mod raster;
pub mod sum;
pub mod synth;

pub use color::ColorVec;
pub use gray::{GrayLevel, LogCoord};
pub use image::{ImagePlane, Kind, Pixel, Plane};
pub use raster::RasterBuffer;
