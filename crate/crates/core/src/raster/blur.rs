//! Gaussian illumination estimate, computed on the logarithmic coordinates.

use rayon::prelude::*;
use thiserror::Error;

use crate::gray::GrayLevel;
use crate::image::{ImagePlane, Plane};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("gaussian sigma must be positive and finite, got {0}")]
pub struct InvalidSigma(pub f64);

/// Normalized weights for offsets `-r..=r`, `r = ceil(3 sigma)`.
fn kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil().max(1.0) as isize;
    let weights: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

#[inline]
fn clamped(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

/// Separable convolution with edge clamping, rows first.
fn blur_field(field: &[f64], width: usize, height: usize, weights: &[f64]) -> Vec<f64> {
    let radius = (weights.len() / 2) as isize;
    let mut horizontal = vec![0.0; field.len()];
    horizontal
        .par_chunks_mut(width)
        .zip(field.par_chunks(width))
        .for_each(|(out, row)| {
            for (x, o) in out.iter_mut().enumerate() {
                *o = weights
                    .iter()
                    .zip(-radius..=radius)
                    .map(|(w, k)| w * row[clamped(x as isize + k, width)])
                    .sum();
            }
        });
    let mut out = vec![0.0; field.len()];
    out.par_chunks_mut(width).enumerate().for_each(|(y, row)| {
        for (x, o) in row.iter_mut().enumerate() {
            *o = weights
                .iter()
                .zip(-radius..=radius)
                .map(|(w, k)| w * horizontal[clamped(y as isize + k, height) * width + x])
                .sum();
        }
    });
    out
}

fn blur_plane(p: &Plane<GrayLevel>, weights: &[f64]) -> Plane<GrayLevel> {
    let field: Vec<f64> = p.samples().iter().map(|v| v.phi().get()).collect();
    let blurred = blur_field(&field, p.width(), p.height(), weights);
    Plane::new(
        p.width(),
        p.height(),
        blurred.into_iter().map(GrayLevel::from_coord).collect(),
    )
    .expect("same shape as input")
}

/// Correction image for illumination removal: a Gaussian blur of the
/// logarithmic coordinates of each channel (radius `ceil(3 sigma)`, clamped
/// borders), mapped back into the gray interval.
pub fn gaussian_correction(f: &ImagePlane, sigma: f64) -> Result<ImagePlane, InvalidSigma> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(InvalidSigma(sigma));
    }
    let weights = kernel(sigma);
    Ok(match f {
        ImagePlane::Gray(p) => ImagePlane::Gray(blur_plane(p, &weights)),
        ImagePlane::Color(p) => {
            let [r, g, b] = [0, 1, 2].map(|c| blur_plane(&p.channel(c), &weights));
            ImagePlane::Color(Plane::from_channels(&r, &g, &b).expect("same shape as input"))
        }
    })
}
