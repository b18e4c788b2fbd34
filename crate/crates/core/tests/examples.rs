//! Worked examples through the public API, checked against references that
//! are computed here from the defining formulas or from 40-digit constants.

use blip_core::color::{cadd, cneg, cnorm, ColorVec};
use blip_core::contrast::{
    abs_contrast, contrast_map, pixel_contrast, rel_contrast, Connectivity, ContrastMode, PixelCoord,
};
use blip_core::dsl::{self, Env};
use blip_core::gray::{gadd, gdot, gneg, gnorm, gscale, gsub, phi, phi_inv, GrayLevel, LogCoord, MAX_VALUE};
use blip_core::image::{l2_dot, l2_norm, ImagePlane};
use blip_core::raster::{
    decode_pnm, encode_pnm, from_model, gaussian_correction, quantize, to_model, PnmError, RasterBuffer,
};

const ATANH_HALF: f64 = 0.549_306_144_334_054_845_697_622_6;
const ATANH_HALF_SQ: f64 = 0.301_737_240_203_145_494_460_944_8;
const TANH_HALF_ATANH_HALF: f64 = 0.267_949_192_431_122_706_472_553_7;

fn g(v: f64) -> GrayLevel {
    GrayLevel::new(v).unwrap()
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn rational_add(a: f64, b: f64) -> f64 {
    (a + b) / (1.0 + a * b)
}

fn power_scale(lambda: f64, v: f64) -> f64 {
    let (p, m) = ((1.0 + v).powf(lambda), (1.0 - v).powf(lambda));
    (p - m) / (p + m)
}

#[test]
fn scalar_examples() {
    assert_eq!(phi(0.0), 0.0);
    assert!(near(phi(0.5), ATANH_HALF, 2.5e-16));
    assert_eq!(phi(-0.5), -phi(0.5));
    assert!(near(phi_inv(LogCoord::new(ATANH_HALF).unwrap()).value(), 0.5, f64::EPSILON));
    assert_eq!(phi_inv(LogCoord::new(1000.0).unwrap()).value(), MAX_VALUE);

    assert!(near(gadd(g(0.5), g(0.5)).value(), rational_add(0.5, 0.5), 1e-15));
    assert!(near(gadd(g(0.5), g(0.5)).value(), 0.8, 1e-15));
    assert!(gadd(g(0.37), g(-0.37)).is_zero());
    assert!(near(gsub(g(0.8), g(0.5)).value(), 0.5, 1e-15));
    assert!(near(gsub(g(0.0), g(0.3)).value(), -0.3, 1e-16));
    assert_eq!(gneg(gneg(g(0.7))), g(0.7));
    assert!(near(gscale(2.0, g(0.5)).value(), power_scale(2.0, 0.5), 1e-15));
    assert!(near(gscale(0.5, g(0.8)).value(), power_scale(0.5, 0.8), 1e-15));
    assert!(near(gscale(0.5, g(0.8)).value(), 0.5, 1e-15));
    assert!(gscale(0.0, g(0.9)).is_zero());
    assert!(near(gdot(g(0.5), g(0.5)), ATANH_HALF_SQ, 5e-16));
    assert!(near(gdot(g(0.5), g(-0.5)), -ATANH_HALF_SQ, 5e-16));
    assert!(near(gnorm(g(-0.5)), ATANH_HALF, 2.5e-16));
}

#[test]
fn color_examples() {
    let v = ColorVec::new(0.449, -0.241, -0.164).unwrap();
    assert!(cadd(v, cneg(v)) == ColorVec::ZERO);
    let half = ColorVec::new(0.5, 0.5, 0.5).unwrap();
    let sum = cadd(half, half).values();
    assert!(sum.iter().all(|&c| near(c, 0.8, 1e-15)));
    assert!(near(cnorm(half), 3f64.sqrt() * ATANH_HALF, 5e-16));
}

#[test]
fn image_reductions() {
    let f = ImagePlane::constant(2, 2, g(0.5)).unwrap();
    assert!(near(l2_dot(&f, &f).unwrap(), 4.0 * ATANH_HALF_SQ, 1e-15));
    assert!(near(l2_norm(&f), 2.0 * ATANH_HALF, 1e-15));
    let mixed = ImagePlane::gray(2, 1, vec![g(0.5), g(-0.5)]).unwrap();
    assert!(near(l2_norm(&mixed), 2f64.sqrt() * ATANH_HALF, 5e-16));
}

fn column(values: &[f64]) -> ImagePlane {
    ImagePlane::gray(1, values.len(), values.iter().map(|&v| g(v)).collect()).unwrap()
}

#[test]
fn contrast_examples() {
    let f = ImagePlane::gray(3, 1, vec![g(0.8), g(0.5), g(0.5)]).unwrap();
    let p = |x| PixelCoord::new(x, 0);
    assert!(near(rel_contrast(&f, p(0), p(1)).unwrap().value(), 0.5, 1e-15));
    let f2 = ImagePlane::gray(3, 1, vec![g(0.8), g(0.0), g(0.5)]).unwrap();
    assert!(near(rel_contrast(&f2, p(0), p(2)).unwrap().value(), TANH_HALF_ATANH_HALF, 1e-15));
    assert!(near(rel_contrast(&f2, p(0), p(2)).unwrap().value(), power_scale(0.5, 0.5), 1e-15));
    assert!(near(abs_contrast(&f, p(1), p(0)).unwrap().value(), 0.5, 1e-15));

    // Centre pixel 0.8 with both horizontal neighbours at 0.5.
    let f3 = ImagePlane::gray(3, 1, vec![g(0.5), g(0.8), g(0.5)]).unwrap();
    let c = pixel_contrast(&f3, p(1), Connectivity::Four).unwrap();
    assert!(near(c.value(), 0.5, 1e-15));
    let edge = pixel_contrast(&f3, p(0), Connectivity::Four).unwrap();
    assert!(near(edge.value(), 0.5, 1e-15));

    let step = ImagePlane::gray(
        2,
        4,
        [0.8, 0.8, 0.8, 0.8, 0.5, 0.5, 0.5, 0.5].iter().map(|&v| g(v)).collect(),
    )
    .unwrap();
    let h = contrast_map(&step, ContrastMode::Horizontal, Connectivity::Four).unwrap();
    assert!(h.is_zero());
    let v = contrast_map(&step, ContrastMode::Vertical, Connectivity::Four).unwrap();
    let vals: Vec<f64> = v.as_gray().unwrap().samples().iter().map(|s| s.value()).collect();
    for (i, val) in vals.iter().enumerate() {
        let want = if i / 2 == 1 { 0.5 } else { 0.0 };
        assert!(near(*val, want, 1e-15), "{i}: {val}");
    }
    assert!(contrast_map(&column(&[0.3; 5]), ContrastMode::Pixel, Connectivity::Eight)
        .unwrap()
        .is_zero());
}

#[test]
fn codec_examples() {
    let r = decode_pnm(b"P5\n1 1\n255\n\x80").unwrap();
    assert_eq!((r.width(), r.height(), r.channels(), r.pixels()), (1, 1, 1, &[128u8][..]));
    assert_eq!(encode_pnm(&r), b"P5\n1 1\n255\n\x80");
    let c = decode_pnm(b"P6\n1 1\n255\n\xff\x00\x00").unwrap();
    assert_eq!(c.pixels(), &[255, 0, 0]);
    assert!(matches!(decode_pnm(b"P5\n1 1\n65535\n\x00\x00"), Err(PnmError::UnsupportedFormat(_))));
    let two = RasterBuffer::new(2, 1, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(&encode_pnm(&two)[11..], &[1, 2, 3, 4, 5, 6]);
    assert_eq!(quantize(0.0), 128);
}

#[test]
fn quantizer_is_exact_on_every_color() {
    for r in 0..=255u8 {
        let px: Vec<u8> = (0..=255u8)
            .flat_map(|g| (0..=255u8).flat_map(move |b| [r, g, b]))
            .collect();
        let raster = RasterBuffer::new(256, 256, 3, px).unwrap();
        assert_eq!(from_model(&to_model(&raster)), raster, "red {r}");
    }
}

#[test]
fn correction_image_by_hand() {
    let w: Vec<f64> = (-3..=3).map(|k: i32| (-(k * k) as f64 / 2.0).exp()).collect();
    let total: f64 = w.iter().sum();
    let field = [1.0, 0.0, 0.0];
    let at = |i: i64| field[i.clamp(0, 2) as usize];
    let blur = |x: i64| -> f64 { (-3..=3).map(|k| w[(k + 3) as usize] / total * at(x + k)).sum() };
    let f = ImagePlane::gray(3, 1, field.iter().map(|&x| GrayLevel::from_phi(LogCoord::new(x).unwrap())).collect())
        .unwrap();
    let out = gaussian_correction(&f, 1.0).unwrap();
    let got: Vec<f64> = out.as_gray().unwrap().samples().iter().map(|s| s.phi().get()).collect();
    for (x, v) in got.iter().enumerate() {
        assert!(near(*v, blur(x as i64), 1e-15));
    }
    let constant = ImagePlane::constant(5, 4, g(-0.4)).unwrap();
    let blurred = gaussian_correction(&constant, 1.3).unwrap();
    assert!(blurred.as_gray().unwrap().samples().iter().all(|s| near(s.value(), -0.4, 1e-15)));
}

#[test]
fn transform_examples() {
    let f = to_model(&RasterBuffer::new(3, 2, 3, (0..18).map(|i| (i * 14) as u8).collect()).unwrap());
    let v = ColorVec::new(0.449, -0.241, -0.164).unwrap();
    let env = Env::new(f.clone()).with("v", v).unwrap();
    assert_eq!(dsl::run("f", &env).unwrap(), f);
    let out = dsl::run("2.5 <x> (f <-> 0.7 <x> v)", &env).unwrap();
    let (fp, op) = (f.as_color().unwrap(), out.as_color().unwrap());
    for (a, b) in fp.samples().iter().zip(op.samples()) {
        for ((x, y), c) in a.values().iter().zip(b.values()).zip(v.values()) {
            // Direct rational/power composition per channel.
            let cast = power_scale(0.7, c);
            let diff = rational_add(*x, -cast);
            assert!(near(y, power_scale(2.5, diff), 1e-13));
        }
    }
    assert_eq!(dsl::pretty(&dsl::parse("f<+>0.93").unwrap()), "f <+> 0.93");
}
