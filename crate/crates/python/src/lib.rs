//! Python module `blip`: gray and color algebra on (-1, 1), images, contrast
//! maps, the transform language and PGM/PPM I/O.

use std::path::PathBuf;

use blip_core::color::ColorVec;
use blip_core::contrast::{self, Connectivity, ContrastMode, PixelCoord};
use blip_core::dsl::{self, Binding, Env};
use blip_core::gray::{self, GrayLevel, LogCoord};
use blip_core::image::{ImagePlane, Kind, Pixel};
use blip_core::raster::{self, DisplayMode, RasterBuffer};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn gl(v: f64) -> PyResult<GrayLevel> {
    GrayLevel::new(v).map_err(value_err)
}

fn cv((r, g, b): (f64, f64, f64)) -> PyResult<ColorVec> {
    ColorVec::new(r, g, b).map_err(value_err)
}

fn tuple(c: ColorVec) -> (f64, f64, f64) {
    let [r, g, b] = c.values();
    (r, g, b)
}

#[pyfunction]
fn phi(v: f64) -> PyResult<f64> {
    Ok(gl(v)?.phi().get())
}

#[pyfunction]
fn phi_inv(x: f64) -> PyResult<f64> {
    Ok(gray::phi_inv(LogCoord::new(x).map_err(value_err)?).value())
}

#[pyfunction]
fn gadd(a: f64, b: f64) -> PyResult<f64> {
    Ok((gl(a)? + gl(b)?).value())
}

#[pyfunction]
fn gsub(a: f64, b: f64) -> PyResult<f64> {
    Ok((gl(a)? - gl(b)?).value())
}

#[pyfunction]
fn gneg(v: f64) -> PyResult<f64> {
    Ok((-gl(v)?).value())
}

#[pyfunction]
fn gscale(lambda: f64, v: f64) -> PyResult<f64> {
    if !lambda.is_finite() {
        return Err(value_err("scalar must be finite"));
    }
    Ok(gl(v)?.scale(lambda).value())
}

#[pyfunction]
fn gdot(a: f64, b: f64) -> PyResult<f64> {
    Ok(gl(a)?.dot(gl(b)?))
}

#[pyfunction]
fn gnorm(v: f64) -> PyResult<f64> {
    Ok(gl(v)?.norm())
}

#[pyfunction]
fn cadd(a: (f64, f64, f64), b: (f64, f64, f64)) -> PyResult<(f64, f64, f64)> {
    Ok(tuple(cv(a)? + cv(b)?))
}

#[pyfunction]
fn csub(a: (f64, f64, f64), b: (f64, f64, f64)) -> PyResult<(f64, f64, f64)> {
    Ok(tuple(cv(a)? - cv(b)?))
}

#[pyfunction]
fn cneg(v: (f64, f64, f64)) -> PyResult<(f64, f64, f64)> {
    Ok(tuple(-cv(v)?))
}

#[pyfunction]
fn cscale(lambda: f64, v: (f64, f64, f64)) -> PyResult<(f64, f64, f64)> {
    if !lambda.is_finite() {
        return Err(value_err("scalar must be finite"));
    }
    Ok(tuple(cv(v)?.scale(lambda)))
}

#[pyfunction]
fn cdot(a: (f64, f64, f64), b: (f64, f64, f64)) -> PyResult<f64> {
    Ok(cv(a)?.dot(cv(b)?))
}

#[pyfunction]
fn cnorm(v: (f64, f64, f64)) -> PyResult<f64> {
    Ok(cv(v)?.norm())
}

/// Canonical rendering of an expression; raises ValueError on bad syntax.
#[pyfunction]
fn parse(expr: &str) -> PyResult<String> {
    dsl::parse(expr).map(|e| e.to_string()).map_err(value_err)
}

#[derive(FromPyObject)]
enum PixelArg {
    Gray(f64),
    Color((f64, f64, f64)),
}

impl PixelArg {
    fn pixel(self) -> PyResult<Pixel> {
        Ok(match self {
            PixelArg::Gray(v) => Pixel::Gray(gl(v)?),
            PixelArg::Color(c) => Pixel::Color(cv(c)?),
        })
    }
}

#[derive(FromPyObject)]
enum BindArg<'py> {
    Image(PyRef<'py, Image>),
    Gray(f64),
    Color((f64, f64, f64)),
}

fn connectivity(n: u32) -> PyResult<Connectivity> {
    Connectivity::try_from(n).map_err(value_err)
}

fn coord((x, y): (usize, usize)) -> PixelCoord {
    PixelCoord::new(x, y)
}

/// A gray or color image with samples in (-1, 1).
#[pyclass(module = "blip", frozen)]
struct Image {
    inner: ImagePlane,
}

impl Image {
    fn wrap(inner: ImagePlane) -> Self {
        Image { inner }
    }
}

#[pymethods]
impl Image {
    /// Read a binary PGM (P5) or PPM (P6) file with maxval 255.
    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        let bytes = std::fs::read(&path).map_err(|e| PyIOError::new_err(format!("{}: {e}", path.display())))?;
        Self::from_pnm(&bytes)
    }

    #[staticmethod]
    fn from_pnm(data: &[u8]) -> PyResult<Self> {
        let raster = raster::decode_pnm(data).map_err(value_err)?;
        Ok(Self::wrap(raster::to_model(&raster)))
    }

    /// Row-major 8-bit codes, interleaved RGB when `channels` is 3.
    #[staticmethod]
    fn from_codes(width: usize, height: usize, channels: usize, codes: Vec<u8>) -> PyResult<Self> {
        let raster = RasterBuffer::new(width, height, channels, codes).map_err(value_err)?;
        Ok(Self::wrap(raster::to_model(&raster)))
    }

    /// Row-major samples: floats for gray, (r, g, b) tuples for color.
    #[staticmethod]
    fn from_values(width: usize, height: usize, values: Vec<PixelArg>) -> PyResult<Self> {
        let pixels = values.into_iter().map(PixelArg::pixel).collect::<PyResult<Vec<_>>>()?;
        let inner = match pixels.first().map(Pixel::kind) {
            Some(Kind::Color) => {
                let samples = pixels
                    .into_iter()
                    .map(|p| match p {
                        Pixel::Color(c) => Ok(c),
                        Pixel::Gray(_) => Err(value_err("mixed gray and color samples")),
                    })
                    .collect::<PyResult<Vec<_>>>()?;
                ImagePlane::color(width, height, samples)
            }
            _ => {
                let samples = pixels
                    .into_iter()
                    .map(|p| match p {
                        Pixel::Gray(v) => Ok(v),
                        Pixel::Color(_) => Err(value_err("mixed gray and color samples")),
                    })
                    .collect::<PyResult<Vec<_>>>()?;
                ImagePlane::gray(width, height, samples)
            }
        };
        inner.map(Self::wrap).map_err(value_err)
    }

    #[staticmethod]
    fn constant(width: usize, height: usize, value: PixelArg) -> PyResult<Self> {
        ImagePlane::constant(width, height, value.pixel()?)
            .map(Self::wrap)
            .map_err(value_err)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().to_string()
    }

    fn values(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        Ok(match &self.inner {
            ImagePlane::Gray(p) => p
                .samples()
                .iter()
                .map(|v| v.value())
                .collect::<Vec<_>>()
                .into_pyobject(py)?
                .into_any()
                .unbind(),
            ImagePlane::Color(p) => p
                .samples()
                .iter()
                .map(|c| tuple(*c))
                .collect::<Vec<_>>()
                .into_pyobject(py)?
                .into_any()
                .unbind(),
        })
    }

    fn pixel(&self, py: Python<'_>, x: usize, y: usize) -> PyResult<Py<PyAny>> {
        if x >= self.inner.width() || y >= self.inner.height() {
            return Err(value_err(format!("pixel ({x}, {y}) outside image")));
        }
        Ok(match self.inner.pixel(x, y) {
            Pixel::Gray(v) => v.value().into_pyobject(py)?.into_any().unbind(),
            Pixel::Color(c) => tuple(c).into_pyobject(py)?.into_any().unbind(),
        })
    }

    fn codes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, raster::from_model(&self.inner).pixels())
    }

    fn to_pnm<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &raster::encode_pnm(&raster::from_model(&self.inner)))
    }

    fn write(&self, path: PathBuf) -> PyResult<()> {
        std::fs::write(&path, raster::encode_pnm(&raster::from_model(&self.inner)))
            .map_err(|e| PyIOError::new_err(format!("{}: {e}", path.display())))
    }

    fn __add__(&self, other: PyRef<'_, Image>) -> PyResult<Self> {
        self.inner.add(&other.inner).map(Self::wrap).map_err(value_err)
    }

    fn __sub__(&self, other: PyRef<'_, Image>) -> PyResult<Self> {
        self.inner.sub(&other.inner).map(Self::wrap).map_err(value_err)
    }

    fn __neg__(&self) -> Self {
        Self::wrap(self.inner.neg())
    }

    fn scale(&self, lambda: f64) -> PyResult<Self> {
        if !lambda.is_finite() {
            return Err(value_err("scalar must be finite"));
        }
        Ok(Self::wrap(self.inner.scale(lambda)))
    }

    fn __rmul__(&self, lambda: f64) -> PyResult<Self> {
        self.scale(lambda)
    }

    fn __eq__(&self, other: PyRef<'_, Image>) -> bool {
        self.inner == other.inner
    }

    fn pos_part(&self) -> Self {
        Self::wrap(self.inner.pos_part())
    }

    fn neg_part(&self) -> Self {
        Self::wrap(self.inner.neg_part())
    }

    fn l2_dot(&self, other: PyRef<'_, Image>) -> PyResult<f64> {
        self.inner.l2_dot(&other.inner).map_err(value_err)
    }

    fn l2_norm(&self) -> f64 {
        self.inner.l2_norm()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Evaluate a transform with `f` bound to this image; keyword arguments
    /// bind further names to floats, (r, g, b) tuples or images.
    #[pyo3(signature = (expr, **bindings))]
    fn apply(&self, expr: &str, bindings: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let mut env = Env::new(self.inner.clone());
        if let Some(bindings) = bindings {
            for (name, value) in bindings.iter() {
                let name: String = name.extract()?;
                let binding = match value.extract::<BindArg>()? {
                    BindArg::Image(img) => Binding::Image(img.inner.clone()),
                    BindArg::Gray(v) => Binding::Gray(gl(v)?),
                    BindArg::Color(c) => Binding::Color(cv(c)?),
                };
                env.bind(name, binding).map_err(value_err)?;
            }
        }
        dsl::run(expr, &env).map(Self::wrap).map_err(value_err)
    }

    /// Contrast map; `mode` is "horizontal", "vertical" or "pixel".
    #[pyo3(signature = (mode, neighborhood = 4))]
    fn contrast(&self, mode: &str, neighborhood: u32) -> PyResult<Self> {
        let mode = match mode {
            "horizontal" => ContrastMode::Horizontal,
            "vertical" => ContrastMode::Vertical,
            "pixel" => ContrastMode::Pixel,
            other => return Err(value_err(format!("unknown contrast mode `{other}`"))),
        };
        contrast::contrast_map(&self.inner, mode, connectivity(neighborhood)?)
            .map(Self::wrap)
            .map_err(value_err)
    }

    /// 8-bit rendering of a contrast map; `display` is "magnitude" or "signed".
    #[pyo3(signature = (display = "magnitude"))]
    fn render_contrast<'py>(&self, py: Python<'py>, display: &str) -> PyResult<Bound<'py, PyBytes>> {
        let display = match display {
            "magnitude" => DisplayMode::Magnitude,
            "signed" => DisplayMode::Signed,
            other => return Err(value_err(format!("unknown display mode `{other}`"))),
        };
        Ok(PyBytes::new(py, raster::render_contrast(&self.inner, display).pixels()))
    }

    fn gaussian_correction(&self, sigma: f64) -> PyResult<Self> {
        raster::gaussian_correction(&self.inner, sigma)
            .map(Self::wrap)
            .map_err(value_err)
    }

    fn rel_contrast(&self, p1: (usize, usize), p2: (usize, usize)) -> PyResult<f64> {
        contrast::rel_contrast(&self.inner, coord(p1), coord(p2))
            .map(GrayLevel::value)
            .map_err(value_err)
    }

    fn abs_contrast(&self, p1: (usize, usize), p2: (usize, usize)) -> PyResult<f64> {
        contrast::abs_contrast(&self.inner, coord(p1), coord(p2))
            .map(GrayLevel::value)
            .map_err(value_err)
    }

    #[pyo3(signature = (p, neighborhood = 4))]
    fn pixel_contrast(&self, p: (usize, usize), neighborhood: u32) -> PyResult<f64> {
        contrast::pixel_contrast(&self.inner, coord(p), connectivity(neighborhood)?)
            .map(GrayLevel::value)
            .map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Image({}x{} {})", self.inner.width(), self.inner.height(), self.inner.kind())
    }
}

#[pymodule]
fn blip(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_inv, m)?)?;
    m.add_function(wrap_pyfunction!(gadd, m)?)?;
    m.add_function(wrap_pyfunction!(gsub, m)?)?;
    m.add_function(wrap_pyfunction!(gneg, m)?)?;
    m.add_function(wrap_pyfunction!(gscale, m)?)?;
    m.add_function(wrap_pyfunction!(gdot, m)?)?;
    m.add_function(wrap_pyfunction!(gnorm, m)?)?;
    m.add_function(wrap_pyfunction!(cadd, m)?)?;
    m.add_function(wrap_pyfunction!(csub, m)?)?;
    m.add_function(wrap_pyfunction!(cneg, m)?)?;
    m.add_function(wrap_pyfunction!(cscale, m)?)?;
    m.add_function(wrap_pyfunction!(cdot, m)?)?;
    m.add_function(wrap_pyfunction!(cnorm, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_class::<Image>()?;
    m.add("MAX_VALUE", gray::MAX_VALUE)?;
    Ok(())
}
