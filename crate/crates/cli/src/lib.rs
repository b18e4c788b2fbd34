//! `blip` command line: apply transforms, render contrast maps, report norms.
//!
//! Exit status: 0 success, 1 usage, 2 I/O or image format, 3 expression
//! (syntax, type or binding).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use blip_core::color::ColorVec;
use blip_core::contrast::{contrast_map, Connectivity, ContrastMode};
use blip_core::dsl::{self, Binding, Env};
use blip_core::gray::GrayLevel;
use blip_core::image::ImagePlane;
use blip_core::raster::{
    decode_pnm, encode_pnm, from_model, gaussian_correction, render_contrast, to_model,
    DisplayMode,
};
use blip_core::synth::{synthesize, Pattern};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_EXPR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "blip", version, about = "Logarithmic image processing on 8-bit PGM/PPM files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a transform expression such as "1.43 <x> f <-> 1.39 <x> v <-> I_G".
    Apply {
        #[arg(long)]
        expr: String,
        /// NAME=c (gray), NAME=r,g,b (color) or NAME=@path (image).
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        binds: Vec<String>,
        /// Bind I_G to a Gaussian blur of the input with this sigma (pixels).
        #[arg(long, value_parser = positive)]
        sigma: Option<f64>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Render a contrast map.
    Contrast {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Neighborhood::Four)]
        neighborhood: Neighborhood,
        #[arg(long, value_enum, default_value_t = DisplayArg::Magnitude)]
        display: DisplayArg,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the L2 norm of an image and optionally its scalar product with another.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Print width, height and kind.
    Info {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write a synthetic test image (gradient, step, noise or scene).
    Synth {
        #[arg(long, default_value = "scene")]
        pattern: Pattern,
        #[arg(long, default_value_t = 64)]
        width: usize,
        #[arg(long, default_value_t = 64)]
        height: usize,
        #[arg(long)]
        color: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Horizontal,
    Vertical,
    Pixel,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Neighborhood {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DisplayArg {
    Magnitude,
    Signed,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Expr(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Expr(_) => EXIT_EXPR,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Expr(m) => m,
        }
    }
}

fn read_image(path: &Path) -> Result<ImagePlane, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let raster = decode_pnm(&bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(to_model(&raster))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_binding(spec: &str) -> Result<(String, Binding), Failure> {
    let bad = |why: String| Failure::Expr(format!("bad binding `{spec}`: {why}"));
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| bad("expected NAME=VALUE".into()))?;
    let name = name.trim();
    let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid_name {
        return Err(bad(format!("`{name}` is not an identifier")));
    }
    if name == "f" {
        return Err(bad("`f` is the input image".into()));
    }
    let value = value.trim();
    let binding = if let Some(path) = value.strip_prefix('@') {
        Binding::Image(read_image(Path::new(path))?)
    } else {
        let parts = value
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad(format!("`{p}` is not a number"))))
            .collect::<Result<Vec<_>, _>>()?;
        match parts.as_slice() {
            [c] => Binding::Gray(GrayLevel::new(*c).map_err(|e| bad(e.to_string()))?),
            [r, g, b] => Binding::Color(ColorVec::new(*r, *g, *b).map_err(|e| bad(e.to_string()))?),
            _ => return Err(bad("expected one gray level or an r,g,b triple".into())),
        }
    };
    Ok((name.to_string(), binding))
}

fn apply(
    expr: &str,
    binds: &[String],
    sigma: Option<f64>,
    input: &Path,
    output: &Path,
) -> Result<(), Failure> {
    let parsed = dsl::parse(expr).map_err(|e| Failure::Expr(e.to_string()))?;
    let f = read_image(input)?;
    let mut env = Env::new(f);
    if let Some(sigma) = sigma {
        let ig = gaussian_correction(env.input(), sigma).map_err(|e| Failure::Expr(e.to_string()))?;
        env.bind("I_G", ig).expect("I_G is not reserved");
    }
    for spec in binds {
        let (name, binding) = parse_binding(spec)?;
        if sigma.is_some() && name == "I_G" {
            return Err(Failure::Expr("I_G is already bound by --sigma".into()));
        }
        env.bind(name, binding).map_err(|e| Failure::Expr(e.to_string()))?;
    }
    let typed = dsl::typecheck(&parsed, &env).map_err(|e| Failure::Expr(e.to_string()))?;
    let out = dsl::evaluate(&typed, &env).map_err(|e| Failure::Expr(e.to_string()))?;
    write_bytes(output, &encode_pnm(&from_model(&out)))
}

/// `%.15g`-style rendering.
pub fn format_g15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..15).contains(&exp) {
        trim(format!("{x:.*}", (14 - exp) as usize))
    } else {
        format!("{}e{}{:02}", trim(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn stats(input: &Path, against: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let f = read_image(input)?;
    let mut lines = vec![format!("l2_norm={}", format_g15(f.l2_norm()))];
    if let Some(path) = against {
        let g = read_image(path)?;
        let dot = f
            .l2_dot(&g)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        lines.push(format!("l2_dot={}", format_g15(dot)));
    }
    for line in lines {
        writeln!(stdout, "{line}").map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(())
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Apply {
            expr,
            binds,
            sigma,
            input,
            output,
        } => apply(&expr, &binds, sigma, &input, &output),
        Command::Contrast {
            mode,
            neighborhood,
            display,
            input,
            output,
        } => {
            let f = read_image(&input)?;
            let mode = match mode {
                ModeArg::Horizontal => ContrastMode::Horizontal,
                ModeArg::Vertical => ContrastMode::Vertical,
                ModeArg::Pixel => ContrastMode::Pixel,
            };
            let conn = match neighborhood {
                Neighborhood::Four => Connectivity::Four,
                Neighborhood::Eight => Connectivity::Eight,
            };
            let display = match display {
                DisplayArg::Magnitude => DisplayMode::Magnitude,
                DisplayArg::Signed => DisplayMode::Signed,
            };
            let map = contrast_map(&f, mode, conn)
                .map_err(|e| Failure::Io(format!("{}: {e}", input.display())))?;
            write_bytes(&output, &encode_pnm(&render_contrast(&map, display)))
        }
        Command::Stats { input, against } => stats(&input, against.as_deref(), stdout),
        Command::Info { input } => {
            let f = read_image(&input)?;
            writeln!(stdout, "width={}\nheight={}\nkind={}", f.width(), f.height(), f.kind())
                .map_err(|e| Failure::Io(e.to_string()))
        }
        Command::Synth {
            pattern,
            width,
            height,
            color,
            seed,
            output,
        } => {
            let raster = synthesize(pattern, width, height, if color { 3 } else { 1 }, seed)
                .map_err(|e| Failure::Io(e.to_string()))?;
            write_bytes(&output, &encode_pnm(&raster))
        }
    }
}

/// Run one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "blip: {} (see --help)", first.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(stderr, "blip: {}", failure.message());
            failure.code()
        }
    }
}
