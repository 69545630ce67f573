//! Subcommands of the `agdec` binary. Each writes to the given sinks and returns the exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use agdec::agcode::{format_vector, parse_vector, AGCode};
use agdec::algebra::Gf;
use agdec::decoder::{DecodeContext, DecoderConfig, Outcome, PointPolicy};
use agdec::oracle::{worst_case, OracleBudget};
use agdec::radius::{
    basic_radius, half_designed, power_radius, sudan_radius, validate_params, CodeParams, SudanVariant,
};
use clap::{Parser, Subcommand};

use crate::config::{CurveSpec, ErrorModel, ExperimentConfig, Format};
use crate::experiment::{run_experiment, trial_rng, uniform_channel};
use crate::output::emit;
use crate::selftest::{self, Fault};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DECODE_FAILURE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "agdec", version, about = "Power decoding of one-point AG codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decoding radii and parameter conditions.
    Radius {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        g: Option<i64>,
        /// Take n and g from a curve spec instead.
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long = "deg-g")]
        deg_g: i64,
        #[arg(long, default_value_t = 2)]
        ell: i64,
        #[arg(long)]
        t: Option<i64>,
    },
    /// Print a code descriptor.
    Code {
        #[arg(long)]
        curve: String,
        #[arg(long = "deg-g")]
        deg_g: i64,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Draw a codeword and an error for a code file.
    Channel {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: usize,
        #[arg(long, default_value = "uniform")]
        model: ErrorModel,
        /// Write codeword.txt, error.txt and received.txt here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode one received word.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        received: PathBuf,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "first-hit")]
        policy: PointPolicy,
        /// Known error, for the Δ trace.
        #[arg(long)]
        error: Option<PathBuf>,
    },
    /// Run a seeded multi-trial experiment from a `key = value` file.
    Experiment {
        config: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the small-scale invariant suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "inject-fault", value_parser = ["modulus"])]
        inject_fault: Option<String>,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// A vector file: either a bare vector or a line labelled `received:` (also `codeword:`/`error:`).
fn read_vector(code: &AGCode, path: &Path, label: &str) -> Result<Vec<Gf>, Usage> {
    let text = read(path)?;
    let prefix = format!("{label}:");
    let body = text
        .lines()
        .find_map(|l| l.trim().strip_prefix(&prefix))
        .map(str::to_string)
        .unwrap_or_else(|| {
            text.lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join(" ")
        });
    let v = parse_vector(code.field(), &body)?;
    code.check_len(&v)?;
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn cmd_radius(
    out: &mut dyn Write,
    n: Option<i64>,
    g: Option<i64>,
    curve: Option<String>,
    points: Option<usize>,
    deg_g: i64,
    ell: i64,
    t: Option<i64>,
) -> Result<i32, Usage> {
    let (n, g) = match (curve, n, g) {
        (Some(spec), None, None) => {
            let c = CurveSpec(spec).load(None)?;
            let total = c.affine_points().len();
            (points.unwrap_or(total).min(total) as i64, i64::from(c.genus()))
        }
        (None, Some(n), Some(g)) => (n, g),
        _ => return Err(Usage("give either --curve or both --n and --g".into())),
    };
    if n <= 0 || g < 0 || ell < 1 || deg_g < 0 || deg_g >= n {
        return Err(Usage(format!("invalid parameters n={n} g={g} degG={deg_g} ell={ell}")));
    }
    let mut p = CodeParams::new(n, g, deg_g, ell);
    if let Some(t) = t {
        p = p.with_t(t);
    }
    writeln!(out, "n = {n}, g = {g}, degG = {deg_g}, ell = {ell}")?;
    writeln!(out, "half_designed = {}", half_designed(n, deg_g))?;
    writeln!(out, "basic = {}", basic_radius(n, g, deg_g))?;
    writeln!(
        out,
        "sudan_basic = {}",
        sudan_radius(n, g, deg_g, ell, SudanVariant::Basic)
    )?;
    writeln!(
        out,
        "sudan = {}",
        sudan_radius(n, g, deg_g, ell, SudanVariant::Improved)
    )?;
    writeln!(out, "power_radius = {}", power_radius(n, deg_g, ell))?;
    let report = validate_params(&p);
    for c in &report.conditions {
        writeln!(
            out,
            "[{}] {} (slack {})",
            if c.holds { "ok" } else { "fails" },
            c.name,
            c.slack
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_code(out: &mut dyn Write, curve: String, deg_g: i64, points: Option<usize>) -> Result<i32, Usage> {
    let c = CurveSpec(curve).load(None)?;
    let all = c.affine_points();
    let pts = &all[..points.unwrap_or(all.len()).min(all.len())];
    let code = AGCode::new(&c, pts, deg_g)?;
    write!(out, "{}", code.to_text())?;
    Ok(EXIT_OK)
}

fn cmd_channel(
    out: &mut dyn Write,
    code_path: &Path,
    t: usize,
    seed: u64,
    trial: usize,
    model: ErrorModel,
    dir: Option<PathBuf>,
) -> Result<i32, Usage> {
    let code = AGCode::parse(&read(code_path)?)?;
    if t >= code.n() {
        return Err(Usage(format!("t = {t} must be below n = {}", code.n())));
    }
    let f = code.field();
    let mut rng = trial_rng(seed, trial);
    let (c, y) = match model {
        ErrorModel::Uniform => {
            let (c, e) = uniform_channel(&code, t, &mut rng);
            let y = c.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect::<Vec<_>>();
            (c, y)
        }
        ErrorModel::WorstCase => {
            let (y, c1, _) = worst_case(&code, t, &mut rng, &OracleBudget::default())?;
            (c1, y)
        }
    };
    let e: Vec<Gf> = y.iter().zip(&c).map(|(&a, &b)| f.sub(a, b)).collect();
    let files = [("codeword", &c), ("error", &e), ("received", &y)];
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            for (name, v) in files {
                std::fs::write(dir.join(format!("{name}.txt")), format_vector(f, v) + "\n")?;
            }
        }
        None => {
            for (name, v) in files {
                writeln!(out, "{name}: {}", format_vector(f, v))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_decode(
    out: &mut dyn Write,
    code_path: &Path,
    received: &Path,
    ell: u32,
    t: usize,
    policy: PointPolicy,
    error: Option<PathBuf>,
) -> Result<i32, Usage> {
    let code = AGCode::parse(&read(code_path)?)?;
    let y = read_vector(&code, received, "received")?;
    let e = error.map(|p| read_vector(&code, &p, "error")).transpose()?;
    let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, ell, t).with_policy(policy))?;
    let (outcome, trace) = ctx.decode(&y, e.as_deref())?;
    let f = code.field();
    let code_ret = match &outcome {
        Outcome::Success { error, codeword, .. } => {
            writeln!(out, "outcome: success")?;
            writeln!(out, "error: {}", format_vector(f, error))?;
            writeln!(out, "codeword: {}", format_vector(f, codeword))?;
            EXIT_OK
        }
        Outcome::Failure(reason) => {
            writeln!(out, "outcome: failure {reason}")?;
            EXIT_DECODE_FAILURE
        }
    };
    writeln!(out, "trace:")?;
    for s in &trace.steps {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "  j={} dimS={} chosen={} drop={} delta={} F={:?}",
            s.j,
            s.dim_s,
            opt(s.chosen.map(|k| k.to_string())),
            opt(s.drop.map(|d| d.to_string())),
            opt(s.delta.map(|d| d.to_string())),
            s.divisor
        )?;
    }
    if let Some(p) = trace.pts_in_de {
        writeln!(out, "pts_in_De: {p}")?;
    }
    Ok(code_ret)
}

fn cmd_experiment(
    out: &mut dyn Write,
    path: &Path,
    format: Option<Format>,
    output: Option<PathBuf>,
) -> Result<i32, Usage> {
    let mut cfg = ExperimentConfig::parse(&read(path)?)?;
    if let Some(f) = format {
        cfg.format = f;
    }
    let report = run_experiment(&cfg, path.parent())?;
    let text = emit(&report, cfg.format)?;
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(out: &mut dyn Write, seed: u64, fault: Option<String>) -> Result<i32, Usage> {
    let fault = match fault.as_deref() {
        Some("modulus") => Fault::Modulus,
        _ => Fault::None,
    };
    let results = selftest::run(seed, fault);
    for r in &results {
        if r.passed {
            writeln!(out, "PASS {}", r.name)?;
        } else {
            writeln!(out, "FAIL {}: {}", r.name, r.detail)?;
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} checks, {failed} failed", results.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_USAGE })
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Radius {
            n,
            g,
            curve,
            points,
            deg_g,
            ell,
            t,
        } => cmd_radius(out, n, g, curve, points, deg_g, ell, t),
        Command::Code { curve, deg_g, points } => cmd_code(out, curve, deg_g, points),
        Command::Channel {
            code,
            t,
            seed,
            trial,
            model,
            out: dir,
        } => cmd_channel(out, &code, t, seed, trial, model, dir),
        Command::Decode {
            code,
            received,
            ell,
            t,
            policy,
            error,
        } => cmd_decode(out, &code, &received, ell, t, policy, error),
        Command::Experiment { config, format, output } => cmd_experiment(out, &config, format, output),
        Command::Selftest { seed, inject_fault } => cmd_selftest(out, seed, inject_fault),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
