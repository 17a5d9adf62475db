use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use icosolve::literal::{parse_complex, parse_resolution, parse_viewport};
use icosolve::param::DEFAULT_GUARD;
use icosolve::pipeline::verify::{verify, Level};
use icosolve::pipeline::{render_basins, BasinConfig, DeriveConfig, RunConfig, Solver, Viewport};
use icosolve::{BigComplex, PrecisionContext, ProjPoint};

/// Solve v⁵ − 40Zv² − 5Zv − Z by iterating an icosahedral degree-31 map.
#[derive(Parser, Debug)]
#[command(name = "icosolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive the map, the Z-forms and the root extractor, and write a cache.
    Derive {
        #[arg(long, default_value_t = 60)]
        digits: u32,
        /// Holdout samples per fitted form.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value = "cache.json")]
        out: PathBuf,
    },
    /// Solve the resolvent at one parameter.
    Solve {
        /// Parameter as a complex literal such as `1+0i` or `-0.5-2e-3i`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "cache.json")]
        cache: PathBuf,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
        /// Required closure of the five-cycle; defaults to 10^(15 − digits).
        #[arg(long)]
        tol: Option<f64>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the end-to-end checks against a cache.
    Verify {
        #[arg(long, default_value = "cache.json")]
        cache: PathBuf,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
    /// Render basins of attraction of the twelve five-cycles.
    Basins {
        /// Render g_Z instead of the reference map.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, default_value = "cache.json")]
        cache: PathBuf,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "-1.5,-1.5,1.5,1.5")]
        viewport: String,
        #[arg(long, default_value = "512x512")]
        res: String,
        #[arg(long, default_value_t = 300)]
        max_iter: usize,
        /// Output image; `.png` writes PNG, anything else binary PPM.
        #[arg(long, default_value = "basins.ppm")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn load(cache: &Path, digits: u32) -> anyhow::Result<Solver> {
    let ctx = PrecisionContext::new(digits)?;
    Ok(Solver::load(cache, &ctx)?)
}

/// Writes to standard output; a closed pipe ends output quietly.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn format_complex(z: &BigComplex, digits: usize) -> String {
    format!("{z:.digits$}")
}

fn run_derive(digits: u32, samples: usize, out: &Path) -> anyhow::Result<()> {
    let ctx = PrecisionContext::new(digits)?;
    let mut cfg = DeriveConfig::default();
    cfg.samples.holdouts = samples;
    eprintln!("deriving at {digits} digits");
    let (solver, report) = Solver::derive(&ctx, &cfg)?;
    eprintln!(
        "calibrated β/α = {} (residual {:.1e})",
        format_complex(&solver.params.ratio(), 15),
        report.calibration_residual
    );
    if report.f_z_mismatches.is_empty() {
        eprintln!("F_Z reproduces all 13 printed coefficient polynomials");
    } else {
        eprintln!(
            "F_Z differs from the printed polynomials at w₂ powers {:?}",
            report.f_z_mismatches
        );
    }
    let passing = report.labeling_trials.iter().filter(|t| t.residual.is_some()).count();
    eprintln!(
        "labeling: {passing} of {} candidates extract resolvent roots; L alias {:.1e}",
        report.labeling_trials.len(),
        report.l_alias
    );
    report.document.store(out)?;
    eprintln!("wrote {} in {:.1?}", out.display(), report.elapsed);
    if !report.f_z_mismatches.is_empty() || !report.cross_consistent {
        bail!("derived forms are inconsistent; the cache was written for inspection");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    z: &str,
    cache: &Path,
    digits: u32,
    seed: u64,
    max_iter: usize,
    tol: Option<f64>,
    json: bool,
) -> anyhow::Result<()> {
    let solver = load(cache, digits)?;
    let z = parse_complex(z, solver.data.prec())?;
    let mut cfg = RunConfig::new(digits);
    cfg.seed = seed;
    cfg.max_iter = max_iter;
    cfg.cache_path = Some(cache.to_path_buf());
    if let Some(t) = tol {
        cfg.cycle_tol = t;
    }
    let start = Instant::now();
    let report = solver.solve(&z, &cfg)?;
    let elapsed = start.elapsed();
    if json {
        emit(&serde_json::to_string_pretty(&report.to_json())?)?;
        return Ok(());
    }
    let mut text = format!(
        "Z = {}\n{} iterations, {} retries, cycle closure {:.1e}, {elapsed:.1?}\n",
        format_complex(&report.z, 20),
        report.iterations,
        report.retries,
        report.closure
    );
    for (r, res) in report.roots.iter().zip(&report.residuals) {
        text += &format!("  {}   |R_Z| = {res:.1e}\n", format_complex(r, digits as usize));
    }
    text += &format!("distance to direct roots {:.1e}", report.match_distance);
    emit(&text)
}

fn run_verify(cache: &Path, digits: u32, level: LevelArg) -> anyhow::Result<()> {
    let solver = load(cache, digits)?;
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let report = verify(&solver, level);
    let lines: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{} {:<20} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect();
    emit(&lines.join("\n"))?;
    if let Some(c) = report.first_failure() {
        bail!("verification failed: {}", c.name);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_basins(
    z: Option<&str>,
    cache: &Path,
    digits: u32,
    viewport: Viewport,
    (width, height): (u32, u32),
    max_iter: usize,
    out: &Path,
) -> anyhow::Result<()> {
    let solver = load(cache, digits)?;
    let (map, attractors) = match z {
        Some(text) => {
            let z = parse_complex(text, solver.data.prec())?;
            (solver.g_z(&z, DEFAULT_GUARD)?, solver.attractors(Some(&z))?)
        }
        None => (solver.reference_g(), solver.attractors(None)?),
    };
    let cycles: Vec<Vec<_>> = attractors
        .iter()
        .map(|c| c.iter().map(ProjPoint::to_c64).collect())
        .collect();
    let cfg = BasinConfig {
        width: width as usize,
        height: height as usize,
        viewport,
        max_iter,
        ..BasinConfig::default()
    };
    let start = Instant::now();
    let image = render_basins(&map.to_c64(), &cycles, &cfg)?;
    let png = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("png"));
    if png {
        image::RgbImage::from_raw(width, height, image.rgb())
            .context("pixel buffer size")?
            .save(out)
            .with_context(|| format!("writing {}", out.display()))?;
    } else {
        image.write_ppm(out)?;
    }
    eprintln!(
        "{}×{} in {:.1?}: {:.2}% of pixels reach an attractor; wrote {}",
        width,
        height,
        start.elapsed(),
        100.0 * image.assigned_fraction(),
        out.display()
    );
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Derive { digits, samples, out } => run_derive(digits, samples, &out),
        Command::Solve {
            z,
            cache,
            digits,
            seed,
            max_iter,
            tol,
            json,
        } => run_solve(&z, &cache, digits, seed, max_iter, tol, json),
        Command::Verify { cache, digits, level } => run_verify(&cache, digits, level),
        Command::Basins {
            z,
            cache,
            digits,
            viewport,
            res,
            max_iter,
            out,
        } => {
            let viewport = parse_viewport(&viewport)?;
            let res = parse_resolution(&res)?;
            run_basins(z.as_deref(), &cache, digits, viewport, res, max_iter, &out)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use icosolve::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::NonConvergence { .. }) => 2,
        Some(Error::DegenerateParameter { .. }) => 3,
        Some(Error::Cache(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
