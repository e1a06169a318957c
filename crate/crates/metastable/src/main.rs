//! Command-line front end: computes spectra, line shapes, decay curves,
//! revival windows, error sweeps and the turning-point table, and emits them
//! as CSV (stdout or `--out`).
//!
//! Exit codes: 0 success, 2 usage error, 1 numerical failure.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};

use metastable::approx::{approx_spectrum, level_spacing_approx};
use metastable::dynamics::{decay_curve, default_decay_grid, revival_profile, time_grid};
use metastable::exact::ExactSpectrum;
use metastable::sweep::{log_grid, sweep_over_r, turning_point_table};
use metastable::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Per-level exact and analytic energies and weights.
    Spectrum,
    /// Line shape: exact, analytic and Lorentzian weights against energy.
    Lineshape,
    /// Survival probability against the reference exponential.
    Decay,
    /// Survival probability over a window after the base period t0.
    Revival,
    /// Error metrics swept over the width-to-spacing ratio r.
    Errors,
    /// Turning-point summary for n in {2000, 4000, 8000}.
    Table1,
}

#[derive(Debug, Parser)]
#[command(
    name = "metastable",
    about = "Finite-dimensional metastable-state model: spectra, line shape, decay, error sweeps",
    disable_help_flag = false
)]
struct Args {
    #[arg(long, value_enum)]
    command: Command,
    /// Matrix dimension (even, >= 4).
    #[arg(long)]
    n: Option<usize>,
    /// Ladder spacing.
    #[arg(long, default_value_t = 1e-4)]
    de: f64,
    /// Coupling matrix element (exclusive with --r).
    #[arg(long)]
    w: Option<f64>,
    /// Width-to-spacing ratio gamma/de (exclusive with --w).
    #[arg(long)]
    r: Option<f64>,
    /// Discrete-level energy offset.
    #[arg(long, default_value_t = 0.0)]
    eps0: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Decay: end of the time grid (default 5*hbar/gamma). Revival: window
    /// length after t0 (default 800).
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of time-grid points.
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Sweep bracket, lower end.
    #[arg(long = "r-lo", default_value_t = 10.0)]
    r_lo: f64,
    /// Sweep bracket, upper end.
    #[arg(long = "r-hi", default_value_t = 200.0)]
    r_hi: f64,
    /// Number of sweep grid points.
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn open_out(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Model parameters from the flags; exactly one of --w/--r.
fn build_params(args: &Args) -> Result<ModelParams, String> {
    let n = args.n.ok_or("--n is required for this command")?;
    match (args.w, args.r) {
        (Some(_), Some(_)) => Err("--w and --r are mutually exclusive".into()),
        (None, None) => Err("one of --w or --r is required".into()),
        (Some(w), None) => {
            ModelParams::new(n, args.de, w, args.eps0, args.hbar).map_err(|e| e.to_string())
        }
        (None, Some(r)) => {
            ModelParams::from_r(n, args.de, r, args.eps0, args.hbar).map_err(|e| e.to_string())
        }
    }
}

fn cmd_spectrum(p: &ModelParams, out: &mut dyn Write) -> anyhow::Result<()> {
    let exact = ExactSpectrum::compute(p)?;
    let levels = approx_spectrum(p)?;
    writeln!(out, "k,E_exact,E_zeroth,E_final,w_exact,w_approx,w_lorentz,spacing_approx")?;
    for (i, lv) in levels.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            lv.k,
            fmt(exact.energies[i]),
            fmt(p.eps0 + lv.e_zeroth),
            fmt(p.eps0 + lv.e_final),
            fmt(exact.weights[i]),
            fmt(lv.weight_approx),
            fmt(lv.weight_lorentz),
            fmt(level_spacing_approx(lv.k, p)),
        )?;
    }
    Ok(())
}

fn cmd_lineshape(p: &ModelParams, out: &mut dyn Write) -> anyhow::Result<()> {
    let exact = ExactSpectrum::compute(p)?;
    let levels = approx_spectrum(p)?;
    writeln!(out, "k,E_rel,w_exact,w_approx,w_lorentz")?;
    for (i, lv) in levels.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{}",
            lv.k,
            fmt(exact.energies[i] - p.eps0),
            fmt(exact.weights[i]),
            fmt(lv.weight_approx),
            fmt(lv.weight_lorentz),
        )?;
    }
    Ok(())
}

fn cmd_decay(p: &ModelParams, args: &Args, out: &mut dyn Write) -> anyhow::Result<()> {
    let spectrum = ExactSpectrum::compute(p)?;
    let grid = match args.tmax {
        Some(tmax) => time_grid(tmax, args.steps),
        None => default_decay_grid(p)?,
    };
    let curve = decay_curve(&grid, &spectrum, p);
    writeln!(out, "t,P,P_exp,dP")?;
    for i in 0..curve.times.len() {
        writeln!(
            out,
            "{},{},{},{}",
            fmt(curve.times[i]),
            fmt(curve.p[i]),
            fmt(curve.p_exp[i]),
            fmt(curve.dp[i]),
        )?;
    }
    Ok(())
}

fn cmd_revival(p: &ModelParams, args: &Args, out: &mut dyn Write) -> anyhow::Result<()> {
    let spectrum = ExactSpectrum::compute(p)?;
    let t0 = p.derived_scales().t0;
    let window = args.tmax.unwrap_or(800.0);
    let profile = revival_profile(t0, t0 + window, &spectrum, p);
    writeln!(out, "t,P")?;
    for i in 0..profile.times.len() {
        writeln!(out, "{},{}", fmt(profile.times[i]), fmt(profile.p[i]))?;
    }
    eprintln!(
        "revival window [t0, t0+{window}]: max P = {:.6} at t - t0 = {:.3}",
        profile.max_p,
        profile.t_at_max - t0
    );
    Ok(())
}

fn cmd_errors(args: &Args, out: &mut dyn Write) -> anyhow::Result<()> {
    let n = args.n.expect("validated");
    let grid = log_grid(args.r_lo, args.r_hi, args.points);
    let sweep = sweep_over_r(n, &grid, args.de)?;
    writeln!(out, "R,Delta1,ArgmaxK1,Delta2,ArgmaxK2,Delta3,ArgmaxK3")?;
    for (r, t) in sweep.r_values.iter().zip(&sweep.triples) {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt(*r),
            fmt(t.delta1),
            t.argmax1,
            fmt(t.delta2),
            t.argmax2,
            fmt(t.delta3),
            t.argmax3,
        )?;
    }
    for (label, (r0, d)) in ["energy", "weight", "lorentzian"]
        .iter()
        .zip(sweep.turning_points)
    {
        eprintln!("grid minimum ({label}): r = {r0:.4}, delta = {d:.6e}");
    }
    Ok(())
}

fn cmd_table1(args: &Args, out: &mut dyn Write) -> anyhow::Result<()> {
    let table = turning_point_table(args.de)?;
    table.write_csv(out)?;
    Ok(())
}

fn run(args: &Args) -> anyhow::Result<()> {
    if args.de <= 0.0 || !args.de.is_finite() {
        return Err(UsageError(format!("--de {} must be positive", args.de)).into());
    }
    if let Some(t) = args.tmax {
        if t <= 0.0 || !t.is_finite() {
            return Err(UsageError(format!("--tmax {t} must be positive")).into());
        }
    }
    if args.steps < 2 {
        return Err(UsageError("--steps must be at least 2".into()).into());
    }
    let mut out = open_out(args.out.as_ref())?;
    match args.command {
        Command::Spectrum => {
            let p = build_params(args).map_err(UsageError)?;
            cmd_spectrum(&p, &mut out)?;
        }
        Command::Lineshape => {
            let p = build_params(args).map_err(UsageError)?;
            cmd_lineshape(&p, &mut out)?;
        }
        Command::Decay => {
            let p = build_params(args).map_err(UsageError)?;
            if p.w == 0.0 && args.tmax.is_none() {
                return Err(UsageError("--tmax is required when w = 0".into()).into());
            }
            cmd_decay(&p, args, &mut out)?;
        }
        Command::Revival => {
            let p = build_params(args).map_err(UsageError)?;
            cmd_revival(&p, args, &mut out)?;
        }
        Command::Errors => {
            if args.n.is_none() {
                return Err(UsageError("--n is required for this command".into()).into());
            }
            if args.w.is_some() && args.r.is_some() {
                return Err(UsageError("--w and --r are mutually exclusive".into()).into());
            }
            if args.points < 2 || args.r_lo <= 0.0 || args.r_hi <= args.r_lo {
                return Err(UsageError("need --points >= 2 and 0 < r-lo < r-hi".into()).into());
            }
            cmd_errors(args, &mut out)?;
        }
        Command::Table1 => {
            if args.w.is_some() && args.r.is_some() {
                return Err(UsageError("--w and --r are mutually exclusive".into()).into());
            }
            cmd_table1(args, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<UsageError>() {
            Some(u) => usage_error(&u.0),
            None => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}
