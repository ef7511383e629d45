//! Command-line front end for the fractional-operator library.
//!
//! Five subcommands: `eval` writes one operator sweep as CSV, `compare`
//! writes the sine/cosine/power-law comparison columns, `laplace-check`
//! verifies quadrature output against the closed-form transforms,
//! `memristor` runs the charge-driven memristor case study, and `figures`
//! emits the full CSV figure set.
//!
//! Exit codes follow the usual convention: 0 on success, 1 when a
//! verification or runtime step fails, 2 for configuration and usage errors
//! (clap itself also exits 2 on unparsable arguments). All CSV output uses
//! `\n` line endings, a header row, and Rust's shortest round-trip float
//! formatting, so re-parsing a file reproduces the in-memory values exactly
//! and repeated runs are byte-identical.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracops::kernels::{FractionalOrder, KernelKind, OperatorSpec};
use fracops::laplace::{dc_transform, ds_transform, numerical_laplace, LaplaceQuery};
use fracops::memristor::{
    build_memristor, caputo_window_check, verify_ds_linearization, vi_curve, WindowApprox,
    WindowReport, KERNEL_COEFFICIENT,
};
use fracops::quadrature::{apply_operator, Preset, Signal, TimeGrid};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Default fractional order for every subcommand.
const DEFAULT_ALPHA: f64 = 2.0 / 3.0;
/// Horizon for the transform checks; long enough that e^(−s·T) tails are
/// negligible for every admissible frequency.
const LAPLACE_TMAX: f64 = 40.0;
/// Exponents of the two published memristor window power laws.
const WINDOW_BLUE_EXPONENT: f64 = 8.0 / 9.0;
const WINDOW_GREEN_EXPONENT: f64 = 43.0 / 70.0;

#[derive(Debug, Parser)]
#[command(
    name = "fracops",
    version,
    about = "Fractional-operator evaluation, verification, and figure emission"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one operator on a preset source and write a t,value CSV.
    Eval(EvalArgs),
    /// Write a t,ds,dc,caputo comparison CSV for one preset.
    Compare(CompareArgs),
    /// Check operator outputs against their closed-form Laplace transforms.
    LaplaceCheck(LaplaceCheckArgs),
    /// Run the memristor case study: loop CSV, window CSV, and a report.
    Memristor(MemristorArgs),
    /// Emit the full figure data set (14 CSV files).
    Figures(FiguresArgs),
}

/// Operator selector. `c` is the power-law (Caputo) derivative; `cf`, `ab`,
/// `ds`, `dc` are the exponential, Mittag-Leffler, sine, and cosine kernel
/// operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpCode {
    C,
    Cf,
    Ab,
    Ds,
    Dc,
}

impl OpCode {
    fn kind(self) -> KernelKind {
        match self {
            OpCode::C => KernelKind::PowerLaw,
            OpCode::Cf => KernelKind::Exponential,
            OpCode::Ab => KernelKind::MittagLeffler,
            OpCode::Ds => KernelKind::Sine,
            OpCode::Dc => KernelKind::Cosine,
        }
    }
}

/// Source preset selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    /// f(t) = t³/3
    Cube,
    /// f(t) = −cos t
    Negcos,
    /// f(t) = sin t
    Sin,
    /// f(t) = e^t
    Exp,
}

impl PresetArg {
    fn preset(self) -> Preset {
        match self {
            PresetArg::Cube => Preset::Cube,
            PresetArg::Negcos => Preset::NegCos,
            PresetArg::Sin => Preset::Sin,
            PresetArg::Exp => Preset::Exp,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Operator kind
    #[arg(long, value_enum)]
    pub op: OpCode,
    /// Fractional order α in (0, 1]; α = 1 is only meaningful for `c`
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Normalization N(α) > 0 [default: 1 − α]
    #[arg(long)]
    pub norm: Option<f64>,
    /// Source preset
    #[arg(long, value_enum)]
    pub preset: PresetArg,
    /// Grid horizon
    #[arg(long, default_value_t = 10.0)]
    pub tmax: f64,
    /// Grid step
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Source preset; picks the published per-preset normalization pair
    #[arg(long, value_enum)]
    pub preset: PresetArg,
    /// Fractional order α in (0, 1)
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Grid horizon
    #[arg(long, default_value_t = 10.0)]
    pub tmax: f64,
    /// Grid step
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LaplaceCheckArgs {
    /// Restrict the check to one preset [default: all four]
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,
    /// Fractional order α in (0, 1)
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Normalization N(α) > 0 [default: 1 − α]
    #[arg(long)]
    pub norm: Option<f64>,
    /// Grid horizon
    #[arg(long, default_value_t = LAPLACE_TMAX)]
    pub tmax: f64,
    /// Grid step
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Comma-separated frequencies [default: 1,2,5; exp preset: 2,5]
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<f64>>,
    /// Relative tolerance on each transform gap
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct MemristorArgs {
    /// Grid horizon; ≥ 8 so the loop closes and the windows fit
    #[arg(long, default_value_t = 10.0)]
    pub tmax: f64,
    /// Grid step
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Output directory for memristor_loop.csv and memristor_windows.csv
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Output directory
    #[arg(long, env = "FRACOPS_FIG_DIR", default_value = "figures")]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Lib(#[from] fracops::Error),
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

/// Dispatch a parsed command line and map the outcome to an exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Eval(args) => run_eval(&args),
        Command::Compare(args) => run_compare(&args),
        Command::LaplaceCheck(args) => run_laplace_check(&args),
        Command::Memristor(args) => run_memristor(&args),
        Command::Figures(args) => run_figures(&args.out),
    };
    match result {
        Ok(()) => 0,
        Err(e @ CliError::Config(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn grid_for(dt: f64, tmax: f64) -> Result<TimeGrid, CliError> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(CliError::Config(format!("--dt must be positive, got {dt}")));
    }
    if !(tmax.is_finite() && tmax >= dt) {
        return Err(CliError::Config(format!(
            "--tmax must be at least --dt, got tmax={tmax} dt={dt}"
        )));
    }
    TimeGrid::from_duration(dt, tmax).map_err(config)
}

fn operator_for(op: OpCode, alpha: f64, norm: Option<f64>) -> Result<OperatorSpec, CliError> {
    let order = FractionalOrder::new(alpha).map_err(config)?;
    match norm {
        Some(n) => OperatorSpec::new(op.kind(), order, n),
        None => OperatorSpec::standard(op.kind(), order),
    }
    .map_err(config)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|source| CliError::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
    }
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn push_row(buf: &mut String, cols: &[f64]) {
    for (i, c) in cols.iter().enumerate() {
        if i > 0 {
            buf.push(',');
        }
        let _ = write!(buf, "{c}");
    }
    buf.push('\n');
}

fn signal_csv(signal: &Signal) -> String {
    let mut buf = String::with_capacity(24 * signal.values.len() + 16);
    buf.push_str("t,value\n");
    for (i, v) in signal.values.iter().enumerate() {
        push_row(&mut buf, &[signal.grid.node(i), *v]);
    }
    buf
}

fn run_eval(args: &EvalArgs) -> Result<(), CliError> {
    let grid = grid_for(args.dt, args.tmax)?;
    let spec = operator_for(args.op, args.alpha, args.norm)?;
    let signal = apply_operator(&spec, &args.preset.preset().source(), &grid)?;
    write_file(&args.out, &signal_csv(&signal))?;
    println!("wrote {} ({} rows)", args.out.display(), grid.len());
    Ok(())
}

/// The published normalization pairs (N for the sine kernel, N for the
/// cosine kernel) used by `compare` and the figure driver.
fn comparison_norms(preset: Preset) -> (f64, f64) {
    match preset {
        Preset::Cube => (0.9, 4.0),
        Preset::NegCos => (0.4, 0.6),
        Preset::Sin => (0.3, 0.5),
        Preset::Exp => (0.8, 1.6),
    }
}

fn comparison_csv(preset: Preset, alpha: f64, grid: &TimeGrid) -> Result<String, CliError> {
    let order = FractionalOrder::new(alpha).map_err(config)?;
    let (n_ds, n_dc) = comparison_norms(preset);
    let ds_spec = OperatorSpec::new(KernelKind::Sine, order, n_ds).map_err(config)?;
    let dc_spec = OperatorSpec::new(KernelKind::Cosine, order, n_dc).map_err(config)?;
    let c_spec = OperatorSpec::new(KernelKind::PowerLaw, order, 1.0).map_err(config)?;
    let source = preset.source();
    let ds = apply_operator(&ds_spec, &source, grid)?;
    let dc = apply_operator(&dc_spec, &source, grid)?;
    let caputo = apply_operator(&c_spec, &source, grid)?;
    let mut buf = String::with_capacity(48 * grid.len() + 16);
    buf.push_str("t,ds,dc,caputo\n");
    for i in 0..grid.len() {
        push_row(
            &mut buf,
            &[grid.node(i), ds.values[i], dc.values[i], caputo.values[i]],
        );
    }
    Ok(buf)
}

fn run_compare(args: &CompareArgs) -> Result<(), CliError> {
    let grid = grid_for(args.dt, args.tmax)?;
    let csv = comparison_csv(args.preset.preset(), args.alpha, &grid)?;
    write_file(&args.out, &csv)?;
    println!("wrote {} ({} rows)", args.out.display(), grid.len());
    Ok(())
}

fn default_frequencies(preset: Preset) -> Vec<f64> {
    match preset {
        Preset::Exp => vec![2.0, 5.0],
        _ => vec![1.0, 2.0, 5.0],
    }
}

fn run_laplace_check(args: &LaplaceCheckArgs) -> Result<(), CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Config(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let grid = grid_for(args.dt, args.tmax)?;
    let order = FractionalOrder::new(args.alpha).map_err(config)?;
    order.lambda().map_err(config)?; // the transforms need α < 1
    let norm = match args.norm {
        Some(n) if n.is_finite() && n > 0.0 => n,
        Some(n) => {
            return Err(CliError::Config(format!(
                "--norm must be positive, got {n}"
            )))
        }
        None => 1.0 - args.alpha,
    };

    let presets: Vec<Preset> = match args.preset {
        Some(p) => vec![p.preset()],
        None => Preset::all().to_vec(),
    };
    // Validate every (preset, s) pair before the expensive sweeps start.
    let mut cases: Vec<(Preset, Vec<f64>)> = Vec::new();
    for &preset in &presets {
        let freqs = args
            .s
            .clone()
            .unwrap_or_else(|| default_frequencies(preset));
        for &s in &freqs {
            if !(s.is_finite() && s > 0.0) {
                return Err(CliError::Config(format!(
                    "frequency must be positive, got {s}"
                )));
            }
            if s * grid.duration() < 20.0 {
                return Err(CliError::Config(format!(
                    "s·tmax = {:.3} < 20; the truncated transform would not be \
                     trustworthy (raise --tmax or s)",
                    s * grid.duration()
                )));
            }
            if preset == Preset::Exp && s < 2.0 {
                return Err(CliError::Config(format!(
                    "preset exp grows like e^t; its operator transform needs s ≥ 2, got {s}"
                )));
            }
        }
        cases.push((preset, freqs));
    }

    let mut worst = 0.0_f64;
    let mut count = 0usize;
    for (preset, freqs) in &cases {
        let source = preset.source();
        for (label, kind) in [("ds", KernelKind::Sine), ("dc", KernelKind::Cosine)] {
            let spec = OperatorSpec::new(kind, order, norm).map_err(config)?;
            let signal = apply_operator(&spec, &source, &grid)?;
            for &s in freqs {
                let query = LaplaceQuery::new(s, preset.laplace(s)?, preset.f0())?;
                let closed = match kind {
                    KernelKind::Sine => ds_transform(order, norm, &query)?,
                    _ => dc_transform(order, norm, &query)?,
                };
                let numeric = numerical_laplace(&signal, s)?;
                let gap = ((numeric - closed) / closed).abs();
                println!(
                    "preset={} op={} s={} numeric={:.9e} closed={:.9e} rel_gap={:.3e}",
                    preset.name(),
                    label,
                    s,
                    numeric,
                    closed,
                    gap
                );
                worst = worst.max(gap);
                count += 1;
            }
        }
    }
    if worst <= args.tol {
        println!(
            "laplace-check: PASS ({count} cases, max rel gap {worst:.3e} ≤ {:.1e})",
            args.tol
        );
        Ok(())
    } else {
        println!(
            "laplace-check: FAIL ({count} cases, max rel gap {worst:.3e} > {:.1e})",
            args.tol
        );
        Err(CliError::Failed(format!(
            "laplace-check: max relative gap {worst:.3e} exceeds tolerance {:.1e}",
            args.tol
        )))
    }
}

fn loop_csv(state: &fracops::memristor::MemristorState) -> Result<String, CliError> {
    let pairs = vi_curve(state).map_err(config)?;
    let mut buf = String::with_capacity(24 * pairs.len() + 8);
    buf.push_str("i,v\n");
    for (v, i) in pairs {
        push_row(&mut buf, &[i, v]);
    }
    Ok(buf)
}

fn windows_csv(grid: &TimeGrid) -> String {
    let mut buf = String::new();
    buf.push_str("t,red,blue,green\n");
    for i in 0..grid.len() {
        let t = grid.node(i);
        if !(3.0..=8.0).contains(&t) {
            continue;
        }
        push_row(
            &mut buf,
            &[
                t,
                KERNEL_COEFFICIENT * (2.0 * t).sin(),
                t.powf(-WINDOW_BLUE_EXPONENT),
                t.powf(-WINDOW_GREEN_EXPONENT),
            ],
        );
    }
    buf
}

fn window_report_lines(label: &str, window: &WindowApprox, report: &WindowReport) -> String {
    format!(
        "window {label} [{}, {}] exponent={:.6}:\n  \
         kernel_gap   = {:.12e}\n  \
         voltage_gap  = {:.6e} (published c0 = {:.12})\n  \
         fitted_c0    = {:.6} with fitted_gap = {:.6e}",
        window.t_lo,
        window.t_hi,
        window.exponent,
        report.kernel_gap,
        report.voltage_gap,
        window.c0,
        report.fitted_c0,
        report.fitted_gap
    )
}

fn run_memristor(args: &MemristorArgs) -> Result<(), CliError> {
    if !(args.tmax.is_finite() && args.tmax >= 8.0) {
        return Err(CliError::Config(format!(
            "--tmax must be at least 8 (one drive period plus both windows), got {}",
            args.tmax
        )));
    }
    let grid = grid_for(args.dt, args.tmax)?;
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;

    let state = build_memristor(&grid);
    write_file(&args.out.join("memristor_loop.csv"), &loop_csv(&state)?)?;
    write_file(&args.out.join("memristor_windows.csv"), &windows_csv(&grid))?;

    let worst = verify_ds_linearization(&grid)?;
    println!("linearization_max_error = {worst:.6e}");
    for (label, window) in [("1", WindowApprox::first()), ("2", WindowApprox::second())] {
        let report = caputo_window_check(&window, &grid)?;
        println!("{}", window_report_lines(label, &window, &report));
    }
    println!(
        "wrote {} and {}",
        args.out.join("memristor_loop.csv").display(),
        args.out.join("memristor_windows.csv").display()
    );
    Ok(())
}

/// Write the complete figure data set into `dir` and return the file names.
///
/// Figures 1–4 are single-operator sweeps of the sine and cosine kernels at
/// N = 1 − α; Figures 5–6 are per-preset comparisons using the published
/// normalization pairs; Figure 7 is the memristor loop plus the window
/// curves. Everything is emitted at α = 2/3, dt = 1e−3, t ∈ [0, 10].
pub fn write_figures(dir: &Path) -> Result<Vec<&'static str>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let grid = grid_for(1e-3, 10.0)?;
    let order = FractionalOrder::new(DEFAULT_ALPHA).map_err(config)?;
    let mut written = Vec::new();

    let sweeps = [
        ("fig1_ds.csv", Preset::Cube, KernelKind::Sine),
        ("fig1_dc.csv", Preset::Cube, KernelKind::Cosine),
        ("fig2_ds.csv", Preset::NegCos, KernelKind::Sine),
        ("fig2_dc.csv", Preset::NegCos, KernelKind::Cosine),
        ("fig3_ds.csv", Preset::Sin, KernelKind::Sine),
        ("fig3_dc.csv", Preset::Sin, KernelKind::Cosine),
        ("fig4_ds.csv", Preset::Exp, KernelKind::Sine),
        ("fig4_dc.csv", Preset::Exp, KernelKind::Cosine),
    ];
    for (name, preset, kind) in sweeps {
        let spec = OperatorSpec::standard(kind, order).map_err(config)?;
        let signal = apply_operator(&spec, &preset.source(), &grid)?;
        write_file(&dir.join(name), &signal_csv(&signal))?;
        written.push(name);
    }

    let comparisons = [
        ("fig5_cube.csv", Preset::Cube),
        ("fig5_negcos.csv", Preset::NegCos),
        ("fig6_sin.csv", Preset::Sin),
        ("fig6_exp.csv", Preset::Exp),
    ];
    for (name, preset) in comparisons {
        let csv = comparison_csv(preset, DEFAULT_ALPHA, &grid)?;
        write_file(&dir.join(name), &csv)?;
        written.push(name);
    }

    let state = build_memristor(&grid);
    write_file(&dir.join("fig7_loop.csv"), &loop_csv(&state)?)?;
    written.push("fig7_loop.csv");
    write_file(&dir.join("fig7_windows.csv"), &windows_csv(&grid))?;
    written.push("fig7_windows.csv");

    Ok(written)
}

fn run_figures(dir: &Path) -> Result<(), CliError> {
    let written = write_figures(dir)?;
    println!(
        "figures: wrote {} files to {}",
        written.len(),
        dir.display()
    );
    Ok(())
}
