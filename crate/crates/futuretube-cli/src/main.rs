//! Command-line front end: figure-data emitters, thermal tables, gauge
//! diagnostics, and the verification-suite runner.
//!
//! Every subcommand resolves its parameters the same way — built-in defaults,
//! overridden by an optional `key=value` config file, overridden by flags —
//! and emits CSV or JSON that is byte-identical across runs of the same
//! configuration.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Matrix2;
use num_complex::Complex64;

use futuretube::gauge::{self, FieldValue};
use futuretube::massshell::ray_filter;
use futuretube::states::kernel_on_interval;
use futuretube::thermal::{self, ThermalVector};
use futuretube::verify::{run_verification, VerificationReport};
use futuretube::{ComplexInterval, FourVector, MassShellGrid, PhaseSpaceSlice};

#[derive(Parser)]
#[command(
    name = "futuretube",
    version,
    about = "Phase-space relativistic quantum mechanics on the future tube",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Space dimension d (1 or 3)
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Particle mass m
    #[arg(long, global = true)]
    mass: Option<f64>,
    /// Filter scale λ
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Reduced Planck constant ħ
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Rapidity cutoff of the mass-shell grid
    #[arg(long, global = true)]
    smax: Option<f64>,
    /// Node count of the mass-shell grid
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Half-width of the output grid (per-subcommand default)
    #[arg(long = "x-extent", global = true)]
    x_extent: Option<f64>,
    /// Spacing of the output grid (per-subcommand default)
    #[arg(long = "x-step", global = true)]
    x_step: Option<f64>,
    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Flat key=value config file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Complex-length grid (t, r, σ, τ, |ζ|) for y = (1, 𝟎)
    FigZeta,
    /// Ray-filter profile (q, S(q)) at scales λ and 4λ
    FigFilter,
    /// Kernel magnitudes ((Re K)², |K|²) over (t, x₁) in d = 3 at λ ∈ {0.1, 20}
    FigKernel,
    /// Thermal equivalence and potentials per β (phase-space vs canonical)
    ThermalTable {
        /// Comma-separated inverse temperatures
        #[arg(long)]
        betas: Option<String>,
    },
    /// Thermodynamic potentials over a β grid (same schema as thermal-table)
    Potentials {
        /// Comma-separated inverse temperatures
        #[arg(long)]
        betas: Option<String>,
    },
    /// Gauge diagnostics (potential, field, integrability) for a named metric
    GaugeCheck {
        /// Which fiber metric to probe
        #[arg(long, value_enum, default_value_t = MetricKind::Abelian)]
        metric: MetricKind,
    },
    /// Run the invariant verification suite; exit 0 iff every check passes
    Verify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricKind {
    /// g ≡ 1: everything vanishes
    Flat,
    /// scalar g = exp(Σ aμ|zμ|²)
    Abelian,
    /// matrix g = exp(A|z₀|² + B|z₁|²) with non-commuting Hermitian A, B
    Nonabelian,
}

/// Failures split by exit code: usage problems exit 2, runtime problems 1.
enum Failure {
    Usage(String),
    Run(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Run(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

impl From<futuretube::Error> for Failure {
    fn from(e: futuretube::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

/// Values read from a `key=value` config file (same names as the flags).
#[derive(Default)]
struct FileConfig {
    dim: Option<usize>,
    mass: Option<f64>,
    lambda: Option<f64>,
    hbar: Option<f64>,
    smax: Option<f64>,
    nodes: Option<usize>,
    x_extent: Option<f64>,
    x_step: Option<f64>,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
}

fn parse_config(path: &Path) -> Result<FileConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Failure::Usage(format!("config line {}: expected key=value, got {raw:?}", idx + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            Failure::Usage(format!("config line {}: invalid {what} value {value:?}", idx + 1))
        };
        match key {
            "dim" => cfg.dim = Some(value.parse().map_err(|_| bad("dim"))?),
            "mass" => cfg.mass = Some(value.parse().map_err(|_| bad("mass"))?),
            "lambda" => cfg.lambda = Some(value.parse().map_err(|_| bad("lambda"))?),
            "hbar" => cfg.hbar = Some(value.parse().map_err(|_| bad("hbar"))?),
            "smax" => cfg.smax = Some(value.parse().map_err(|_| bad("smax"))?),
            "nodes" => cfg.nodes = Some(value.parse().map_err(|_| bad("nodes"))?),
            "x-extent" => cfg.x_extent = Some(value.parse().map_err(|_| bad("x-extent"))?),
            "x-step" => cfg.x_step = Some(value.parse().map_err(|_| bad("x-step"))?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "format" => {
                cfg.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("format")),
                })
            }
            other => {
                return Err(Failure::Usage(format!(
                    "config line {}: unknown key {other:?}",
                    idx + 1
                )))
            }
        }
    }
    Ok(cfg)
}

/// Fully resolved run parameters: defaults ← config file ← flags.
struct RunConfig {
    subcommand: &'static str,
    d: usize,
    m: f64,
    lambda: f64,
    hbar: f64,
    s_max: f64,
    nodes: usize,
    x_extent: f64,
    x_step: f64,
    out: Option<PathBuf>,
    format: OutputFormat,
}

impl RunConfig {
    fn resolve(
        cli: &Cli,
        subcommand: &'static str,
        default_extent: f64,
        default_step: f64,
    ) -> Result<Self, Failure> {
        let file = match &cli.config {
            Some(path) => parse_config(path)?,
            None => FileConfig::default(),
        };
        let cfg = RunConfig {
            subcommand,
            d: cli.dim.or(file.dim).unwrap_or(1),
            m: cli.mass.or(file.mass).unwrap_or(1.0),
            lambda: cli.lambda.or(file.lambda).unwrap_or(1.0),
            hbar: cli.hbar.or(file.hbar).unwrap_or(1.0),
            s_max: cli.smax.or(file.smax).unwrap_or(8.0),
            nodes: cli.nodes.or(file.nodes).unwrap_or(512),
            x_extent: cli.x_extent.or(file.x_extent).unwrap_or(default_extent),
            x_step: cli.x_step.or(file.x_step).unwrap_or(default_step),
            out: cli.out.clone().or(file.out),
            format: cli.format.or(file.format).unwrap_or(OutputFormat::Csv),
        };
        if cfg.d != 1 && cfg.d != 3 {
            return Err(Failure::Usage(format!("dim must be 1 or 3, got {}", cfg.d)));
        }
        for (name, v) in [
            ("mass", cfg.m),
            ("lambda", cfg.lambda),
            ("hbar", cfg.hbar),
            ("smax", cfg.s_max),
            ("x-extent", cfg.x_extent),
            ("x-step", cfg.x_step),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if cfg.nodes < 16 {
            return Err(Failure::Usage(format!("nodes must be at least 16, got {}", cfg.nodes)));
        }
        let _ = cfg.subcommand;
        Ok(cfg)
    }

    fn shell(&self) -> Result<MassShellGrid, Failure> {
        Ok(MassShellGrid::build(self.d, self.m, self.s_max, self.nodes)?.with_hbar(self.hbar)?)
    }

    /// Symmetric lattice k·step for k = −n..n with n = round(extent/step).
    fn lattice(&self) -> Vec<f64> {
        let n = (self.x_extent / self.x_step).round() as i64;
        (-n..=n).map(|k| k as f64 * self.x_step).collect()
    }

    /// Radial lattice k·step for k = 0..n.
    fn radial_lattice(&self) -> Vec<f64> {
        let n = (self.x_extent / self.x_step).round() as i64;
        (0..=n).map(|k| k as f64 * self.x_step).collect()
    }

    /// A real event with a single spatial coordinate along axis 1.
    fn event(&self, t: f64, x1: f64) -> FourVector {
        match self.d {
            1 => FourVector::new(&[t, x1]),
            _ => FourVector::new(&[t, x1, 0.0, 0.0]),
        }
    }
}

/// A rectangular table of floats with named columns; the common output shape.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "null".to_string()
    }
}

impl Table {
    fn csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_float(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn json(&self) -> String {
        let mut s = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            s.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (col, v)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    s.push_str(", ");
                }
                s.push_str(&format!("\"{col}\": {}", fmt_float(*v)));
            }
            s.push('}');
        }
        s.push_str("\n]\n");
        s
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(),
        }
    }
}

fn emit(cfg: &RunConfig, table: &Table) -> Result<(), Failure> {
    let rendered = table.render(cfg.format);
    match &cfg.out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(failure) => failure.exit(),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::FigZeta => fig_zeta(cli),
        Command::FigFilter => fig_filter(cli),
        Command::FigKernel => fig_kernel(cli),
        Command::ThermalTable { betas } => thermal_table(cli, "thermal-table", betas, "0.5,1,2"),
        Command::Potentials { betas } => thermal_table(cli, "potentials", betas, "0.5,1,2,4"),
        Command::GaugeCheck { metric } => gauge_check(cli, *metric),
        Command::Verify => verify(cli),
    }
}

/// σ, τ, and |ζ| of z = (t, r𝐞₁) − i(1, 𝟎) on a (t, r) lattice.
fn fig_zeta(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = RunConfig::resolve(cli, "fig-zeta", 3.0, 0.05)?;
    let y = FourVector::rest(1.0, cfg.d);
    let mut rows = Vec::new();
    for &t in &cfg.lattice() {
        for &r in &cfg.radial_lattice() {
            let z = ComplexInterval::new(cfg.event(t, r), y);
            let len = z.complex_length()?;
            rows.push(vec![t, r, len.sigma, len.tau, len.zeta.norm()]);
        }
    }
    let table = Table { columns: vec!["t", "r", "sigma", "tau", "abs_zeta"], rows };
    emit(&cfg, &table)?;
    Ok(ExitCode::SUCCESS)
}

/// The ray filter S(q) = e^{−λE(q)/ħ} at scales λ and 4λ.
fn fig_filter(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = RunConfig::resolve(cli, "fig-filter", 6.0, 0.05)?;
    let y1 = FourVector::rest(cfg.lambda, cfg.d);
    let y4 = FourVector::rest(4.0 * cfg.lambda, cfg.d);
    let mut rows = Vec::new();
    for &q in &cfg.lattice() {
        let e = (cfg.m * cfg.m + q * q).sqrt();
        let p = cfg.event(e, q);
        rows.push(vec![
            q,
            ray_filter(&y1, &p, cfg.hbar)?,
            ray_filter(&y4, &p, cfg.hbar)?,
        ]);
    }
    let table = Table { columns: vec!["q", "s_lambda", "s_lambda_x4"], rows };
    emit(&cfg, &table)?;
    Ok(ExitCode::SUCCESS)
}

/// Kernel magnitudes on w = (t − iλ, x₁, 0, 0) in d = 3, for a loose
/// (λm/ħ = 0.1) and a sharp (λm/ħ = 20) filter.
fn fig_kernel(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = RunConfig::resolve(cli, "fig-kernel", 2.0, 0.1)?;
    // the kernel figure lives in three space dimensions regardless of --dim
    let scales = [0.1 * cfg.hbar / cfg.m, 20.0 * cfg.hbar / cfg.m];
    let lattice = cfg.lattice();
    let mut rows = Vec::new();
    for &t in &lattice {
        for &x1 in &lattice {
            let mut row = vec![t, x1];
            for lam in scales {
                let w = ComplexInterval::new(
                    FourVector::new(&[t, x1, 0.0, 0.0]),
                    FourVector::rest(lam, 3),
                );
                let k = kernel_on_interval(&w, cfg.m, cfg.hbar)?.value;
                row.push(k.re * k.re);
                row.push(k.norm_sqr());
            }
            rows.push(row);
        }
    }
    let table = Table {
        columns: vec!["t", "x1", "rek2_loose", "absk2_loose", "rek2_sharp", "absk2_sharp"],
        rows,
    };
    emit(&cfg, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_betas(flag: &Option<String>, default: &str) -> Result<Vec<f64>, Failure> {
    let text = flag.as_deref().unwrap_or(default);
    let mut betas = Vec::new();
    for part in text.split(',') {
        let beta: f64 = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid beta value {part:?}")))?;
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Failure::Usage(format!("beta must be positive, got {beta}")));
        }
        betas.push(beta);
    }
    Ok(betas)
}

/// Shared emitter for `thermal-table` and `potentials`: per β, the mean
/// energy through the phase-space translation and through the canonical
/// oracle, their relative difference, and U, S, F, Φ.
fn thermal_table(
    cli: &Cli,
    name: &'static str,
    betas: &Option<String>,
    default_betas: &str,
) -> Result<ExitCode, Failure> {
    let cfg = RunConfig::resolve(cli, name, 12.0, 0.1)?;
    let betas = parse_betas(betas, default_betas)?;
    let grid = Arc::new(cfg.shell()?);
    let mut slice =
        PhaseSpaceSlice::with_grids(0.0, cfg.lambda, cfg.m, cfg.hbar, cfg.x_extent, cfg.x_step, 7.0, 280)?;
    // N cancels in the reported averages, so a production-grade flatness
    // tolerance suffices here; the strict bound needs rapidity spacing ≲ 0.025
    slice.calibrate_with_tolerance(Arc::clone(&grid), 1e-5)?;
    let frame = FourVector::rest(1.0, cfg.d);
    let energy = |p: &FourVector| p.t();
    let pots = thermal::potentials(&grid, &betas, &frame, cfg.hbar)?;
    let mut rows = Vec::new();
    for (beta, pot) in betas.iter().zip(&pots) {
        let tv = ThermalVector::new(*beta, &frame, cfg.hbar)?;
        let a_phase = thermal::thermal_average(&grid, &slice, &energy, &tv)?;
        let a_oracle = thermal::canonical_average(&grid, &energy, &tv);
        rows.push(vec![
            *beta,
            a_phase,
            a_oracle,
            (a_phase - a_oracle) / a_oracle,
            pot.internal_energy,
            pot.entropy,
            pot.free_energy,
            pot.massieu,
        ]);
    }
    let table = Table {
        columns: vec!["beta", "a_phase", "a_oracle", "rel_diff", "u", "s", "f", "phi"],
        rows,
    };
    emit(&cfg, &table)?;
    Ok(ExitCode::SUCCESS)
}

/// Probe points for the gauge diagnostics (d = 1).
fn gauge_probes() -> Vec<ComplexInterval> {
    [
        ([0.0, 0.0], [1.0, 0.0]),
        ([0.3, -0.2], [1.1, 0.2]),
        ([-0.4, 0.5], [1.3, -0.3]),
        ([0.2, 0.1], [0.9, 0.1]),
        ([0.5, -0.5], [1.5, 0.4]),
    ]
    .iter()
    .map(|(x, y)| ComplexInterval::new(FourVector::new(x), FourVector::new(y)))
    .collect()
}

/// Potential/field magnitudes, integrability residual, and stencil error for
/// the named fiber metric at fixed probe points. Exit 1 if a residual
/// exceeds its tolerance.
fn gauge_check(cli: &Cli, metric: MetricKind) -> Result<ExitCode, Failure> {
    let cfg = RunConfig::resolve(cli, "gauge-check", 1.0, 0.5)?;
    let abelian_coeffs = vec![0.6, -0.3];
    let (ma, mb) = gauge::test_metric_pair();
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for z in gauge_probes() {
        let h = gauge::default_step(&z)?;
        let (pot_norm, field_norm, residual, err) = match metric {
            MetricKind::Flat => {
                let g = |_: &ComplexInterval| -> futuretube::Result<f64> { Ok(1.0) };
                let a = gauge::potential_scalar(&g, &z, h)?;
                let f = gauge::field_scalar(&g, &z, h)?;
                let gi = |_: &ComplexInterval| -> futuretube::Result<Matrix2<Complex64>> {
                    Ok(Matrix2::identity())
                };
                let r = gauge::integrability_residual(&gi, &z, h)?;
                (
                    scalar_max(&a.components),
                    field_max_scalar(&f.components),
                    r,
                    a.estimated_error.max(f.estimated_error),
                )
            }
            MetricKind::Abelian => {
                let g = gauge::abelian_test_metric(abelian_coeffs.clone());
                let a = gauge::potential_scalar(&g, &z, h)?;
                let f = gauge::field_scalar(&g, &z, h)?;
                let diag = gauge::abelian_test_metric(abelian_coeffs.clone());
                let gi = move |p: &ComplexInterval| -> futuretube::Result<Matrix2<Complex64>> {
                    Ok(Matrix2::identity() * Complex64::new(diag(p)?, 0.0))
                };
                let r = gauge::integrability_residual(&gi, &z, h)?;
                (
                    scalar_max(&a.components),
                    field_max_scalar(&f.components),
                    r,
                    a.estimated_error.max(f.estimated_error),
                )
            }
            MetricKind::Nonabelian => {
                let g = gauge::nonabelian_test_metric(ma, mb);
                let a = gauge::potential_matrix(&g, &z, h)?;
                let f = gauge::field_matrix(&g, &z, h)?;
                let r = gauge::integrability_residual(&g, &z, h)?;
                (
                    matrix_max(&a.components),
                    field_max_matrix(&f.components),
                    r,
                    a.estimated_error.max(f.estimated_error),
                )
            }
        };
        worst = worst.max(residual);
        rows.push(vec![z.x[0], z.x[1], z.y[0], z.y[1], pot_norm, field_norm, residual, err]);
    }
    let table = Table {
        columns: vec![
            "x0",
            "x1",
            "y0",
            "y1",
            "potential_norm",
            "field_norm",
            "integrability",
            "stencil_error",
        ],
        rows,
    };
    emit(&cfg, &table)?;
    if worst <= futuretube::tolerances::INTEGRABILITY_ABS {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn scalar_max(components: &[Complex64]) -> f64 {
    components.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn field_max_scalar(components: &[Vec<Complex64>]) -> f64 {
    components.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
}

fn matrix_max(components: &[Matrix2<Complex64>]) -> f64 {
    components.iter().map(FieldValue::magnitude).fold(0.0, f64::max)
}

fn field_max_matrix(components: &[Vec<Matrix2<Complex64>>]) -> f64 {
    components.iter().flatten().map(FieldValue::magnitude).fold(0.0, f64::max)
}

/// Run the verification suite, print the per-check table, optionally write
/// the report, and map `overall` onto the exit code.
fn verify(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = RunConfig::resolve(cli, "verify", 12.0, 0.1)?;
    let report = run_verification()?;
    match (&cfg.out, cfg.format) {
        (None, OutputFormat::Json) => print!("{}", report_json(&report)?),
        (None, OutputFormat::Csv) => print!("{}", report_text(&report)),
        (Some(path), format) => {
            let rendered = match format {
                OutputFormat::Csv => report_csv(&report),
                OutputFormat::Json => report_json(&report)?,
            };
            fs::write(path, rendered)?;
            print!("{}", report_text(&report));
        }
    }
    if report.overall {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn report_text(report: &VerificationReport) -> String {
    let name_width = report
        .records
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(5)
        .max("check".len());
    let mut s = format!(
        "{:<name_width$}  {:>13}  {:>13}  {:>9}  {:<5}  {:>8}\n",
        "check", "computed", "expected", "tolerance", "pass", "time"
    );
    for r in &report.records {
        s.push_str(&format!(
            "{:<name_width$}  {:>13.6e}  {:>13.6e}  {:>9.1e}  {:<5}  {:>7.3}s\n",
            r.name,
            r.computed,
            r.expected,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" },
            r.runtime,
        ));
    }
    s.push_str(&format!("overall: {}\n", if report.overall { "PASS" } else { "FAIL" }));
    s
}

fn report_csv(report: &VerificationReport) -> String {
    let mut s = String::from("name,computed,expected,tolerance,pass,runtime\n");
    for r in &report.records {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.name,
            fmt_float(r.computed),
            fmt_float(r.expected),
            fmt_float(r.tolerance),
            r.pass,
            fmt_float(r.runtime),
        ));
    }
    s
}

fn report_json(report: &VerificationReport) -> Result<String, Failure> {
    serde_json::to_string_pretty(report)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure::Run(format!("cannot serialize report: {e}")))
}
