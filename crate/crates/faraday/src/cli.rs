//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use faraday_core::analysis::{analyze, degrees, PairAmplitudes};
use faraday_core::gate::{cnot_synthesis_with, effective_gate};
use faraday_core::linalg::cis;
use faraday_core::model::{presets, CaseKind, GateConfig, Pol, QubitInput};
use faraday_core::sweep::{
    config_meta, default_detunings, fig2_sweep_on, fig3_timeseries_on, fig4_sweep_on, fig5_sweep_on, linspace, Cell,
    Meta, DEFAULT_ALPHA_POINTS, DEFAULT_LAMBDA2_POINTS, DEFAULT_LAMBDA2_RANGE, DEFAULT_TIME_SAMPLES, BASIS_NOTE,
};
use faraday_core::C64;

use crate::acceptance;
use crate::parallel::Parallel;
use crate::table::{meta_json, Format, Table};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "faraday", version, about = "Conditional Faraday two-photon gate simulator")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Propagate one input and report every gate observable.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Phase shift against retained probability over a coupling scan.
    Fig2 {
        #[arg(long, value_enum, default_value = "I")]
        case: CaseArg,
        /// Two-photon detunings (comma separated); default depends on the case.
        #[arg(long = "delta2", value_delimiter = ',')]
        detunings: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_LAMBDA2_RANGE.0)]
        lambda2_min: f64,
        #[arg(long, default_value_t = DEFAULT_LAMBDA2_RANGE.1)]
        lambda2_max: f64,
        #[arg(long, default_value_t = DEFAULT_LAMBDA2_POINTS)]
        lambda2_points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Basis-state populations over one interaction period (case I).
    Fig3 {
        #[arg(long, default_value_t = DEFAULT_TIME_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Retention and quality factor for superposition inputs.
    Fig4 {
        #[arg(long, value_enum, default_value = "I")]
        case: CaseArg,
        #[arg(long, default_value_t = DEFAULT_ALPHA_POINTS)]
        alpha_points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Phase shifts for superposition inputs.
    Fig5 {
        #[arg(long, value_enum, default_value = "II")]
        case: CaseArg,
        #[arg(long, default_value_t = DEFAULT_ALPHA_POINTS)]
        alpha_points: usize,
        /// Add runs with a 45 degree initial phase on the a+ amplitude.
        #[arg(long)]
        phase_variant: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Controlled-NOT from repeated applications and a target basis change.
    Cnot {
        #[arg(long, default_value_t = 2.0)]
        lambda1: f64,
        #[arg(long, default_value_t = 6.85)]
        lambda2: f64,
        #[arg(long, default_value_t = 65.0)]
        delta1: f64,
        #[arg(long, default_value_t = 70.0)]
        delta2: f64,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        time: f64,
        #[arg(long, default_value_t = 3)]
        applications: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the acceptance checks and print a pass/fail table.
    Accept,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    #[value(name = "I")]
    One,
    #[value(name = "II")]
    Two,
}

impl From<CaseArg> for CaseKind {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::One => CaseKind::CaseI,
            CaseArg::Two => CaseKind::CaseII,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    #[arg(long, value_enum, default_value = "I")]
    case: CaseArg,
    #[arg(long, default_value_t = 1.0)]
    lambda1: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda2: f64,
    #[arg(long, default_value_t = 0.0)]
    delta1: f64,
    #[arg(long, default_value_t = 5.0)]
    delta2: f64,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    time: f64,
}

/// Amplitudes as `magnitude@phase-degrees` (or a bare magnitude).
#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long, default_value = "0", value_parser = parse_amplitude)]
    alpha_plus: C64,
    #[arg(long, default_value = "1", value_parser = parse_amplitude)]
    alpha_minus: C64,
    #[arg(long, default_value = "1", value_parser = parse_amplitude)]
    beta_plus: C64,
    #[arg(long, default_value = "0", value_parser = parse_amplitude)]
    beta_minus: C64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Parses `mag@deg` into `mag·e^{i·deg}`.
pub fn parse_amplitude(s: &str) -> Result<C64, String> {
    let (mag, deg) = match s.split_once('@') {
        Some((m, d)) => (m, d),
        None => (s, "0"),
    };
    let mag: f64 = mag.trim().parse().map_err(|_| format!("bad magnitude {mag:?}"))?;
    let deg: f64 = deg.trim().parse().map_err(|_| format!("bad phase {deg:?}"))?;
    if !(mag.is_finite() && mag >= 0.0 && deg.is_finite()) {
        return Err("magnitude must be finite and non-negative, phase finite".into());
    }
    Ok(cis(deg.to_radians()) * mag)
}

/// What to compute.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Run { config: GateConfig, input: QubitInput },
    Fig2 { case: CaseKind, detunings: Vec<f64>, lambda2_grid: Vec<f64> },
    Fig3 { samples: usize },
    Fig4 { case: CaseKind, alpha_grid: Vec<f64> },
    Fig5 { case: CaseKind, alpha_grid: Vec<f64>, phase_variant: bool },
    Cnot { config: GateConfig, applications: u32 },
    Accept,
}

/// A fully validated request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn usage(e: faraday_core::Error) -> CliError {
    let msg = match e {
        faraday_core::Error::InvalidConfig { field, reason } => format!("--{}: {reason}", field.replace('_', "-")),
        faraday_core::Error::NegativeTime(t) => format!("--time: must be finite and non-negative, got {t}"),
        faraday_core::Error::NotNormalized { qubit, norm_sq } => format!(
            "--{qubit}-plus/--{qubit}-minus: squared magnitudes must sum to 1, got {norm_sq}"
        ),
        other => other.to_string(),
    };
    CliError::Usage(msg)
}

fn positive(flag: &str, n: usize) -> Result<usize, CliError> {
    if n == 0 {
        Err(CliError::Usage(format!("--{flag}: must be positive")))
    } else {
        Ok(n)
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<RunSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (command, out) = match cli.command {
        Cmd::Run { config, input, out } => {
            let cfg = GateConfig::new(
                config.case.into(),
                config.lambda1,
                config.lambda2,
                config.delta1,
                config.delta2,
                config.time,
            )
            .map_err(usage)?;
            let q = QubitInput::new(input.alpha_plus, input.alpha_minus, input.beta_plus, input.beta_minus)
                .map_err(usage)?;
            (Command::Run { config: cfg, input: q }, Some(out))
        }
        Cmd::Fig2 { case, detunings, lambda2_min, lambda2_max, lambda2_points, out } => {
            let case: CaseKind = case.into();
            let detunings = if detunings.is_empty() { default_detunings(case) } else { detunings };
            let grid = linspace(lambda2_min, lambda2_max, positive("lambda2-points", lambda2_points)?);
            // validate every grid corner before computing
            for &d in &detunings {
                for &l in [grid[0], grid[grid.len() - 1]].iter() {
                    faraday_core::sweep::fig2_config(case, d, l).map_err(usage)?;
                }
            }
            (Command::Fig2 { case, detunings, lambda2_grid: grid }, Some(out))
        }
        Cmd::Fig3 { samples, out } => (Command::Fig3 { samples: positive("samples", samples)? }, Some(out)),
        Cmd::Fig4 { case, alpha_points, out } => (
            Command::Fig4 {
                case: case.into(),
                alpha_grid: linspace(0.0, 1.0, positive("alpha-points", alpha_points)?),
            },
            Some(out),
        ),
        Cmd::Fig5 { case, alpha_points, phase_variant, out } => (
            Command::Fig5 {
                case: case.into(),
                alpha_grid: linspace(0.0, 1.0, positive("alpha-points", alpha_points)?),
                phase_variant,
            },
            Some(out),
        ),
        Cmd::Cnot { lambda1, lambda2, delta1, delta2, time, applications, out } => {
            let cfg = GateConfig::case_ii(lambda1, lambda2, delta1, delta2, time).map_err(usage)?;
            if applications == 0 {
                return Err(CliError::Usage("--applications: must be at least 1".into()));
            }
            (Command::Cnot { config: cfg, applications }, Some(out))
        }
        Cmd::Accept => (Command::Accept, None),
    };
    let (format, output) = match out {
        Some(o) => (
            match o.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            },
            o.output,
        ),
        None => (Format::Csv, None),
    };
    Ok(RunSpec { command, format, output })
}

const PAIR_KEYS: [&str; 4] = ["pp", "pm", "mp", "mm"];

fn run_columns() -> Vec<String> {
    let mut c: Vec<String> = ["case", "lambda1", "lambda2", "delta1", "delta2", "time", "p0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for k in PAIR_KEYS {
        c.push(format!("c_{k}_re"));
        c.push(format!("c_{k}_im"));
        c.push(format!("eta2_{k}"));
    }
    for s in [
        "dphi_plus_deg",
        "dphi_minus_deg",
        "phi_bar_plus_deg",
        "phi_bar_minus_deg",
        "classical_dphi_plus_deg",
        "classical_dphi_minus_deg",
        "retention",
        "quality",
    ] {
        c.push(s.to_string());
    }
    c
}

fn case_text(c: CaseKind) -> &'static str {
    match c {
        CaseKind::CaseI => "I",
        CaseKind::CaseII => "II",
    }
}

fn deg(x: Option<f64>) -> Cell {
    x.map(degrees).into()
}

/// One-record table with every observable of a single run.
pub fn run_table(config: &GateConfig, q: &QubitInput) -> Result<Table, CliError> {
    let a = analyze(config, q)?;
    let classical = effective_gate(config)?.classical_phases();
    let mut row = vec![
        Cell::Text(case_text(config.case())),
        Cell::Num(config.lambda1()),
        Cell::Num(config.lambda2()),
        Cell::Num(config.delta1()),
        Cell::Num(config.delta2()),
        Cell::Num(config.time()),
        Cell::Num(a.p0),
    ];
    for (k, &(ai, bj)) in PairAmplitudes::ORDER.iter().enumerate() {
        let z = a.c.0[k];
        row.push(Cell::Num(z.re));
        row.push(Cell::Num(z.im));
        row.push(a.eta.get(ai, bj).map(|e| e * e).into());
    }
    row.extend([
        deg(a.phases.dphi_plus),
        deg(a.phases.dphi_minus),
        deg(a.phases.phi_bar_plus),
        deg(a.phases.phi_bar_minus),
        deg(classical.dphi_plus),
        deg(classical.dphi_minus),
        a.retention.into(),
        a.quality.into(),
    ]);
    let cols = run_columns();
    let mut t = Table::new(&cols.iter().map(String::as_str).collect::<Vec<_>>());
    t.push(row);
    t.metadata.insert("experiment".into(), "run".into());
    t.metadata.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    t.metadata.insert("basis".into(), BASIS_NOTE.into());
    t.metadata.insert("config".into(), meta_json(&config_meta(config)));
    let amp = |z: C64| Meta::Numbers(vec![z.re, z.im]);
    t.metadata.insert(
        "input".into(),
        meta_json(&Meta::Group(vec![
            ("alpha_plus", amp(q.alpha(Pol::Plus))),
            ("alpha_minus", amp(q.alpha(Pol::Minus))),
            ("beta_plus", amp(q.beta(Pol::Plus))),
            ("beta_minus", amp(q.beta(Pol::Minus))),
        ])),
    );
    Ok(t)
}

/// One-record table: the synthesized matrix entries and its score.
pub fn cnot_table(config: &GateConfig, applications: u32) -> Result<Table, CliError> {
    let s = cnot_synthesis_with(config, applications)?;
    let mut cols: Vec<String> = vec!["applications".into()];
    let mut row = vec![Cell::Int(applications as u64)];
    for i in 0..4 {
        for j in 0..4 {
            let z = s.result.m.0[i][j];
            cols.push(format!("m{}{}_re", i + 1, j + 1));
            cols.push(format!("m{}{}_im", i + 1, j + 1));
            row.push(Cell::Num(z.re));
            row.push(Cell::Num(z.im));
        }
    }
    let sc = s.score;
    for (name, v) in [
        ("single_conditional_phase_deg", sc.single_conditional_phase_deg),
        ("single_minus_block_phase_deg", sc.single_minus_block_phase_deg),
        ("upper_diag_abs_1", sc.upper_diagonal[0]),
        ("upper_diag_abs_2", sc.upper_diagonal[1]),
        ("upper_phase_deg", sc.upper_phase_deg),
        ("lower_antidiag_abs_1", sc.lower_antidiagonal[0]),
        ("lower_antidiag_abs_2", sc.lower_antidiagonal[1]),
        ("lower_phase_deg", sc.lower_phase_deg),
        ("max_small", sc.max_small),
        ("max_off_block", sc.max_off_block),
        ("distance_per_block", sc.distance_per_block),
        ("distance_global", sc.distance_global),
        ("leakage", sc.leakage),
    ] {
        cols.push(name.into());
        row.push(Cell::Num(v));
    }
    let mut t = Table::new(&cols.iter().map(String::as_str).collect::<Vec<_>>());
    t.push(row);
    t.metadata.insert("experiment".into(), "cnot".into());
    t.metadata.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    t.metadata.insert("basis".into(), BASIS_NOTE.into());
    t.metadata.insert("config".into(), meta_json(&config_meta(config)));
    t.metadata.insert(
        "target_rotation".into(),
        "a- -> (a- + a+)/sqrt2, a+ -> (a- - a+)/sqrt2, matrix printed as T^dagger M^n T".into(),
    );
    Ok(t)
}

/// Computes the table for a non-acceptance command.
pub fn build_table(command: &Command) -> Result<Table, CliError> {
    Ok(match command {
        Command::Run { config, input } => run_table(config, input)?,
        Command::Fig2 { case, detunings, lambda2_grid } => {
            (&fig2_sweep_on(&Parallel, *case, detunings, lambda2_grid)?).into()
        }
        Command::Fig3 { samples } => (&fig3_timeseries_on(&Parallel, &presets::case_i_strong(), *samples)?).into(),
        Command::Fig4 { case, alpha_grid } => (&fig4_sweep_on(&Parallel, *case, alpha_grid)?).into(),
        Command::Fig5 { case, alpha_grid, phase_variant } => {
            (&fig5_sweep_on(&Parallel, *case, alpha_grid, *phase_variant)?).into()
        }
        Command::Cnot { config, applications } => cnot_table(config, *applications)?,
        Command::Accept => unreachable!("acceptance has no table"),
    })
}

pub fn execute(spec: &RunSpec, stdout: &mut dyn Write) -> Result<(), CliError> {
    if spec.command == Command::Accept {
        let outcomes = acceptance::run_all();
        for o in &outcomes {
            writeln!(stdout, "{o}")?;
        }
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        writeln!(stdout, "{} passed, {failed} failed", outcomes.len() - failed)?;
        return if failed == 0 { Ok(()) } else { Err(CliError::AcceptanceFailed(failed)) };
    }
    let table = build_table(&spec.command)?;
    match &spec.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(spec.format, &mut w)?;
            w.flush()?;
        }
        None => table.write(spec.format, stdout)?,
    }
    Ok(())
}

/// Parses, runs, reports errors on `stderr`, and returns the exit status.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|spec| execute(&spec, stdout));
    match result {
        Ok(()) => 0,
        Err(CliError::Clap(e)) => {
            let _ = write!(stderr, "{}", e.render());
            if e.use_stderr() { 1 } else { 0 }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
