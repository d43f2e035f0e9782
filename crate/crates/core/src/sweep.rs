//! Canned experiments: coupling scans, superposition-input scans and a population time series.
//!
//! Each experiment produces a [`SweepResult`] of typed rows plus metadata.
//! Rows are computed independently through a [`GridExecutor`]; the
//! sequential executor lives here, a parallel one can be supplied by the
//! caller. Results are always assembled in grid order.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::f64::consts::{FRAC_PI_4, PI};

use crate::analysis::{analyze, degrees};
use crate::gate::effective_gate;
use crate::model::{
    build_hamiltonian, presets, Basis, CaseKind, ControlState, GateConfig, Pol, QubitInput, StateVector,
};
use crate::propagator::SpectralDecomposition;
use crate::Result;

pub const DEFAULT_ALPHA_POINTS: usize = 41;
pub const DEFAULT_LAMBDA2_POINTS: usize = 30;
pub const DEFAULT_TIME_SAMPLES: usize = 400;
pub const DEFAULT_LAMBDA2_RANGE: (f64, f64) = (0.4, 12.0);

/// `n` evenly spaced points from `a` to `b`, both endpoints included exactly.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| if k == n - 1 { b } else { a + (b - a) * (k as f64) / ((n - 1) as f64) })
            .collect(),
    }
}

/// `|α₋|²` over `[0, 1]`.
pub fn default_alpha_grid() -> Vec<f64> {
    linspace(0.0, 1.0, DEFAULT_ALPHA_POINTS)
}

pub fn default_lambda2_grid() -> Vec<f64> {
    linspace(DEFAULT_LAMBDA2_RANGE.0, DEFAULT_LAMBDA2_RANGE.1, DEFAULT_LAMBDA2_POINTS)
}

/// Two-photon detunings `Δ₂` scanned by default.
pub fn default_detunings(case: CaseKind) -> Vec<f64> {
    match case {
        CaseKind::CaseI => vec![5.0, 10.0, 30.0],
        CaseKind::CaseII => vec![10.0, 20.0, 30.0],
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(&'static str),
    /// Observable undefined for this row (an amplitude it divides by vanishes).
    Absent,
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Absent, Cell::Num)
    }
}

/// Metadata value.
#[derive(Debug, Clone, PartialEq)]
pub enum Meta {
    Num(f64),
    Int(u64),
    Text(String),
    Numbers(Vec<f64>),
    Group(Vec<(&'static str, Meta)>),
}

/// A record type that can be laid out as a table row.
pub trait Row {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

/// Rows in grid order plus a description of how they were produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<R> {
    pub rows: Vec<R>,
    pub metadata: Vec<(&'static str, Meta)>,
}

impl<R: Row> SweepResult<R> {
    pub fn columns(&self) -> &'static [&'static str] {
        R::COLUMNS
    }
}

/// Evaluates a function over a grid, returning results in grid order.
pub trait GridExecutor {
    fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send;
}

/// Plain in-order evaluation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl GridExecutor for Sequential {
    fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}

fn run_grid<E: GridExecutor, T: Sync, R: Send>(
    exec: &E,
    items: &[T],
    f: impl Fn(&T) -> Result<R> + Sync + Send,
) -> Result<Vec<R>> {
    // the first failure in grid order wins, independent of scheduling
    exec.map(items, f).into_iter().collect()
}

pub const BASIS_NOTE: &str = "states 1..9: 1:|2>, 2:a+|+1>, 3:a+|-1>, 4:a-|+1>, 5:a-|-1>, \
6:a+b+|0>, 7:a+b-|0>, 8:a-b+|0>, 9:a-b-|0>; 4x4 gates ordered a-b-, a+b-, a-b+, a+b+; angles in degrees";

pub fn config_meta(c: &GateConfig) -> Meta {
    Meta::Group(vec![
        ("case", Meta::Text(c.case().to_string())),
        ("lambda1", Meta::Num(c.lambda1())),
        ("lambda2", Meta::Num(c.lambda2())),
        ("delta1", Meta::Num(c.delta1())),
        ("delta2", Meta::Num(c.delta2())),
        ("time", Meta::Num(c.time())),
    ])
}

fn base_meta(experiment: &str) -> Vec<(&'static str, Meta)> {
    vec![
        ("experiment", Meta::Text(experiment.to_string())),
        ("version", Meta::Text(env!("CARGO_PKG_VERSION").to_string())),
        ("basis", Meta::Text(BASIS_NOTE.to_string())),
    ]
}

// ---------------------------------------------------------------------------
// Phase shift against retained pair probability, single-pair input.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig2Row {
    pub delta2: f64,
    pub lambda2: f64,
    /// `η₋₊²`
    pub eta2_minus_plus: f64,
    /// `Δφ₊` in degrees from the `a₊b₊` and `a₋b₊` single-pair runs.
    pub dphi_plus_deg: Option<f64>,
}

impl Row for Fig2Row {
    const COLUMNS: &'static [&'static str] = &["delta2", "lambda2", "eta2_mp", "dphi_plus_deg"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Num(self.delta2),
            Cell::Num(self.lambda2),
            Cell::Num(self.eta2_minus_plus),
            self.dphi_plus_deg.into(),
        ]
    }
}

/// Configuration of one scan point: `λ₁ = 1`, `t = π`, and `Δ₁ = Δ₂/2` in case II.
pub fn fig2_config(case: CaseKind, delta2: f64, lambda2: f64) -> Result<GateConfig> {
    match case {
        CaseKind::CaseI => GateConfig::case_i(1.0, lambda2, delta2, PI),
        CaseKind::CaseII => GateConfig::case_ii(1.0, lambda2, delta2 / 2.0, delta2, PI),
    }
}

pub fn fig2_row(case: CaseKind, delta2: f64, lambda2: f64) -> Result<Fig2Row> {
    let g = effective_gate(&fig2_config(case, delta2, lambda2)?)?;
    let diag = g.diagonal_pairs();
    Ok(Fig2Row {
        delta2,
        lambda2,
        eta2_minus_plus: diag.get(Pol::Minus, Pol::Plus).norm_sqr(),
        dphi_plus_deg: g.classical_phases().dphi_plus.map(degrees),
    })
}

pub fn fig2_sweep(case: CaseKind, detunings: &[f64], lambda2_grid: &[f64]) -> Result<SweepResult<Fig2Row>> {
    fig2_sweep_on(&Sequential, case, detunings, lambda2_grid)
}

/// Rows ordered by detuning, then by `λ₂`.
pub fn fig2_sweep_on<E: GridExecutor>(
    exec: &E,
    case: CaseKind,
    detunings: &[f64],
    lambda2_grid: &[f64],
) -> Result<SweepResult<Fig2Row>> {
    let points: Vec<(f64, f64)> = detunings
        .iter()
        .flat_map(|&d| lambda2_grid.iter().map(move |&l| (d, l)))
        .collect();
    let rows = run_grid(exec, &points, |&(d, l)| fig2_row(case, d, l))?;
    let mut metadata = base_meta("fig2");
    metadata.extend([
        ("case", Meta::Text(case.to_string())),
        ("lambda1", Meta::Num(1.0)),
        ("time", Meta::Num(PI)),
        (
            "delta1",
            Meta::Text(match case {
                CaseKind::CaseI => "0".to_string(),
                CaseKind::CaseII => "delta2/2".to_string(),
            }),
        ),
        ("input", Meta::Text(Basis::AMinusBPlus.to_string())),
        ("detunings", Meta::Numbers(detunings.to_vec())),
        ("lambda2_grid", Meta::Numbers(lambda2_grid.to_vec())),
    ]);
    Ok(SweepResult { rows, metadata })
}

// ---------------------------------------------------------------------------
// Population time series.

/// States recorded by [`fig3_timeseries`], in column order.
pub const FIG3_STATES: [Basis; 5] = [
    Basis::AMinusBPlus,
    Basis::AMinusMinus1,
    Basis::APlusPlus1,
    Basis::APlusBMinus,
    Basis::Upper,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig3Row {
    pub t: f64,
    /// Populations of [`FIG3_STATES`].
    pub populations: [f64; 5],
}

impl Row for Fig3Row {
    const COLUMNS: &'static [&'static str] =
        &["t", "P8:a-b+|0>", "P5:a-|-1>", "P2:a+|+1>", "P7:a+b-|0>", "P1:|2>"];
    fn cells(&self) -> Vec<Cell> {
        let mut v = vec![Cell::Num(self.t)];
        v.extend(self.populations.iter().map(|&p| Cell::Num(p)));
        v
    }
}

/// Populations over `t ∈ [0, π]` for case I, `λ₂ = 2.5`, `Δ₂ = 30`, input `a₋b₊`.
pub fn fig3_timeseries(n_samples: usize) -> Result<SweepResult<Fig3Row>> {
    fig3_timeseries_on(&Sequential, &presets::case_i_strong(), n_samples)
}

/// Time series for any configuration, sampled on `[0, config.time()]`.
pub fn fig3_timeseries_on<E: GridExecutor>(
    exec: &E,
    config: &GateConfig,
    n_samples: usize,
) -> Result<SweepResult<Fig3Row>> {
    if n_samples == 0 {
        return Err(crate::Error::InvalidConfig {
            field: "samples",
            reason: "must be positive",
        });
    }
    let spectral = SpectralDecomposition::new(&build_hamiltonian(config))?;
    let psi0 = StateVector::basis(Basis::AMinusBPlus);
    let times = linspace(0.0, config.time(), n_samples);
    let rows = run_grid(exec, &times, |&t| {
        let psi = spectral.propagate(&psi0, t)?;
        Ok(Fig3Row {
            t,
            populations: FIG3_STATES.map(|b| psi.population(b)),
        })
    })?;
    let mut metadata = base_meta("fig3");
    metadata.extend([
        ("config", config_meta(config)),
        ("input", Meta::Text(Basis::AMinusBPlus.to_string())),
        ("samples", Meta::Int(n_samples as u64)),
        ("time_range", Meta::Numbers(vec![0.0, config.time()])),
    ]);
    Ok(SweepResult { rows, metadata })
}

// ---------------------------------------------------------------------------
// Superposition inputs: retention and quality.

fn fig45_config(case: CaseKind) -> GateConfig {
    match case {
        CaseKind::CaseI => presets::case_i_strong(),
        CaseKind::CaseII => presets::case_ii_strong(),
    }
}

fn alpha_points(alpha_grid: &[f64], controls: &[(ControlState, bool)]) -> Vec<(ControlState, bool, f64)> {
    controls
        .iter()
        .flat_map(|&(b, v)| alpha_grid.iter().map(move |&a| (b, v, a)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig4Row {
    pub beta: ControlState,
    pub alpha_minus_sq: f64,
    pub retention: Option<f64>,
    pub quality: Option<f64>,
}

impl Row for Fig4Row {
    const COLUMNS: &'static [&'static str] = &["beta", "alpha_minus_sq", "retention", "quality"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.beta.label()),
            Cell::Num(self.alpha_minus_sq),
            self.retention.into(),
            self.quality.into(),
        ]
    }
}

pub fn fig4_row(config: &GateConfig, beta: ControlState, alpha_minus_sq: f64) -> Result<Fig4Row> {
    let a = analyze(config, &QubitInput::with_alpha_minus_sq(alpha_minus_sq, beta)?)?;
    Ok(Fig4Row {
        beta,
        alpha_minus_sq,
        retention: a.retention,
        quality: a.quality,
    })
}

pub fn fig4_sweep(case: CaseKind, alpha_grid: &[f64]) -> Result<SweepResult<Fig4Row>> {
    fig4_sweep_on(&Sequential, case, alpha_grid)
}

/// `λ₂ = 2.5`, `Δ₂ = 30` (`Δ₁ = 15` in case II), real target amplitudes;
/// rows for `β₁` then `β₂`.
pub fn fig4_sweep_on<E: GridExecutor>(exec: &E, case: CaseKind, alpha_grid: &[f64]) -> Result<SweepResult<Fig4Row>> {
    let config = fig45_config(case);
    let points = alpha_points(alpha_grid, &[(ControlState::Beta1, false), (ControlState::Beta2, false)]);
    let rows = run_grid(exec, &points, |&(b, _, a)| fig4_row(&config, b, a))?;
    let mut metadata = base_meta("fig4");
    metadata.extend([
        ("config", config_meta(&config)),
        ("alpha_minus_sq_grid", Meta::Numbers(alpha_grid.to_vec())),
        ("controls", Meta::Text("beta1=(b+ + b-)/sqrt2, beta2=(sqrt3/2) b+ + (1/2) b-".to_string())),
    ]);
    Ok(SweepResult { rows, metadata })
}

// ---------------------------------------------------------------------------
// Superposition inputs: phase shifts.

/// Initial phase of `α₊` in the variant runs.
pub const VARIANT_TARGET_PHASE: f64 = FRAC_PI_4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig5Row {
    pub beta: ControlState,
    /// `arg α₊ = π/4` instead of real amplitudes.
    pub phase_variant: bool,
    pub alpha_minus_sq: f64,
    pub dphi_plus_deg: Option<f64>,
    pub dphi_minus_deg: Option<f64>,
}

impl Row for Fig5Row {
    const COLUMNS: &'static [&'static str] =
        &["beta", "phase_variant", "alpha_minus_sq", "dphi_plus_deg", "dphi_minus_deg"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.beta.label()),
            Cell::Bool(self.phase_variant),
            Cell::Num(self.alpha_minus_sq),
            self.dphi_plus_deg.into(),
            self.dphi_minus_deg.into(),
        ]
    }
}

pub fn fig5_row(config: &GateConfig, beta: ControlState, phase_variant: bool, alpha_minus_sq: f64) -> Result<Fig5Row> {
    let phase = if phase_variant { VARIANT_TARGET_PHASE } else { 0.0 };
    let q = QubitInput::with_target_phase(alpha_minus_sq, phase, beta)?;
    let a = analyze(config, &q)?;
    Ok(Fig5Row {
        beta,
        phase_variant,
        alpha_minus_sq,
        dphi_plus_deg: a.phases.dphi_plus.map(degrees),
        dphi_minus_deg: a.phases.dphi_minus.map(degrees),
    })
}

/// Case II phase shifts.
pub fn fig5_sweep(alpha_grid: &[f64], with_phase_variant: bool) -> Result<SweepResult<Fig5Row>> {
    fig5_sweep_on(&Sequential, CaseKind::CaseII, alpha_grid, with_phase_variant)
}

/// Rows for `β₁`, `β₂` and, with the variant, `β₁` with `arg α₊ = π/4`.
/// Case I is accepted as a comparison run.
pub fn fig5_sweep_on<E: GridExecutor>(
    exec: &E,
    case: CaseKind,
    alpha_grid: &[f64],
    with_phase_variant: bool,
) -> Result<SweepResult<Fig5Row>> {
    let config = fig45_config(case);
    let mut controls = vec![(ControlState::Beta1, false), (ControlState::Beta2, false)];
    if with_phase_variant {
        controls.push((ControlState::Beta1, true));
    }
    let points = alpha_points(alpha_grid, &controls);
    let rows = run_grid(exec, &points, |&(b, v, a)| fig5_row(&config, b, v, a))?;
    let mut metadata = base_meta("fig5");
    metadata.extend([
        ("config", config_meta(&config)),
        ("alpha_minus_sq_grid", Meta::Numbers(alpha_grid.to_vec())),
        ("variant_alpha_plus_phase_deg", Meta::Num(degrees(VARIANT_TARGET_PHASE))),
        (
            "runs",
            Meta::Text(
                controls
                    .iter()
                    .map(|&(b, v)| if v { format!("{}+phase", b.label()) } else { b.label().to_string() })
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ),
    ]);
    Ok(SweepResult { rows, metadata })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.4, 12.0, 30);
        assert_eq!(g.len(), 30);
        assert_eq!(g[0], 0.4);
        assert_eq!(g[29], 12.0);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
        assert_eq!(default_alpha_grid()[20], 0.5);
    }

    #[test]
    fn fig2_weak_case_i_point() {
        let r = fig2_row(CaseKind::CaseI, 5.0, 1.0).unwrap();
        assert!(r.eta2_minus_plus > 0.9);
        let d = r.dphi_plus_deg.unwrap();
        assert!((d - 10.0).abs() < 1.5, "{d}");
    }

    #[test]
    fn fig2_row_order() {
        let s = fig2_sweep(CaseKind::CaseII, &[10.0, 30.0], &[1.0, 2.0, 3.0]).unwrap();
        let keys: Vec<_> = s.rows.iter().map(|r| (r.delta2, r.lambda2)).collect();
        assert_eq!(
            keys,
            vec![(10.0, 1.0), (10.0, 2.0), (10.0, 3.0), (30.0, 1.0), (30.0, 2.0), (30.0, 3.0)]
        );
    }

    #[test]
    fn fig3_start_and_end() {
        let s = fig3_timeseries(5).unwrap();
        assert_eq!(s.rows.len(), 5);
        assert_eq!(s.rows[0].t, 0.0);
        assert_eq!(s.rows[0].populations, [1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.rows[4].t, PI);
        assert!(fig3_timeseries(0).is_err());
    }

    #[test]
    fn fig4_endpoints_mark_absent() {
        let s = fig4_sweep(CaseKind::CaseII, &[0.0, 1.0]).unwrap();
        assert_eq!(s.rows.len(), 4);
        for r in &s.rows {
            assert!(r.quality.is_some());
        }
        let s = fig5_sweep(&[0.0, 1.0], false).unwrap();
        assert!(s.rows.iter().all(|r| r.dphi_plus_deg.is_none()));
        assert_eq!(s.rows[0].cells()[3], Cell::Absent);
    }

    #[test]
    fn fig5_variant_rows_appended() {
        let s = fig5_sweep(&[0.3, 0.6], true).unwrap();
        assert_eq!(s.rows.len(), 6);
        assert!(s.rows[4].phase_variant && s.rows[4].beta == ControlState::Beta1);
        assert_eq!(Fig5Row::COLUMNS.len(), s.rows[0].cells().len());
    }
}
