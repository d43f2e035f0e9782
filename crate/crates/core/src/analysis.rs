//! Gate-quality observables after projecting the atom onto `|0⟩`.
//!
//! Given the output amplitudes `C_ij` of `a_i†b_j†|0⟩` (`i` target, `j`
//! control) and the input `α_i, β_j`, the observables are:
//!
//! - `P₀ = Σ|C_ij|²`, the probability to find the atom back in `|0⟩`;
//! - `η_ij = |C_ij| / |α_i β_j|`, the retained fraction of each pair;
//! - `Δφ_j = (φ₊ⱼ − φ₋ⱼ − φ₊ᵃ + φ₋ᵃ)/2`, the conditional rotation of the target;
//! - `φ̄_j = (φ₊ⱼ + φ₋ⱼ − φ₊ᵃ − φ₋ᵃ)/2 − φⱼᵇ`, the common phase;
//! - `R`, how well the control intensity ratio `|β₊/β₋|²` survives;
//! - the quality factor, `η²` of the dominant pair.
//!
//! The phase combinations are computed as the argument of the matching
//! product of amplitudes, so each one is wrapped exactly once: `Δφ_j` and
//! `φ̄_j` come out in `(−π/2, π/2]` before the `φᵇ` subtraction.

use core::f64::consts::PI;

use crate::linalg::{cis, Matrix4, C64, ZERO};
use crate::model::{build_hamiltonian, embed_input, Basis, CaseKind, GateConfig, Pol, QubitInput, StateVector};
use crate::propagator::propagate;
use crate::{wrap_phase, Error, Result};

/// Magnitudes at or below this are treated as absent when dividing or
/// taking phases.
pub const EPS_GUARD: f64 = 1e-6;

/// The four ground-state amplitudes `C₊₊, C₊₋, C₋₊, C₋₋` (states 6, 7, 8, 9).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAmplitudes(pub [C64; 4]);

impl PairAmplitudes {
    pub const ORDER: [(Pol, Pol); 4] = [
        (Pol::Plus, Pol::Plus),
        (Pol::Plus, Pol::Minus),
        (Pol::Minus, Pol::Plus),
        (Pol::Minus, Pol::Minus),
    ];

    fn slot(a: Pol, b: Pol) -> usize {
        match (a, b) {
            (Pol::Plus, Pol::Plus) => 0,
            (Pol::Plus, Pol::Minus) => 1,
            (Pol::Minus, Pol::Plus) => 2,
            (Pol::Minus, Pol::Minus) => 3,
        }
    }

    pub fn get(&self, a: Pol, b: Pol) -> C64 {
        self.0[Self::slot(a, b)]
    }

    pub fn total_probability(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Per-pair values in the same `++, +−, −+, −−` order as [`PairAmplitudes`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PerPair<T>(pub [T; 4]);

impl<T: Copy> PerPair<T> {
    pub fn get(&self, a: Pol, b: Pol) -> T {
        self.0[PairAmplitudes::slot(a, b)]
    }
}

/// Common and differential phases for each control polarization, radians.
///
/// A field is `None` when an amplitude it needs is at or below [`EPS_GUARD`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseObservables {
    pub phi_bar_plus: Option<f64>,
    pub phi_bar_minus: Option<f64>,
    pub dphi_plus: Option<f64>,
    pub dphi_minus: Option<f64>,
}

impl PhaseObservables {
    pub fn dphi(&self, control: Pol) -> Option<f64> {
        match control {
            Pol::Plus => self.dphi_plus,
            Pol::Minus => self.dphi_minus,
        }
    }

    pub fn phi_bar(&self, control: Pol) -> Option<f64> {
        match control {
            Pol::Plus => self.phi_bar_plus,
            Pol::Minus => self.phi_bar_minus,
        }
    }
}

/// Everything measured on one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateAnalysis {
    pub p0: f64,
    pub c: PairAmplitudes,
    pub eta: PerPair<Option<f64>>,
    /// `arg C_ij` in `(−π, π]` (zero for a vanishing amplitude).
    pub phi: PerPair<f64>,
    pub phases: PhaseObservables,
    pub retention: Option<f64>,
    pub quality: Option<f64>,
}

/// `|0⟩⟨0|ψ⟩`: the ground-state probability and the four pair amplitudes.
pub fn project_ground(psi_out: &StateVector) -> (f64, PairAmplitudes) {
    let c = PairAmplitudes(PairAmplitudes::ORDER.map(|(a, b)| psi_out.amp(Basis::pair(a, b))));
    (c.total_probability(), c)
}

/// `η_ij = |C_ij| / |α_i β_j|`, absent when the input product is below the guard.
pub fn amplitude_ratios(c: &PairAmplitudes, q: &QubitInput) -> PerPair<Option<f64>> {
    PerPair(PairAmplitudes::ORDER.map(|(a, b)| {
        let denom = (q.alpha(a) * q.beta(b)).norm();
        (denom > EPS_GUARD).then(|| c.get(a, b).norm() / denom)
    }))
}

/// Unit phase factor of `z` (`z/|z|`).
fn unit(z: C64) -> C64 {
    let r = z.norm();
    if r > 0.0 {
        z / r
    } else {
        C64::new(1.0, 0.0)
    }
}

/// Phase combinations for one control polarization given the two target
/// amplitudes and the input phase factors.
fn branch_phases(c_plus: C64, c_minus: C64, a_plus: C64, a_minus: C64, b: C64) -> (f64, f64) {
    let dphi = (c_plus * c_minus.conj() * a_plus.conj() * a_minus).arg() / 2.0;
    let phi_bar = wrap_phase((c_plus * c_minus * a_plus.conj() * a_minus.conj()).arg() / 2.0 - b.arg());
    (phi_bar, dphi)
}

/// `φ̄±` and `Δφ±` for a superposition input.
pub fn phase_observables(c: &PairAmplitudes, q: &QubitInput) -> PhaseObservables {
    let mut out = PhaseObservables::default();
    for control in [Pol::Plus, Pol::Minus] {
        let cp = c.get(Pol::Plus, control);
        let cm = c.get(Pol::Minus, control);
        let defined = [Pol::Plus, Pol::Minus].iter().all(|&a| {
            c.get(a, control).norm() > EPS_GUARD && (q.alpha(a) * q.beta(control)).norm() > EPS_GUARD
        });
        if !defined {
            continue;
        }
        let (phi_bar, dphi) = branch_phases(
            cp,
            cm,
            unit(q.alpha_plus),
            unit(q.alpha_minus),
            unit(q.beta(control)),
        );
        match control {
            Pol::Plus => {
                out.phi_bar_plus = Some(phi_bar);
                out.dphi_plus = Some(dphi);
            }
            Pol::Minus => {
                out.phi_bar_minus = Some(phi_bar);
                out.dphi_minus = Some(dphi);
            }
        }
    }
    out
}

/// Phases of the "classical" runs, where each pair `a_i†b_j†|0⟩` is sent in
/// alone with unit amplitude and `diag` holds the amplitude it keeps.
pub fn classical_phase_observables(diag: &PairAmplitudes) -> PhaseObservables {
    let one = C64::new(1.0, 0.0);
    let mut out = PhaseObservables::default();
    for control in [Pol::Plus, Pol::Minus] {
        let cp = diag.get(Pol::Plus, control);
        let cm = diag.get(Pol::Minus, control);
        if cp.norm() <= EPS_GUARD || cm.norm() <= EPS_GUARD {
            continue;
        }
        let (phi_bar, dphi) = branch_phases(cp, cm, one, one, one);
        match control {
            Pol::Plus => {
                out.phi_bar_plus = Some(phi_bar);
                out.dphi_plus = Some(dphi);
            }
            Pol::Minus => {
                out.phi_bar_minus = Some(phi_bar);
                out.dphi_minus = Some(dphi);
            }
        }
    }
    out
}

/// `R = ((|C₊₊|² + |C₋₊|²)/(|C₊₋|² + |C₋₋|²)) · |β₋|²/|β₊|²`.
pub fn retention(c: &PairAmplitudes, q: &QubitInput) -> Option<f64> {
    let bp = q.beta_plus.norm();
    let bm = q.beta_minus.norm();
    if bp <= EPS_GUARD || bm <= EPS_GUARD {
        return None;
    }
    let num = c.get(Pol::Plus, Pol::Plus).norm_sqr() + c.get(Pol::Minus, Pol::Plus).norm_sqr();
    let den = c.get(Pol::Plus, Pol::Minus).norm_sqr() + c.get(Pol::Minus, Pol::Minus).norm_sqr();
    if den <= EPS_GUARD * EPS_GUARD {
        return None;
    }
    Some(num / den * (bm * bm) / (bp * bp))
}

const TIE_TOL: f64 = 1e-12;

/// `η₋₊²` when `|α₋|² ≥ 1/2`, `η₊₋²` when `|α₋|² ≤ 1/2`; the smaller of the
/// two at the tie.
pub fn quality_factor(eta: &PerPair<Option<f64>>, q: &QubitInput) -> Result<f64> {
    let a2 = q.alpha_minus.norm_sqr();
    let mp = eta.get(Pol::Minus, Pol::Plus).map(|e| e * e);
    let pm = eta.get(Pol::Plus, Pol::Minus).map(|e| e * e);
    let undefined = Error::Undefined("quality factor");
    if (a2 - 0.5).abs() <= TIE_TOL {
        match (mp, pm) {
            (Some(x), Some(y)) => Ok(x.min(y)),
            _ => Err(undefined),
        }
    } else if a2 > 0.5 {
        mp.ok_or(undefined)
    } else {
        pm.ok_or(undefined)
    }
}

/// Builds every observable from a propagated output state.
pub fn analyze_output(psi_out: &StateVector, q: &QubitInput) -> GateAnalysis {
    let (p0, c) = project_ground(psi_out);
    let eta = amplitude_ratios(&c, q);
    GateAnalysis {
        p0,
        c,
        eta,
        phi: PerPair(c.0.map(|z| if z == ZERO { 0.0 } else { wrap_phase(z.arg()) })),
        phases: phase_observables(&c, q),
        retention: retention(&c, q),
        quality: quality_factor(&eta, q).ok(),
    }
}

/// Propagates `q` under `config` for `config.time()` and analyzes the result.
pub fn analyze(config: &GateConfig, q: &QubitInput) -> Result<GateAnalysis> {
    let psi0 = embed_input(q)?;
    let out = propagate(&build_hamiltonian(config), &psi0, config.time())?;
    Ok(analyze_output(&out, q))
}

/// Ideal diagonal gate over `{a₋b₋, a₊b₋, a₋b₊, a₊b₊}` assuming `η_ij = 1`.
///
/// - Case I: `e^{iφ̄} diag(e^{iΔφ}, e^{−iΔφ}, e^{−iΔφ}, e^{iΔφ})`, with
///   `φ̄ = φ̄₊ = φ̄₋` and `Δφ = Δφ₊ = −Δφ₋`.
/// - Case II: `diag(1, 1, e^{i(φ̄₊−Δφ₊)}, e^{i(φ̄₊+Δφ₊)})`; the `b₋` block is
///   left untouched and the `b₊` block rotates the target.
///
/// In both cases `a₊` carries `e^{+iΔφ}` and `a₋` carries `e^{−iΔφ}`
/// relative to the common phase of its control block.
pub fn ideal_unitary(case: CaseKind, phi_bar: f64, dphi: f64) -> Matrix4 {
    let d = match case {
        CaseKind::CaseI => [cis(dphi), cis(-dphi), cis(-dphi), cis(dphi)].map(|z| z * cis(phi_bar)),
        CaseKind::CaseII => [
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            cis(phi_bar - dphi),
            cis(phi_bar + dphi),
        ],
    };
    Matrix4::from_diagonal(&d)
}

/// Converts radians to degrees.
pub fn degrees(rad: f64) -> f64 {
    rad * 180.0 / PI
}

/// Converts degrees to radians.
pub fn radians(deg: f64) -> f64 {
    deg * PI / 180.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{presets, ControlState};

    #[test]
    fn project_basis_examples() {
        let (p0, c) = project_ground(&StateVector::basis(Basis::APlusBPlus));
        assert_eq!(p0, 1.0);
        assert_eq!(c.get(Pol::Plus, Pol::Plus), C64::new(1.0, 0.0));
        assert_eq!(c.0[1..], [ZERO; 3]);
        let (p0, c) = project_ground(&StateVector::basis(Basis::Upper));
        assert_eq!(p0, 0.0);
        assert_eq!(c.0, [ZERO; 4]);
    }

    #[test]
    fn classical_case_i_strong_p0() {
        let a = analyze(&presets::case_i_strong(), &QubitInput::basis(Pol::Minus, Pol::Plus)).unwrap();
        assert!(a.p0 >= 0.99, "p0 = {}", a.p0);
    }

    #[test]
    fn eta_absent_for_missing_pairs() {
        let q = QubitInput::basis(Pol::Minus, Pol::Plus);
        let a = analyze(&presets::case_i_weak(), &q).unwrap();
        assert!(a.eta.get(Pol::Minus, Pol::Plus).is_some());
        for (i, j) in [(Pol::Plus, Pol::Plus), (Pol::Plus, Pol::Minus), (Pol::Minus, Pol::Minus)] {
            assert!(a.eta.get(i, j).is_none());
        }
        // single pair: no phase difference can be formed, and no retention
        assert_eq!(a.phases, PhaseObservables::default());
        assert!(a.retention.is_none());
    }

    #[test]
    fn free_rabi_cycle_is_ideal() {
        let cfg = GateConfig::case_i(1.0, 0.0, 5.0, core::f64::consts::PI).unwrap();
        for beta in ControlState::ALL {
            let q = QubitInput::with_alpha_minus_sq(0.3, beta).unwrap();
            let a = analyze(&cfg, &q).unwrap();
            for e in a.eta.0 {
                assert!((e.unwrap() - 1.0).abs() < 1e-10);
            }
            assert!(a.phases.dphi_plus.unwrap().abs() < 1e-10);
            assert!(a.phases.dphi_minus.unwrap().abs() < 1e-10);
            assert!((a.retention.unwrap() - 1.0).abs() < 1e-10);
            assert!((a.quality.unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn quality_selection_and_tie() {
        let q_hi = QubitInput::with_alpha_minus_sq(0.8, ControlState::Beta1).unwrap();
        let q_lo = QubitInput::with_alpha_minus_sq(0.2, ControlState::Beta1).unwrap();
        let q_tie = QubitInput::with_alpha_minus_sq(0.5, ControlState::Beta1).unwrap();
        let eta = PerPair([Some(1.0), Some(0.9), Some(0.8), Some(1.0)]);
        assert!((quality_factor(&eta, &q_hi).unwrap() - 0.64).abs() < 1e-15);
        assert!((quality_factor(&eta, &q_lo).unwrap() - 0.81).abs() < 1e-15);
        assert!((quality_factor(&eta, &q_tie).unwrap() - 0.64).abs() < 1e-15);
        let eta = PerPair([Some(1.0), None, Some(0.8), Some(1.0)]);
        assert_eq!(quality_factor(&eta, &q_lo), Err(Error::Undefined("quality factor")));
    }

    #[test]
    fn retention_guards() {
        let c = PairAmplitudes([C64::new(0.5, 0.0); 4]);
        let q = QubitInput::basis(Pol::Plus, Pol::Plus);
        assert!(retention(&c, &q).is_none());
        let q = QubitInput::with_alpha_minus_sq(0.5, ControlState::Beta2).unwrap();
        assert!((retention(&c, &q).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let c = PairAmplitudes([C64::new(0.5, 0.0), ZERO, C64::new(0.5, 0.0), ZERO]);
        assert!(retention(&c, &q).is_none());
    }

    #[test]
    fn ideal_unitary_examples() {
        assert_eq!(ideal_unitary(CaseKind::CaseI, 0.0, 0.0), Matrix4::identity());
        assert_eq!(ideal_unitary(CaseKind::CaseII, 0.0, 0.0), Matrix4::identity());
        let d = radians(10.0);
        let u = ideal_unitary(CaseKind::CaseI, 0.0, d);
        let want = [cis(d), cis(-d), cis(-d), cis(d)];
        for k in 0..4 {
            assert!((u.0[k][k] - want[k]).norm() < 1e-15);
        }
        // three applications of a 60° relative phase give a controlled π phase
        let u = ideal_unitary(CaseKind::CaseII, 0.0, radians(30.0)).pow(3);
        let rel = (u.0[3][3] * u.0[2][2].conj()).arg();
        assert!((rel.abs() - core::f64::consts::PI).abs() < 1e-12);
        assert!((u.0[0][0] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
