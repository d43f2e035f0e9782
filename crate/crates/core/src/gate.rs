//! The gate seen by the photons: a 4×4 map on the pair subspace.
//!
//! All 4×4 matrices use the ordering [`Basis::CANONICAL_PAIRS`]
//! `{a₋b₋, a₊b₋, a₋b₊, a₊b₊}`: the upper-left 2×2 block is the `b₋`
//! (control off) block, the lower-right one the `b₊` (control on) block.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_traits::Float;

use crate::analysis::{classical_phase_observables, degrees, PairAmplitudes, PhaseObservables};
use crate::linalg::{cis, kron2, Matrix, Matrix4, C64, ONE, ZERO};
use crate::model::{build_hamiltonian, embed_input, presets, Basis, GateConfig, QubitInput, StateVector};
use crate::propagator::SpectralDecomposition;
use crate::{Error, Result};

/// Ground-state-projected photon map of one gate application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveGate {
    pub m: Matrix4,
    /// `max_k (1 − ‖column k‖²)`, clamped at zero.
    pub leakage: f64,
}

impl EffectiveGate {
    pub fn from_matrix(m: Matrix4) -> Self {
        let leakage = (0..4).map(|k| 1.0 - m.column_norm_sqr(k)).fold(0.0, f64::max);
        EffectiveGate { m, leakage }
    }

    /// Diagonal entries rearranged as `C₊₊, C₊₋, C₋₊, C₋₋`: what each pair
    /// keeps when sent in alone.
    pub fn diagonal_pairs(&self) -> PairAmplitudes {
        PairAmplitudes(PairAmplitudes::ORDER.map(|(a, b)| {
            let k = canonical_slot(Basis::pair(a, b));
            self.m.0[k][k]
        }))
    }

    /// `Δφ±, φ̄±` of the single-pair ("classical") runs.
    pub fn classical_phases(&self) -> PhaseObservables {
        classical_phase_observables(&self.diagonal_pairs())
    }

    /// Phase of `a₊b₊` relative to `a₋b₊` after one application, radians
    /// in `(−π, π]`. Equals `2Δφ₊` of the classical runs.
    pub fn conditional_phase(&self) -> f64 {
        (self.m.0[3][3] * self.m.0[2][2].conj()).arg()
    }
}

fn canonical_slot(b: Basis) -> usize {
    Basis::CANONICAL_PAIRS
        .iter()
        .position(|&x| x == b)
        .expect("not a photon-pair state")
}

fn canonical_components(psi: &StateVector) -> [C64; 4] {
    Basis::CANONICAL_PAIRS.map(|b| psi.amp(b))
}

/// Propagates each pair state for `config.time()` and collects the
/// ground-state amplitudes column by column.
pub fn effective_gate(config: &GateConfig) -> Result<EffectiveGate> {
    let spectral = SpectralDecomposition::new(&build_hamiltonian(config))?;
    let mut m = Matrix4::zeros();
    for (k, &input) in Basis::CANONICAL_PAIRS.iter().enumerate() {
        let out = spectral.propagate(&StateVector::basis(input), config.time())?;
        for (i, z) in canonical_components(&out).into_iter().enumerate() {
            m.0[i][k] = z;
        }
    }
    Ok(EffectiveGate::from_matrix(m))
}

/// Max-norm gap between `m · q` and the directly propagated, projected `q`.
pub fn linearity_check(config: &GateConfig, q: &QubitInput) -> Result<f64> {
    let g = effective_gate(config)?;
    let psi0 = embed_input(q)?;
    let direct = SpectralDecomposition::new(&build_hamiltonian(config))?.propagate(&psi0, config.time())?;
    let via_gate = g.m.mul_vec(&canonical_components(&psi0));
    Ok(via_gate
        .iter()
        .zip(canonical_components(&direct).iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

/// `n` applications in sequence, `mⁿ`.
pub fn compose(g: &EffectiveGate, n: u32) -> Result<EffectiveGate> {
    if n == 0 {
        return Err(Error::ZeroComposition);
    }
    Ok(EffectiveGate::from_matrix(g.m.pow(n)))
}

/// Balanced rotation between the circular and linear target bases, acting
/// on `(a₋, a₊)`: `a₋ ↦ (a₋ + a₊)/√2`, `a₊ ↦ (a₋ − a₊)/√2`.
pub fn target_rotation() -> Matrix4 {
    let h = FRAC_1_SQRT_2;
    let had = Matrix::<2>([[C64::new(h, 0.0), C64::new(h, 0.0)], [C64::new(h, 0.0), C64::new(-h, 0.0)]]);
    kron2(&Matrix::<2>::identity(), &had)
}

/// `T† m T` with `T` = [`target_rotation`]. A conditional `π` phase on the
/// target becomes a conditional bit flip.
pub fn basis_change_target(g: &EffectiveGate) -> EffectiveGate {
    let t = target_rotation();
    EffectiveGate::from_matrix(t.adjoint() * g.m * t)
}

/// Controlled-NOT in the canonical ordering: identity on the `b₋` block,
/// target flip on the `b₊` block.
pub fn ideal_cnot() -> Matrix4 {
    let mut m = Matrix4::zeros();
    m.0[0][0] = ONE;
    m.0[1][1] = ONE;
    m.0[2][3] = ONE;
    m.0[3][2] = ONE;
    m
}

/// Which phase freedom [`gate_distance`] quotients out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// One phase for the whole matrix.
    GlobalPhase,
    /// One phase per control block (columns `{0,1}` and `{2,3}`).
    PerBlockPhase,
}

/// `max_k |a_k − e^{iθ} b_k|` evaluated at `θ`.
fn phased_gap(pairs: &[(C64, C64)], theta: f64) -> f64 {
    let z = cis(theta);
    pairs.iter().map(|(a, b)| (a - z * b).norm()).fold(0.0, f64::max)
}

const PHASE_SCAN: usize = 720;

/// `min_θ max_k |a_k − e^{iθ} b_k|`.
///
/// Starts from the least-squares phase `arg Σ b̄_k a_k`, then scans a
/// uniform grid and refines the best bracket by golden-section search.
fn min_over_phase(pairs: &[(C64, C64)]) -> f64 {
    let ls: C64 = pairs.iter().map(|(a, b)| b.conj() * a).sum();
    let mut best = phased_gap(pairs, if ls == ZERO { 0.0 } else { ls.arg() });

    let step = 2.0 * PI / PHASE_SCAN as f64;
    let (mut arg_best, mut val_best) = (0.0, f64::INFINITY);
    for k in 0..PHASE_SCAN {
        let th = -PI + k as f64 * step;
        let v = phased_gap(pairs, th);
        if v < val_best {
            val_best = v;
            arg_best = th;
        }
    }
    let gr = 0.5 * (Float::sqrt(5.0) - 1.0);
    let (mut lo, mut hi) = (arg_best - step, arg_best + step);
    let mut x1 = hi - gr * (hi - lo);
    let mut x2 = lo + gr * (hi - lo);
    let (mut f1, mut f2) = (phased_gap(pairs, x1), phased_gap(pairs, x2));
    for _ in 0..100 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = phased_gap(pairs, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = phased_gap(pairs, x2);
        }
    }
    best = best.min(val_best).min(f1).min(f2);
    best
}

/// Largest entrywise deviation from `target` after removing the allowed phases.
pub fn gate_distance(g: &EffectiveGate, target: &Matrix4, mode: DistanceMode) -> f64 {
    let entries = |cols: core::ops::Range<usize>| {
        let mut v: [(C64, C64); 16] = [(ZERO, ZERO); 16];
        let mut n = 0;
        for i in 0..4 {
            for j in cols.clone() {
                v[n] = (g.m.0[i][j], target.0[i][j]);
                n += 1;
            }
        }
        (v, n)
    };
    match mode {
        DistanceMode::GlobalPhase => {
            let (v, n) = entries(0..4);
            min_over_phase(&v[..n])
        }
        DistanceMode::PerBlockPhase => {
            let (lo, nl) = entries(0..2);
            let (hi, nh) = entries(2..4);
            min_over_phase(&lo[..nl]).max(min_over_phase(&hi[..nh]))
        }
    }
}

/// Figures of merit of a synthesized Controlled-NOT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnotScore {
    /// Conditional phase `arg(m₄₄ m̄₃₃)` of one application, degrees.
    pub single_conditional_phase_deg: f64,
    /// Common phase of the `b₋` block after one application, degrees.
    pub single_minus_block_phase_deg: f64,
    /// Number of applications composed.
    pub applications: u32,
    /// `|C₁₁|, |C₂₂|`
    pub upper_diagonal: [f64; 2],
    /// `arg(C₁₁ + C₂₂)`, degrees.
    pub upper_phase_deg: f64,
    /// `|C₃₄|, |C₄₃|`
    pub lower_antidiagonal: [f64; 2],
    /// `arg(C₃₄ + C₄₃)`, degrees.
    pub lower_phase_deg: f64,
    /// Largest of the twelve entries that vanish for an ideal CNOT.
    pub max_small: f64,
    /// Largest entry of the two off-diagonal (control-mixing) blocks.
    pub max_off_block: f64,
    pub distance_per_block: f64,
    pub distance_global: f64,
    pub leakage: f64,
}

/// Result of [`cnot_synthesis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnotSynthesis {
    pub config: GateConfig,
    pub single: EffectiveGate,
    pub result: EffectiveGate,
    pub score: CnotScore,
}

/// Composes `applications` copies of the gate for `config` and rotates the
/// target basis.
pub fn cnot_synthesis_with(config: &GateConfig, applications: u32) -> Result<CnotSynthesis> {
    let single = effective_gate(config)?;
    let composite = compose(&single, applications)?;
    let result = basis_change_target(&composite);
    let m = &result.m;

    let upper_sum = m.0[0][0] + m.0[1][1];
    let lower_sum = m.0[2][3] + m.0[3][2];
    let large = [(0, 0), (1, 1), (2, 3), (3, 2)];
    let mut max_small: f64 = 0.0;
    let mut max_off_block: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if large.contains(&(i, j)) {
                continue;
            }
            let a = m.0[i][j].norm();
            max_small = max_small.max(a);
            if (i < 2) != (j < 2) {
                max_off_block = max_off_block.max(a);
            }
        }
    }
    let target = ideal_cnot();
    let score = CnotScore {
        single_conditional_phase_deg: degrees(single.conditional_phase()),
        single_minus_block_phase_deg: degrees((single.m.0[0][0] + single.m.0[1][1]).arg()),
        applications,
        upper_diagonal: [m.0[0][0].norm(), m.0[1][1].norm()],
        upper_phase_deg: degrees(upper_sum.arg()),
        lower_antidiagonal: [m.0[2][3].norm(), m.0[3][2].norm()],
        lower_phase_deg: degrees(lower_sum.arg()),
        max_small,
        max_off_block,
        distance_per_block: gate_distance(&result, &target, DistanceMode::PerBlockPhase),
        distance_global: gate_distance(&result, &target, DistanceMode::GlobalPhase),
        leakage: result.leakage,
    };
    Ok(CnotSynthesis {
        config: *config,
        single,
        result,
        score,
    })
}

/// Three applications at `Δ₂ = 70, Δ₁ = 65, λ₂ = 6.85, λ₁ = 2, t = π`.
pub fn cnot_synthesis() -> Result<CnotSynthesis> {
    cnot_synthesis_with(&presets::cnot(), 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CaseKind, Pol};

    #[test]
    fn free_half_cycle_is_minus_identity() {
        let cfg = GateConfig::case_i(1.0, 0.0, 5.0, PI).unwrap();
        let g = effective_gate(&cfg).unwrap();
        assert!(g.m.max_abs_diff(&Matrix4::identity().scale(C64::new(-1.0, 0.0))) < 1e-12);
        assert!(g.leakage < 1e-12);
        assert!(compose(&g, 2).unwrap().m.max_abs_diff(&Matrix4::identity()) < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        let cfg = presets::case_ii_strong().with_time(0.0).unwrap();
        let g = effective_gate(&cfg).unwrap();
        assert!(g.m.max_abs_diff(&Matrix4::identity()) < 1e-14);
    }

    #[test]
    fn compose_checks_count() {
        let g = EffectiveGate::from_matrix(Matrix4::identity());
        assert_eq!(compose(&g, 0).unwrap_err(), Error::ZeroComposition);
        assert_eq!(compose(&g, 1).unwrap(), g);
    }

    #[test]
    fn rotation_maps_controlled_phase_to_cnot() {
        let cz = Matrix4::from_diagonal(&[ONE, ONE, ONE, -ONE]);
        let out = basis_change_target(&EffectiveGate::from_matrix(cz));
        assert!(out.m.max_abs_diff(&ideal_cnot()) < 1e-15);

        // phases that depend only on the control commute with the rotation
        let zc = Matrix4::from_diagonal(&[ONE, ONE, -ONE, -ONE]);
        let out = basis_change_target(&EffectiveGate::from_matrix(zc));
        assert!(out.m.max_abs_diff(&zc) < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let target = ideal_cnot();
        let g = EffectiveGate::from_matrix(target);
        assert_eq!(gate_distance(&g, &target, DistanceMode::GlobalPhase), 0.0);
        let g = EffectiveGate::from_matrix(target.scale(cis(0.3)));
        assert!(gate_distance(&g, &target, DistanceMode::GlobalPhase) < 1e-12);
        assert!(gate_distance(&g, &target, DistanceMode::PerBlockPhase) < 1e-12);

        // different phases per block only vanish in per-block mode
        let d = Matrix4::from_diagonal(&[cis(0.4), cis(0.4), cis(-1.0), cis(-1.0)]);
        let g = EffectiveGate::from_matrix(target * d);
        assert!(gate_distance(&g, &target, DistanceMode::PerBlockPhase) < 1e-12);
        let gd = gate_distance(&g, &target, DistanceMode::GlobalPhase);
        // phases 0.4 and -1.0 differ by 1.4; the best common phase splits it: gap = 2 sin(0.35)
        assert!((gd - 2.0 * (0.35f64).sin()).abs() < 1e-9, "{gd}");
    }

    #[test]
    fn linearity_on_basis_inputs() {
        let cfg = presets::case_i_strong();
        for a in [Pol::Plus, Pol::Minus] {
            for b in [Pol::Plus, Pol::Minus] {
                let d = linearity_check(&cfg, &QubitInput::basis(a, b)).unwrap();
                assert!(d < 1e-12);
            }
        }
    }

    #[test]
    fn case_ii_column_matches_analysis() {
        let cfg = presets::case_ii_strong();
        let g = effective_gate(&cfg).unwrap();
        let a = crate::analysis::analyze(&cfg, &QubitInput::basis(Pol::Minus, Pol::Plus)).unwrap();
        let eta = a.eta.get(Pol::Minus, Pol::Plus).unwrap();
        assert!((g.m.0[2][2].norm() - eta).abs() < 1e-12);
        assert_eq!(cfg.case(), CaseKind::CaseII);
    }
}
