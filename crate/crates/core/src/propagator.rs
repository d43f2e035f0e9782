//! Time evolution of the nine-state system.
//!
//! The Hamiltonian is time independent, so the propagator is evaluated
//! exactly through a Hermitian eigendecomposition. A fixed-step RK4
//! integrator and the closed-form two-level solutions are kept as
//! independent cross-checks.
//!
//! Sign convention: states evolve as `ψ(t) = exp(+iHt) ψ(0)`. With this sign
//! a resonant `λ₁` block gives `c_u(t) = cos(λ₁t) c_u + i sin(λ₁t) c_l`, and
//! a positive two-photon detuning `Δ₂` yields a positive conditional phase
//! `Δφ₊`. Reversing the sign conjugates every amplitude; populations and
//! magnitudes are unaffected.

use num_traits::Float;

use crate::linalg::{cis, hermitian_eigen, Matrix9, C64, ZERO};
use crate::model::{Basis, GateConfig, HermitianMatrix9, StateVector};
use crate::{Error, Result};

/// `H = V·diag(E)·V†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: [f64; 9],
    pub eigenvectors: Matrix9,
}

impl SpectralDecomposition {
    pub fn new(h: &HermitianMatrix9) -> Result<Self> {
        let (eigenvalues, eigenvectors) = hermitian_eigen(h.matrix())?;
        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        })
    }

    /// `V·diag(E)·V†`
    pub fn reconstruct(&self) -> Matrix9 {
        let d = Matrix9::from_diagonal(&self.eigenvalues.map(|e| C64::new(e, 0.0)));
        self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    /// Full evolution operator `V·exp(iEt)·V†`.
    pub fn evolution_operator(&self, t: f64) -> Matrix9 {
        let d = Matrix9::from_diagonal(&self.eigenvalues.map(|e| cis(e * t)));
        self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    pub fn propagate(&self, psi0: &StateVector, t: f64) -> Result<StateVector> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        if t == 0.0 {
            return Ok(*psi0);
        }
        let v = &self.eigenvectors;
        // V† ψ, phase, V
        let mut w = [ZERO; 9];
        for (k, wk) in w.iter_mut().enumerate() {
            let mut s = ZERO;
            for i in 0..9 {
                s += v.0[i][k].conj() * psi0.0[i];
            }
            *wk = s * cis(self.eigenvalues[k] * t);
        }
        Ok(StateVector(v.mul_vec(&w)))
    }
}

/// Exact propagation of `psi0` for time `t`.
pub fn propagate(h: &HermitianMatrix9, psi0: &StateVector, t: f64) -> Result<StateVector> {
    SpectralDecomposition::new(h)?.propagate(psi0, t)
}

/// Largest row sum of `|H_ij|`; bounds the spectral radius.
pub fn operator_bound(h: &HermitianMatrix9) -> f64 {
    h.matrix()
        .0
        .iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Smallest step count accepted by [`propagate_rk4`] (`‖H‖·t/steps < 0.1`).
pub fn min_rk4_steps(h: &HermitianMatrix9, t: f64) -> usize {
    (Float::floor(operator_bound(h) * t / 0.1) as usize + 1).max(1)
}

/// Classical fixed-step RK4 for `dψ/dt = iHψ`. The state is not renormalized.
pub fn propagate_rk4(h: &HermitianMatrix9, psi0: &StateVector, t: f64, steps: usize) -> Result<StateVector> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    let required = min_rk4_steps(h, t);
    if steps < required {
        return Err(Error::TooFewSteps { steps, required });
    }
    let m = h.matrix();
    let i = C64::new(0.0, 1.0);
    let deriv = |y: &[C64; 9]| -> [C64; 9] { m.mul_vec(y).map(|z| i * z) };
    let axpy = |y: &[C64; 9], a: f64, k: &[C64; 9]| -> [C64; 9] { core::array::from_fn(|n| y[n] + k[n] * a) };

    let dt = t / steps as f64;
    let mut y = psi0.0;
    for _ in 0..steps {
        let k1 = deriv(&y);
        let k2 = deriv(&axpy(&y, dt / 2.0, &k1));
        let k3 = deriv(&axpy(&y, dt / 2.0, &k2));
        let k4 = deriv(&axpy(&y, dt, &k3));
        for n in 0..9 {
            y[n] += (k1[n] + (k2[n] + k3[n]) * 2.0 + k4[n]) * (dt / 6.0);
        }
    }
    Ok(StateVector(y))
}

/// The two closed two-state blocks of the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RabiBlock {
    /// `a₊†b₊†|0⟩ ↔ a₊†|−1⟩` (states 6 and 3); always resonant.
    Block63,
    /// `a₋†b₋†|0⟩ ↔ a₋†|+1⟩` (states 9 and 4); detuned by `Δ₁` in case II.
    Block94,
}

impl RabiBlock {
    /// `(photon-pair state, absorbed state)`
    pub fn states(self) -> (Basis, Basis) {
        match self {
            RabiBlock::Block63 => (Basis::APlusBPlus, Basis::APlusMinus1),
            RabiBlock::Block94 => (Basis::AMinusBMinus, Basis::AMinusPlus1),
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        match label {
            "6-3" => Ok(RabiBlock::Block63),
            "9-4" => Ok(RabiBlock::Block94),
            _ => Err(Error::InvalidConfig {
                field: "block",
                reason: "must be 6-3 or 9-4",
            }),
        }
    }

    fn detuning(self, config: &GateConfig) -> f64 {
        match self {
            RabiBlock::Block63 => 0.0,
            RabiBlock::Block94 => config.delta1(),
        }
    }
}

/// Closed-form evolution of one two-state block.
///
/// The block generator is `[[0, λ₁], [λ₁, Δ]]` with `Δ` on the absorbed
/// state; with `Ω = √(λ₁² + (Δ/2)²)`:
///
/// ```text
/// c_u(t) = e^{iΔt/2} [(cos Ωt − i(Δ/2Ω) sin Ωt) c_u + i(λ₁/Ω) sin Ωt c_l]
/// c_l(t) = e^{iΔt/2} [i(λ₁/Ω) sin Ωt c_u + (cos Ωt + i(Δ/2Ω) sin Ωt) c_l]
/// ```
///
/// For `Δ = 0` this is `(cos λ₁t c_u + i sin λ₁t c_l, i sin λ₁t c_u + cos λ₁t c_l)`.
pub fn rabi_oracle(block: RabiBlock, config: &GateConfig, c_upper0: C64, c_lower0: C64, t: f64) -> (C64, C64) {
    let lambda = config.lambda1();
    let half = block.detuning(config) / 2.0;
    let omega = Float::sqrt(lambda * lambda + half * half);
    let (s, c) = Float::sin_cos(omega * t);
    let i = C64::new(0.0, 1.0);
    let global = cis(half * t);
    let uu = C64::new(c, -half / omega * s);
    let ll = C64::new(c, half / omega * s);
    let ul = i * (lambda / omega * s);
    (
        global * (uu * c_upper0 + ul * c_lower0),
        global * (ul * c_upper0 + ll * c_lower0),
    )
}
