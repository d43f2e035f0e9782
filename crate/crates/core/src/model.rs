//! Parameters, basis and rotating-frame Hamiltonian of the atom-photon system.
//!
//! The atom has a ground state `|0⟩`, two intermediate levels `|±1⟩` and an
//! upper level `|2⟩`. A control photon `b∓` drives `|0⟩ → |±1⟩` with
//! coupling `λ₁`; a target photon `a±` drives `|±1⟩ → |2⟩` with coupling
//! `λ₂`. Starting from one `a` and one `b` photon the dynamics stays inside
//! nine states, numbered 1..9 as in [`Basis`].
//!
//! The Hamiltonian is written in the frame rotating at `ω₀ + Ω₁ + Ω₂` (atomic
//! ground energy plus both photon energies). In that frame only two
//! combinations of the bare frequencies survive:
//!
//! - `Δ₁ = ω₁₊ − ω₀ − Ω₁`, the detuning of `|0⟩ → |+1⟩` (zero in case I);
//! - `Δ₂ = ω₂ − ω₀ − Ω₁ − Ω₂`, the two-photon detuning of `|2⟩`.
//!
//! `|0⟩ → |−1⟩` is always resonant. The `|+1⟩ → |2⟩` transition is then
//! detuned by `Δ₂ − Δ₁`.

use core::f64::consts::PI;
use core::fmt;

use crate::linalg::{Matrix9, C64, ZERO};
use crate::{Error, Result};

/// Which detuning scheme the atom realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// `|±1⟩` degenerate, both lower transitions resonant (`Δ₁ = 0`).
    CaseI,
    /// `|+1⟩` shifted by `Δ₁`; only `|0⟩ → |−1⟩` is resonant.
    CaseII,
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseKind::CaseI => f.write_str("I"),
            CaseKind::CaseII => f.write_str("II"),
        }
    }
}

/// Full physical parameter set of one gate run.
///
/// Rates are in units where `λ₁ ~ 1`; times are in the inverse unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateConfig {
    case: CaseKind,
    lambda1: f64,
    lambda2: f64,
    delta1: f64,
    delta2: f64,
    time: f64,
}

impl GateConfig {
    pub fn new(
        case: CaseKind,
        lambda1: f64,
        lambda2: f64,
        delta1: f64,
        delta2: f64,
        time: f64,
    ) -> Result<Self> {
        let invalid = |field, reason| Err(Error::InvalidConfig { field, reason });
        for (name, v) in [
            ("lambda1", lambda1),
            ("lambda2", lambda2),
            ("delta1", delta1),
            ("delta2", delta2),
        ] {
            if !v.is_finite() {
                return invalid(name, "must be finite");
            }
        }
        if !(lambda1 > 0.0) {
            return invalid("lambda1", "must be positive");
        }
        if lambda2 < 0.0 {
            return invalid("lambda2", "must be non-negative");
        }
        if !(time.is_finite() && time >= 0.0) {
            return Err(Error::NegativeTime(time));
        }
        if case == CaseKind::CaseI && delta1 != 0.0 {
            return invalid("delta1", "must be zero in case I");
        }
        Ok(GateConfig {
            case,
            lambda1,
            lambda2,
            delta1,
            delta2,
            time,
        })
    }

    /// Case I configuration (`Δ₁ = 0`).
    pub fn case_i(lambda1: f64, lambda2: f64, delta2: f64, time: f64) -> Result<Self> {
        Self::new(CaseKind::CaseI, lambda1, lambda2, 0.0, delta2, time)
    }

    pub fn case_ii(lambda1: f64, lambda2: f64, delta1: f64, delta2: f64, time: f64) -> Result<Self> {
        Self::new(CaseKind::CaseII, lambda1, lambda2, delta1, delta2, time)
    }

    /// Same parameters, different interaction time.
    pub fn with_time(&self, time: f64) -> Result<Self> {
        Self::new(self.case, self.lambda1, self.lambda2, self.delta1, self.delta2, time)
    }

    pub fn with_lambda2(&self, lambda2: f64) -> Result<Self> {
        Self::new(self.case, self.lambda1, lambda2, self.delta1, self.delta2, self.time)
    }

    pub fn case(&self) -> CaseKind {
        self.case
    }
    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }
    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }
    pub fn delta1(&self) -> f64 {
        self.delta1
    }
    pub fn delta2(&self) -> f64 {
        self.delta2
    }
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Detuning of `|+1⟩ → |2⟩`, `Δ₂ − Δ₁`.
    pub fn delta2_prime(&self) -> f64 {
        self.delta2 - self.delta1
    }
}

/// Standard runs used throughout: `λ₁ = 1`, `t = π`.
pub mod presets {
    use super::*;

    /// Case I, `λ₂ = λ₁ = 1`, `Δ₂ = 5`.
    pub fn case_i_weak() -> GateConfig {
        GateConfig::case_i(1.0, 1.0, 5.0, PI).unwrap()
    }

    /// Case I, `λ₂ = 2.5`, `Δ₂ = 30`.
    pub fn case_i_strong() -> GateConfig {
        GateConfig::case_i(1.0, 2.5, 30.0, PI).unwrap()
    }

    /// Case II, `λ₂ = 2.5`, `Δ₁ = 15`, `Δ₂ = 30`.
    pub fn case_ii_strong() -> GateConfig {
        GateConfig::case_ii(1.0, 2.5, 15.0, 30.0, PI).unwrap()
    }

    /// Parameters of the Controlled-NOT construction: `Δ₂ = 70`, `Δ₁ = 65`,
    /// `λ₂ = 6.85`, `λ₁ = 2`, `t = π`. Note `λ₁t = 2π`.
    pub fn cnot() -> GateConfig {
        GateConfig::case_ii(2.0, 6.85, 65.0, 70.0, PI).unwrap()
    }
}

/// Circular polarization label of a photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pol {
    Plus,
    Minus,
}

impl Pol {
    pub fn sign(self) -> char {
        match self {
            Pol::Plus => '+',
            Pol::Minus => '-',
        }
    }
}

/// The nine basis states, in the fixed 1..9 numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `|2⟩`, both photons absorbed.
    Upper,
    /// `a₊†|+1⟩`
    APlusPlus1,
    /// `a₊†|−1⟩`
    APlusMinus1,
    /// `a₋†|+1⟩`
    AMinusPlus1,
    /// `a₋†|−1⟩`
    AMinusMinus1,
    /// `a₊†b₊†|0⟩`
    APlusBPlus,
    /// `a₊†b₋†|0⟩`
    APlusBMinus,
    /// `a₋†b₊†|0⟩`
    AMinusBPlus,
    /// `a₋†b₋†|0⟩`
    AMinusBMinus,
}

impl Basis {
    pub const ALL: [Basis; 9] = [
        Basis::Upper,
        Basis::APlusPlus1,
        Basis::APlusMinus1,
        Basis::AMinusPlus1,
        Basis::AMinusMinus1,
        Basis::APlusBPlus,
        Basis::APlusBMinus,
        Basis::AMinusBPlus,
        Basis::AMinusBMinus,
    ];

    /// Photon-pair states in the two-qubit ordering shared by every 4×4
    /// matrix: `{a₋b₋, a₊b₋, a₋b₊, a₊b₊}`. The control (`b`) is the
    /// slow index, the target (`a`) the fast one, with `−` before `+`.
    pub const CANONICAL_PAIRS: [Basis; 4] = [
        Basis::AMinusBMinus,
        Basis::APlusBMinus,
        Basis::AMinusBPlus,
        Basis::APlusBPlus,
    ];

    /// Zero-based storage index.
    pub const fn index(self) -> usize {
        self as usize
    }

    /// One-based label index used in every external artifact.
    pub const fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(n: usize) -> Option<Basis> {
        Self::ALL.get(n.checked_sub(1)?).copied()
    }

    /// Ground-state photon pair `a_i† b_j† |0⟩`.
    pub const fn pair(a: Pol, b: Pol) -> Basis {
        match (a, b) {
            (Pol::Plus, Pol::Plus) => Basis::APlusBPlus,
            (Pol::Plus, Pol::Minus) => Basis::APlusBMinus,
            (Pol::Minus, Pol::Plus) => Basis::AMinusBPlus,
            (Pol::Minus, Pol::Minus) => Basis::AMinusBMinus,
        }
    }

    /// Whether the atom is in `|0⟩` for this state.
    pub const fn is_ground(self) -> bool {
        self.index() >= 5
    }

    pub const fn label(self) -> &'static str {
        match self {
            Basis::Upper => "|2>",
            Basis::APlusPlus1 => "a+|+1>",
            Basis::APlusMinus1 => "a+|-1>",
            Basis::AMinusPlus1 => "a-|+1>",
            Basis::AMinusMinus1 => "a-|-1>",
            Basis::APlusBPlus => "a+b+|0>",
            Basis::APlusBMinus => "a+b-|0>",
            Basis::AMinusBPlus => "a-b+|0>",
            Basis::AMinusBMinus => "a-b-|0>",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.number(), self.label())
    }
}

const NORM_TOL: f64 = 1e-12;

/// Disentangled two-photon input `(α₊a₊† + α₋a₋†)(β₊b₊† + β₋b₋†)|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitInput {
    pub alpha_plus: C64,
    pub alpha_minus: C64,
    pub beta_plus: C64,
    pub beta_minus: C64,
}

impl QubitInput {
    pub fn new(alpha_plus: C64, alpha_minus: C64, beta_plus: C64, beta_minus: C64) -> Result<Self> {
        let na = alpha_plus.norm_sqr() + alpha_minus.norm_sqr();
        if !((na - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized { qubit: "alpha", norm_sq: na });
        }
        let nb = beta_plus.norm_sqr() + beta_minus.norm_sqr();
        if !((nb - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized { qubit: "beta", norm_sq: nb });
        }
        Ok(QubitInput {
            alpha_plus,
            alpha_minus,
            beta_plus,
            beta_minus,
        })
    }

    /// Single pair `a_i† b_j† |0⟩`.
    pub fn basis(a: Pol, b: Pol) -> Self {
        let pick = |p: Pol, want: Pol| if p == want { C64::new(1.0, 0.0) } else { ZERO };
        QubitInput {
            alpha_plus: pick(a, Pol::Plus),
            alpha_minus: pick(a, Pol::Minus),
            beta_plus: pick(b, Pol::Plus),
            beta_minus: pick(b, Pol::Minus),
        }
    }

    /// Real target amplitudes parametrized by `|α₋|²`, with a given control state.
    pub fn with_alpha_minus_sq(alpha_minus_sq: f64, beta: ControlState) -> Result<Self> {
        Self::with_target_phase(alpha_minus_sq, 0.0, beta)
    }

    /// As [`with_alpha_minus_sq`](Self::with_alpha_minus_sq), with `arg α₊ = phase`.
    pub fn with_target_phase(alpha_minus_sq: f64, alpha_plus_phase: f64, beta: ControlState) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_minus_sq) {
            return Err(Error::InvalidConfig {
                field: "alpha_minus_sq",
                reason: "must lie in [0, 1]",
            });
        }
        use num_traits::Float;
        let (bp, bm) = beta.amplitudes();
        Self::new(
            crate::linalg::cis(alpha_plus_phase) * Float::sqrt(1.0 - alpha_minus_sq),
            C64::new(Float::sqrt(alpha_minus_sq), 0.0),
            bp,
            bm,
        )
    }

    pub fn alpha(&self, p: Pol) -> C64 {
        match p {
            Pol::Plus => self.alpha_plus,
            Pol::Minus => self.alpha_minus,
        }
    }

    pub fn beta(&self, p: Pol) -> C64 {
        match p {
            Pol::Plus => self.beta_plus,
            Pol::Minus => self.beta_minus,
        }
    }

    /// Multiply both target amplitudes by `e^{iθ}`.
    pub fn rephase_target(&self, theta: f64) -> Self {
        let z = crate::linalg::cis(theta);
        QubitInput {
            alpha_plus: self.alpha_plus * z,
            alpha_minus: self.alpha_minus * z,
            ..*self
        }
    }

    /// Exchange `+ ↔ −` on both photons.
    pub fn mirrored(&self) -> Self {
        QubitInput {
            alpha_plus: self.alpha_minus,
            alpha_minus: self.alpha_plus,
            beta_plus: self.beta_minus,
            beta_minus: self.beta_plus,
        }
    }
}

/// The two control-photon states used in the superposition runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlState {
    /// `(b₊† + b₋†)/√2 |0⟩`
    Beta1,
    /// `(√3/2 b₊† + 1/2 b₋†)|0⟩`
    Beta2,
}

impl ControlState {
    pub const ALL: [ControlState; 2] = [ControlState::Beta1, ControlState::Beta2];

    /// `(β₊, β₋)`
    pub fn amplitudes(self) -> (C64, C64) {
        match self {
            ControlState::Beta1 => (
                C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0),
            ),
            ControlState::Beta2 => {
                use num_traits::Float;
                (C64::new(Float::sqrt(3.0) / 2.0, 0.0), C64::new(0.5, 0.0))
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ControlState::Beta1 => "beta1",
            ControlState::Beta2 => "beta2",
        }
    }
}

/// Amplitudes over the nine basis states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector(pub [C64; 9]);

impl StateVector {
    pub fn basis(b: Basis) -> Self {
        let mut c = [ZERO; 9];
        c[b.index()] = C64::new(1.0, 0.0);
        StateVector(c)
    }

    pub fn amp(&self, b: Basis) -> C64 {
        self.0[b.index()]
    }

    pub fn population(&self, b: Basis) -> f64 {
        self.0[b.index()].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        crate::linalg::norm_sqr(&self.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hermitian 9×9 generator. Only constructed through checked paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix9(Matrix9);

impl HermitianMatrix9 {
    /// Accepts a matrix only if it is exactly Hermitian.
    pub fn try_from_matrix(m: Matrix9) -> Result<Self> {
        if m.is_hermitian() {
            Ok(HermitianMatrix9(m))
        } else {
            Err(Error::NotHermitian)
        }
    }

    pub fn matrix(&self) -> &Matrix9 {
        &self.0
    }

    pub fn entry(&self, row: Basis, col: Basis) -> C64 {
        self.0 .0[row.index()][col.index()]
    }

    /// `⟨ψ|H|ψ⟩`
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        crate::linalg::inner(&psi.0, &self.0.mul_vec(&psi.0)).re
    }
}

/// `(state, state, coupling)` pairs of the interaction, 1..9 numbering.
fn couplings(config: &GateConfig) -> [(Basis, Basis, f64); 6] {
    let l1 = config.lambda1;
    let l2 = config.lambda2;
    [
        // b₋ absorbed: |0⟩ → |+1⟩
        (Basis::APlusBMinus, Basis::APlusPlus1, l1),
        (Basis::AMinusBMinus, Basis::AMinusPlus1, l1),
        // b₊ absorbed: |0⟩ → |−1⟩
        (Basis::APlusBPlus, Basis::APlusMinus1, l1),
        (Basis::AMinusBPlus, Basis::AMinusMinus1, l1),
        // a₊ absorbed on |+1⟩ → |2⟩, a₋ on |−1⟩ → |2⟩
        (Basis::Upper, Basis::APlusPlus1, l2),
        (Basis::Upper, Basis::AMinusMinus1, l2),
    ]
}

/// Rotating-frame Hamiltonian of the nine-state system.
///
/// Diagonal: `Δ₂` on `|2⟩`, `Δ₁` on the two `|+1⟩` states, zero elsewhere.
/// Off-diagonal: `λ₁` between each photon pair and the state with the
/// control photon absorbed, `λ₂` between `|2⟩` and the two states that can
/// absorb the target photon. Entries are written in mirrored pairs, so the
/// result is Hermitian bit for bit.
pub fn build_hamiltonian(config: &GateConfig) -> HermitianMatrix9 {
    let mut h = Matrix9::zeros();
    h[(Basis::Upper.index(), Basis::Upper.index())] = C64::new(config.delta2, 0.0);
    for b in [Basis::APlusPlus1, Basis::AMinusPlus1] {
        h[(b.index(), b.index())] = C64::new(config.delta1, 0.0);
    }
    for (i, j, g) in couplings(config) {
        let v = C64::new(g, 0.0);
        h[(i.index(), j.index())] = v;
        h[(j.index(), i.index())] = v.conj();
    }
    HermitianMatrix9(h)
}

/// Embeds the product input into the nine-state space (`c₆..c₉`).
pub fn embed_input(q: &QubitInput) -> Result<StateVector> {
    let q = QubitInput::new(q.alpha_plus, q.alpha_minus, q.beta_plus, q.beta_minus)?;
    let mut c = [ZERO; 9];
    for a in [Pol::Plus, Pol::Minus] {
        for b in [Pol::Plus, Pol::Minus] {
            c[Basis::pair(a, b).index()] = q.alpha(a) * q.beta(b);
        }
    }
    Ok(StateVector(c))
}
