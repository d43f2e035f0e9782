//! Simulation core for a two-qubit photon-polarization gate driven by the
//! conditional Faraday effect in a four-level atom.
//!
//! The target photon `a±` and the control photon `b±` interact with an atom
//! with ground state `|0⟩`, intermediate levels `|±1⟩` and an upper level
//! `|2⟩`. A control photon transfers population `|0⟩ → |∓1⟩`; the target
//! photon sees the off-resonant `|±1⟩ → |2⟩` transitions and picks up a
//! conditional phase. Everything here is pure computation over fixed-size
//! arrays: the crate is `no_std` and only needs `alloc` for sweep tables.
//!
//! Module map:
//! - [`model`]: parameters, the 9-state basis, the rotating-frame Hamiltonian.
//! - [`propagator`]: exact spectral propagation plus RK4 and two-level oracles.
//! - [`analysis`]: ground-state projection and the gate-quality observables.
//! - [`gate`]: effective 4×4 photon map, composition, CNOT synthesis.
//! - [`sweep`]: canned parameter sweeps and time series.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod gate;
pub mod linalg;
pub mod model;
pub mod propagator;
pub mod sweep;

pub use error::Error;
pub use linalg::C64;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Wraps an angle in radians to `(-π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    use num_traits::Float;
    let mut y = x - TAU * Float::floor((x + PI) / TAU);
    // floor puts y in [-π, π); move the lower edge onto +π
    if y <= -PI {
        y += TAU;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(0.0), 0.0);
        assert_eq!(wrap_phase(PI), PI);
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(-0.5 - 4.0 * PI) + 0.5).abs() < 1e-12);
        for k in -20..20 {
            let y = wrap_phase(0.37 * k as f64);
            assert!(y > -PI && y <= PI);
        }
    }
}
