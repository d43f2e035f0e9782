use core::f64::consts::PI;

use proptest::prelude::*;

use faraday_core::analysis::{analyze, ideal_unitary};
use faraday_core::gate::{
    basis_change_target, compose, effective_gate, gate_distance, linearity_check, DistanceMode,
};
use faraday_core::linalg::{cis, Matrix4};
use faraday_core::model::{
    build_hamiltonian, presets, Basis, CaseKind, GateConfig, Pol, QubitInput, StateVector,
};
use faraday_core::propagator::{
    min_rk4_steps, operator_bound, propagate, propagate_rk4, rabi_oracle, RabiBlock, SpectralDecomposition,
};
use faraday_core::C64;

fn arb_config() -> impl Strategy<Value = GateConfig> {
    (
        any::<bool>(),
        0.5..2.0f64,
        0.0..5.0f64,
        0.0..20.0f64,
        1.0..40.0f64,
        0.0..4.0f64,
    )
        .prop_map(|(two, l1, l2, d1, d2, t)| {
            let case = if two { CaseKind::CaseII } else { CaseKind::CaseI };
            let d1 = if two { d1 } else { 0.0 };
            GateConfig::new(case, l1, l2, d1, d2, t).unwrap()
        })
}

/// Normalized qubit pair `(cos θ e^{iφ₁}, sin θ e^{iφ₂})` for each photon.
fn arb_input() -> impl Strategy<Value = QubitInput> {
    (0.0..PI / 2.0, -PI..PI, -PI..PI, 0.0..PI / 2.0, -PI..PI, -PI..PI).prop_map(|(ta, pa, qa, tb, pb, qb)| {
        QubitInput::new(
            cis(pa) * ta.cos(),
            cis(qa) * ta.sin(),
            cis(pb) * tb.cos(),
            cis(qb) * tb.sin(),
        )
        .unwrap()
    })
}

fn arb_state() -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 9).prop_map(|v| {
        let mut c = [C64::new(0.0, 0.0); 9];
        for (z, (re, im)) in c.iter_mut().zip(v) {
            *z = C64::new(re, im);
        }
        let n = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-3);
        StateVector(c.map(|z| z / n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn spectral_matches_rk4(cfg in arb_config(), psi in arb_state()) {
        let h = build_hamiltonian(&cfg);
        let t = cfg.time();
        let steps = ((operator_bound(&h) * t / 0.005) as usize).max(min_rk4_steps(&h, t));
        let a = propagate(&h, &psi, t).unwrap();
        let b = propagate_rk4(&h, &psi, t, steps).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-8, "{}", a.max_abs_diff(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rabi_blocks_match_closed_form(cfg in arb_config(), u in (-1.0..1.0f64, -1.0..1.0f64), l in (-1.0..1.0f64, -1.0..1.0f64)) {
        let h = build_hamiltonian(&cfg);
        for block in [RabiBlock::Block63, RabiBlock::Block94] {
            let (upper, lower) = block.states();
            let mut psi = StateVector([C64::new(0.0, 0.0); 9]);
            psi.0[upper.index()] = C64::new(u.0, u.1);
            psi.0[lower.index()] = C64::new(l.0, l.1);
            let out = propagate(&h, &psi, cfg.time()).unwrap();
            let (cu, cl) = rabi_oracle(block, &cfg, psi.0[upper.index()], psi.0[lower.index()], cfg.time());
            prop_assert!((out.amp(upper) - cu).norm() <= 1e-10);
            prop_assert!((out.amp(lower) - cl).norm() <= 1e-10);
            for b in Basis::ALL {
                if b != upper && b != lower {
                    prop_assert!(out.amp(b).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn norm_and_energy_conserved(cfg in arb_config(), psi in arb_state()) {
        let h = build_hamiltonian(&cfg);
        let out = propagate(&h, &psi, cfg.time()).unwrap();
        prop_assert!((out.norm_sqr() - psi.norm_sqr()).abs() <= 1e-10);
        let scale = 1.0 + operator_bound(&h);
        prop_assert!((h.expectation(&out) - h.expectation(&psi)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn semigroup(cfg in arb_config(), psi in arb_state(), s in 0.0..2.0f64) {
        let sd = SpectralDecomposition::new(&build_hamiltonian(&cfg)).unwrap();
        let t = cfg.time();
        let once = sd.propagate(&psi, s + t).unwrap();
        let twice = sd.propagate(&sd.propagate(&psi, s).unwrap(), t).unwrap();
        prop_assert!(once.max_abs_diff(&twice) <= 1e-10);
    }

    #[test]
    fn linearity(cfg in arb_config(), q in arb_input()) {
        prop_assert!(linearity_check(&cfg, &q).unwrap() <= 1e-10);
    }

    #[test]
    fn global_input_phase_invariance(cfg in arb_config(), q in arb_input(), theta in -PI..PI) {
        let a = analyze(&cfg, &q).unwrap().phases;
        let b = analyze(&cfg, &q.rephase_target(theta)).unwrap().phases;
        let close = |x: Option<f64>, y: Option<f64>| match (x, y) {
            (Some(x), Some(y)) => faraday_core::wrap_phase(x - y).abs() <= 1e-10,
            (None, None) => true,
            _ => false,
        };
        prop_assert!(close(a.dphi_plus, b.dphi_plus));
        prop_assert!(close(a.dphi_minus, b.dphi_minus));
        prop_assert!(close(a.phi_bar_plus, b.phi_bar_plus));
        prop_assert!(close(a.phi_bar_minus, b.phi_bar_minus));
    }

    /// The case I Hamiltonian is symmetric under `+ ↔ −` on both photons:
    /// single-pair phases satisfy `Δφ₊ = −Δφ₋`, and a superposition input
    /// and its mirror image trade `Δφ₊` for `−Δφ₋`.
    #[test]
    fn case_i_mirror_symmetry(l1 in 0.5..2.0f64, l2 in 0.0..5.0f64, d2 in 1.0..40.0f64, a2 in 0.05..0.95f64, b2 in 0.05..0.95f64) {
        let cfg = GateConfig::case_i(l1, l2, d2, PI / l1).unwrap();
        let classical = effective_gate(&cfg).unwrap().classical_phases();
        if let (Some(p), Some(m)) = (classical.dphi_plus, classical.dphi_minus) {
            prop_assert!((p + m).abs() <= 1e-8);
        }
        let q = QubitInput::new(
            C64::new((1.0 - a2).sqrt(), 0.0),
            C64::new(a2.sqrt(), 0.0),
            C64::new((1.0 - b2).sqrt(), 0.0),
            C64::new(b2.sqrt(), 0.0),
        ).unwrap();
        let direct = analyze(&cfg, &q).unwrap().phases;
        let mirror = analyze(&cfg, &q.mirrored()).unwrap().phases;
        if let (Some(p), Some(m)) = (direct.dphi_plus, mirror.dphi_minus) {
            prop_assert!((p + m).abs() <= 1e-8, "{p} {m}");
        }
    }

    #[test]
    fn compose_is_consistent(cfg in arb_config(), a in 1u32..5, b in 1u32..5) {
        let g = effective_gate(&cfg).unwrap();
        let ab = compose(&g, a + b).unwrap();
        let split = compose(&g, a).unwrap().m * compose(&g, b).unwrap().m;
        prop_assert!(ab.m.max_abs_diff(&split) <= 1e-12);
    }

    #[test]
    fn target_rotation_preserves_column_norms(cfg in arb_config()) {
        let g = effective_gate(&cfg).unwrap();
        let r = basis_change_target(&g);
        // the rotation mixes the two columns of each target pair; the pair's
        // total weight is preserved
        for (j, k) in [(0, 1), (2, 3)] {
            let w = |m: &Matrix4| m.column_norm_sqr(j) + m.column_norm_sqr(k);
            prop_assert!((w(&g.m) - w(&r.m)).abs() <= 1e-12);
        }
    }
}

#[test]
fn effective_gate_tracks_ideal_unitary_when_retention_is_high() {
    let cfg = presets::case_ii_strong();
    let g = effective_gate(&cfg).unwrap();
    let p = g.classical_phases();
    let u = ideal_unitary(CaseKind::CaseII, p.phi_bar_plus.unwrap(), p.dphi_plus.unwrap());
    let bound = g.leakage.sqrt();
    // the b₋ block carries a uniform light shift, so compare up to one phase per control block
    let d = gate_distance(&g, &u, DistanceMode::PerBlockPhase);
    assert!(d <= bound, "{d} > {bound}");
}

#[test]
fn basis_inputs_give_zero_linearity_gap() {
    for cfg in [presets::case_i_weak(), presets::case_ii_strong(), presets::cnot()] {
        for a in [Pol::Plus, Pol::Minus] {
            for b in [Pol::Plus, Pol::Minus] {
                assert!(linearity_check(&cfg, &QubitInput::basis(a, b)).unwrap() <= 1e-12);
            }
        }
    }
}
