use mesoq::fockbench::TruncationPolicy;
use mesoq::squid::*;
use mesoq::{Complex64, Drive, Mode, State, TwoModeKind, TwoModeState};
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, TAU};

const W1: f64 = 1.2e-4;
const W2: f64 = 1e-4;
const QP: f64 = 0.5;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pair() -> SquidPair<f64> {
    SquidPair { omega_a: 3e-5, omega_b: 2e-5, i1: 1.0, i2: 1.0 }
}

fn times() -> Vec<f64> {
    (0..16).map(|k| 1.0e3 + 6.37e3 * k as f64).collect()
}

fn field(kind: TwoModeKind<f64>) -> TwoModeState {
    TwoModeState::new(kind, Mode::new(W1, 1.0).unwrap(), Mode::new(W2, 1.0).unwrap()).unwrap()
}

/// Largest error relative to the largest magnitude of each moment.
fn rel_errors(a: &[[f64; 6]], b: &[[f64; 6]], cols: usize) -> f64 {
    let mut worst = 0.0_f64;
    for k in 0..cols {
        let scale = b.iter().fold(0.0_f64, |m, v| m.max(v[k].abs())).max(1e-300);
        for (x, y) in a.iter().zip(b) {
            worst = worst.max((x[k] - y[k]).abs() / scale);
        }
    }
    worst
}

proptest! {
    #[test]
    fn bessel_expansion_matches_direct_current(
        p0 in -3.0f64..3.0, wa in 0.0f64..3.0, amp in -6.0f64..6.0, t in 0.0f64..100.0,
    ) {
        let d = Drive::new(p0, wa, amp, 1.0, 2.0).unwrap();
        prop_assert!((classical_current(&d, t) - classical_current_expansion(&d, t)).abs() <= 1e-12);
        prop_assert!((classical_current_series(&d).eval(t).re - classical_current(&d, t)).abs() <= 1e-12);
    }

    #[test]
    fn second_moments_are_bounded(t in 0.0f64..2e5, n1 in 0u32..4, n2 in 0u32..4) {
        prop_assume!(n1 != n2);
        for ent in [false, true] {
            let m = two_squid_currents_number(n1, n2, ent, QP, &pair(), W1, W2, t).unwrap();
            for v in [m.ia2, m.ib2] {
                prop_assert!((-1e-14..=1.0 + 1e-14).contains(&v));
            }
            prop_assert!((-1e-14..=1.0 + 1e-14).contains(&m.ia2ib2));
        }
    }
}

#[test]
fn classical_steps_match_harmonic_average() {
    for (p0, amp) in [(0.3, 1.5), (FRAC_PI_2, 2.4), (-1.1, 5.0)] {
        let d = Drive::new(p0, 0.0, amp, 1.0, 1.0).unwrap();
        for n in -6..=6 {
            let avg = classical_dc(&d.at_step(n));
            assert!((avg - classical_shapiro(&d, n)).abs() <= 1e-10, "n={n}");
            // long-window check on the raw current
            let m = 4096;
            let window: f64 = (0..m).map(|j| classical_current(&d.at_step(n), TAU * j as f64 / m as f64)).sum::<f64>() / m as f64;
            assert!((window - avg).abs() <= 1e-9);
        }
    }
    let off = Drive::new(0.4, 0.5, 2.0, 1.0, 1.0).unwrap();
    assert_eq!(classical_dc(&off), 0.0);
}

#[test]
fn coherent_drive_rescales_steps() {
    for (amp, p0) in [(1.0, 0.7), (2.4, 1.4), (4.0, -0.5)] {
        let state = State::coherent(c(0.0, amp / (2.0 * QP)));
        let quantum = Drive::new(p0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let classical = Drive::new(p0, 0.0, amp, 1.0, 1.0).unwrap();
        for n in -5..=5 {
            let q = quantum_shapiro(&state, QP, &quantum, n);
            let cl = classical_shapiro(&classical, n);
            assert!((q - (-QP * QP / 2.0).exp() * cl).abs() <= 1e-10, "n={n}: {q} vs {cl}");
        }
    }
}

#[test]
fn coherent_drive_tends_to_classical() {
    let qp = 1e-4;
    let amp = 1.7;
    let state = State::coherent(c(0.0, amp / (2.0 * qp)));
    let quantum = Drive::new(0.4, 0.3, 0.0, 1.0, 1.0).unwrap();
    let classical = Drive::new(0.4, 0.3, amp, 1.0, 1.0).unwrap();
    let worst = (0..200)
        .map(|k| k as f64 * 0.173)
        .fold(0.0_f64, |m, t| m.max((quantum_current(&state, qp, &quantum, t) - classical_current(&classical, t)).abs()));
    assert!(worst <= 1e-6, "{worst:e}");
}

#[test]
fn squeezed_vacuum_gives_even_steps_only() {
    let d = Drive::new(0.9, 0.0, 0.0, 1.0, 1.0).unwrap();
    for r in [0.5, 2.0, 4.2] {
        let s = State::squeezed(c(0.0, 0.0), r, 0.0).unwrap();
        let mut best_even = 0.0_f64;
        for n in -8..=8i64 {
            let v = quantum_shapiro(&s, QP, &d, n);
            if n % 2 != 0 {
                assert!(v.abs() <= 1e-10, "r={r} n={n}: {v}");
            } else {
                best_even = best_even.max(v.abs());
            }
        }
        assert!(best_even >= 1e-4, "r={r}");
    }
}

#[test]
fn quantum_current_series_matches_pointwise() {
    let d = Drive::new(0.3, 2.0, 1.1, 1.0, 1.5).unwrap();
    for s in [State::coherent(c(0.5, 1.2)), State::squeezed(c(0.2, 0.0), 1.0, 0.4).unwrap(), State::Number { n: 3 }] {
        let series = quantum_current_series(&s, QP, &d);
        for t in [0.0, 0.37, 2.9, 11.0] {
            assert!((series.eval(t).re - quantum_current(&s, QP, &d, t)).abs() <= 1e-10);
        }
    }
}

#[test]
fn number_pair_closed_forms_match_oracle() {
    let policy = TruncationPolicy::default();
    for ent in [false, true] {
        let kind = if ent { TwoModeKind::swapped_number_pair(1, 3).unwrap() } else { TwoModeKind::separable_number_pair((1, 3), (3, 1)) };
        let f = field(kind);
        let mut closed = Vec::new();
        let mut oracle = Vec::new();
        let mut algebra = Vec::new();
        for t in times() {
            closed.push(two_squid_currents_number(1, 3, ent, QP, &pair(), W1, W2, t).unwrap().to_array());
            algebra.push(two_squid_moments(&f, QP, &pair(), t).to_array());
            oracle.push(two_squid_moments_numeric(&f, QP, &pair(), t, &policy).unwrap().value.to_array());
        }
        assert!(rel_errors(&closed, &oracle, 6) <= 1e-8, "ent={ent}");
        assert!(rel_errors(&algebra, &oracle, 6) <= 1e-8, "ent={ent}");
    }
}

#[test]
fn cross_current_is_the_entangled_excess() {
    for t in times() {
        let e = two_squid_currents_number(1, 3, true, QP, &pair(), W1, W2, t).unwrap();
        let s = two_squid_currents_number(1, 3, false, QP, &pair(), W1, W2, t).unwrap();
        let cross = pair_cross_current(1, 3, QP, &pair(), W1, W2, t);
        assert!((e.iab - s.iab - cross).abs() <= 1e-15);
        assert_eq!(e.ia, s.ia);
    }
}

#[test]
fn cross_series_has_beat_frequencies() {
    let p = pair();
    let series = pair_cross_series(1, 3, QP, &p, W1, W2);
    for t in times() {
        assert!((series.eval(t).re - pair_cross_current(1, 3, QP, &p, W1, W2, t)).abs() <= 1e-14);
    }
    let omega = pair_beat(1, 3, W1, W2);
    let mut want: Vec<f64> = Vec::new();
    for s in [1.0, -1.0] {
        for r in [1.0, -1.0] {
            want.push((p.omega_a + s * p.omega_b + r * omega).abs());
        }
    }
    want.sort_by(|a, b| a.partial_cmp(b).unwrap());
    want.dedup_by(|a, b| (*a - *b).abs() < 1e-18);
    let mut got: Vec<f64> = series.frequencies().iter().map(|f| f.abs()).collect();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    got.dedup_by(|a, b| (*a - *b).abs() < 1e-18);
    assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-18);
    }
}

#[test]
fn entangled_ratio_oscillates_about_separable() {
    let (n1, n2) = (1u32, 3u32);
    let omega = pair_beat(n1, n2, W1, W2).abs();
    let sep = ratio_c_sep_number(n1, n2, QP);
    let m = 32;
    let avg: f64 = (0..m)
        .map(|k| ratio_c_ent_number(n1, n2, QP, &pair(), W1, W2, TAU / omega * k as f64 / m as f64, 1e-6).unwrap())
        .sum::<f64>()
        / m as f64;
    assert!((avg - sep).abs() <= 1e-10);
    let margin = POLE_MARGIN;
    for t in times() {
        let m = two_squid_currents_number(n1, n2, true, QP, &pair(), W1, W2, t).unwrap();
        let direct = ratio_c(&m, &pair(), margin).unwrap();
        let closed = ratio_c_ent_number(n1, n2, QP, &pair(), W1, W2, t, margin).unwrap();
        assert!((direct - closed).abs() <= 1e-9 * closed.abs().max(1.0), "t={t}: {direct} vs {closed}");
    }
}

#[test]
fn odd_difference_poles_are_reported() {
    let p = pair();
    // sin(ω_A t) = 0 at t = 0
    assert!(ratio_c_ent_number(1, 2, QP, &p, W1, W2, 0.0, 1e-6).is_err());
    let t = 4.1e3;
    let m = two_squid_currents_number(1, 2, true, QP, &p, W1, W2, t).unwrap();
    let direct = ratio_c(&m, &p, POLE_MARGIN).unwrap();
    let closed = ratio_c_ent_number(1, 2, QP, &p, W1, W2, t, 1e-6).unwrap();
    assert!((direct - closed).abs() <= 1e-9 * closed.abs().max(1.0));
}

#[test]
fn equal_frequencies_freeze_the_entangled_ratio() {
    let p = pair();
    let a = ratio_c_ent_number(1, 3, QP, &p, W2, W2, 1.1e3, 1e-6).unwrap();
    let b = ratio_c_ent_number(1, 3, QP, &p, W2, W2, 7.9e4, 1e-6).unwrap();
    assert!((a - b).abs() <= 1e-12);
    assert!((a - ratio_c_sep_number(1, 3, QP)).abs() > 1e-3);
}

#[test]
fn factorizable_ratios_are_one() {
    let p = pair();
    let f = field(TwoModeKind::Factorizable { a: State::coherent(c(1.0, 0.2)), b: State::Thermal { beta_omega: 0.8 } });
    for t in times() {
        let m = two_squid_moments(&f, QP, &p, t);
        if let Ok(r) = ratio_c(&m, &p, POLE_MARGIN) {
            assert!((r - 1.0).abs() <= 1e-12);
        }
        assert!((ratio_c2(&m, &p, POLE_MARGIN).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn coherent_pair_means_and_products() {
    let (a1, a2) = (c(1.0, 0.0), c(3f64.sqrt(), 0.0));
    let policy = TruncationPolicy::default();
    for ent in [false, true] {
        let kind = if ent { TwoModeKind::EntangledCoherentPair { a1, a2 } } else { TwoModeKind::separable_coherent_pair(a1, a2) };
        let f = field(kind);
        let mut printed = Vec::new();
        let mut oracle = Vec::new();
        let mut algebra = Vec::new();
        for t in times().into_iter().step_by(2) {
            printed.push(two_squid_currents_coherent(a1, a2, ent, QP, &pair(), W1, W2, t, &policy).unwrap().value.to_array());
            oracle.push(two_squid_moments_numeric(&f, QP, &pair(), t, &policy).unwrap().value.to_array());
            algebra.push(two_squid_moments(&f, QP, &pair(), t).to_array());
        }
        assert!(rel_errors(&printed, &oracle, 6) <= 1e-8, "ent={ent}");
        assert!(rel_errors(&algebra, &oracle, 6) <= 1e-8, "ent={ent}");
    }
}
