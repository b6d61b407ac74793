use mesoq::fockbench::{
    density_matrix, displacement_matrix, emf_matrix, expectation, flux_matrix, fock_state, number_matrix, partial_trace,
    two_mode_density, weyl_numeric_grid, TruncationPolicy,
};
use mesoq::qstates::{emf_stats, flux_stats, match_mean_photons};
use mesoq::{Complex64, Mode, State, StateFamily, TwoModeKind};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid() -> Vec<Complex64> {
    let mut zs = Vec::new();
    for r in [0.6, 1.2, 1.8, 2.4, 3.0] {
        for a in [0.0, 1.3, 2.5, 3.8, 5.0] {
            zs.push(Complex64::from_polar(r, a));
        }
    }
    zs
}

fn families_at_17() -> Vec<(&'static str, State)> {
    vec![
        ("number", match_mean_photons(StateFamily::Number, 17.0).unwrap()),
        ("coherent", match_mean_photons(StateFamily::Coherent { phase: 0.0 }, 17.0).unwrap()),
        ("squeezed", match_mean_photons(StateFamily::Squeezed { r: 4.2, varphi: 0.0, phase: 0.0 }, 17.0).unwrap()),
        ("thermal", match_mean_photons(StateFamily::Thermal, 17.0).unwrap()),
    ]
}

#[test]
fn matched_states_have_seventeen_photons() {
    for (name, s) in families_at_17() {
        assert!((s.mean_photons() - 17.0).abs() < 1e-10, "{name}");
    }
}

#[test]
fn closed_form_weyl_matches_truncated_trace() {
    let zs = grid();
    let policy = TruncationPolicy::default();
    for (name, s) in families_at_17() {
        let num = weyl_numeric_grid(&s, &zs, &policy).unwrap();
        assert!(num.trace_deficit.abs() < 1e-10, "{name}: deficit {}", num.trace_deficit);
        for (z, w) in zs.iter().zip(&num.value) {
            let err = (s.weyl(*z) - w).norm();
            assert!(err <= 1e-8, "{name} z={z}: {err:e}");
        }
    }
}

#[test]
fn small_states_weyl_oracle() {
    let zs = grid();
    let policy = TruncationPolicy::default();
    let states = [
        State::vacuum(),
        State::Number { n: 3 },
        State::coherent(c(0.7, -1.1)),
        State::squeezed(c(0.4, 0.3), 0.8, 1.1).unwrap(),
        State::Thermal { beta_omega: 1.0 },
        State::Thermal { beta_omega: f64::INFINITY },
    ];
    for s in states {
        let num = weyl_numeric_grid(&s, &zs, &policy).unwrap();
        for (z, w) in zs.iter().zip(&num.value) {
            assert!((s.weyl(*z) - w).norm() <= 1e-8, "{s:?} z={z}");
        }
    }
}

#[test]
fn flux_and_emf_match_matrix_expectations() {
    let mode = Mode::new(1e-4, 1.3).unwrap();
    let period = std::f64::consts::TAU / mode.omega;
    let states = [
        State::vacuum(),
        State::Number { n: 4 },
        State::coherent(c(1.5, 0.8)),
        State::squeezed(c(0.5, -0.2), 1.2, 0.7).unwrap(),
        State::Thermal { beta_omega: 0.6 },
    ];
    let dim = 160;
    for s in states {
        let rho = density_matrix(&s, dim, 4096).unwrap();
        for j in 0..8 {
            let t = period * j as f64 / 8.0 + 17.0;
            let phi = flux_matrix(mode.omega, mode.xi, t, dim);
            let v = emf_matrix(mode.omega, mode.xi, t, dim);
            for (op, st) in [(phi, flux_stats(&s, &mode, t)), (v, emf_stats(&s, &mode, t))] {
                let m1 = expectation(&rho, &op).unwrap().re;
                let m2 = expectation(&rho, &op.matmul(&op).unwrap()).unwrap().re;
                let sd = (m2 - m1 * m1).sqrt();
                let scale = 1.0 + st.stddev.abs();
                assert!((m1 - st.mean).abs() <= 1e-8 * scale, "{s:?} t={t}: mean {m1} vs {}", st.mean);
                assert!((sd - st.stddev).abs() <= 1e-8 * scale, "{s:?} t={t}: sd {sd} vs {}", st.stddev);
            }
        }
    }
}

#[test]
fn vacuum_quadrature_values() {
    let mode = Mode::new(2.0, 1.5).unwrap();
    let f = flux_stats(&State::vacuum(), &mode, 0.3);
    let e = emf_stats(&State::vacuum(), &mode, 0.3);
    assert!(f.mean.abs() < 1e-15 && (f.stddev - 1.5 / 2f64.sqrt()).abs() < 1e-15);
    assert!(e.mean.abs() < 1e-15 && (e.stddev - 3.0 / 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn coherent_emf_mean_has_recorded_sign() {
    let mode = Mode::new(1.0, 1.0).unwrap();
    let a = c(0.6, 0.9);
    for t in [0.0, 0.4, 2.2] {
        let expected = -(2f64).sqrt() * a.norm() * (t - a.arg()).sin();
        assert!((emf_stats(&State::coherent(a), &mode, t).mean - expected).abs() < 1e-14);
    }
}

#[test]
fn squeezed_noise_dips_below_vacuum() {
    let mode = Mode::new(1.0, 1.0).unwrap();
    let s = State::squeezed(c(0.0, 0.0), 0.5, 0.0).unwrap();
    let vac = 1.0 / 2f64.sqrt();
    let sds: Vec<f64> = (0..64).map(|j| emf_stats(&s, &mode, j as f64 * std::f64::consts::TAU / 64.0).stddev).collect();
    assert!(sds.iter().any(|v| *v < vac - 1e-3));
    assert!(sds.iter().any(|v| *v > vac + 1e-3));
}

#[test]
fn thermal_photon_number_from_matrix() {
    for bw in [0.3, 1.0, 2.5] {
        let s = State::Thermal { beta_omega: bw };
        let rho = density_matrix(&s, 512, 4096).unwrap();
        let n = expectation(&rho, &number_matrix(512)).unwrap().re;
        assert!((n - 1.0 / (bw.exp() - 1.0)).abs() < 1e-10);
    }
}

#[test]
fn density_matrices_are_valid() {
    for (name, s) in families_at_17() {
        let dim = match name {
            "squeezed" => 1024,
            "thermal" => 512,
            _ => 256,
        };
        let fs = fock_state(&s, dim, 4096).unwrap();
        assert!(fs.trace_deficit().abs() < 1e-10, "{name}");
        if dim <= 512 {
            let rho = fs.density();
            assert!(rho.hermiticity_error() < 1e-14, "{name}");
            assert!(rho.is_positive_semidefinite(1e-12), "{name}");
        }
    }
}

#[test]
fn partial_trace_of_product_gives_factor() {
    let a = State::coherent(c(0.6, 0.2));
    let b = State::Thermal { beta_omega: 1.2 };
    let (da, db) = (20, 24);
    let rho = two_mode_density(&TwoModeKind::Factorizable { a, b }, da, db, 4096).unwrap();
    let ra = partial_trace(&rho, da, db, mesoq::twomode::Keep::A).unwrap();
    let rb = partial_trace(&rho, da, db, mesoq::twomode::Keep::B).unwrap();
    let tb = fock_state(&b, db, 4096).unwrap().trace_deficit();
    let ta = fock_state(&a, da, 4096).unwrap().trace_deficit();
    let ea = density_matrix(&a, da, 4096).unwrap().scale(c(1.0 - tb, 0.0));
    let eb = density_matrix(&b, db, 4096).unwrap().scale(c(1.0 - ta, 0.0));
    assert!(ra.max_abs_diff(&ea).unwrap() < 1e-12);
    assert!(rb.max_abs_diff(&eb).unwrap() < 1e-12);
}

#[test]
fn displacement_is_unitary_on_the_bulk() {
    for z in [c(0.3, 0.0), c(-1.0, 1.2), c(0.0, 2.0), Complex64::from_polar(2.0, 2.2)] {
        // columns far from the cutoff see no truncation
        let d = displacement_matrix(z, 128);
        let mut worst = 0.0_f64;
        for col in 0..64 {
            let n: f64 = (0..128).map(|r| d.get(r, col).norm_sqr()).sum();
            worst = worst.max((n - 1.0).abs());
        }
        assert!(worst <= 1e-8, "z={z}: {worst:e}");
    }
}
