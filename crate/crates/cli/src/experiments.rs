//! Figure experiments. Each one turns typed parameters into tables plus a
//! summary, and spot-checks its closed forms against the matrix oracle.

use std::f64::consts::PI;

use mesoq::fockbench::{self, converge, expectation, TruncationPolicy};
use mesoq::interference::{self, CorrelationSeries};
use mesoq::qstates::{emf_stats, flux_stats, match_mean_photons, StateFamily};
use mesoq::squid::{self, CurrentMoments, SquidDrive, SquidPair};
use mesoq::twomode::{self, TwoModeKind};
use mesoq::{Complex64, Coupling, Mode, State, TwoModeState};
use rayon::prelude::*;

use crate::config::*;
use crate::error::CliError;
use crate::output::{Convergence, Outcome, Table};

type Res<T> = Result<T, CliError>;

/// Experiment ids with one-line descriptions.
pub const EXPERIMENTS: &[(&str, &str)] = &[
    ("fig1", "EMF mean and noise for coherent and squeezed light, with photon statistics"),
    ("fig4", "phase factor |W| and arg W for vacuum-like states"),
    ("fig5", "electron intensity I(t) at x = 0 for matched ⟨N⟩"),
    ("fig6", "normalized autocorrelation γ(τ), real and imaginary parts"),
    ("fig7", "spectral density S_K"),
    ("fig9", "R_sep surface for the separable number pair"),
    ("fig10", "R_ent surface for the entangled number pair"),
    ("fig11", "R_sep and R_ent against time at fixed screen points"),
    ("fig14", "separable R^(c) for number and coherent pairs"),
    ("fig15", "R^(c)_sep - R^(c)_ent"),
    ("fig16", "⟨I_A⟩ and ⟨I_A²⟩ separable minus entangled, coherent pair"),
    ("fig17", "⟨I_A I_B⟩ separable minus entangled"),
    ("fig18", "R^(c2)_sep - R^(c2)_ent"),
    ("fit-q", "coupling fitted to the reported R_sep extremes"),
    ("shapiro", "Shapiro step heights: classical, coherent, squeezed vacuum"),
];

pub fn run_experiment(cfg: &RunConfig, policy: &TruncationPolicy) -> Res<Outcome> {
    match cfg.experiment.as_str() {
        "fig1" => fig1(&cfg.params()?, policy),
        "fig4" => fig4(&cfg.params()?, policy),
        "fig5" => fig5(&cfg.params()?, policy),
        "fig6" => fig6(&cfg.params()?, policy),
        "fig7" => fig7(&cfg.params()?, policy),
        "fig9" => fig9(&cfg.params()?, policy),
        "fig10" => fig10(&cfg.params()?, policy),
        "fig11" => fig11(&cfg.params()?, policy),
        "fig14" | "fig15" | "fig16" | "fig17" | "fig18" => squid_pair_figure(&cfg.experiment, &cfg.params()?, policy),
        "fit-q" => fit_q(&cfg.params()?),
        "shapiro" => shapiro(&cfg.params()?),
        other => Err(CliError::Config(format!("unknown experiment '{other}'"))),
    }
}

fn positive(name: &str, v: f64) -> Res<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

fn nan_on_err(r: mesoq::Result<f64>) -> Res<f64> {
    match r {
        Ok(v) => Ok(v),
        Err(mesoq::Error::Singular(_)) => Ok(f64::NAN),
        Err(e) => Err(e.into()),
    }
}

/// A few evenly spaced entries of `v`, endpoints included.
fn spread<T: Copy>(v: &[T], n: usize) -> Vec<T> {
    if v.len() <= n {
        return v.to_vec();
    }
    (0..n).map(|i| v[i * (v.len() - 1) / (n - 1)]).collect()
}

/// Compares `state.weyl` with the converged matrix trace at `zs`.
fn weyl_spot(state: &State, zs: &[Complex64], policy: &TruncationPolicy, conv: &mut Convergence) -> Res<()> {
    let c = fockbench::weyl_numeric_grid(state, zs, policy)?;
    conv.record(&c);
    for (z, v) in zs.iter().zip(&c.value) {
        conv.oracle((state.weyl(*z) - v).norm());
    }
    Ok(())
}

fn parallel_rows<F>(xs: &[f64], f: F) -> Res<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Res<Vec<f64>> + Sync,
{
    xs.par_iter().map(|x| f(*x)).collect()
}

fn fig1(p: &Fig1Params, policy: &TruncationPolicy) -> Res<Outcome> {
    positive("omega", p.omega)?;
    p.omega_t.validate("omega_t")?;
    let mode = Mode::new(p.omega, p.xi)?;
    let a = Complex64::new(p.amplitude, 0.0);
    let coh = State::coherent(a);
    let sq = State::squeezed(a, p.squeeze_r, p.squeeze_varphi)?;
    let states = [coh, sq];

    let mut field = Table::new("fig1_field", 1, &["omega_t", "emf_mean_coh", "emf_sd_coh", "emf_mean_sq", "emf_sd_sq", "flux_mean_coh", "flux_sd_coh", "flux_mean_sq", "flux_sd_sq"]);
    for wt in p.omega_t.values() {
        let t = wt / p.omega;
        let mut row = vec![wt];
        for s in &states {
            let e = emf_stats(s, &mode, t);
            row.extend([e.mean, e.stddev]);
        }
        for s in &states {
            let f = flux_stats(s, &mode, t);
            row.extend([f.mean, f.stddev]);
        }
        field.push(row);
    }

    let mut counts = Table::new("fig1_counts", 1, &["n", "p_coh", "p_sq"]);
    for n in 0..=p.count_max as u32 {
        counts.push(vec![n as f64, coh.photon_counting(n), sq.photon_counting(n)]);
    }

    let mut out = Outcome::new(vec![field, counts]);
    for (name, s) in [("coh", &coh), ("sq", &sq)] {
        let n = s.mean_photons();
        // Fano factor from the distribution, cut where the tail is negligible
        let dist = s.photon_distribution((n + 40.0 * (n + 1.0).sqrt()).ceil() as usize);
        let (m1, m2) = dist.iter().enumerate().fold((0.0, 0.0), |(a, b), (k, pk)| (a + k as f64 * pk, b + (k * k) as f64 * pk));
        out.note(&format!("mean_photons_{name}"), n);
        out.note(&format!("fano_{name}"), (m2 - m1 * m1) / m1);
    }

    // EMF moments against the matrix representation
    for s in &states {
        for wt in spread(&p.omega_t.values(), 4) {
            let t = wt / p.omega;
            let c = converge(policy, s.mean_photons(), |dim| {
                let rho = fockbench::density_matrix(s, dim, policy.cap)?;
                let v = fockbench::emf_matrix(p.omega, p.xi, t, dim);
                let v2 = v.matmul(&v)?;
                let tr = rho.trace().re;
                Ok((vec![expectation(&rho, &v)?, expectation(&rho, &v2)?], 1.0 - tr))
            })?;
            out.convergence.record(&c);
            let e = emf_stats(s, &mode, t);
            let mean = c.value[0].re;
            let sd = (c.value[1].re - mean * mean).max(0.0).sqrt();
            out.convergence.oracle((e.mean - mean).abs().max((e.stddev - sd).abs()));
        }
    }
    Ok(out)
}

fn fig4(p: &Fig4Params, policy: &TruncationPolicy) -> Res<Outcome> {
    positive("q", p.q)?;
    positive("omega", p.omega)?;
    p.omega_t.validate("omega_t")?;
    let coupling = Coupling::new(p.q)?;
    let mode = Mode::new(p.omega, 1.0)?;
    let states = [State::vacuum(), State::coherent(Complex64::new(0.0, 0.0)), State::squeezed(Complex64::new(0.0, 0.0), p.squeeze_r, 0.0)?, State::Thermal { beta_omega: f64::INFINITY }];

    let mut table = Table::new("fig4", 1, &["omega_t", "absW_num", "absW_coh", "absW_sq", "absW_th", "argW_num", "argW_coh", "argW_sq", "argW_th"]);
    let mut lambdas = Vec::new();
    for wt in p.omega_t.values() {
        let lam = interference::phase_parameter(coupling.q, mode.omega, wt / p.omega);
        lambdas.push(lam);
        let w: Vec<Complex64> = states.iter().map(|s| s.weyl(lam)).collect();
        let mut row = vec![wt];
        row.extend(w.iter().map(|v| v.norm()));
        row.extend(w.iter().map(|v| v.arg()));
        table.push(row);
    }
    let mut out = Outcome::new(vec![table]);
    let spots = spread(&lambdas, 5);
    for s in &states {
        weyl_spot(s, &spots, policy, &mut out.convergence)?;
    }
    Ok(out)
}

/// The four ⟨N⟩-matched drive states: number, coherent, squeezed, thermal.
fn matched_states(p: &MatchedParams) -> Res<[State; 4]> {
    if p.mean_photons < 0.0 || p.mean_photons.fract() != 0.0 {
        return Err(CliError::Config(format!("mean_photons must be a non-negative integer for the number state, got {}", p.mean_photons)));
    }
    Ok([
        match_mean_photons(StateFamily::Number, p.mean_photons)?,
        match_mean_photons(StateFamily::Coherent { phase: 0.0 }, p.mean_photons)?,
        match_mean_photons(StateFamily::Squeezed { r: p.squeeze_r, varphi: 0.0, phase: 0.0 }, p.mean_photons)?,
        match_mean_photons(StateFamily::Thermal, p.mean_photons)?,
    ])
}

fn matched_setup(p: &MatchedParams) -> Res<(Coupling, Mode, [State; 4])> {
    positive("q", p.q)?;
    positive("omega", p.omega)?;
    Ok((Coupling::new(p.q)?, Mode::new(p.omega, 1.0)?, matched_states(p)?))
}

fn fig5(p: &MatchedParams, policy: &TruncationPolicy) -> Res<Outcome> {
    p.axis.validate("axis")?;
    let (coupling, mode, states) = matched_setup(p)?;
    let xs = p.axis.values();
    let rows = parallel_rows(&xs, |wt| {
        let t = wt / p.omega;
        let mut row = vec![wt];
        row.extend(states.iter().map(|s| interference::intensity_quantum(s, &coupling, &mode, 0.0, t)));
        row.push(interference::classical_intensity(p.e_phi1, p.omega, t));
        Ok(row)
    })?;
    let mut table = Table::new("fig5", 1, &["omega_t", "I_num", "I_coh", "I_sq", "I_th", "I_cl"]);
    rows.into_iter().for_each(|r| table.push(r));
    let mut out = Outcome::new(vec![table]);
    for (name, s) in ["num", "coh", "sq", "th"].iter().zip(&states) {
        out.note(&format!("visibility_at_0_{name}"), interference::visibility(s, &coupling, &mode, 0.0));
    }
    let spots: Vec<Complex64> = spread(&xs, 3).iter().map(|wt| interference::phase_parameter(coupling.q, mode.omega, wt / p.omega)).collect();
    for s in &states {
        weyl_spot(s, &spots, policy, &mut out.convergence)?;
    }
    Ok(out)
}

fn quantum_correlations(states: &[State; 4], coupling: &Coupling, mode: &Mode, taus: &[f64]) -> Res<Vec<CorrelationSeries<f64>>> {
    states
        .iter()
        .map(|s| {
            let gamma = taus.par_iter().map(|tau| interference::gamma_quantum(s, coupling, mode, *tau)).collect::<mesoq::Result<Vec<_>>>()?;
            let gamma0 = interference::gamma_quantum(s, coupling, mode, 0.0)?;
            Ok(CorrelationSeries { taus: taus.to_vec(), gamma, gamma0 })
        })
        .collect()
}

/// Weyl points `iq(s₁ + s₂e^{iωτ})` that enter `Γ(τ)`.
fn gamma_spots(q: f64, omega: f64, taus: &[f64]) -> Vec<Complex64> {
    let iq = Complex64::new(0.0, q);
    let mut zs = vec![iq];
    for tau in spread(taus, 3) {
        zs.push(iq * (1.0 + Complex64::from_polar(1.0, omega * tau)));
        zs.push(iq * (1.0 - Complex64::from_polar(1.0, omega * tau)));
    }
    zs
}

fn fig6(p: &MatchedParams, policy: &TruncationPolicy) -> Res<Outcome> {
    p.axis.validate("axis")?;
    let (coupling, mode, states) = matched_setup(p)?;
    let wtaus = p.axis.values();
    let taus: Vec<f64> = wtaus.iter().map(|x| x / p.omega).collect();
    let quantum = quantum_correlations(&states, &coupling, &mode, &taus)?
        .iter()
        .map(interference::normalized_gamma)
        .collect::<mesoq::Result<Vec<_>>>()?;
    let classical = interference::normalized_gamma(&interference::autocorrelation_classical(p.e_phi1, p.omega, &taus))?;

    let mut table = Table::new("fig6", 1, &["omega_tau", "re_num", "im_num", "re_coh", "im_coh", "re_sq", "im_sq", "re_th", "im_th", "re_cl", "im_cl"]);
    for (i, wt) in wtaus.iter().enumerate() {
        let mut row = vec![*wt];
        for g in quantum.iter().chain(std::iter::once(&classical)) {
            row.extend([g.gamma[i].re, g.gamma[i].im]);
        }
        table.push(row);
    }
    let mut out = Outcome::new(vec![table]);
    for (i, name) in ["num", "coh", "sq", "th", "cl"].iter().enumerate() {
        out.note(&format!("max_abs_im_{name}"), out.tables[0].rows.iter().map(|r| r[2 + 2 * i].abs()).fold(0.0, f64::max));
    }
    let spots = gamma_spots(coupling.q, mode.omega, &taus);
    for s in &states {
        weyl_spot(s, &spots, policy, &mut out.convergence)?;
    }
    Ok(out)
}

fn fig7(p: &MatchedParams, policy: &TruncationPolicy) -> Res<Outcome> {
    let (coupling, mode, states) = matched_setup(p)?;
    if p.samples < interference::MIN_QUADRATURE_SAMPLES {
        return Err(CliError::Config(format!("samples must be at least {}", interference::MIN_QUADRATURE_SAMPLES)));
    }
    let kmax = p.k_max;
    let taus = interference::period_grid(p.omega, p.samples);
    let quantum = quantum_correlations(&states, &coupling, &mode, &taus)?
        .iter()
        .map(|g| interference::spectral_density_quadrature(g, p.omega, kmax))
        .collect::<mesoq::Result<Vec<_>>>()?;
    // The classical Γ is a series in 2ω; on the ω base its odd entries vanish.
    let classical = interference::spectral_density_exact(&interference::classical_gamma_series(p.e_phi1, p.omega), p.omega, kmax)?;

    let mut table = Table::new("fig7", 1, &["K", "S_cl", "S_num", "S_coh", "S_sq", "S_th"]);
    for k in -(kmax as i64)..=kmax as i64 {
        let mut row = vec![k as f64, classical.get(k).unwrap_or(0.0)];
        row.extend(quantum.iter().map(|s| s.get(k).unwrap_or(0.0)));
        table.push(row);
    }
    let mut out = Outcome::new(vec![table]);
    for (name, s) in ["cl", "num", "coh", "sq", "th"].iter().zip(std::iter::once(&classical).chain(&quantum)) {
        let asym = (1..=kmax as i64).map(|k| (s.get(k).unwrap_or(0.0) - s.get(-k).unwrap_or(0.0)).abs()).fold(0.0, f64::max);
        out.note(&format!("max_asymmetry_{name}"), asym);
        out.note(&format!("imag_residue_{name}"), s.imag_residue);
    }
    out.note("base_frequency", p.omega);
    let spots = gamma_spots(coupling.q, mode.omega, &taus);
    for s in &states {
        weyl_spot(s, &spots, policy, &mut out.convergence)?;
    }
    Ok(out)
}

/// Coupling for the pair figures: explicit or fitted.
fn pair_q(p: &PairParams, out: &mut Outcome) -> Res<f64> {
    let q = match p.q {
        Some(q) => {
            positive("q", q)?;
            q
        }
        None => {
            let f = &p.fit;
            let fit = twomode::fit_q_to_bounds(f.lower, f.upper, f.q_min, f.q_max, f.scan_points)?;
            out.note("fit_max_error", fit.max_error);
            fit.q
        }
    };
    out.note("q", q);
    out.note("q_fitted", p.q.is_none());
    Ok(q)
}

fn pair_field(p: &PairParams, entangled: bool) -> Res<TwoModeState> {
    positive("omega1", p.omega1)?;
    positive("omega2", p.omega2)?;
    let kind = if entangled { TwoModeKind::matched_number_pair(0, 1)? } else { TwoModeKind::separable_number_pair((0, 0), (1, 1)) };
    Ok(TwoModeState::new(kind, Mode::new(p.omega1, 1.0)?, Mode::new(p.omega2, 1.0)?)?)
}

/// Checks `I(x_A, x_B)`, `I_A`, `I_B` at a few points against the matrices.
fn pair_spots(field: &TwoModeState, coupling: &Coupling, points: &[(f64, f64, f64)], policy: &TruncationPolicy, conv: &mut Convergence) -> Res<()> {
    for &(xa, xb, t) in points {
        let c = twomode::intensities_numeric(field, coupling, xa, xb, t, policy)?;
        conv.record(&c);
        let closed = [
            twomode::joint_intensity(field, coupling, xa, xb, t),
            twomode::marginal_intensity(field, twomode::Keep::A, coupling, xa, t),
            twomode::marginal_intensity(field, twomode::Keep::B, coupling, xb, t),
        ];
        for (a, b) in closed.iter().zip(&c.value) {
            conv.oracle((a - b.re).abs());
        }
    }
    Ok(())
}

fn surface(field: &TwoModeState, coupling: &Coupling, t: f64, grid: &Grid, name: &str, column: &str) -> Res<Table> {
    grid.validate("screen")?;
    let xs = grid.values();
    let rows: Vec<Vec<Vec<f64>>> = xs
        .par_iter()
        .map(|xa| xs.iter().map(|xb| Ok(vec![*xa, *xb, nan_on_err(twomode::ratio_r(field, coupling, *xa, *xb, t))?])).collect::<Res<Vec<_>>>())
        .collect::<Res<_>>()?;
    let mut table = Table::new(name, 2, &["x_A", "x_B", column]);
    rows.into_iter().flatten().for_each(|r| table.push(r));
    Ok(table)
}

fn fig9(p: &PairParams, policy: &TruncationPolicy) -> Res<Outcome> {
    let mut out = Outcome::new(Vec::new());
    let q = pair_q(p, &mut out)?;
    let coupling = Coupling::new(q)?;
    let field = pair_field(p, false)?;
    let table = surface(&field, &coupling, 0.0, &p.screen, "fig9", "R_sep")?;
    let (lo, hi) = table.column_range(2).unwrap_or((f64::NAN, f64::NAN));
    let (blo, bhi) = twomode::sep_bounds(q)?;
    let (elo, ehi) = twomode::sep_extremes(q)?;
    out.tables.push(table);
    out.note("grid_min", lo);
    out.note("grid_max", hi);
    out.note("printed_lower_value", blo);
    out.note("upper_bound", bhi);
    out.note("true_min", elo);
    out.note("true_max", ehi);
    pair_spots(&field, &coupling, &[(0.0, 0.0, 0.0), (PI, 0.3, 0.0), (-2.0, 4.0, 0.0)], policy, &mut out.convergence)?;
    Ok(out)
}

fn fig10(p: &PairParams, policy: &TruncationPolicy) -> Res<Outcome> {
    let mut out = Outcome::new(Vec::new());
    let q = pair_q(p, &mut out)?;
    let coupling = Coupling::new(q)?;
    let field = pair_field(p, true)?;
    let t = p.sum_phase / (p.omega1 + p.omega2);
    let table = surface(&field, &coupling, t, &p.screen, "fig10", "R_ent")?;
    let (lo, hi) = table.column_range(2).unwrap_or((f64::NAN, f64::NAN));
    let (blo, bhi) = twomode::sep_bounds(q)?;
    let (elo, ehi) = twomode::sep_extremes(q)?;
    let beyond = table.rows.iter().filter(|r| r[2] > ehi || r[2] < elo).count();
    out.tables.push(table);
    out.note("sum_phase", p.sum_phase);
    out.note("grid_min", lo);
    out.note("grid_max", hi);
    out.note("plateau_lower", blo);
    out.note("plateau_upper", bhi);
    out.note("points_outside_separable_range", beyond);
    pair_spots(&field, &coupling, &[(0.0, 0.0, t), (PI, 0.3, t), (-2.0, 4.0, t)], policy, &mut out.convergence)?;
    Ok(out)
}

fn fig11(p: &PairParams, policy: &TruncationPolicy) -> Res<Outcome> {
    p.sum_phase_axis.validate("sum_phase_axis")?;
    let mut out = Outcome::new(Vec::new());
    let q = pair_q(p, &mut out)?;
    let coupling = Coupling::new(q)?;
    let sep = pair_field(p, false)?;
    let ent = pair_field(p, true)?;
    let wsum = p.omega1 + p.omega2;
    let xs = p.sum_phase_axis.values();
    let rows = parallel_rows(&xs, |ph| {
        let t = ph / wsum;
        Ok(vec![ph, nan_on_err(twomode::ratio_r(&ent, &coupling, p.xa, p.xb, t))?, nan_on_err(twomode::ratio_r(&sep, &coupling, p.xa, p.xb, t))?])
    })?;
    let mut table = Table::new("fig11", 1, &["sum_phase", "R_ent", "R_sep"]);
    rows.into_iter().for_each(|r| table.push(r));
    out.tables.push(table);
    out.note("x_A", p.xa);
    out.note("x_B", p.xb);
    let spots: Vec<(f64, f64, f64)> = spread(&xs, 3).iter().map(|ph| (p.xa, p.xb, ph / wsum)).collect();
    pair_spots(&ent, &coupling, &spots, policy, &mut out.convergence)?;
    pair_spots(&sep, &coupling, &spots[..1], policy, &mut out.convergence)?;
    Ok(out)
}

/// Separable and entangled moments for number and coherent pairs at one time.
struct PairMoments {
    num_sep: CurrentMoments<f64>,
    num_ent: CurrentMoments<f64>,
    coh_sep: CurrentMoments<f64>,
    coh_ent: CurrentMoments<f64>,
    conv: Convergence,
}

/// `with_entangled_coherent = false` leaves `coh_ent` equal to `coh_sep`.
fn pair_moments(p: &SquidPairParams, pair: &SquidPair<f64>, t: f64, with_entangled_coherent: bool, policy: &TruncationPolicy) -> Res<PairMoments> {
    let (a1, a2) = (Complex64::new(p.a1, 0.0), Complex64::new(p.a2, 0.0));
    let mut conv = Convergence::default();
    let num = |e| squid::two_squid_currents_number(p.n1, p.n2, e, p.qprime, pair, p.omega1, p.omega2, t);
    let coh = |e| squid::two_squid_currents_coherent(a1, a2, e, p.qprime, pair, p.omega1, p.omega2, t, policy);
    let cs = coh(false)?;
    conv.record(&cs);
    let coh_ent = if with_entangled_coherent {
        let ce = coh(true)?;
        conv.record(&ce);
        ce.value
    } else {
        cs.value
    };
    Ok(PairMoments { num_sep: num(false)?, num_ent: num(true)?, coh_sep: cs.value, coh_ent, conv })
}

fn squid_pair_figure(name: &str, p: &SquidPairParams, policy: &TruncationPolicy) -> Res<Outcome> {
    positive("qprime", p.qprime)?;
    positive("omega1", p.omega1)?;
    positive("omega2", p.omega2)?;
    positive("i1", p.i1)?;
    positive("i2", p.i2)?;
    positive("pole_margin", p.pole_margin)?;
    p.t_scaled.validate("t_scaled")?;
    if p.omega1 == p.omega2 {
        return Err(CliError::Config("omega1 and omega2 must differ; time is scaled by their difference".into()));
    }
    if p.n1 == p.n2 {
        return Err(CliError::Config("the number pair needs n1 != n2".into()));
    }
    let pair = SquidPair { omega_a: p.omega_a, omega_b: p.omega_b, i1: p.i1, i2: p.i2 };
    let scale = p.omega1 - p.omega2;
    let margin = p.pole_margin;
    let xs = p.t_scaled.values();

    let columns: &[&str] = match name {
        "fig14" => &["t_scaled", "Rc_sep_num", "Rc_sep_coh"],
        "fig15" => &["t_scaled", "dR_num", "dR_coh"],
        "fig16" => &["t_scaled", "dIA_coh", "dIA2_coh"],
        "fig17" => &["t_scaled", "dIAB_num", "dIAB_coh"],
        _ => &["t_scaled", "dRc2_num", "dRc2_coh"],
    };
    let results: Vec<(Vec<f64>, Convergence)> = xs
        .par_iter()
        .map(|x| {
            let t = x / scale;
            let m = pair_moments(p, &pair, t, name != "fig14", policy)?;
            let rc = |c: &CurrentMoments<f64>| nan_on_err(squid::ratio_c(c, &pair, margin));
            let rc2 = |c: &CurrentMoments<f64>| nan_on_err(squid::ratio_c2(c, &pair, margin));
            let row = match name {
                "fig14" => vec![*x, squid::ratio_c_sep_number(p.n1, p.n2, p.qprime), rc(&m.coh_sep)?],
                "fig15" => {
                    let ent = nan_on_err(squid::ratio_c_ent_number(p.n1, p.n2, p.qprime, &pair, p.omega1, p.omega2, t, margin))?;
                    vec![*x, squid::ratio_c_sep_number(p.n1, p.n2, p.qprime) - ent, rc(&m.coh_sep)? - rc(&m.coh_ent)?]
                }
                "fig16" => vec![*x, m.coh_sep.ia - m.coh_ent.ia, m.coh_sep.ia2 - m.coh_ent.ia2],
                "fig17" => vec![*x, m.num_sep.iab - m.num_ent.iab, m.coh_sep.iab - m.coh_ent.iab],
                _ => vec![*x, rc2(&m.num_sep)? - rc2(&m.num_ent)?, rc2(&m.coh_sep)? - rc2(&m.coh_ent)?],
            };
            Ok((row, m.conv))
        })
        .collect::<Res<_>>()?;

    let mut table = Table::new(name, 1, columns);
    let mut out = Outcome::new(Vec::new());
    for (row, c) in results {
        table.push(row);
        out.convergence.merge(&c);
    }
    out.tables.push(table);
    out.note("beat_frequency", squid::pair_beat::<f64>(p.n1, p.n2, p.omega1, p.omega2));
    out.note("rc_sep_number", squid::ratio_c_sep_number(p.n1, p.n2, p.qprime));

    // Number-pair closed forms against the two-mode matrices
    for x in spread(&xs, 3) {
        let t = x / scale;
        for entangled in [false, true] {
            let kind = if entangled { TwoModeKind::swapped_number_pair(p.n1, p.n2)? } else { TwoModeKind::separable_number_pair((p.n1, p.n2), (p.n2, p.n1)) };
            let field = TwoModeState::new(kind, Mode::new(p.omega1, 1.0)?, Mode::new(p.omega2, 1.0)?)?;
            let c = squid::two_squid_moments_numeric(&field, p.qprime, &pair, t, policy)?;
            out.convergence.record(&c);
            let closed = squid::two_squid_currents_number(p.n1, p.n2, entangled, p.qprime, &pair, p.omega1, p.omega2, t)?;
            for (a, b) in closed.to_array().iter().zip(c.value.to_array()) {
                out.convergence.oracle((a - b).abs());
            }
        }
    }
    Ok(out)
}

fn fit_q(p: &FitTargets) -> Res<Outcome> {
    let fit = twomode::fit_q_to_bounds(p.lower, p.upper, p.q_min, p.q_max, p.scan_points)?;
    let mut table = Table::new("fit_q", 1, &["q", "lower", "upper", "max_error"]);
    let step = (p.q_max - p.q_min) / (p.scan_points - 1) as f64;
    for i in 0..p.scan_points {
        let q = p.q_min + step * i as f64;
        let (lo, hi) = twomode::sep_bounds(q)?;
        table.push(vec![q, lo, hi, (lo - p.lower).abs().max((hi - p.upper).abs())]);
    }
    let mut out = Outcome::new(vec![table]);
    out.note("q", fit.q);
    out.note("lower", fit.lower);
    out.note("upper", fit.upper);
    out.note("max_error", fit.max_error);
    let (elo, ehi) = twomode::sep_extremes(fit.q)?;
    out.note("true_min", elo);
    out.note("true_max", ehi);
    Ok(out)
}

fn shapiro(p: &ShapiroParams) -> Res<Outcome> {
    positive("qprime", p.qprime)?;
    if p.n_max < 0 {
        return Err(CliError::Config("n_max must be non-negative".into()));
    }
    let drive = SquidDrive::new(p.phase0, 0.0, p.amplitude, p.omega1, p.icrit)?;
    // A coherent state with A = iB/(2q') reproduces the classical flux.
    let coh = State::coherent(Complex64::new(0.0, p.amplitude / (2.0 * p.qprime)));
    let sq = State::squeezed(Complex64::new(0.0, 0.0), p.squeeze_r, 0.0)?;
    let quantum_only = SquidDrive { amplitude: 0.0, ..drive };
    let cl = squid::step_scan(None, p.qprime, &drive, p.n_max);
    let c = squid::step_scan(Some(&coh), p.qprime, &quantum_only, p.n_max);
    let s = squid::step_scan(Some(&sq), p.qprime, &quantum_only, p.n_max);
    let mut table = Table::new("shapiro", 1, &["n", "idc_classical", "idc_coherent", "idc_squeezed"]);
    for i in 0..cl.len() {
        table.push(vec![cl[i].step as f64, cl[i].idc, c[i].idc, s[i].idc]);
    }
    let mut out = Outcome::new(vec![table]);
    out.note("coherent_damping", (-p.qprime * p.qprime / 2.0).exp());
    out.note("max_odd_step_squeezed", s.iter().filter(|v| v.step % 2 != 0).map(|v| v.idc.abs()).fold(0.0, f64::max));
    Ok(out)
}
