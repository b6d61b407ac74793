//! Electron interference in a ring threaded by a (possibly quantized) flux.
//!
//! The phase-factor operator is `e^{ieφ̂(t)} = D(λ)` with `λ = iq e^{iωt}`,
//! so every intensity is a Weyl-function evaluation:
//! `I(x, t) = 1 + Re[e^{-ix} W(λ)] = 1 + |W(λ)| cos(x - arg W(λ))`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicSeries;
use crate::qstates::{quadrature, quadrature_covariance, ChargeCoupling, ModeParams, PhotonState};
use crate::scalar::{cis, cplx, int, lit, Real};
use crate::specfun::{bessel_j_cutoff, bessel_j_seq};

/// Sampled autocorrelation `Γ(τ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSeries<T> {
    pub taus: Vec<T>,
    pub gamma: Vec<Complex<T>>,
    pub gamma0: Complex<T>,
}

/// Spectral coefficients `S_K` for `K = k_min, …, k_min + values.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCoeffs<T> {
    pub base: T,
    pub k_min: i64,
    pub values: Vec<T>,
    /// Largest `|Im S_K|` seen before the imaginary parts were dropped.
    pub imag_residue: T,
}

impl<T: Real> SpectrumCoeffs<T> {
    pub fn get(&self, k: i64) -> Option<T> {
        let idx = k - self.k_min;
        if idx < 0 {
            return None;
        }
        self.values.get(idx as usize).copied()
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.values.len() as i64 - 1
    }

    /// `Σ_K S_K e^{iKΩτ}`.
    pub fn reconstruct(&self, tau: T) -> Complex<T> {
        self.values.iter().enumerate().fold(cplx(T::zero(), T::zero()), |acc, (i, s)| {
            let k: T = int(self.k_min + i as i64);
            acc + cis(k * self.base * tau) * *s
        })
    }
}

/// `λ = iq e^{iωt}`.
pub fn phase_parameter<T: Real>(q: T, omega: T, t: T) -> Complex<T> {
    cis(omega * t) * cplx(T::zero(), q)
}

/// Classical Aharonov-Bohm pattern with equal splitting: `1 + cos(x - eΦ)`.
pub fn intensity_static<T: Real>(x: T, e_flux: T) -> T {
    T::one() + (x - e_flux).cos()
}

/// `1 + |W(λ)| cos(x - arg W(λ))`.
pub fn intensity_quantum<T: Real>(state: &PhotonState<T>, coupling: &ChargeCoupling<T>, mode: &ModeParams<T>, x: T, t: T) -> T {
    let w = state.weyl(phase_parameter(coupling.q, mode.omega, t));
    T::one() + w.norm() * (x - w.arg()).cos()
}

/// Same intensity through `1 + Re[e^{-ix} W(λ)]`.
pub fn intensity_quantum_re<T: Real>(state: &PhotonState<T>, coupling: &ChargeCoupling<T>, mode: &ModeParams<T>, x: T, t: T) -> T {
    let w = state.weyl(phase_parameter(coupling.q, mode.omega, t));
    T::one() + (cis(-x) * w).re
}

/// Fringe visibility `|W(λ(t))|`.
pub fn visibility<T: Real>(state: &PhotonState<T>, coupling: &ChargeCoupling<T>, mode: &ModeParams<T>, t: T) -> T {
    state.weyl(phase_parameter(coupling.q, mode.omega, t)).norm()
}

/// Leading small-`q` term of `1 - |W(λ)|`:
/// `q²{½[ΔX² + ΔP²] + ½[ΔX² - ΔP²] cos 2ωt + C sin 2ωt}`, with `X = φ̂(0)/ξ`,
/// `P = V̂(0)/(ωξ)` and `C` their symmetrized covariance.
pub fn visibility_deficit_leading<T: Real>(state: &PhotonState<T>, coupling: &ChargeCoupling<T>, mode: &ModeParams<T>, t: T) -> T {
    let m = state.moments();
    let (_, vx) = quadrature(&m, T::zero());
    let (_, vp) = quadrature(&m, T::FRAC_PI_2());
    let cov = quadrature_covariance(&m);
    let two_wt = lit::<T>(2.0) * mode.omega * t;
    let half = lit::<T>(0.5);
    coupling.q * coupling.q * (half * (vx + vp) + half * (vx - vp) * two_wt.cos() + cov * two_wt.sin())
}

/// Intensity at screen point `x` as a harmonic series in `t`.
pub fn intensity_series<T: Real>(state: &PhotonState<T>, coupling: &ChargeCoupling<T>, mode: &ModeParams<T>, x: T) -> HarmonicSeries<T> {
    let orbit = state.weyl_orbit(cplx(T::zero(), coupling.q), mode.omega);
    orbit.scale(cis(-x)).re().add(&HarmonicSeries::constant(cplx(T::one(), T::zero())))
}

/// Classical drive at `x = 0`: `1 + cos(eφ₁ sin ωt)`.
pub fn classical_intensity<T: Real>(e_phi1: T, omega: T, t: T) -> T {
    T::one() + (e_phi1 * (omega * t).sin()).cos()
}

/// Number of even Bessel orders that matter for `Γ_cl`.
fn classical_kmax(e_phi1: f64) -> usize {
    bessel_j_cutoff(e_phi1) / 2 + 1
}

/// Classical `Γ_cl(τ) = [1+J₀]² + 2 Σ_K J_{2K}² cos(2Kωτ)` as a series in `τ`.
pub fn classical_gamma_series<T: Real>(e_phi1: T, omega: T) -> HarmonicSeries<T> {
    let kmax = classical_kmax(e_phi1.to_f64().unwrap_or(0.0));
    let j = bessel_j_seq(2 * kmax, e_phi1);
    let mut terms = vec![(T::zero(), cplx((T::one() + j[0]) * (T::one() + j[0]), T::zero()))];
    for k in 1..=kmax {
        let s = j[2 * k] * j[2 * k];
        let f: T = int::<T>(2 * k as i64) * omega;
        terms.push((f, cplx(s, T::zero())));
        terms.push((-f, cplx(s, T::zero())));
    }
    HarmonicSeries::new(terms)
}

pub fn autocorrelation_classical<T: Real>(e_phi1: T, omega: T, taus: &[T]) -> CorrelationSeries<T> {
    let series = classical_gamma_series(e_phi1, omega);
    CorrelationSeries {
        taus: taus.to_vec(),
        gamma: taus.iter().map(|t| series.eval(*t)).collect(),
        gamma0: series.eval(T::zero()),
    }
}

/// Exact zero-frequency part of a series whose frequencies must all be
/// integer multiples of `omega`.
fn commensurate_average<T: Real>(series: &HarmonicSeries<T>, omega: T) -> Result<Complex<T>> {
    let tol = lit::<T>(1e-9);
    for (f, _) in series.terms() {
        let k = (*f / omega).round();
        if (*f - k * omega).abs() > tol * omega.abs().max(f.abs()) {
            return Err(Error::Incommensurate {
                frequency: f.to_f64().unwrap_or(f64::NAN),
                base: omega.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(series.time_average())
}

/// Quantum `Γ(τ)` at `x = 0`, with the `t`-average done exactly.
///
/// `Î(t) = 1 + ½Σ_s D(sλ_t)`; products use
/// `D(α)D(β) = e^{i Im(αβ*)} D(α+β)`, which gives
/// `Γ(τ) = 1 + Σ_s ⟨W(sλ_t)⟩ + ¼ Σ_{s₁,s₂} e^{-i s₁s₂ q² sin ωτ} ⟨W(iq(s₁ + s₂e^{iωτ}) e^{iωt})⟩`.
pub fn gamma_quantum<T: Real>(state: &PhotonState<T>, coupling: &ChargeCoupling<T>, mode: &ModeParams<T>, tau: T) -> Result<Complex<T>> {
    let q = coupling.q;
    let w = mode.omega;
    let iq = cplx(T::zero(), q);
    let mut total = cplx(T::one(), T::zero());
    for s in [T::one(), -T::one()] {
        total = total + commensurate_average(&state.weyl_orbit(iq * s, w), w)?;
    }
    let quarter = lit::<T>(0.25);
    let rot = cis(w * tau);
    for s1 in [T::one(), -T::one()] {
        for s2 in [T::one(), -T::one()] {
            let c = iq * (rot * s2 + s1);
            let phase = cis(-(s1 * s2 * q * q * (w * tau).sin()));
            total = total + phase * commensurate_average(&state.weyl_orbit(c, w), w)? * quarter;
        }
    }
    Ok(total)
}

pub fn autocorrelation_quantum<T: Real>(
    state: &PhotonState<T>,
    coupling: &ChargeCoupling<T>,
    mode: &ModeParams<T>,
    taus: &[T],
) -> Result<CorrelationSeries<T>> {
    state.validate()?;
    let gamma = taus.iter().map(|t| gamma_quantum(state, coupling, mode, *t)).collect::<Result<Vec<_>>>()?;
    Ok(CorrelationSeries { taus: taus.to_vec(), gamma, gamma0: gamma_quantum(state, coupling, mode, T::zero())? })
}

/// `γ(τ) = Γ(τ)/Γ(0)`.
pub fn normalized_gamma<T: Real>(series: &CorrelationSeries<T>) -> Result<CorrelationSeries<T>> {
    let g0 = series.gamma0;
    if !(g0.re > T::zero()) {
        return Err(Error::Singular(format!("Γ(0) = {} is not positive", g0)));
    }
    Ok(CorrelationSeries {
        taus: series.taus.clone(),
        gamma: series.gamma.iter().map(|g| *g / g0).collect(),
        gamma0: cplx(T::one(), T::zero()),
    })
}

/// `S_K` read off an exact series in `τ`; every frequency must be `KΩ`.
pub fn spectral_density_exact<T: Real>(series: &HarmonicSeries<T>, base: T, kmax: usize) -> Result<SpectrumCoeffs<T>> {
    if !(base > T::zero()) {
        return Err(Error::InvalidParameter("base frequency must be positive".into()));
    }
    let n = 2 * kmax + 1;
    let mut values = vec![T::zero(); n];
    let mut residue = T::zero();
    let tol = lit::<T>(1e-9);
    for (f, a) in series.terms() {
        let k = (*f / base).round();
        if (*f - k * base).abs() > tol * base.max(f.abs()) {
            return Err(Error::Incommensurate {
                frequency: f.to_f64().unwrap_or(f64::NAN),
                base: base.to_f64().unwrap_or(f64::NAN),
            });
        }
        let ki = k.to_i64().unwrap_or(i64::MAX);
        if ki.unsigned_abs() as usize > kmax {
            continue;
        }
        values[(ki + kmax as i64) as usize] = a.re;
        residue = residue.max(a.im.abs());
    }
    Ok(SpectrumCoeffs { base, k_min: -(kmax as i64), values, imag_residue: residue })
}

/// `samples` lags covering one period `2π/Ω`, starting at zero.
pub fn period_grid<T: Real>(base: T, samples: usize) -> Vec<T> {
    let period = T::TAU() / base;
    (0..samples).map(|j| period * int::<T>(j as i64) / int::<T>(samples as i64)).collect()
}

pub const MIN_QUADRATURE_SAMPLES: usize = 4096;

/// `S_K = (Ω/2π) ∫ Γ(τ) e^{-iKΩτ} dτ` by the periodic trapezoid rule over a
/// series sampled on [`period_grid`].
pub fn spectral_density_quadrature<T: Real>(series: &CorrelationSeries<T>, base: T, kmax: usize) -> Result<SpectrumCoeffs<T>> {
    let m = series.taus.len();
    if m < MIN_QUADRATURE_SAMPLES {
        return Err(Error::InvalidParameter(format!("quadrature needs at least {MIN_QUADRATURE_SAMPLES} samples, got {m}")));
    }
    let grid = period_grid(base, m);
    let tol = lit::<T>(1e-9) * (T::TAU() / base);
    if series.taus.iter().zip(&grid).any(|(a, b)| (*a - *b).abs() > tol) {
        return Err(Error::InvalidParameter("lags must cover exactly one period on a uniform grid".into()));
    }
    let mf: T = int(m as i64);
    let mut values = Vec::with_capacity(2 * kmax + 1);
    let mut residue = T::zero();
    for k in -(kmax as i64)..=(kmax as i64) {
        let mut acc = cplx(T::zero(), T::zero());
        for (j, g) in series.gamma.iter().enumerate() {
            // e^{-iKΩτ_j} with τ_j = 2πj/(ΩM), reduced mod M to keep the angle small
            let idx = (k * j as i64).rem_euclid(m as i64);
            acc = acc + *g * cis(-T::TAU() * int::<T>(idx) / mf);
        }
        let s = acc / mf;
        values.push(s.re);
        residue = residue.max(s.im.abs());
    }
    Ok(SpectrumCoeffs { base, k_min: -(kmax as i64), values, imag_residue: residue })
}

/// Discrete Fourier coefficients `c_K = (1/M) Σ_j f(t_j) e^{-iKωt_j}` of a
/// signal sampled on one period, for `K = 0..=kmax`.
pub fn fourier_coefficients<T: Real>(samples: &[T], kmax: usize) -> Vec<Complex<T>> {
    let m = samples.len();
    let mf: T = int(m as i64);
    (0..=kmax)
        .map(|k| {
            samples.iter().enumerate().fold(cplx(T::zero(), T::zero()), |acc, (j, v)| {
                let idx = ((k * j) % m) as i64;
                acc + cis(-T::TAU() * int::<T>(idx) / mf) * *v
            }) / mf
        })
        .collect()
}
