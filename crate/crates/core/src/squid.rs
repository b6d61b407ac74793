//! Josephson currents in mesoscopic SQUID rings under classical and quantum
//! microwaves.
//!
//! Drive parameters are the scaled phases the junction sees: `phase0 = 2eφ₀`,
//! `omega_a = 2eV`, `amplitude = 2eu`. The quantized flux enters as
//! `e^{2ieφ̂} = D(σ)` with `σ = iq' e^{iω₁t}`.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::fockbench::{converge, displacement_matrix, two_mode_ensemble, Converged, FockMatrix, TruncationPolicy};
use crate::harmonic::HarmonicSeries;
use crate::interference::phase_parameter;
use crate::qstates::PhotonState;
use crate::scalar::{cis, cplx, int, lit, Real};
use crate::specfun::{bessel_j, bessel_j_cutoff, bessel_j_seq, laguerre_poly};
use crate::twomode::{TwoModeKind, TwoModePhotonState};

/// Classical flux threading one ring, in junction-phase units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquidDrive<T> {
    /// `2eφ₀`.
    pub phase0: T,
    /// `ω_A = 2eV`.
    pub omega_a: T,
    /// `2eu`, amplitude of the classical sinusoid.
    pub amplitude: T,
    /// Microwave frequency `ω₁`.
    pub omega1: T,
    /// Critical current.
    pub icrit: T,
}

impl<T: Real> SquidDrive<T> {
    pub fn new(phase0: T, omega_a: T, amplitude: T, omega1: T, icrit: T) -> Result<Self> {
        if !(icrit > T::zero()) {
            return invalid(format!("critical current must be positive, got {icrit}"));
        }
        if !(omega1 > T::zero()) {
            return invalid(format!("microwave frequency must be positive, got {omega1}"));
        }
        Ok(Self { phase0, omega_a, amplitude, omega1, icrit })
    }

    /// Same drive with the ramp tuned to step `n`: `ω_A = nω₁`.
    pub fn at_step(&self, n: i64) -> Self {
        Self { omega_a: int::<T>(n) * self.omega1, ..*self }
    }
}

/// `I₁ sin[2eφ₀ + ω_A t + 2eu sin(ω₁t)]`.
pub fn classical_current<T: Real>(drive: &SquidDrive<T>, t: T) -> T {
    drive.icrit * (drive.phase0 + drive.omega_a * t + drive.amplitude * (drive.omega1 * t).sin()).sin()
}

/// The same current through its Bessel expansion
/// `I₁ Σ_n J_n(2eu) sin[(ω_A + nω₁)t + 2eφ₀]`.
pub fn classical_current_expansion<T: Real>(drive: &SquidDrive<T>, t: T) -> T {
    let nmax = bessel_j_cutoff(drive.amplitude.to_f64().unwrap_or(0.0)) as i64;
    let j = bessel_j_seq(nmax as usize, drive.amplitude.abs());
    let sign = if drive.amplitude < T::zero() { -T::one() } else { T::one() };
    let mut acc = T::zero();
    for n in -nmax..=nmax {
        let k = n.unsigned_abs() as usize;
        // J_{-k}(x) = (-1)^k J_k(x), J_k(-x) = (-1)^k J_k(x)
        let mut jn = j[k];
        if n < 0 && k % 2 == 1 {
            jn = -jn;
        }
        if sign < T::zero() && k % 2 == 1 {
            jn = -jn;
        }
        acc = acc + jn * ((drive.omega_a + int::<T>(n) * drive.omega1) * t + drive.phase0).sin();
    }
    drive.icrit * acc
}

/// `e^{i·amplitude·sin(ωt)}` as a harmonic series.
fn sine_phase_series<T: Real>(amplitude: T, omega: T) -> HarmonicSeries<T> {
    let nmax = bessel_j_cutoff(amplitude.to_f64().unwrap_or(0.0)) as i64;
    HarmonicSeries::new((-nmax..=nmax).map(|n| (int::<T>(n) * omega, cplx(bessel_j(n, amplitude), T::zero()))))
}

/// Classical current as an exact harmonic series in `t`.
pub fn classical_current_series<T: Real>(drive: &SquidDrive<T>) -> HarmonicSeries<T> {
    let carrier = HarmonicSeries::single(drive.omega_a, cis(drive.phase0));
    carrier.mul(&sine_phase_series(drive.amplitude, drive.omega1)).im().scale(cplx(drive.icrit, T::zero()))
}

/// Exact infinite-time average of the classical current.
pub fn classical_dc<T: Real>(drive: &SquidDrive<T>) -> T {
    classical_current_series(drive).time_average().re
}

/// Step height `I₁ J_{-N}(2eu) sin(2eφ₀)` at `ω_A = Nω₁`.
pub fn classical_shapiro<T: Real>(drive: &SquidDrive<T>, n: i64) -> T {
    drive.icrit * bessel_j(-n, drive.amplitude) * drive.phase0.sin()
}

/// `σ = iq' e^{iω₁t}`.
pub fn sigma<T: Real>(qprime: T, omega1: T, t: T) -> Complex<T> {
    phase_parameter(qprime, omega1, t)
}

/// `⟨I⟩ = I₁ Im[e^{i(2eφ₀ + ω_A t + 2eu sin ω₁t)} W(σ)]` for a ring driven
/// by the classical flux in `drive` plus the quantized mode `state` at
/// frequency `drive.omega1`.
pub fn quantum_current<T: Real>(state: &PhotonState<T>, qprime: T, drive: &SquidDrive<T>, t: T) -> T {
    let phase = drive.phase0 + drive.omega_a * t + drive.amplitude * (drive.omega1 * t).sin();
    drive.icrit * (cis(phase) * state.weyl(sigma(qprime, drive.omega1, t))).im
}

/// [`quantum_current`] as an exact harmonic series in `t`.
pub fn quantum_current_series<T: Real>(state: &PhotonState<T>, qprime: T, drive: &SquidDrive<T>) -> HarmonicSeries<T> {
    let carrier = HarmonicSeries::single(drive.omega_a, cis(drive.phase0));
    let orbit = state.weyl_orbit(cplx(T::zero(), qprime), drive.omega1);
    carrier
        .mul(&sine_phase_series(drive.amplitude, drive.omega1))
        .mul(&orbit)
        .im()
        .scale(cplx(drive.icrit, T::zero()))
}

/// DC current at step `n` (`ω_A = nω₁`) from the exact time average.
pub fn quantum_shapiro<T: Real>(state: &PhotonState<T>, qprime: T, drive: &SquidDrive<T>, n: i64) -> T {
    quantum_current_series(state, qprime, &drive.at_step(n)).time_average().re
}

/// One entry of a step scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepValue<T> {
    pub step: i64,
    /// `ω_A / ω₁`.
    pub ratio: T,
    pub idc: T,
}

/// Step heights for `n ∈ [-nmax, nmax]`; `state = None` is the classical
/// drive alone.
pub fn step_scan<T: Real>(state: Option<&PhotonState<T>>, qprime: T, drive: &SquidDrive<T>, nmax: i64) -> Vec<StepValue<T>> {
    (-nmax..=nmax)
        .map(|n| {
            let idc = match state {
                Some(s) => quantum_shapiro(s, qprime, drive, n),
                None => classical_dc(&drive.at_step(n)),
            };
            StepValue { step: n, ratio: int(n), idc }
        })
        .collect()
}

/// Linear ramps and critical currents of two rings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquidPair<T> {
    pub omega_a: T,
    pub omega_b: T,
    pub i1: T,
    pub i2: T,
}

/// `⟨I_A⟩, ⟨I_B⟩, ⟨I_A²⟩, ⟨I_B²⟩, ⟨I_A I_B⟩, ⟨I_A² I_B²⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentMoments<T> {
    pub ia: T,
    pub ib: T,
    pub ia2: T,
    pub ib2: T,
    pub iab: T,
    pub ia2ib2: T,
}

impl<T: Real> CurrentMoments<T> {
    pub fn to_array(&self) -> [T; 6] {
        [self.ia, self.ib, self.ia2, self.ib2, self.iab, self.ia2ib2]
    }
}

/// Default exclusion margin for ratio denominators.
pub const POLE_MARGIN: f64 = 1e-6;

/// `R^(c) = ⟨I_A I_B⟩ / (⟨I_A⟩⟨I_B⟩)`; fails when a mean current is within
/// `margin` (relative to its critical current) of zero.
pub fn ratio_c<T: Real>(m: &CurrentMoments<T>, pair: &SquidPair<T>, margin: T) -> Result<T> {
    if m.ia.abs() <= margin * pair.i1 || m.ib.abs() <= margin * pair.i2 {
        return Err(Error::Singular(format!("mean current too small: ⟨I_A⟩ = {}, ⟨I_B⟩ = {}", m.ia, m.ib)));
    }
    Ok(m.iab / (m.ia * m.ib))
}

/// `R^(c2) = ⟨I_A² I_B²⟩ / (⟨I_A²⟩⟨I_B²⟩)`.
pub fn ratio_c2<T: Real>(m: &CurrentMoments<T>, pair: &SquidPair<T>, margin: T) -> Result<T> {
    if m.ia2.abs() <= margin * pair.i1 * pair.i1 || m.ib2.abs() <= margin * pair.i2 * pair.i2 {
        return Err(Error::Singular(format!("second moment too small: ⟨I_A²⟩ = {}, ⟨I_B²⟩ = {}", m.ia2, m.ib2)));
    }
    Ok(m.ia2ib2 / (m.ia2 * m.ib2))
}

/// All six moments from the two-mode Weyl function:
/// `sin δ = (e^{iδ} - e^{-iδ})/2i` with `e^{iδ_A} = e^{iω_A t} D(σ_A)`.
pub fn two_squid_moments<T: Real>(field: &TwoModePhotonState<T>, qprime: T, pair: &SquidPair<T>, t: T) -> CurrentMoments<T> {
    let k = &field.kind;
    let zero = cplx(T::zero(), T::zero());
    let sa = sigma(qprime, field.mode_a.omega, t);
    let sb = sigma(qprime, field.mode_b.omega, t);
    let (ta, tb) = (pair.omega_a * t, pair.omega_b * t);
    let two = lit::<T>(2.0);
    let quarter = lit::<T>(0.25);

    let ia = pair.i1 * (cis(ta) * k.weyl2(sa, zero)).im;
    let ib = pair.i2 * (cis(tb) * k.weyl2(zero, sb)).im;
    let cos2a = (cis(two * ta) * k.weyl2(sa * two, zero)).re;
    let cos2b = (cis(two * tb) * k.weyl2(zero, sb * two)).re;
    let ia2 = pair.i1 * pair.i1 * (T::one() - cos2a) / two;
    let ib2 = pair.i2 * pair.i2 * (T::one() - cos2b) / two;

    let mut ss = zero;
    let mut cc = zero;
    for s in [T::one(), -T::one()] {
        for r in [T::one(), -T::one()] {
            ss = ss + cis(s * ta + r * tb) * k.weyl2(sa * s, sb * r) * (s * r);
            cc = cc + cis(two * (s * ta + r * tb)) * k.weyl2(sa * (two * s), sb * (two * r));
        }
    }
    let iab = -pair.i1 * pair.i2 * quarter * ss.re;
    let ia2ib2 = pair.i1 * pair.i1 * pair.i2 * pair.i2 * quarter * (T::one() - cos2a - cos2b + quarter * cc.re);
    CurrentMoments { ia, ib, ia2, ib2, iab, ia2ib2 }
}

/// `sin δ̂ = (e^{iθ} D(σ) - e^{-iθ} D(-σ))/2i` on the truncated space.
fn sin_delta_matrix<T: Real>(theta: T, s: Complex<T>, dim: usize) -> FockMatrix<T> {
    let p = displacement_matrix(s, dim).scale(cis(theta));
    let m = displacement_matrix(-s, dim).scale(cis(-theta));
    p.sub(&m).expect("equal dims").scale(cplx(T::zero(), -lit::<T>(0.5)))
}

/// Oracle moments from truncated two-mode matrices.
pub fn two_squid_moments_numeric<T: Real>(
    field: &TwoModePhotonState<T>,
    qprime: T,
    pair: &SquidPair<T>,
    t: T,
    policy: &TruncationPolicy,
) -> Result<Converged<CurrentMoments<T>>> {
    let mean = field.kind.max_mean_photons().to_f64().unwrap_or(f64::INFINITY);
    let c = converge(policy, mean, |dim| {
        let ens = two_mode_ensemble(&field.kind, dim, dim, policy.cap)?;
        let sa = sin_delta_matrix(pair.omega_a * t, sigma(qprime, field.mode_a.omega, t), dim);
        let sb = sin_delta_matrix(pair.omega_b * t, sigma(qprime, field.mode_b.omega, t), dim);
        let sa2 = sa.matmul(&sa)?;
        let sb2 = sb.matmul(&sb)?;
        let id = FockMatrix::identity(dim);
        let vals = vec![
            ens.expect_product(&sa, &id)? * pair.i1,
            ens.expect_product(&id, &sb)? * pair.i2,
            ens.expect_product(&sa2, &id)? * (pair.i1 * pair.i1),
            ens.expect_product(&id, &sb2)? * (pair.i2 * pair.i2),
            ens.expect_product(&sa, &sb)? * (pair.i1 * pair.i2),
            ens.expect_product(&sa2, &sb2)? * (pair.i1 * pair.i1 * pair.i2 * pair.i2),
        ];
        Ok((vals, ens.trace_deficit().to_f64().unwrap_or(f64::NAN)))
    })?;
    let v = &c.value;
    let m = CurrentMoments { ia: v[0].re, ib: v[1].re, ia2: v[2].re, ib2: v[3].re, iab: v[4].re, ia2ib2: v[5].re };
    Ok(Converged { value: m, dim: c.dim, trace_deficit: c.trace_deficit, last_change: c.last_change })
}

/// Number-pair coefficients `C₀ … C₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCoefficients<T> {
    pub c0: T,
    pub c1: T,
    pub c2: T,
    pub c3: T,
}

pub fn pair_coefficients<T: Real>(n1: u32, n2: u32, qprime: T) -> PairCoefficients<T> {
    let x = qprime * qprime;
    let four = lit::<T>(4.0);
    let half = lit::<T>(0.5);
    let (l1, l2) = (laguerre_poly(n1 as usize, 0, x), laguerre_poly(n2 as usize, 0, x));
    let d = n2 as i64 - n1 as i64;
    PairCoefficients {
        c0: half * (-x / lit(2.0)).exp() * (l1 + l2),
        c1: half * (-(x + x)).exp() * (laguerre_poly(n1 as usize, 0, four * x) + laguerre_poly(n2 as usize, 0, four * x)),
        c2: (-x).exp() * l1 * l2,
        c3: half * (-x).exp() * laguerre_poly(n1 as usize, d, x) * laguerre_poly(n2 as usize, -d, x),
    }
}

/// `Ω = (N₁ - N₂)(ω₁ - ω₂)`.
pub fn pair_beat<T: Real>(n1: u32, n2: u32, omega1: T, omega2: T) -> T {
    int::<T>(n1 as i64 - n2 as i64) * (omega1 - omega2)
}

/// `I_cross = -I₁I₂C₃[cos(ω_A t + ω_B t) - (-1)^{N₁-N₂} cos(ω_A t - ω_B t)] cos Ωt`.
pub fn pair_cross_current<T: Real>(n1: u32, n2: u32, qprime: T, pair: &SquidPair<T>, omega1: T, omega2: T, t: T) -> T {
    let c3 = pair_coefficients(n1, n2, qprime).c3;
    let parity = if (n1 as i64 - n2 as i64) % 2 == 0 { T::one() } else { -T::one() };
    let (a, b) = (pair.omega_a * t, pair.omega_b * t);
    -pair.i1 * pair.i2 * c3 * ((a + b).cos() - parity * (a - b).cos()) * (pair_beat(n1, n2, omega1, omega2) * t).cos()
}

/// Number-pair moments `(|N₁N₂⟩, |N₂N₁⟩)` from the closed forms; the
/// fourth-order moment is taken from the Weyl algebra.
pub fn two_squid_currents_number<T: Real>(
    n1: u32,
    n2: u32,
    entangled: bool,
    qprime: T,
    pair: &SquidPair<T>,
    omega1: T,
    omega2: T,
    t: T,
) -> Result<CurrentMoments<T>> {
    if n1 == n2 && entangled {
        return invalid("an entangled number pair needs N₁ ≠ N₂");
    }
    let c = pair_coefficients(n1, n2, qprime);
    let (a, b) = (pair.omega_a * t, pair.omega_b * t);
    let two = lit::<T>(2.0);
    let mut iab = pair.i1 * pair.i2 * c.c2 * a.sin() * b.sin();
    if entangled {
        iab = iab + pair_cross_current(n1, n2, qprime, pair, omega1, omega2, t);
    }
    let kind = if entangled {
        TwoModeKind::swapped_number_pair(n1, n2)?
    } else {
        TwoModeKind::separable_number_pair((n1, n2), (n2, n1))
    };
    let field = TwoModePhotonState {
        kind,
        mode_a: crate::qstates::ModeParams { omega: omega1, xi: T::one() },
        mode_b: crate::qstates::ModeParams { omega: omega2, xi: T::one() },
    };
    let ia2ib2 = two_squid_moments(&field, qprime, pair, t).ia2ib2;
    Ok(CurrentMoments {
        ia: pair.i1 * c.c0 * a.sin(),
        ib: pair.i2 * c.c0 * b.sin(),
        ia2: pair.i1 * pair.i1 / two * (T::one() - c.c1 * (two * a).cos()),
        ib2: pair.i2 * pair.i2 / two * (T::one() - c.c1 * (two * b).cos()),
        iab,
        ia2ib2,
    })
}

/// `R^(c)_sep = C₂/C₀²`.
pub fn ratio_c_sep_number<T: Real>(n1: u32, n2: u32, qprime: T) -> T {
    let c = pair_coefficients(n1, n2, qprime);
    c.c2 / (c.c0 * c.c0)
}

/// Entangled `R^(c)` for the number pair, even or odd `N₁ - N₂`.
pub fn ratio_c_ent_number<T: Real>(n1: u32, n2: u32, qprime: T, pair: &SquidPair<T>, omega1: T, omega2: T, t: T, margin: T) -> Result<T> {
    let x = qprime * qprime;
    let d = n1 as i64 - n2 as i64;
    let (l1, l2) = (laguerre_poly(n1 as usize, 0, x), laguerre_poly(n2 as usize, 0, x));
    let coeff = lit::<T>(4.0) * laguerre_poly(n1 as usize, -d, x) * laguerre_poly(n2 as usize, d, x) / ((l1 + l2) * (l1 + l2));
    let beat = (pair_beat(n1, n2, omega1, omega2) * t).cos();
    let sep = ratio_c_sep_number(n1, n2, qprime);
    if d % 2 == 0 {
        Ok(sep + coeff * beat)
    } else {
        let (sa, sb) = ((pair.omega_a * t).sin(), (pair.omega_b * t).sin());
        if sa.abs() < margin || sb.abs() < margin {
            return Err(Error::Singular(format!("tan pole at t = {t}")));
        }
        let tt = (pair.omega_a * t).tan() * (pair.omega_b * t).tan();
        Ok(sep - coeff * beat / tt)
    }
}

/// `⟨I_A I_B⟩_ent - ⟨I_A I_B⟩_sep` for `(|N₁N₂⟩ + |N₂N₁⟩)/√2` as an exact
/// harmonic series, using `⟨m|D(c e^{iωt})|n⟩ = e^{i(m-n)ωt} ⟨m|D(c)|n⟩`.
pub fn pair_cross_series<T: Real>(n1: u32, n2: u32, qprime: T, pair: &SquidPair<T>, omega1: T, omega2: T) -> HarmonicSeries<T> {
    use crate::qstates::displacement_element;
    let iq = cplx(T::zero(), qprime);
    let half = lit::<T>(0.5);
    let mut terms = Vec::new();
    let offsets = [(n1, n2), (n2, n1)];
    for s in [T::one(), -T::one()] {
        for r in [T::one(), -T::one()] {
            for ((ma, na), (mb, nb)) in [(offsets[0], offsets[1]), (offsets[1], offsets[0])] {
                let amp = displacement_element(ma, na, iq * s) * displacement_element(mb, nb, iq * r) * half;
                let freq = s * pair.omega_a
                    + r * pair.omega_b
                    + int::<T>(ma as i64 - na as i64) * omega1
                    + int::<T>(mb as i64 - nb as i64) * omega2;
                terms.push((freq, amp * (-lit::<T>(0.25) * s * r * pair.i1 * pair.i2)));
            }
        }
    }
    HarmonicSeries::new(terms)
}

/// `E = exp[-|A₁|² - |A₂|² + 2|A₁A₂| cos(θ₁ - θ₂)]`.
pub fn coherent_pair_e<T: Real>(a1: Complex<T>, a2: Complex<T>) -> T {
    let two = lit::<T>(2.0);
    (-a1.norm_sqr() - a2.norm_sqr() + two * (a1 * a2).norm() * (a1.arg() - a2.arg()).cos()).exp()
}

/// `F = {e^{q'(|A₁|S₁ - |A₂|S₂)} + e^{-q'(|A₁|S₁ - |A₂|S₂)}} sin[ω t' + q'(|A₁|C₁ + |A₂|C₂)]`
/// with `S_i = sin(ω_f t - θ_i)`, `C_i = cos(ω_f t - θ_i)`.
pub fn coherent_pair_f<T: Real>(a1: Complex<T>, a2: Complex<T>, qprime: T, ramp: T, omega_field: T, t: T) -> T {
    let (p1, p2) = (omega_field * t - a1.arg(), omega_field * t - a2.arg());
    let u = qprime * (a1.norm() * p1.sin() - a2.norm() * p2.sin());
    (u.exp() + (-u).exp()) * (ramp * t + qprime * (a1.norm() * p1.cos() + a2.norm() * p2.cos())).sin()
}

/// Mean current of one ring for the coherent pair, separable or entangled.
fn coherent_pair_mean<T: Real>(a1: Complex<T>, a2: Complex<T>, entangled: bool, qprime: T, ramp: T, omega_field: T, icrit: T, t: T) -> T {
    let two = lit::<T>(2.0);
    let damp = (-qprime * qprime / two).exp();
    let sep = icrit / two
        * damp
        * ((ramp * t + two * qprime * a1.norm() * (omega_field * t - a1.arg()).cos()).sin()
            + (ramp * t + two * qprime * a2.norm() * (omega_field * t - a2.arg()).cos()).sin());
    if !entangled {
        return sep;
    }
    let k = TwoModeKind::EntangledCoherentPair { a1, a2 };
    let nn = k.coherent_normalization();
    let nn2 = nn * nn;
    two * nn2 * sep + nn2 * coherent_pair_e(a1, a2) * coherent_pair_f(a1, a2, qprime, ramp, omega_field, t) * damp * icrit
}

/// Coherent-pair moments: mean currents from the closed forms, everything
/// else from the truncated-matrix oracle.
pub fn two_squid_currents_coherent<T: Real>(
    a1: Complex<T>,
    a2: Complex<T>,
    entangled: bool,
    qprime: T,
    pair: &SquidPair<T>,
    omega1: T,
    omega2: T,
    t: T,
    policy: &TruncationPolicy,
) -> Result<Converged<CurrentMoments<T>>> {
    let kind = if entangled {
        TwoModeKind::EntangledCoherentPair { a1, a2 }
    } else {
        TwoModeKind::separable_coherent_pair(a1, a2)
    };
    let field = TwoModePhotonState {
        kind,
        mode_a: crate::qstates::ModeParams { omega: omega1, xi: T::one() },
        mode_b: crate::qstates::ModeParams { omega: omega2, xi: T::one() },
    };
    let mut c = two_squid_moments_numeric(&field, qprime, pair, t, policy)?;
    c.value.ia = coherent_pair_mean(a1, a2, entangled, qprime, pair.omega_a, omega1, pair.i1, t);
    c.value.ib = coherent_pair_mean(a1, a2, entangled, qprime, pair.omega_b, omega2, pair.i2, t);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_current_at_rest() {
        let d = SquidDrive::new(0.7, 0.3, 0.0, 1.0, 2.0).unwrap();
        assert!((classical_current(&d, 0.0) - 2.0 * 0.7_f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn shapiro_trivial_cases() {
        let d = SquidDrive::new(0.7, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!((classical_shapiro(&d, 0) - 0.7_f64.sin()).abs() < 1e-15);
        assert_eq!(classical_shapiro(&d, 2), 0.0);
        let d = SquidDrive::new(std::f64::consts::FRAC_PI_2, 1.0, 2.0, 1.0, 1.0).unwrap();
        assert!((classical_shapiro(&d, 1) - bessel_j(-1, 2.0)).abs() < 1e-15);
        assert!((classical_dc(&d.at_step(1)) - classical_shapiro(&d, 1)).abs() < 1e-14);
    }

    #[test]
    fn off_resonance_dc_vanishes() {
        let d = SquidDrive::new(0.4, 2.0_f64.sqrt(), 1.5, 1.0, 1.0).unwrap();
        assert_eq!(classical_dc(&d), 0.0);
    }

    #[test]
    fn invalid_drive() {
        assert!(SquidDrive::new(0.0, 0.0, 0.0, 1.0, 0.0_f64).is_err());
    }

    #[test]
    fn beat_frequency() {
        let w = pair_beat(1, 3, 1.2e-4_f64, 1e-4);
        assert!((w.abs() - 4e-5).abs() < 1e-18);
    }

    #[test]
    fn equal_numbers_give_unit_ratio() {
        assert!((ratio_c_sep_number(2, 2, 0.5_f64) - 1.0).abs() < 1e-15);
    }
}
