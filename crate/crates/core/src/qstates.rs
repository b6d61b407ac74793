//! Single-mode field states and their closed-form statistics.
//!
//! Conventions used throughout the crate:
//!
//! * `D(z) = exp(z a† - z* a)`.
//! * `S(r, φ) = exp(-(r/4) e^{-iφ} a†² + (r/4) e^{iφ} a²)`, so that
//!   `S† a S = a cosh(r/2) - a† e^{-iφ} sinh(r/2)`.
//! * The squeezed state is `S(r, φ) D(A) |0⟩`.
//! * The flux is `φ̂(t) = (ξ/√2)(e^{iωt} a† + e^{-iωt} a)` and the EMF is
//!   fixed by `a = (φ̂ + i V̂/ω) / (√2 ξ)`, which makes
//!   `V̂(t) = i (ωξ/√2)(e^{iωt} a† - e^{-iωt} a)`.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::harmonic::HarmonicSeries;
use crate::scalar::{cis, cplx, int, lit, Real};
use crate::specfun::{bessel_i_cutoff, bessel_i_scaled_seq, bessel_j_cutoff, bessel_j_seq, laguerre_poly};

/// A single-mode state of the field.
///
/// Thermal states carry the dimensionless product `βω`; `βω = ∞` is the
/// vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhotonState<T> {
    Number { n: u32 },
    Coherent { a: Complex<T> },
    Squeezed { a: Complex<T>, r: T, varphi: T },
    Thermal { beta_omega: T },
}

/// Low-order normally ordered moments `⟨a⟩`, `⟨a²⟩`, `⟨a†a⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments<T> {
    pub a: Complex<T>,
    pub a2: Complex<T>,
    pub n: T,
}

/// Mean and standard deviation of a field quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats<T> {
    pub mean: T,
    pub stddev: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams<T> {
    pub omega: T,
    pub xi: T,
}

impl<T: Real> ModeParams<T> {
    pub fn new(omega: T, xi: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return invalid(format!("mode frequency must be positive, got {omega}"));
        }
        if !(xi > T::zero()) || !xi.is_finite() {
            return invalid(format!("loop coupling must be positive, got {xi}"));
        }
        Ok(Self { omega, xi })
    }
}

/// Scaled charges: `q = ξe/√2` for single electrons, `q' = 2q` for pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeCoupling<T> {
    pub q: T,
}

impl<T: Real> ChargeCoupling<T> {
    pub fn new(q: T) -> Result<Self> {
        if !(q >= T::zero()) || !q.is_finite() {
            return invalid(format!("scaled charge must be finite and >= 0, got {q}"));
        }
        Ok(Self { q })
    }

    pub fn from_charge(e: T, xi: T) -> Result<Self> {
        Self::new(xi * e / lit::<T>(2.0).sqrt())
    }

    /// Coupling from the pair charge `q'`.
    pub fn from_pair(qprime: T) -> Result<Self> {
        Self::new(qprime / lit(2.0))
    }

    pub fn qprime(&self) -> T {
        self.q + self.q
    }
}

/// Family tag plus the parameters held fixed by [`match_mean_photons`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily<T> {
    Number,
    /// Coherent state with amplitude phase `phase`.
    Coherent { phase: T },
    /// Squeezed state with fixed `r`, `φ` and amplitude phase.
    Squeezed { r: T, varphi: T, phase: T },
    Thermal,
}

/// `(cosh(r/2), sinh(r/2))`.
fn half_hyperbolic<T: Real>(r: T) -> (T, T) {
    let h = r / lit(2.0);
    (h.cosh(), h.sinh())
}

/// `coth(βω/2)`, equal to one for the vacuum limit.
fn thermal_coth<T: Real>(beta_omega: T) -> T {
    if beta_omega.is_infinite() {
        T::one()
    } else {
        T::one() / (beta_omega / lit(2.0)).tanh()
    }
}

impl<T: Real> PhotonState<T> {
    pub fn vacuum() -> Self {
        PhotonState::Number { n: 0 }
    }

    pub fn coherent(a: Complex<T>) -> Self {
        PhotonState::Coherent { a }
    }

    pub fn squeezed(a: Complex<T>, r: T, varphi: T) -> Result<Self> {
        let s = PhotonState::Squeezed { a, r, varphi };
        s.validate()?;
        Ok(s)
    }

    /// Thermal state from inverse temperature and mode frequency.
    pub fn thermal(beta: T, omega: T) -> Result<Self> {
        let s = PhotonState::Thermal { beta_omega: beta * omega };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PhotonState::Number { .. } => Ok(()),
            PhotonState::Coherent { a } => {
                if a.re.is_finite() && a.im.is_finite() {
                    Ok(())
                } else {
                    invalid("coherent amplitude must be finite")
                }
            }
            PhotonState::Squeezed { a, r, varphi } => {
                if !(a.re.is_finite() && a.im.is_finite() && varphi.is_finite()) {
                    return invalid("squeezed-state parameters must be finite");
                }
                if !(r >= T::zero()) || !r.is_finite() {
                    return invalid(format!("squeezing parameter must be finite and >= 0, got {r}"));
                }
                Ok(())
            }
            PhotonState::Thermal { beta_omega } => {
                if beta_omega > T::zero() {
                    Ok(())
                } else {
                    invalid(format!("beta*omega must be > 0, got {beta_omega}"))
                }
            }
        }
    }

    /// Weyl function `W(z) = Tr[ρ D(z)]`.
    pub fn weyl(&self, z: Complex<T>) -> Complex<T> {
        let half = lit::<T>(0.5);
        match *self {
            PhotonState::Number { n } => {
                let x = z.norm_sqr();
                cplx((-half * x).exp() * laguerre_poly(n as usize, 0, x), T::zero())
            }
            PhotonState::Coherent { a } => coherent_weyl(a, z),
            PhotonState::Squeezed { a, r, varphi } => {
                let (c, s) = half_hyperbolic(r);
                let zp = z * c + z.conj() * cis(-varphi) * s;
                coherent_weyl(a, zp)
            }
            PhotonState::Thermal { beta_omega } => {
                cplx((-half * z.norm_sqr() * thermal_coth(beta_omega)).exp(), T::zero())
            }
        }
    }

    pub fn moments(&self) -> Moments<T> {
        let zero = cplx(T::zero(), T::zero());
        match *self {
            PhotonState::Number { n } => Moments { a: zero, a2: zero, n: int(n as i64) },
            PhotonState::Coherent { a } => Moments { a, a2: a * a, n: a.norm_sqr() },
            PhotonState::Squeezed { a, r, varphi } => {
                let (c, s) = half_hyperbolic(r);
                let m = a * c - a.conj() * cis(-varphi) * s;
                Moments { a: m, a2: m * m - cis(-varphi) * (c * s), n: m.norm_sqr() + s * s }
            }
            PhotonState::Thermal { beta_omega } => Moments { a: zero, a2: zero, n: thermal_mean(beta_omega) },
        }
    }

    /// `⟨a†a⟩`.
    pub fn mean_photons(&self) -> T {
        match *self {
            PhotonState::Squeezed { a, r, varphi } => {
                // s² + |A|²(cosh r - sinh r cos(2 arg A + φ))
                let (_, s) = half_hyperbolic(r);
                let angle = a.arg() + a.arg() + varphi;
                s * s + a.norm_sqr() * (r.cosh() - r.sinh() * angle.cos())
            }
            _ => self.moments().n,
        }
    }

    /// `P(N) = ⟨N|ρ|N⟩`.
    pub fn photon_counting(&self, n: u32) -> T {
        match *self {
            PhotonState::Number { n: k } => {
                if k == n {
                    T::one()
                } else {
                    T::zero()
                }
            }
            PhotonState::Coherent { a } => {
                let x = a.norm_sqr();
                if x == T::zero() {
                    return if n == 0 { T::one() } else { T::zero() };
                }
                // log of x^n e^{-x} / n!
                let nf: T = int(n as i64);
                let log_fact = (1..=n).fold(T::zero(), |acc, j| acc + int::<T>(j as i64).ln());
                (nf * x.ln() - x - log_fact).exp()
            }
            PhotonState::Squeezed { .. } => self.photon_distribution(n as usize)[n as usize],
            PhotonState::Thermal { beta_omega } => {
                let w = (-beta_omega).exp();
                (T::one() - w) * w.powi(n as i32)
            }
        }
    }

    /// `[P(0), …, P(nmax)]`.
    pub fn photon_distribution(&self, nmax: usize) -> Vec<T> {
        match *self {
            PhotonState::Squeezed { a, r, varphi } => {
                squeezed_amplitudes(a, r, varphi, nmax + 1).iter().map(|c| c.norm_sqr()).collect()
            }
            _ => (0..=nmax).map(|k| self.photon_counting(k as u32)).collect(),
        }
    }

    /// `W(c e^{iωt})` as a harmonic series in `t`.
    pub fn weyl_orbit(&self, c: Complex<T>, omega: T) -> HarmonicSeries<T> {
        match *self {
            PhotonState::Number { .. } | PhotonState::Thermal { .. } => HarmonicSeries::constant(self.weyl(c)),
            PhotonState::Coherent { a } => {
                let damp = (-c.norm_sqr() / lit(2.0)).exp();
                phase_orbit(c * a.conj(), omega).scale(cplx(damp, T::zero()))
            }
            PhotonState::Squeezed { a, r, varphi } => {
                // z' = P e^{iωt} + Q e^{-iωt}
                let (ch, sh) = half_hyperbolic(r);
                let p = c * ch;
                let q = c.conj() * cis(-varphi) * sh;
                let k = p * a.conj() - q.conj() * a;
                let pq = (p * q.conj()).norm();
                let pq_arg = (p * q.conj()).arg();
                // exp(-|PQ| cos θ) = Σ_k (-1)^k I_k(|PQ|) e^{ikθ}, with θ = 2ωt + arg(PQ*)
                let kmax = bessel_i_cutoff(pq.to_f64().unwrap_or(0.0));
                let iseq = bessel_i_scaled_seq(kmax, pq);
                let pre = (-(p.norm_sqr() + q.norm_sqr()) / lit(2.0) + pq).exp();
                let mut terms = Vec::with_capacity(2 * kmax + 1);
                for (j, v) in iseq.iter().enumerate() {
                    let sign = if j % 2 == 0 { T::one() } else { -T::one() };
                    let jf: T = int(j as i64);
                    let amp = sign * *v * pre;
                    terms.push((jf * (omega + omega), cis(jf * pq_arg) * amp));
                    if j > 0 {
                        terms.push((-jf * (omega + omega), cis(-jf * pq_arg) * amp));
                    }
                }
                let envelope = HarmonicSeries::new(terms);
                envelope.mul(&phase_orbit(k, omega))
            }
        }
    }
}

/// `exp(2i Im(w e^{iωt}))` expanded in Bessel functions.
fn phase_orbit<T: Real>(w: Complex<T>, omega: T) -> HarmonicSeries<T> {
    let x = w.norm() + w.norm();
    if x == T::zero() {
        return HarmonicSeries::constant(cplx(T::one(), T::zero()));
    }
    let theta = w.arg();
    let nmax = bessel_j_cutoff(x.to_f64().unwrap_or(0.0));
    let j = bessel_j_seq(nmax, x);
    let mut terms = Vec::with_capacity(2 * nmax + 1);
    for (n, v) in j.iter().enumerate() {
        let nf: T = int(n as i64);
        terms.push((nf * omega, cis(nf * theta) * *v));
        if n > 0 {
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            terms.push((-nf * omega, cis(-nf * theta) * (sign * *v)));
        }
    }
    HarmonicSeries::new(terms)
}

fn coherent_weyl<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    let im = (z * a.conj()).im;
    let re = -z.norm_sqr() / lit(2.0);
    Complex::new(T::zero(), im + im).exp() * re.exp()
}

fn thermal_mean<T: Real>(beta_omega: T) -> T {
    T::one() / beta_omega.exp_m1()
}

/// Fock amplitudes `⟨n|S D(A)|0⟩` for `n < len`, by the normalized Hermite
/// recurrence of the displaced squeezed vacuum.
pub(crate) fn squeezed_amplitudes<T: Real>(a: Complex<T>, r: T, varphi: T, len: usize) -> Vec<Complex<T>> {
    let big_r = r / lit(2.0);
    let (ch, sh) = (big_r.cosh(), big_r.sinh());
    let th = big_r.tanh();
    let e_theta = cis(-varphi);
    // S D(A)|0⟩ = D(m) S|0⟩
    let m = a * ch - a.conj() * e_theta * sh;
    let gamma = m * ch + m.conj() * e_theta * sh;
    let pre = (cplx(-(m.norm_sqr() / lit(2.0)), T::zero()) - m.conj() * m.conj() * e_theta * (th / lit(2.0))).exp() / ch.sqrt();
    let mut out = vec![cplx(T::zero(), T::zero()); len];
    if len == 0 {
        return out;
    }
    out[0] = pre;
    if len > 1 {
        out[1] = gamma / ch * pre;
    }
    for n in 1..len.saturating_sub(1) {
        let nf: T = int(n as i64);
        out[n + 1] = (gamma / ch * out[n] - e_theta * (th * nf.sqrt()) * out[n - 1]) / (nf + T::one()).sqrt();
    }
    out
}

/// Closed-form matrix element `⟨m|D(z)|n⟩`.
pub fn displacement_element<T: Real>(m: u32, n: u32, z: Complex<T>) -> Complex<T> {
    let x = z.norm_sqr();
    let damp = (-x / lit(2.0)).exp();
    if m >= n {
        let k = (m - n) as usize;
        let ratio = ((n + 1)..=m).fold(T::one(), |acc, j| acc / int::<T>(j as i64).sqrt());
        z.powu(k as u32) * (ratio * damp * laguerre_poly(n as usize, k as i64, x))
    } else {
        let k = (n - m) as usize;
        let ratio = ((m + 1)..=n).fold(T::one(), |acc, j| acc / int::<T>(j as i64).sqrt());
        (-z.conj()).powu(k as u32) * (ratio * damp * laguerre_poly(m as usize, k as i64, x))
    }
}

/// `⟨α|D(z)|β⟩` for coherent states.
pub fn coherent_displacement_overlap<T: Real>(alpha: Complex<T>, z: Complex<T>, beta: Complex<T>) -> Complex<T> {
    let g = z + beta;
    let phase = (z * beta.conj()).im;
    let half = lit::<T>(0.5);
    (alpha.conj() * g + cplx(-(alpha.norm_sqr() * half) - g.norm_sqr() * half, phase)).exp()
}

/// Solves for a state of `family` with `⟨a†a⟩ = target`.
pub fn match_mean_photons<T: Real>(family: StateFamily<T>, target: T) -> Result<PhotonState<T>> {
    if !(target >= T::zero()) || !target.is_finite() {
        return invalid(format!("target mean photon number must be finite and >= 0, got {target}"));
    }
    match family {
        StateFamily::Number => {
            let n = target.round();
            if (n - target).abs() > lit(1e-12) {
                return Err(Error::Unachievable {
                    target: target.to_f64().unwrap_or(f64::NAN),
                    reason: "number states carry integer photon counts".into(),
                });
            }
            Ok(PhotonState::Number { n: n.to_u32().unwrap_or(u32::MAX) })
        }
        StateFamily::Coherent { phase } => Ok(PhotonState::Coherent { a: cis(phase) * target.sqrt() }),
        StateFamily::Squeezed { r, varphi, phase } => {
            let (_, s) = half_hyperbolic(r);
            let floor = s * s;
            if target < floor {
                return Err(Error::Unachievable {
                    target: target.to_f64().unwrap_or(f64::NAN),
                    reason: format!("squeezing alone contributes sinh^2(r/2) = {floor}"),
                });
            }
            let gain = r.cosh() - r.sinh() * (phase + phase + varphi).cos();
            let amp2 = (target - floor) / gain;
            let st = PhotonState::Squeezed { a: cis(phase) * amp2.sqrt(), r, varphi };
            st.validate()?;
            Ok(st)
        }
        StateFamily::Thermal => {
            let beta_omega = if target == T::zero() { T::infinity() } else { ((target + T::one()) / target).ln() };
            Ok(PhotonState::Thermal { beta_omega })
        }
    }
}

/// Mean and variance of `Q_θ = (e^{iθ} a† + e^{-iθ} a)/√2`.
pub fn quadrature<T: Real>(m: &Moments<T>, theta: T) -> (T, T) {
    let rot = cis(-theta);
    let mean = lit::<T>(2.0).sqrt() * (rot * m.a).re;
    let second = (rot * rot * m.a2).re + m.n + lit(0.5);
    (mean, (second - mean * mean).max(T::zero()))
}

/// Mean and uncertainty of the magnetic flux `φ̂(t)`.
pub fn flux_stats<T: Real>(state: &PhotonState<T>, mode: &ModeParams<T>, t: T) -> QuadratureStats<T> {
    let (mean, var) = quadrature(&state.moments(), mode.omega * t);
    QuadratureStats { mean: mode.xi * mean, stddev: mode.xi * var.sqrt() }
}

/// Mean and uncertainty of the electromotive force `V̂(t)`.
pub fn emf_stats<T: Real>(state: &PhotonState<T>, mode: &ModeParams<T>, t: T) -> QuadratureStats<T> {
    let (mean, var) = quadrature(&state.moments(), mode.omega * t + T::FRAC_PI_2());
    let scale = mode.omega * mode.xi;
    QuadratureStats { mean: scale * mean, stddev: scale * var.sqrt() }
}

/// Symmetrized covariance of `Q_0` and `Q_{π/2}`.
pub fn quadrature_covariance<T: Real>(m: &Moments<T>) -> T {
    // ½⟨XP + PX⟩ - ⟨X⟩⟨P⟩ with X = Q_0, P = Q_{π/2}
    let x = lit::<T>(2.0).sqrt() * m.a.re;
    let p = lit::<T>(2.0).sqrt() * m.a.im;
    m.a2.im - x * p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn weyl_at_origin_is_one() {
        let states = [
            PhotonState::Number { n: 4 },
            PhotonState::Coherent { a: c(0.3, -1.2) },
            PhotonState::Squeezed { a: c(1.0, 0.5), r: 1.3, varphi: 0.4 },
            PhotonState::Thermal { beta_omega: 0.7 },
        ];
        for s in states {
            assert!((s.weyl(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn number_state_zero_of_laguerre() {
        let w = PhotonState::<f64>::Number { n: 1 }.weyl(c(0.6, 0.8));
        assert!(w.norm() < 1e-15);
    }

    #[test]
    fn thermal_weyl_value() {
        let w = PhotonState::Thermal { beta_omega: 1.0 }.weyl(c(1.0, 0.0));
        let expected = (-0.5 / (0.5_f64).tanh()).exp();
        assert!((w.re - expected).abs() < 1e-15);
    }

    #[test]
    fn mean_photons_examples() {
        assert!((PhotonState::Coherent { a: c(3.0_f64.sqrt(), 0.0) }.mean_photons() - 3.0).abs() < 1e-14);
        let sq = PhotonState::Squeezed { a: c(0.0, 0.0), r: 4.2, varphi: 0.0 };
        assert!((sq.mean_photons() - 2.1_f64.sinh().powi(2)).abs() < 1e-12);
        let th = PhotonState::Thermal { beta_omega: 2.0_f64.ln() };
        assert!((th.mean_photons() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matched_squeezed_state() {
        let s = match_mean_photons(StateFamily::Squeezed { r: 4.2, varphi: 0.0, phase: 0.0 }, 17.0).unwrap();
        assert!((s.mean_photons() - 17.0_f64).abs() < 1e-10);
        if let PhotonState::Squeezed { a, .. } = s {
            let expected = (17.0 - 2.1_f64.sinh().powi(2)) / (2.1_f64.cosh() - 2.1_f64.sinh()).powi(2);
            assert!((a.norm_sqr() - expected).abs() < 1e-9);
        }
        let err = match_mean_photons(StateFamily::Squeezed { r: 4.2, varphi: 0.0, phase: 0.0 }, 1.0);
        assert!(matches!(err, Err(Error::Unachievable { .. })));
    }

    #[test]
    fn matched_thermal_and_coherent() {
        let th = match_mean_photons(StateFamily::<f64>::Thermal, 17.0).unwrap();
        assert_eq!(th, PhotonState::Thermal { beta_omega: (18.0_f64 / 17.0).ln() });
        let coh = match_mean_photons(StateFamily::Coherent { phase: 0.0 }, 17.0).unwrap();
        assert!((coh.mean_photons() - 17.0_f64).abs() < 1e-12);
        assert!(match_mean_photons(StateFamily::<f64>::Number, 2.5).is_err());
    }

    #[test]
    fn squeezed_vacuum_has_no_odd_counts() {
        let s = PhotonState::Squeezed { a: c(0.0, 0.0), r: 2.0, varphi: 0.3 };
        let p = s.photon_distribution(60);
        for (k, v) in p.iter().enumerate() {
            if k % 2 == 1 {
                assert_eq!(*v, 0.0);
            }
        }
        let total: f64 = s.photon_distribution(400).iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_counts_are_poisson() {
        let s = PhotonState::Coherent { a: c(0.0, 2.0) };
        let p3 = s.photon_counting(3);
        let expected = 4.0_f64.powi(3) * (-4.0_f64).exp() / 6.0;
        assert!((p3 - expected).abs() < 1e-15);
    }

    #[test]
    fn vacuum_representations_agree() {
        let n0 = PhotonState::<f64>::Number { n: 0 };
        let c0 = PhotonState::Coherent { a: c(0.0, 0.0) };
        let mode = ModeParams::new(1e-4, 1.0).unwrap();
        for z in [c(0.3, 0.1), c(-1.0, 2.0)] {
            assert!((n0.weyl(z) - c0.weyl(z)).norm() < 1e-15);
        }
        assert_eq!(flux_stats(&n0, &mode, 3.0), flux_stats(&c0, &mode, 3.0));
        assert_eq!(emf_stats(&n0, &mode, 3.0), emf_stats(&c0, &mode, 3.0));
    }

    #[test]
    fn flux_examples() {
        let mode = ModeParams::new(1.0, 1.0).unwrap();
        let vac = flux_stats(&PhotonState::<f64>::vacuum(), &mode, 0.2);
        assert!((vac.stddev - 0.5_f64.sqrt()).abs() < 1e-15);
        let th = flux_stats(&PhotonState::Thermal { beta_omega: 1.0 }, &mode, 0.2);
        assert!((th.stddev - (0.5 / 0.5_f64.tanh()).sqrt()).abs() < 1e-14);
        let coh = flux_stats(&PhotonState::Coherent { a: c(1.0, 1.0) }, &mode, 0.9);
        assert!((coh.stddev - 0.5_f64.sqrt()).abs() < 1e-14);
        let expected = 2.0_f64.sqrt() * 2.0_f64.sqrt() * (0.9 - std::f64::consts::FRAC_PI_4).cos();
        assert!((coh.mean - expected).abs() < 1e-14);
    }

    #[test]
    fn orbit_matches_pointwise_weyl() {
        let omega = 0.7;
        let cc = c(0.2, 0.9);
        let states = [
            PhotonState::Coherent { a: c(1.1, -0.4) },
            PhotonState::Squeezed { a: c(0.8, 0.3), r: 1.7, varphi: 0.6 },
            PhotonState::Number { n: 3 },
        ];
        for s in states {
            let orbit = s.weyl_orbit(cc, omega);
            for k in 0..9 {
                let t = 0.37 * k as f64;
                let direct = s.weyl(cc * Complex::new(0.0, omega * t).exp());
                assert!((orbit.eval(t) - direct).norm() < 1e-13, "{s:?} t={t}");
            }
        }
    }

    #[test]
    fn displacement_element_conjugation() {
        let z = c(0.4, -0.7);
        for m in 0..6 {
            for n in 0..6 {
                let lhs = displacement_element(m, n, -z);
                let rhs = displacement_element(n, m, z).conj();
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
        assert!((displacement_element(0, 0, z) - Complex::new((-z.norm_sqr() / 2.0).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn coherent_overlap_reduces_to_weyl() {
        let a = c(0.5, 1.3);
        let z = c(-0.2, 0.6);
        let w = coherent_displacement_overlap(a, z, a);
        assert!((w - PhotonState::Coherent { a }.weyl(z)).norm() < 1e-15);
    }

    #[test]
    fn f32_weyl() {
        let s = PhotonState::<f32>::Squeezed { a: Complex::new(0.5, 0.0), r: 0.5, varphi: 0.0 };
        assert!(s.weyl(Complex::new(0.3, 0.2)).norm() <= 1.0);
    }
}
