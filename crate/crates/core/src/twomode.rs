//! Two distant interference devices driven by the two modes of one field.
//!
//! Mode A (frequency `ω₁`) threads device A and mode B (`ω₂`) threads
//! device B. Joint quantities reduce to the two-mode Weyl function
//! `W₂(z_A, z_B) = Tr[ρ D(z_A) ⊗ D(z_B)]`.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::fockbench::{converge, intensity_operator, two_mode_ensemble, Converged, FockMatrix, TruncationPolicy};
use crate::interference::phase_parameter;
use crate::qstates::{coherent_displacement_overlap, displacement_element, ChargeCoupling, ModeParams, PhotonState};
use crate::scalar::{cis, cplx, int, lit, Real};

pub use crate::fockbench::Keep;

#[derive(Debug, Clone, PartialEq)]
pub enum TwoModeKind<T> {
    /// `ρ_A ⊗ ρ_B`.
    Factorizable { a: PhotonState<T>, b: PhotonState<T> },
    /// `Σ_k P_k ρ_{A,k} ⊗ ρ_{B,k}`.
    SeparableMixture { components: Vec<(T, PhotonState<T>, PhotonState<T>)> },
    /// `(|n_A n_B⟩ + |n'_A n'_B⟩)/√2` for two distinct number pairs.
    EntangledNumberPair { first: (u32, u32), second: (u32, u32) },
    /// `𝒩(|A₁A₂⟩ + |A₂A₁⟩)`.
    EntangledCoherentPair { a1: Complex<T>, a2: Complex<T> },
}

impl<T: Real> TwoModeKind<T> {
    /// `(|N₁N₂⟩ + |N₂N₁⟩)/√2`.
    pub fn swapped_number_pair(n1: u32, n2: u32) -> Result<Self> {
        let k = TwoModeKind::EntangledNumberPair { first: (n1, n2), second: (n2, n1) };
        k.validate()?;
        Ok(k)
    }

    /// `(|N₁N₁⟩ + |N₂N₂⟩)/√2`.
    pub fn matched_number_pair(n1: u32, n2: u32) -> Result<Self> {
        let k = TwoModeKind::EntangledNumberPair { first: (n1, n1), second: (n2, n2) };
        k.validate()?;
        Ok(k)
    }

    /// Equal mixture of the two product states of a number pair.
    pub fn separable_number_pair(first: (u32, u32), second: (u32, u32)) -> Self {
        let half = lit::<T>(0.5);
        let n = |k: u32| PhotonState::Number { n: k };
        TwoModeKind::SeparableMixture { components: vec![(half, n(first.0), n(first.1)), (half, n(second.0), n(second.1))] }
    }

    /// `½(|A₁A₂⟩⟨A₁A₂| + |A₂A₁⟩⟨A₂A₁|)`.
    pub fn separable_coherent_pair(a1: Complex<T>, a2: Complex<T>) -> Self {
        let half = lit::<T>(0.5);
        let c = |a: Complex<T>| PhotonState::Coherent { a };
        TwoModeKind::SeparableMixture { components: vec![(half, c(a1), c(a2)), (half, c(a2), c(a1))] }
    }

    /// Separable counterpart with the same diagonal: the entangled pure
    /// states lose their coherences, other kinds are returned unchanged.
    pub fn dephased(&self) -> Self {
        match self {
            TwoModeKind::EntangledNumberPair { first, second } => Self::separable_number_pair(*first, *second),
            TwoModeKind::EntangledCoherentPair { a1, a2 } => Self::separable_coherent_pair(*a1, *a2),
            other => other.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TwoModeKind::Factorizable { a, b } => {
                a.validate()?;
                b.validate()
            }
            TwoModeKind::SeparableMixture { components } => {
                if components.is_empty() {
                    return invalid("separable mixture needs at least one component");
                }
                let mut total = T::zero();
                for (p, a, b) in components {
                    if !(*p >= T::zero()) {
                        return invalid(format!("mixture weight must be >= 0, got {p}"));
                    }
                    a.validate()?;
                    b.validate()?;
                    total = total + *p;
                }
                if (total - T::one()).abs() > lit(1e-12) {
                    return invalid(format!("mixture weights must sum to 1, got {total}"));
                }
                Ok(())
            }
            TwoModeKind::EntangledNumberPair { first, second } => {
                if first == second {
                    return invalid("entangled number pair needs two distinct product states");
                }
                Ok(())
            }
            TwoModeKind::EntangledCoherentPair { a1, a2 } => {
                if [a1.re, a1.im, a2.re, a2.im].iter().all(|v| v.is_finite()) {
                    Ok(())
                } else {
                    invalid("coherent amplitudes must be finite")
                }
            }
        }
    }

    /// `𝒩 = [2 + 2e^{-|A₁-A₂|²}]^{-1/2}` (one for other kinds).
    pub fn coherent_normalization(&self) -> T {
        match self {
            TwoModeKind::EntangledCoherentPair { a1, a2 } => {
                let two = lit::<T>(2.0);
                T::one() / (two + two * (-(*a1 - *a2).norm_sqr()).exp()).sqrt()
            }
            _ => T::one(),
        }
    }

    /// Largest mean photon number carried by either mode of any component.
    pub fn max_mean_photons(&self) -> T {
        match self {
            TwoModeKind::Factorizable { a, b } => a.mean_photons().max(b.mean_photons()),
            TwoModeKind::SeparableMixture { components } => components
                .iter()
                .fold(T::zero(), |m, (_, a, b)| m.max(a.mean_photons()).max(b.mean_photons())),
            TwoModeKind::EntangledNumberPair { first, second } => {
                int(first.0.max(first.1).max(second.0).max(second.1) as i64)
            }
            TwoModeKind::EntangledCoherentPair { a1, a2 } => a1.norm_sqr().max(a2.norm_sqr()),
        }
    }

    /// `W₂(z_A, z_B) = Tr[ρ D(z_A) ⊗ D(z_B)]`.
    pub fn weyl2(&self, za: Complex<T>, zb: Complex<T>) -> Complex<T> {
        match self {
            TwoModeKind::Factorizable { a, b } => a.weyl(za) * b.weyl(zb),
            TwoModeKind::SeparableMixture { components } => components
                .iter()
                .fold(cplx(T::zero(), T::zero()), |acc, (p, a, b)| acc + a.weyl(za) * b.weyl(zb) * *p),
            TwoModeKind::EntangledNumberPair { first, second } => {
                let pairs = [*first, *second];
                let mut acc = cplx(T::zero(), T::zero());
                for (ai, bi) in pairs {
                    for (aj, bj) in pairs {
                        acc = acc + displacement_element(ai, aj, za) * displacement_element(bi, bj, zb);
                    }
                }
                acc * lit::<T>(0.5)
            }
            TwoModeKind::EntangledCoherentPair { a1, a2 } => {
                let pairs = [(*a1, *a2), (*a2, *a1)];
                let mut acc = cplx(T::zero(), T::zero());
                for (ai, bi) in pairs {
                    for (aj, bj) in pairs {
                        acc = acc + coherent_displacement_overlap(ai, za, aj) * coherent_displacement_overlap(bi, zb, bj);
                    }
                }
                let n = self.coherent_normalization();
                acc * (n * n)
            }
        }
    }
}

/// A two-mode field together with the modes it occupies.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModePhotonState<T> {
    pub kind: TwoModeKind<T>,
    pub mode_a: ModeParams<T>,
    pub mode_b: ModeParams<T>,
}

impl<T: Real> TwoModePhotonState<T> {
    pub fn new(kind: TwoModeKind<T>, mode_a: ModeParams<T>, mode_b: ModeParams<T>) -> Result<Self> {
        kind.validate()?;
        Ok(Self { kind, mode_a, mode_b })
    }

    fn lambdas(&self, q: T, t: T) -> (Complex<T>, Complex<T>) {
        (phase_parameter(q, self.mode_a.omega, t), phase_parameter(q, self.mode_b.omega, t))
    }
}

/// Single-device intensity `1 + Re[e^{-ix} W(λ)]` of one mode.
pub fn marginal_intensity<T: Real>(state: &TwoModePhotonState<T>, which: Keep, coupling: &ChargeCoupling<T>, x: T, t: T) -> T {
    let (la, lb) = state.lambdas(coupling.q, t);
    let zero = cplx(T::zero(), T::zero());
    let w = match which {
        Keep::A => state.kind.weyl2(la, zero),
        Keep::B => state.kind.weyl2(zero, lb),
    };
    T::one() + (cis(-x) * w).re
}

/// Coincidence intensity `Tr{ρ[1 + cos(x_A - eφ̂_A)][1 + cos(x_B - eφ̂_B)]}`.
pub fn joint_intensity<T: Real>(state: &TwoModePhotonState<T>, coupling: &ChargeCoupling<T>, xa: T, xb: T, t: T) -> T {
    let (la, lb) = state.lambdas(coupling.q, t);
    let ia = marginal_intensity(state, Keep::A, coupling, xa, t);
    let ib = marginal_intensity(state, Keep::B, coupling, xb, t);
    // cos(x - eφ̂) = ½ Σ_s e^{-isx} D(sλ)
    let mut cc = cplx(T::zero(), T::zero());
    for sa in [T::one(), -T::one()] {
        for sb in [T::one(), -T::one()] {
            cc = cc + cis(-(sa * xa + sb * xb)) * state.kind.weyl2(la * sa, lb * sb);
        }
    }
    ia + ib - T::one() + cc.re * lit(0.25)
}

/// Smallest marginal intensity accepted by [`ratio_r`].
pub const SINGULAR_MARGINAL: f64 = 1e-12;

/// `R = I(x_A, x_B) / (I_A I_B)`.
pub fn ratio_r<T: Real>(state: &TwoModePhotonState<T>, coupling: &ChargeCoupling<T>, xa: T, xb: T, t: T) -> Result<T> {
    let ia = marginal_intensity(state, Keep::A, coupling, xa, t);
    let ib = marginal_intensity(state, Keep::B, coupling, xb, t);
    let floor = lit::<T>(SINGULAR_MARGINAL);
    if ia.abs() < floor || ib.abs() < floor {
        return Err(Error::Singular(format!("vanishing marginal intensity at x_A = {xa}, x_B = {xb}")));
    }
    Ok(joint_intensity(state, coupling, xa, xb, t) / (ia * ib))
}

/// `α = ((2 - q²)/2) e^{-q²/2}` of the `(|00⟩, |11⟩)` pair.
pub fn pair_alpha<T: Real>(q: T) -> T {
    let q2 = q * q;
    (lit::<T>(2.0) - q2) / lit(2.0) * (-q2 / lit(2.0)).exp()
}

/// `γ = ½ e^{-q²} [1 + (1 - q²)²]` of the `(|00⟩, |11⟩)` pair.
pub fn pair_gamma<T: Real>(q: T) -> T {
    let q2 = q * q;
    let d = T::one() - q2;
    lit::<T>(0.5) * (-q2).exp() * (T::one() + d * d)
}

/// Closed-form ratio for the separable `(|00⟩, |11⟩)` mixture.
pub fn r_sep_closed<T: Real>(q: T, xa: T, xb: T) -> T {
    let (a, g) = (pair_alpha(q), pair_gamma(q));
    let (ca, cb) = (xa.cos(), xb.cos());
    (T::one() + a * (ca + cb) + g * ca * cb) / ((T::one() + a * ca) * (T::one() + a * cb))
}

/// Closed-form ratio for `(|00⟩ + |11⟩)/√2`; `sum_phase = (ω₁ + ω₂)t`.
pub fn r_ent_closed<T: Real>(q: T, xa: T, xb: T, sum_phase: T) -> T {
    let a = pair_alpha(q);
    let q2 = q * q;
    let corr = q2 * (-q2).exp() * xa.sin() * xb.sin() * sum_phase.cos() / ((T::one() + a * xa.cos()) * (T::one() + a * xb.cos()));
    r_sep_closed(q, xa, xb) + corr
}

/// The pair `[(1+2α+γ)/(1+α)², (1-2α+γ)/(1-α)²]`: the values of the
/// separable ratio at `cos x_A = cos x_B = ±1`.
///
/// Only the upper value bounds the ratio everywhere. With `δ = γ - α²` the
/// ratio is `1 + δ g(x_A) g(x_B)`, `g(x) = cos x/(1 + α cos x)`, so it dips to
/// `1 - δ/(1-α²)` where the cosines have opposite signs; see [`sep_extremes`].
pub fn sep_bounds<T: Real>(q: T) -> Result<(T, T)> {
    let a = pair_alpha(q);
    let eps = lit::<T>(1e-12);
    if (T::one() - a).abs() < eps || (T::one() + a).abs() < eps {
        return Err(Error::Singular(format!("degenerate α = {a} at q = {q}")));
    }
    // γ = α² + x² e^{-2x}, x = q²/2, so both bounds are 1 + x² e^{-2x}/(1 ± α)²
    let x = q * q / lit(2.0);
    let one_minus_a = -(-x).exp_m1() + x * (-x).exp();
    let excess = x * x * (-(x + x)).exp();
    let lo = T::one() + excess / ((T::one() + a) * (T::one() + a));
    let hi = T::one() + excess / (one_minus_a * one_minus_a);
    Ok((lo, hi))
}

/// True `(min, max)` of the separable ratio over all screen positions.
pub fn sep_extremes<T: Real>(q: T) -> Result<(T, T)> {
    let (_, hi) = sep_bounds(q)?;
    let a = pair_alpha(q);
    let x = q * q / lit(2.0);
    let excess = x * x * (-(x + x)).exp();
    let one_minus_a = -(-x).exp_m1() + x * (-x).exp();
    Ok((T::one() - excess / (one_minus_a * (T::one() + a)), hi))
}

/// Outcome of [`fit_q_to_bounds`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsFit {
    pub q: f64,
    pub lower: f64,
    pub upper: f64,
    /// `max(|lower - target_lower|, |upper - target_upper|)`.
    pub max_error: f64,
}

fn fit_error(q: f64, lo: f64, hi: f64) -> f64 {
    match sep_bounds(q) {
        Ok((l, h)) => (l - lo).abs().max((h - hi).abs()),
        Err(_) => f64::INFINITY,
    }
}

/// Finds the coupling whose separable bounds best match two reported
/// extremes: a uniform scan of `[q_min, q_max]` followed by golden-section
/// refinement of the minimax error.
pub fn fit_q_to_bounds(target_lower: f64, target_upper: f64, q_min: f64, q_max: f64, scan_points: usize) -> Result<BoundsFit> {
    if !(q_min > 0.0 && q_max > q_min) || scan_points < 3 {
        return invalid("fit needs 0 < q_min < q_max and at least 3 scan points");
    }
    let step = (q_max - q_min) / (scan_points - 1) as f64;
    let (mut best_i, mut best_e) = (0, f64::INFINITY);
    for i in 0..scan_points {
        let e = fit_error(q_min + step * i as f64, target_lower, target_upper);
        if e < best_e {
            best_e = e;
            best_i = i;
        }
    }
    let mut a = (q_min + step * best_i.saturating_sub(1) as f64).max(q_min);
    let mut b = (q_min + step * (best_i + 1) as f64).min(q_max);
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if fit_error(c, target_lower, target_upper) <= fit_error(d, target_lower, target_upper) {
            b = d;
        } else {
            a = c;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    let q = 0.5 * (a + b);
    let (lower, upper) = sep_bounds(q)?;
    Ok(BoundsFit { q, lower, upper, max_error: fit_error(q, target_lower, target_upper) })
}

/// `R(x_A, x_B)` on a rectangular grid; `None` marks excluded singular
/// points. Values are stored with `x_A` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSurface<T> {
    pub xa: Vec<T>,
    pub xb: Vec<T>,
    pub values: Vec<Option<T>>,
}

impl<T: Real> RatioSurface<T> {
    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        self.values[i * self.xb.len() + j]
    }

    pub fn min_max(&self) -> Option<(T, T)> {
        let mut it = self.values.iter().flatten();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(*v), hi.max(*v))))
    }

    pub fn excluded(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

/// `n` uniform samples of `[lo, hi]`, endpoints included.
pub fn uniform_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let d = (hi - lo) / int::<T>(n as i64 - 1);
    (0..n).map(|i| lo + d * int::<T>(i as i64)).collect()
}

/// Default figure grid: 201 points on `[-2π, 2π]` per axis.
pub fn figure_grid<T: Real>() -> Vec<T> {
    uniform_grid(-T::TAU(), T::TAU(), 201)
}

pub fn ratio_surface<T: Real>(state: &TwoModePhotonState<T>, coupling: &ChargeCoupling<T>, t: T, xa: &[T], xb: &[T]) -> RatioSurface<T> {
    let mut values = Vec::with_capacity(xa.len() * xb.len());
    for a in xa {
        for b in xb {
            values.push(ratio_r(state, coupling, *a, *b, t).ok());
        }
    }
    RatioSurface { xa: xa.to_vec(), xb: xb.to_vec(), values }
}

/// Oracle values `[I(x_A, x_B), I_A, I_B]` from truncated matrices.
pub fn intensities_numeric<T: Real>(
    state: &TwoModePhotonState<T>,
    coupling: &ChargeCoupling<T>,
    xa: T,
    xb: T,
    t: T,
    policy: &TruncationPolicy,
) -> Result<Converged<Vec<Complex<T>>>> {
    let mean = state.kind.max_mean_photons().to_f64().unwrap_or(f64::INFINITY);
    converge(policy, mean, |dim| {
        let ens = two_mode_ensemble(&state.kind, dim, dim, policy.cap)?;
        let x = intensity_operator(coupling.q, state.mode_a.omega, t, xa, dim);
        let y = intensity_operator(coupling.q, state.mode_b.omega, t, xb, dim);
        let id = FockMatrix::identity(dim);
        let vals = vec![ens.expect_product(&x, &y)?, ens.expect_product(&x, &id)?, ens.expect_product(&id, &y)?];
        Ok((vals, ens.trace_deficit().to_f64().unwrap_or(f64::NAN)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modes() -> (ModeParams<f64>, ModeParams<f64>) {
        (ModeParams::new(1.2e-4, 1.0).unwrap(), ModeParams::new(1e-4, 1.0).unwrap())
    }

    #[test]
    fn factorizable_ratio_is_one() {
        let (ma, mb) = modes();
        let st = TwoModePhotonState::new(
            TwoModeKind::Factorizable { a: PhotonState::Thermal { beta_omega: 0.8 }, b: PhotonState::Coherent { a: cplx(1.0, 0.5) } },
            ma,
            mb,
        )
        .unwrap();
        let q = ChargeCoupling::new(0.25).unwrap();
        for (xa, xb, t) in [(0.3, -1.0, 0.0), (2.0, 2.5, 4e4)] {
            assert!((ratio_r(&st, &q, xa, xb, t).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_forms_match_weyl_path() {
        let (ma, mb) = modes();
        let q = ChargeCoupling::new(0.25).unwrap();
        let sep = TwoModePhotonState::new(TwoModeKind::separable_number_pair((0, 0), (1, 1)), ma, mb).unwrap();
        let ent = TwoModePhotonState::new(TwoModeKind::matched_number_pair(0, 1).unwrap(), ma, mb).unwrap();
        for (xa, xb, t) in [(0.3, -1.0, 0.0), (2.0, 2.5, 1.3e4), (-4.0, 1.1, 7e3)] {
            let rs = ratio_r(&sep, &q, xa, xb, t).unwrap();
            assert!((rs - r_sep_closed(0.25, xa, xb)).abs() < 1e-13);
            let re = ratio_r(&ent, &q, xa, xb, t).unwrap();
            assert!((re - r_ent_closed(0.25, xa, xb, (ma.omega + mb.omega) * t)).abs() < 1e-13);
        }
    }

    #[test]
    fn bounds_degenerate_at_zero_coupling() {
        assert!(sep_bounds(0.0_f64).is_err());
        let (lo, hi) = sep_bounds(1e-3_f64).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.25).abs() < 1e-6);
    }

    #[test]
    fn entangled_pair_rejects_identical_products() {
        assert!(TwoModeKind::<f64>::matched_number_pair(2, 2).is_err());
    }

    #[test]
    fn coherent_pair_normalization() {
        let k = TwoModeKind::EntangledCoherentPair { a1: cplx(1.0, 0.0), a2: cplx(1.0, 0.0) };
        assert!((k.coherent_normalization() - 0.5_f64).abs() < 1e-15);
        let w = k.weyl2(cplx(0.0, 0.0), cplx(0.0, 0.0));
        assert!((w - cplx(1.0, 0.0)).norm() < 1e-14);
    }
}
