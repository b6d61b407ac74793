//! Brute-force oracle: explicit matrices in a truncated number basis.
//!
//! Nothing here calls the closed forms of [`crate::qstates`]. States are
//! built from their defining operators, displacement matrices from the
//! Laguerre matrix elements, and every expectation value is a trace.
//! Truncated density matrices are never renormalized; the missing weight is
//! reported as a trace deficit.

mod matrix;
mod two;

pub use matrix::{expectation, FockMatrix};
pub use two::{partial_trace, two_mode_density, two_mode_ensemble, Keep, TwoModeEnsemble};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qstates::PhotonState;
use crate::scalar::{cis, cplx, int, lit, Real};

/// Adaptive truncation: start at `initial_dim` (or a size derived from the
/// mean photon number), multiply by `growth` until the observable changes by
/// less than `tolerance` and the trace deficit is below `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub initial_dim: Option<usize>,
    pub growth: usize,
    pub tolerance: f64,
    pub cap: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { initial_dim: None, growth: 2, tolerance: 1e-10, cap: 4096 }
    }
}

impl TruncationPolicy {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap, ..Self::default() }
    }

    /// `max(32, ⌈n̄ + 10√(n̄+1)⌉)` unless overridden.
    pub fn start_dim(&self, mean_photons: f64) -> usize {
        self.initial_dim.unwrap_or_else(|| {
            let n = mean_photons.max(0.0);
            ((n + 10.0 * (n + 1.0).sqrt()).ceil() as usize).max(32)
        })
    }
}

/// A value computed under a [`TruncationPolicy`], with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Converged<V> {
    pub value: V,
    pub dim: usize,
    pub trace_deficit: f64,
    pub last_change: f64,
}

/// Runs `eval(dim) -> (values, trace deficit)` on growing dimensions until
/// two successive results agree.
pub fn converge<T, F>(policy: &TruncationPolicy, mean_photons: f64, mut eval: F) -> Result<Converged<Vec<Complex<T>>>>
where
    T: Real,
    F: FnMut(usize) -> Result<(Vec<Complex<T>>, f64)>,
{
    if policy.growth < 2 {
        return Err(Error::InvalidParameter("truncation growth factor must be >= 2".into()));
    }
    let mut dim = policy.start_dim(mean_photons);
    if dim > policy.cap {
        return Err(Error::DimensionCap { requested: dim, cap: policy.cap });
    }
    let mut prev: Option<Vec<Complex<T>>> = None;
    let mut last_change = f64::INFINITY;
    loop {
        let (vals, deficit) = eval(dim)?;
        if let Some(p) = &prev {
            last_change = p
                .iter()
                .zip(&vals)
                .fold(0.0_f64, |m, (a, b)| m.max((*a - *b).norm().to_f64().unwrap_or(f64::INFINITY)));
            if last_change < policy.tolerance && deficit.abs() < policy.tolerance {
                return Ok(Converged { value: vals, dim, trace_deficit: deficit, last_change });
            }
        }
        prev = Some(vals);
        let next = dim * policy.growth;
        if next > policy.cap {
            return Err(Error::NonConvergent { tolerance: policy.tolerance, cap: policy.cap, last_change });
        }
        dim = next;
    }
}

/// Truncated representation of a single-mode state.
#[derive(Debug, Clone, PartialEq)]
pub enum FockState<T> {
    Pure(Vec<Complex<T>>),
    /// Diagonal density matrix (photon-number mixture).
    Diagonal(Vec<T>),
}

impl<T: Real> FockState<T> {
    pub fn dim(&self) -> usize {
        match self {
            FockState::Pure(v) => v.len(),
            FockState::Diagonal(d) => d.len(),
        }
    }

    pub fn trace_deficit(&self) -> T {
        let tr = match self {
            FockState::Pure(v) => v.iter().map(|c| c.norm_sqr()).sum(),
            FockState::Diagonal(d) => d.iter().copied().sum(),
        };
        T::one() - tr
    }

    /// Pure-component decomposition `Σ_k w_k |ψ_k⟩⟨ψ_k|`.
    pub fn components(&self) -> Vec<(T, Vec<Complex<T>>)> {
        match self {
            FockState::Pure(v) => vec![(T::one(), v.clone())],
            FockState::Diagonal(d) => d
                .iter()
                .enumerate()
                .filter(|(_, p)| **p > T::zero())
                .map(|(n, p)| {
                    let mut e = vec![cplx(T::zero(), T::zero()); d.len()];
                    e[n] = cplx(T::one(), T::zero());
                    (*p, e)
                })
                .collect(),
        }
    }

    pub fn density(&self) -> FockMatrix<T> {
        match self {
            FockState::Pure(v) => FockMatrix::outer(v),
            FockState::Diagonal(d) => FockMatrix::from_diagonal(d),
        }
    }
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidParameter("truncation dimension must be >= 1".into()));
    }
    if dim > cap {
        return Err(Error::DimensionCap { requested: dim, cap });
    }
    Ok(())
}

/// `e^{-|A|²/2} A^n / √n!` for `n < dim`, accumulated in log space.
pub fn coherent_vector<T: Real>(a: Complex<T>, dim: usize) -> Vec<Complex<T>> {
    let mut out = vec![cplx(T::zero(), T::zero()); dim];
    if dim == 0 {
        return out;
    }
    let x = a.norm_sqr();
    if x == T::zero() {
        out[0] = cplx(T::one(), T::zero());
        return out;
    }
    let ln_abs = a.norm().ln();
    let theta = a.arg();
    let mut log_mag = -x / lit(2.0);
    for (n, o) in out.iter_mut().enumerate() {
        if n > 0 {
            log_mag = log_mag + ln_abs - int::<T>(n as i64).ln() / lit(2.0);
        }
        *o = cis(int::<T>(n as i64) * theta) * log_mag.exp();
    }
    out
}

/// Applies `exp(-(r/4) e^{-iφ} a†² + (r/4) e^{iφ} a²)` to `v` in place by
/// time-stepped Taylor series on the truncated space.
pub fn apply_squeeze<T: Real>(v: &mut [Complex<T>], r: T, varphi: T) {
    let n = v.len();
    if n < 3 || r == T::zero() {
        return;
    }
    let kappa = r / lit(4.0);
    let up = cis(-varphi) * (-kappa);
    let down = cis(varphi) * kappa;
    let sq: Vec<T> = (0..n).map(|k| int::<T>(((k + 1) * (k + 2)) as i64).sqrt()).collect();
    // ‖G‖ ≤ 2κ (n+1)
    let bound = (kappa + kappa) * int::<T>(n as i64 + 1);
    let theta = lit::<T>(3.0);
    let steps = (bound / theta).ceil().to_usize().unwrap_or(1).max(1);
    let h = T::one() / int::<T>(steps as i64);
    let zero = cplx(T::zero(), T::zero());
    let mut term = vec![zero; n];
    let mut next = vec![zero; n];
    let tiny = lit::<T>(1e-18);
    for _ in 0..steps {
        term.copy_from_slice(v);
        for k in 1..200 {
            let f = h / int::<T>(k as i64);
            for (i, out) in next.iter_mut().enumerate() {
                let mut acc = zero;
                if i >= 2 {
                    acc = acc + up * term[i - 2] * sq[i - 2];
                }
                if i + 2 < n {
                    acc = acc + down * term[i + 2] * sq[i];
                }
                *out = acc * f;
            }
            std::mem::swap(&mut term, &mut next);
            let mut tmax = T::zero();
            let mut vmax = T::zero();
            for (vi, ti) in v.iter_mut().zip(&term) {
                *vi = *vi + *ti;
                tmax = tmax.max(ti.norm_sqr());
                vmax = vmax.max(vi.norm_sqr());
            }
            if k >= 4 && tmax <= tiny * tiny * vmax {
                break;
            }
        }
    }
}

/// Truncated state at `dim`. Squeezed states are built at twice the
/// dimension and cut back, so edge effects of the truncated generator stay
/// outside the returned block.
pub fn fock_state<T: Real>(state: &PhotonState<T>, dim: usize, cap: usize) -> Result<FockState<T>> {
    check_cap(dim, cap)?;
    state.validate()?;
    match *state {
        PhotonState::Number { n } => {
            let mut v = vec![cplx(T::zero(), T::zero()); dim];
            if (n as usize) < dim {
                v[n as usize] = cplx(T::one(), T::zero());
            }
            Ok(FockState::Pure(v))
        }
        PhotonState::Coherent { a } => Ok(FockState::Pure(coherent_vector(a, dim))),
        PhotonState::Squeezed { a, r, varphi } => {
            let mut v = coherent_vector(a, 2 * dim);
            apply_squeeze(&mut v, r, varphi);
            v.truncate(dim);
            Ok(FockState::Pure(v))
        }
        PhotonState::Thermal { beta_omega } => {
            let w = (-beta_omega).exp();
            let p0 = -(-beta_omega).exp_m1();
            Ok(FockState::Diagonal((0..dim).map(|k| p0 * w.powi(k as i32)).collect()))
        }
    }
}

/// Truncated density matrix; its trace deficit is `1 - Tr ρ`.
pub fn density_matrix<T: Real>(state: &PhotonState<T>, dim: usize, cap: usize) -> Result<FockMatrix<T>> {
    Ok(fock_state(state, dim, cap)?.density())
}

/// Visits every entry `(m, n, ⟨m|D(z)|n⟩)` of the truncated displacement
/// matrix.
///
/// Each diagonal `m = n + k` follows the normalized Laguerre recurrence
/// `√((n+1)(n+1+k)) h_{n+1} = (2n+1+k-x) h_n - √(n(n+k)) h_{n-1}` with
/// `h_0 = z^k e^{-x/2}/√k!`; the entries above the diagonal follow from
/// `⟨n|D(z)|n+k⟩ = (-1)^k ⟨n+k|D(z)|n⟩*`.
pub fn for_each_displacement_entry<T: Real>(z: Complex<T>, dim: usize, mut f: impl FnMut(usize, usize, Complex<T>)) {
    let x = z.norm_sqr();
    if x == T::zero() {
        for i in 0..dim {
            f(i, i, cplx(T::one(), T::zero()));
        }
        return;
    }
    let ln_abs = z.norm().ln();
    let theta = z.arg();
    let big = lit::<T>(1e200);
    let mut ln_h0 = -x / lit(2.0);
    for k in 0..dim {
        let kf: T = int(k as i64);
        if k > 0 {
            ln_h0 = ln_h0 + ln_abs - kf.ln() / lit(2.0);
        }
        let phase = cis(kf * theta);
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        // Run the recurrence on unit-started values and carry the scale in
        // log form so that tiny starting values cannot underflow.
        let mut log_scale = ln_h0;
        let mut factor = log_scale.exp();
        let mut h_prev = T::zero();
        let mut h = T::one();
        for n in 0..(dim - k) {
            if n > 0 {
                let nf: T = int(n as i64 - 1);
                let a = (nf + nf + T::one() + kf - x) * h - (nf * (nf + kf)).sqrt() * h_prev;
                let next = a / ((nf + T::one()) * (nf + T::one() + kf)).sqrt();
                h_prev = h;
                h = next;
                if h.abs() > big {
                    h = h / big;
                    h_prev = h_prev / big;
                    log_scale = log_scale + big.ln();
                    factor = log_scale.exp();
                }
            }
            let v = phase * (h * factor);
            f(n + k, n, v);
            if k > 0 {
                f(n, n + k, v.conj() * sign);
            }
        }
    }
}

/// Truncated `D(z)` built from its matrix elements.
pub fn displacement_matrix<T: Real>(z: Complex<T>, dim: usize) -> FockMatrix<T> {
    let mut m = FockMatrix::zeros(dim);
    for_each_displacement_entry(z, dim, |i, j, v| m.set(i, j, v));
    m
}

/// `Tr[ρ D(z)]` at a fixed truncation.
pub fn weyl_at_dim<T: Real>(fs: &FockState<T>, z: Complex<T>) -> Complex<T> {
    let mut acc = cplx(T::zero(), T::zero());
    match fs {
        FockState::Pure(v) => for_each_displacement_entry(z, v.len(), |m, n, d| acc = acc + v[m].conj() * d * v[n]),
        FockState::Diagonal(p) => for_each_displacement_entry(z, p.len(), |m, n, d| {
            if m == n {
                acc = acc + d * p[m];
            }
        }),
    }
    acc
}

/// Converged `Tr[ρ D(z)]` on a set of points; the whole set must settle.
pub fn weyl_numeric_grid<T: Real>(
    state: &PhotonState<T>,
    zs: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<Converged<Vec<Complex<T>>>> {
    let mean = state.mean_photons().to_f64().unwrap_or(f64::INFINITY);
    converge(policy, mean, |dim| {
        let fs = fock_state(state, dim, policy.cap)?;
        let vals = zs.iter().map(|z| weyl_at_dim(&fs, *z)).collect();
        Ok((vals, fs.trace_deficit().to_f64().unwrap_or(f64::NAN)))
    })
}

/// Converged `Tr[ρ D(z)]`.
pub fn weyl_numeric<T: Real>(
    state: &PhotonState<T>,
    z: Complex<T>,
    policy: &TruncationPolicy,
) -> Result<Converged<Complex<T>>> {
    let c = weyl_numeric_grid(state, &[z], policy)?;
    Ok(Converged { value: c.value[0], dim: c.dim, trace_deficit: c.trace_deficit, last_change: c.last_change })
}

/// Matrix of `e^{iθ} a† + e^{-iθ} a`, scaled by `scale`.
fn ladder_combination<T: Real>(theta: T, scale: Complex<T>, dim: usize) -> FockMatrix<T> {
    let mut m = FockMatrix::zeros(dim);
    for n in 0..dim.saturating_sub(1) {
        let s = int::<T>(n as i64 + 1).sqrt();
        // ⟨n|a|n+1⟩ = √(n+1)
        m.set(n, n + 1, cis(-theta) * scale * s);
        m.set(n + 1, n, cis(theta) * scale * s);
    }
    m
}

/// `φ̂(t) = (ξ/√2)(e^{iωt} a† + e^{-iωt} a)`.
pub fn flux_matrix<T: Real>(omega: T, xi: T, t: T, dim: usize) -> FockMatrix<T> {
    ladder_combination(omega * t, cplx(xi / lit::<T>(2.0).sqrt(), T::zero()), dim)
}

/// `V̂(t) = i(ωξ/√2)(e^{iωt} a† - e^{-iωt} a)`.
pub fn emf_matrix<T: Real>(omega: T, xi: T, t: T, dim: usize) -> FockMatrix<T> {
    ladder_combination(omega * t + T::FRAC_PI_2(), cplx(omega * xi / lit::<T>(2.0).sqrt(), T::zero()), dim)
}

/// `a†a` on the truncated space.
pub fn number_matrix<T: Real>(dim: usize) -> FockMatrix<T> {
    let d: Vec<T> = (0..dim).map(|n| int(n as i64)).collect();
    FockMatrix::from_diagonal(&d)
}

/// Electron intensity operator `1 + cos(x - eφ̂(t))` with `e^{ieφ̂} = D(λ)`,
/// `λ = iq e^{iωt}`.
pub fn intensity_operator<T: Real>(q: T, omega: T, t: T, x: T, dim: usize) -> FockMatrix<T> {
    let lambda = cis(omega * t) * cplx(T::zero(), q);
    let half = lit::<T>(0.5);
    let mut m = FockMatrix::identity(dim);
    let (ep, em) = (cis(x) * half, cis(-x) * half);
    for_each_displacement_entry(lambda, dim, |i, j, v| {
        let cur = m.get(i, j);
        m.set(i, j, cur + em * v);
    });
    for_each_displacement_entry(-lambda, dim, |i, j, v| {
        let cur = m.get(i, j);
        m.set(i, j, cur + ep * v);
    });
    m
}

/// `Tr[ρ X Y]` for Hermitian `X`, state given by its truncated form.
fn expect_product<T: Real>(fs: &FockState<T>, x: &FockMatrix<T>, y: &FockMatrix<T>) -> Complex<T> {
    match fs {
        FockState::Pure(v) => {
            let xv = x.apply(v).expect("matching dims");
            let yv = y.apply(v).expect("matching dims");
            xv.iter().zip(&yv).fold(cplx(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * *b)
        }
        FockState::Diagonal(p) => {
            let mut acc = cplx(T::zero(), T::zero());
            for (n, pn) in p.iter().enumerate() {
                if *pn == T::zero() {
                    continue;
                }
                let mut s = cplx(T::zero(), T::zero());
                for m in 0..p.len() {
                    s = s + x.get(m, n).conj() * y.get(m, n);
                }
                acc = acc + s * *pn;
            }
            acc
        }
    }
}

/// Intensity autocorrelation `Γ(τ)` at `x = 0` as the mean of
/// `Tr[ρ Î(t) Î(t+τ)]` over `samples` equally spaced times in one period.
pub fn autocorrelation_numeric<T: Real>(
    state: &PhotonState<T>,
    q: T,
    omega: T,
    taus: &[T],
    dim: usize,
    samples: usize,
) -> Result<Vec<Complex<T>>> {
    let fs = fock_state(state, dim, usize::MAX)?;
    let period = T::TAU() / omega;
    let times: Vec<T> = (0..samples).map(|j| period * int::<T>(j as i64) / int::<T>(samples as i64)).collect();
    let ops: Vec<FockMatrix<T>> = times.iter().map(|t| intensity_operator(q, omega, *t, T::zero(), dim)).collect();
    let mut out = Vec::with_capacity(taus.len());
    for tau in taus {
        let mut acc = cplx(T::zero(), T::zero());
        for (t, op) in times.iter().zip(&ops) {
            let later = intensity_operator(q, omega, *t + *tau, T::zero(), dim);
            acc = acc + expect_product(&fs, op, &later);
        }
        out.push(acc / int::<T>(samples as i64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn displacement_at_zero_is_identity() {
        let d = displacement_matrix(c(0.0, 0.0), 6);
        assert_eq!(d, FockMatrix::identity(6));
    }

    #[test]
    fn vacuum_element() {
        let z = c(0.7, -1.1);
        let d = displacement_matrix(z, 4);
        assert!((d.get(0, 0).re - (-z.norm_sqr() / 2.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn displacement_inverse() {
        let z = c(1.2, 1.4);
        let dim = 120;
        let p = displacement_matrix(z, dim).matmul(&displacement_matrix(-z, dim)).unwrap();
        // the truncation edge is polluted; check the leading block
        let lead = p.truncate(60);
        assert!(lead.max_abs_diff(&FockMatrix::identity(60)).unwrap() < 1e-8);
    }

    #[test]
    fn flux_matrix_entries() {
        let m = flux_matrix(1.0, 1.0, 0.0, 5);
        for n in 0..4 {
            assert!((m.get(n, n + 1).re - ((n + 1) as f64).sqrt() / 2.0_f64.sqrt()).abs() < 1e-15);
        }
        assert!(flux_matrix(0.3, 2.0, 1.7, 8).hermiticity_error() < 1e-14);
    }

    #[test]
    fn number_state_density() {
        let rho = density_matrix(&PhotonState::<f64>::Number { n: 2 }, 8, 4096).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == 2 && j == 2 { 1.0 } else { 0.0 };
                assert_eq!(rho.get(i, j), c(expect, 0.0));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = density_matrix(&PhotonState::<f64>::vacuum(), 10, 8);
        assert_eq!(err, Err(Error::DimensionCap { requested: 10, cap: 8 }));
    }

    #[test]
    fn squeeze_is_unitary_on_interior() {
        let mut v = coherent_vector(c(0.5, 0.2), 200);
        apply_squeeze(&mut v, 1.0, 0.3);
        let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
