//! Two-mode states on the product basis `|i⟩_A ⊗ |j⟩_B`, index `i·dim_B + j`.

use num_complex::Complex;

use super::{coherent_vector, fock_state, FockMatrix, FockState};
use crate::error::{Error, Result};
use crate::scalar::{cplx, lit, Real};
use crate::twomode::TwoModeKind;

/// Which mode survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// Mixture of pure two-mode components `Σ_k w_k |Ψ_k⟩⟨Ψ_k|`, each stored as
/// a `dim_a × dim_b` coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeEnsemble<T> {
    pub dim_a: usize,
    pub dim_b: usize,
    pub components: Vec<(T, Vec<Complex<T>>)>,
}

fn zeros<T: Real>(n: usize) -> Vec<Complex<T>> {
    vec![cplx(T::zero(), T::zero()); n]
}

fn product<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(*a * *b);
        }
    }
    out
}

fn basis<T: Real>(n: u32, dim: usize) -> Vec<Complex<T>> {
    let mut v = zeros(dim);
    if (n as usize) < dim {
        v[n as usize] = cplx(T::one(), T::zero());
    }
    v
}

fn product_components<T: Real>(a: &FockState<T>, b: &FockState<T>, weight: T) -> Vec<(T, Vec<Complex<T>>)> {
    let mut out = Vec::new();
    for (wa, va) in a.components() {
        for (wb, vb) in b.components() {
            out.push((weight * wa * wb, product(&va, &vb)));
        }
    }
    out
}

impl<T: Real> TwoModeEnsemble<T> {
    pub fn trace_deficit(&self) -> T {
        let tr: T = self.components.iter().map(|(w, psi)| *w * psi.iter().map(|c| c.norm_sqr()).sum::<T>()).sum();
        T::one() - tr
    }

    /// `Tr[ρ (X ⊗ Y)]`.
    pub fn expect_product(&self, x: &FockMatrix<T>, y: &FockMatrix<T>) -> Result<Complex<T>> {
        if x.dim() != self.dim_a {
            return Err(Error::DimensionMismatch { expected: self.dim_a, got: x.dim() });
        }
        if y.dim() != self.dim_b {
            return Err(Error::DimensionMismatch { expected: self.dim_b, got: y.dim() });
        }
        let (da, db) = (self.dim_a, self.dim_b);
        let mut total = cplx(T::zero(), T::zero());
        let mut xpsi = zeros::<T>(da * db);
        for (w, psi) in &self.components {
            for v in xpsi.iter_mut() {
                *v = cplx(T::zero(), T::zero());
            }
            for i in 0..da {
                for k in 0..da {
                    let xik = x.get(i, k);
                    if xik.re == T::zero() && xik.im == T::zero() {
                        continue;
                    }
                    for l in 0..db {
                        xpsi[i * db + l] = xpsi[i * db + l] + xik * psi[k * db + l];
                    }
                }
            }
            let mut acc = cplx(T::zero(), T::zero());
            for i in 0..da {
                for j in 0..db {
                    let p = psi[i * db + j];
                    if p.re == T::zero() && p.im == T::zero() {
                        continue;
                    }
                    let mut m = cplx(T::zero(), T::zero());
                    for l in 0..db {
                        m = m + xpsi[i * db + l] * y.get(j, l);
                    }
                    acc = acc + p.conj() * m;
                }
            }
            total = total + acc * *w;
        }
        Ok(total)
    }

    /// Dense density matrix, mode-A-major.
    pub fn density(&self) -> FockMatrix<T> {
        let n = self.dim_a * self.dim_b;
        let mut rho = FockMatrix::zeros(n);
        for (w, psi) in &self.components {
            for r in 0..n {
                if psi[r].re == T::zero() && psi[r].im == T::zero() {
                    continue;
                }
                for c in 0..n {
                    let v = rho.get(r, c) + psi[r] * psi[c].conj() * *w;
                    rho.set(r, c, v);
                }
            }
        }
        rho
    }

    /// Reduced density matrix of one mode.
    pub fn reduced(&self, keep: Keep) -> FockMatrix<T> {
        let (da, db) = (self.dim_a, self.dim_b);
        match keep {
            Keep::A => {
                let mut rho = FockMatrix::zeros(da);
                for (w, psi) in &self.components {
                    for i in 0..da {
                        for k in 0..da {
                            let s = (0..db).fold(cplx(T::zero(), T::zero()), |acc, j| acc + psi[i * db + j] * psi[k * db + j].conj());
                            rho.set(i, k, rho.get(i, k) + s * *w);
                        }
                    }
                }
                rho
            }
            Keep::B => {
                let mut rho = FockMatrix::zeros(db);
                for (w, psi) in &self.components {
                    for j in 0..db {
                        for l in 0..db {
                            let s = (0..da).fold(cplx(T::zero(), T::zero()), |acc, i| acc + psi[i * db + j] * psi[i * db + l].conj());
                            rho.set(j, l, rho.get(j, l) + s * *w);
                        }
                    }
                }
                rho
            }
        }
    }
}

/// Builds the truncated two-mode state.
pub fn two_mode_ensemble<T: Real>(kind: &TwoModeKind<T>, dim_a: usize, dim_b: usize, cap: usize) -> Result<TwoModeEnsemble<T>> {
    for d in [dim_a, dim_b] {
        if d == 0 {
            return Err(Error::InvalidParameter("truncation dimension must be >= 1".into()));
        }
        if d > cap {
            return Err(Error::DimensionCap { requested: d, cap });
        }
    }
    kind.validate()?;
    let components = match kind {
        TwoModeKind::Factorizable { a, b } => {
            product_components(&fock_state(a, dim_a, cap)?, &fock_state(b, dim_b, cap)?, T::one())
        }
        TwoModeKind::SeparableMixture { components } => {
            let mut out = Vec::new();
            for (p, a, b) in components {
                out.extend(product_components(&fock_state(a, dim_a, cap)?, &fock_state(b, dim_b, cap)?, *p));
            }
            out
        }
        TwoModeKind::EntangledNumberPair { first, second } => {
            let s = lit::<T>(0.5).sqrt();
            let u = product(&basis::<T>(first.0, dim_a), &basis::<T>(first.1, dim_b));
            let v = product(&basis::<T>(second.0, dim_a), &basis::<T>(second.1, dim_b));
            vec![(T::one(), u.iter().zip(&v).map(|(x, y)| (*x + *y) * s).collect())]
        }
        TwoModeKind::EntangledCoherentPair { a1, a2 } => {
            let norm = kind.coherent_normalization();
            let u = product(&coherent_vector(*a1, dim_a), &coherent_vector(*a2, dim_b));
            let v = product(&coherent_vector(*a2, dim_a), &coherent_vector(*a1, dim_b));
            vec![(T::one(), u.iter().zip(&v).map(|(x, y)| (*x + *y) * norm).collect())]
        }
    };
    Ok(TwoModeEnsemble { dim_a, dim_b, components })
}

/// Dense two-mode density matrix, mode-A-major.
pub fn two_mode_density<T: Real>(kind: &TwoModeKind<T>, dim_a: usize, dim_b: usize, cap: usize) -> Result<FockMatrix<T>> {
    Ok(two_mode_ensemble(kind, dim_a, dim_b, cap)?.density())
}

/// Partial trace of a dense mode-A-major two-mode matrix.
pub fn partial_trace<T: Real>(rho: &FockMatrix<T>, dim_a: usize, dim_b: usize, keep: Keep) -> Result<FockMatrix<T>> {
    if rho.dim() != dim_a * dim_b {
        return Err(Error::DimensionMismatch { expected: dim_a * dim_b, got: rho.dim() });
    }
    Ok(match keep {
        Keep::A => FockMatrix::from_fn(dim_a, |i, k| {
            (0..dim_b).fold(cplx(T::zero(), T::zero()), |acc, j| acc + rho.get(i * dim_b + j, k * dim_b + j))
        }),
        Keep::B => FockMatrix::from_fn(dim_b, |j, l| {
            (0..dim_a).fold(cplx(T::zero(), T::zero()), |acc, i| acc + rho.get(i * dim_b + j, i * dim_b + l))
        }),
    })
}
