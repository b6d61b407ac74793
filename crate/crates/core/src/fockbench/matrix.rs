use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

/// Dense complex matrix over the truncated number basis `|0⟩ … |dim-1⟩`,
/// stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> FockMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![cplx(T::zero(), T::zero()); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = cplx(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = cplx(*d, T::zero());
        }
        m
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn outer(psi: &[Complex<T>]) -> Self {
        Self::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.dim + j] = v;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                for (r, b) in row.iter_mut().zip(orow) {
                    *r = *r + a * *b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let n = self.dim;
        Ok((0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(cplx(T::zero(), T::zero()), |acc, (a, b)| acc + *a * *b)
            })
            .collect())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(cplx(T::zero(), T::zero()), |acc, i| acc + self.get(i, i))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect() })
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| *a * c).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check(other)?;
        Ok(self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm())))
    }

    /// Largest entry of `|M - M†|`.
    pub fn hermiticity_error(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Largest deviation of a column norm from one.
    pub fn column_norm_error(&self) -> T {
        let n = self.dim;
        (0..n).fold(T::zero(), |m, j| {
            let s = (0..n).fold(T::zero(), |acc, i| acc + self.get(i, j).norm_sqr());
            m.max((s.sqrt() - T::one()).abs())
        })
    }

    /// Positive semidefiniteness up to `-tol` on the spectrum, tested by a
    /// Cholesky factorization of `M + tol·I`.
    pub fn is_positive_semidefinite(&self, tol: T) -> bool {
        let n = self.dim;
        let mut l = vec![cplx(T::zero(), T::zero()); n * n];
        for j in 0..n {
            let mut d = self.get(j, j).re + tol;
            for k in 0..j {
                d = d - l[j * n + k].norm_sqr();
            }
            if !(d > T::zero()) {
                return false;
            }
            let djj = d.sqrt();
            l[j * n + j] = cplx(djj, T::zero());
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s = s - l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / djj;
            }
        }
        true
    }

    /// Leading `dim × dim` block.
    pub fn truncate(&self, dim: usize) -> Self {
        let d = dim.min(self.dim);
        Self::from_fn(d, |i, j| self.get(i, j))
    }

    /// Kronecker product, mode-A-major: `(i_A, i_B) ↦ i_A · dim_B + i_B`.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        Self::from_fn(na * nb, |r, c| self.get(r / nb, c / nb) * other.get(r % nb, c % nb))
    }

    /// CSV dump: one row per matrix row, `re,im` pairs in column order.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let v = self.get(i, j);
                    format!("{:?},{:?}", v.re, v.im)
                })
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// `Tr(ρ · obs)`.
pub fn expectation<T: Real>(rho: &FockMatrix<T>, obs: &FockMatrix<T>) -> Result<Complex<T>> {
    if rho.dim() != obs.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: obs.dim() });
    }
    let n = rho.dim();
    let mut acc = cplx(T::zero(), T::zero());
    for i in 0..n {
        for k in 0..n {
            acc = acc + rho.get(i, k) * obs.get(k, i);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_expectation_is_trace() {
        let rho = FockMatrix::from_diagonal(&[0.25_f64, 0.75]);
        let e = expectation(&rho, &FockMatrix::identity(2)).unwrap();
        assert_eq!(e, cplx(1.0, 0.0));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = FockMatrix::<f64>::identity(2);
        let b = FockMatrix::<f64>::identity(3);
        assert_eq!(a.matmul(&b), Err(Error::DimensionMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn psd_check() {
        let good = FockMatrix::from_diagonal(&[0.5_f64, 0.5, 0.0]);
        assert!(good.is_positive_semidefinite(1e-10));
        let bad = FockMatrix::from_diagonal(&[1.5_f64, -0.5]);
        assert!(!bad.is_positive_semidefinite(1e-10));
    }

    #[test]
    fn kron_ordering() {
        let a = FockMatrix::from_diagonal(&[1.0_f64, 2.0]);
        let b = FockMatrix::from_diagonal(&[1.0_f64, 10.0]);
        let k = a.kron(&b);
        assert_eq!(k.get(1, 1).re, 10.0); // (0,1)
        assert_eq!(k.get(2, 2).re, 2.0); // (1,0)
    }
}
