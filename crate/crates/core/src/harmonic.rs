//! Almost-periodic signals as finite sums `f(t) = Σ_k c_k e^{i ν_k t}`.
//!
//! Time averages over an infinite window are exact here: the average is the
//! coefficient at frequency zero. Frequencies that agree to within a few
//! ulps of the largest frequency present are merged into one term.

use num_complex::Complex;

use crate::scalar::{i_unit, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSeries<T> {
    terms: Vec<(T, Complex<T>)>,
}

impl<T: Real> Default for HarmonicSeries<T> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<T: Real> HarmonicSeries<T> {
    /// Builds a series from `(frequency, amplitude)` pairs, merging equal
    /// frequencies.
    pub fn new(terms: impl IntoIterator<Item = (T, Complex<T>)>) -> Self {
        let mut s = Self { terms: terms.into_iter().collect() };
        s.normalize(T::zero());
        s
    }

    /// Like [`new`](Self::new), with the merge tolerance taken from at least
    /// `scale`. Sums of frequencies need the scale of their operands.
    fn with_scale(terms: Vec<(T, Complex<T>)>, scale: T) -> Self {
        let mut s = Self { terms };
        s.normalize(scale);
        s
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Complex<T>) -> Self {
        Self::new([(T::zero(), value)])
    }

    pub fn single(frequency: T, amplitude: Complex<T>) -> Self {
        Self::new([(frequency, amplitude)])
    }

    /// Terms sorted by increasing frequency.
    pub fn terms(&self) -> &[(T, Complex<T>)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequencies(&self) -> Vec<T> {
        self.terms.iter().map(|(f, _)| *f).collect()
    }

    fn max_abs_frequency(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, (f, _)| m.max(f.abs()))
    }

    /// Merge tolerance for frequencies in this series.
    pub fn frequency_tolerance(&self) -> T {
        self.tolerance_at(self.max_abs_frequency())
    }

    fn tolerance_at(&self, scale: T) -> T {
        let eps = T::epsilon() * T::from_f64(1024.0).unwrap();
        if scale > T::zero() {
            scale * eps
        } else {
            eps
        }
    }

    fn normalize(&mut self, scale: T) {
        self.terms.retain(|(f, a)| f.is_finite() && (a.re != T::zero() || a.im != T::zero()));
        self.terms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite frequencies"));
        let tol = self.tolerance_at(self.max_abs_frequency().max(scale));
        let mut merged: Vec<(T, Complex<T>)> = Vec::with_capacity(self.terms.len());
        for (f, a) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((g, b)) if (f - *g).abs() <= tol => {
                    *b = *b + a;
                }
                _ => merged.push((f, a)),
            }
        }
        // Snap near-zero frequencies onto zero so the DC term is unambiguous.
        for (f, _) in merged.iter_mut() {
            if f.abs() <= tol {
                *f = T::zero();
            }
        }
        merged.retain(|(_, a)| a.re != T::zero() || a.im != T::zero());
        self.terms = merged;
    }

    /// Drops terms whose magnitude is below `rel` times the largest one.
    pub fn prune(&mut self, rel: T) {
        let max = self.terms.iter().fold(T::zero(), |m, (_, a)| m.max(a.norm()));
        let floor = max * rel;
        self.terms.retain(|(_, a)| a.norm() > floor);
    }

    pub fn eval(&self, t: T) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (f, a)| acc + *a * Complex::new(T::zero(), *f * t).exp())
    }

    /// Exact infinite-window time average: the zero-frequency amplitude.
    pub fn time_average(&self) -> Complex<T> {
        self.amplitude_at(T::zero())
    }

    /// Amplitude of the term at `frequency`, zero if absent.
    pub fn amplitude_at(&self, frequency: T) -> Complex<T> {
        let tol = self.frequency_tolerance().max(frequency.abs() * T::epsilon() * T::from_f64(1024.0).unwrap());
        self.terms
            .iter()
            .filter(|(f, _)| (*f - frequency).abs() <= tol)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (_, a)| acc + *a)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::new(self.terms.iter().map(|(f, a)| (*f, *a * c)))
    }

    /// Shifts every frequency by `df` (multiplication by `e^{i df t}`).
    pub fn shift(&self, df: T) -> Self {
        Self::new(self.terms.iter().map(|(f, a)| (*f + df, *a)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().copied().chain(other.terms.iter().map(|(f, a)| (*f, -*a))))
    }

    /// Pointwise product; frequencies add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (f, a) in &self.terms {
            for (g, b) in &other.terms {
                out.push((*f + *g, *a * *b));
            }
        }
        let mut s = Self::with_scale(out, self.max_abs_frequency() + other.max_abs_frequency());
        s.prune(T::epsilon() * T::epsilon());
        s
    }

    /// Complex conjugate signal: `f(t)* = Σ c_k* e^{-i ν_k t}`.
    pub fn conj(&self) -> Self {
        Self::new(self.terms.iter().map(|(f, a)| (-*f, a.conj())))
    }

    /// `Re f(t)` as a series.
    pub fn re(&self) -> Self {
        self.add(&self.conj()).scale(Complex::new(T::from_f64(0.5).unwrap(), T::zero()))
    }

    /// `Im f(t)` as a series.
    pub fn im(&self) -> Self {
        let half_over_i = Complex::new(T::from_f64(0.5).unwrap(), T::zero()) / i_unit::<T>();
        self.sub(&self.conj()).scale(half_over_i)
    }

    /// Whether the series represents a real signal: `c(-ν) = c(ν)*`.
    pub fn is_real_valued(&self, tol: T) -> bool {
        let c = self.conj();
        let diff = self.sub(&c);
        diff.terms.iter().all(|(_, a)| a.norm() <= tol)
    }
}
