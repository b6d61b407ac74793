//! Special functions: generalized Laguerre polynomials with integer upper
//! index of either sign, and integer-order Bessel functions.
//!
//! Everything here is evaluated in the working precision of `T`; no
//! arbitrary-precision fallbacks.

use crate::error::{invalid, Result};
use crate::scalar::{int, lit, Real};

/// Arguments of `L_n^α(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreArgs<T> {
    pub n: i64,
    pub alpha: i64,
    pub x: T,
}

/// Generalized Laguerre polynomial `L_n^α(x)` for integer `α` (negative
/// allowed). Rejects `n < 0`.
///
/// For negative `α` the polynomial is the continuation of the explicit
/// series with falling-factorial binomials, so that for `α = -k`, `n >= k`,
/// `L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^k(x)`.
pub fn laguerre<T: Real>(args: LaguerreArgs<T>) -> Result<T> {
    if args.n < 0 {
        return invalid(format!("Laguerre degree must be >= 0, got {}", args.n));
    }
    Ok(laguerre_poly(args.n as usize, args.alpha, args.x))
}

/// `L_n^α(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
///
/// The recurrence is a polynomial identity in `α`, so it also covers
/// `α < -n`. For `-n <= α < 0` the low-order coefficients cancel exactly and
/// the reflection `L_n^{-k} = (-x)^k (n-k)!/n! L_{n-k}^k` keeps relative
/// accuracy.
pub fn laguerre_poly<T: Real>(n: usize, alpha: i64, x: T) -> T {
    if alpha < 0 && (-alpha) as usize <= n {
        let k = (-alpha) as usize;
        let ratio = ((n - k + 1)..=n).fold(T::one(), |acc, j| acc / int::<T>(j as i64));
        return (-x).powi(k as i32) * ratio * laguerre_poly(n - k, k as i64, x);
    }
    // Carried in double-double: near a root the plain recurrence loses
    // several digits to cancellation.
    let a = Dd::from(int::<T>(alpha));
    let mut prev = Dd::from(T::one());
    if n == 0 {
        return prev.hi;
    }
    let one = Dd::from(T::one());
    let mut cur = one.add(a).sub(Dd::from(x));
    for k in 1..n {
        let kf = Dd::from(int::<T>(k as i64));
        let c1 = kf.add(kf).add(one).add(a).sub(Dd::from(x));
        let next = c1.mul(cur).sub(kf.add(a).mul(prev)).div_real(int::<T>(k as i64 + 1));
        prev = cur;
        cur = next;
    }
    cur.hi + cur.lo
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy)]
struct Dd<T> {
    hi: T,
    lo: T,
}

impl<T: Real> Dd<T> {
    fn from(v: T) -> Self {
        Self { hi: v, lo: T::zero() }
    }

    fn two_sum(a: T, b: T) -> Self {
        let s = a + b;
        let bb = s - a;
        Self { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn quick(hi: T, lo: T) -> Self {
        let s = hi + lo;
        Self { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::quick(s.hi, s.lo + self.lo + o.lo)
    }

    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::quick(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div_real(self, d: T) -> Self {
        let q1 = self.hi / d;
        let r = self.sub(Self::from(q1).mul(Self::from(d)));
        let q2 = r.hi / d;
        let r = r.sub(Self::from(q2).mul(Self::from(d)));
        Self::quick(q1, q2).add(Self::from(r.hi / d))
    }
}

/// Bessel function of the first kind `J_n(x)` for integer `n`.
pub fn bessel_j<T: Real>(n: i64, x: T) -> T {
    let order = n.unsigned_abs() as usize;
    let seq = bessel_j_seq(order, x);
    let v = seq[order];
    if n < 0 && order % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `[J_0(x), J_1(x), …, J_nmax(x)]` by Miller's downward recurrence,
/// normalized with `J_0 + 2 Σ_k J_{2k} = 1`.
pub fn bessel_j_seq<T: Real>(nmax: usize, x: T) -> Vec<T> {
    let mut out = vec![T::zero(); nmax + 1];
    if x == T::zero() {
        out[0] = T::one();
        return out;
    }
    let ax = x.abs();
    let axf = ax.to_f64().unwrap_or(0.0);
    let reach = (nmax as f64).max(axf);
    let mut start = reach.ceil() as usize + 30 + (60.0 * reach).sqrt().ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }

    let big = T::max_value().sqrt();
    let shrink = T::one() / big;
    let two_over_x = lit::<T>(2.0) / ax;

    let mut vals = vec![T::zero(); start + 2];
    vals[start] = T::min_positive_value().sqrt();
    let mut norm = T::zero();
    for k in (1..=start).rev() {
        let kf: T = int(k as i64);
        let v = two_over_x * kf * vals[k] - vals[k + 1];
        vals[k - 1] = v;
        if v.abs() > big {
            for w in vals[k - 1..].iter_mut() {
                *w = *w * shrink;
            }
            norm = norm * shrink;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm = norm + lit::<T>(2.0) * vals[k - 1];
        }
    }
    norm = norm + vals[0];

    for (k, o) in out.iter_mut().enumerate() {
        let mut v = vals[k] / norm;
        if x < T::zero() && k % 2 == 1 {
            v = -v;
        }
        *o = v;
    }
    out
}

/// Exponentially scaled modified Bessel functions
/// `[e^{-|x|} I_0(|x|), …, e^{-|x|} I_nmax(|x|)]`.
///
/// Downward recurrence normalized with `I_0 + 2 Σ_{k≥1} I_k = e^{|x|}`.
/// Callers handle the sign of `x` through `I_k(-x) = (-1)^k I_k(x)`.
pub fn bessel_i_scaled_seq<T: Real>(nmax: usize, x: T) -> Vec<T> {
    let mut out = vec![T::zero(); nmax + 1];
    let ax = x.abs();
    if ax == T::zero() {
        out[0] = T::one();
        return out;
    }
    let axf = ax.to_f64().unwrap_or(0.0);
    let start = nmax.max((100.0 * axf).sqrt().ceil() as usize) + 40 + axf.ceil().min(1.0e6) as usize / 4;

    let big = T::max_value().sqrt();
    let shrink = T::one() / big;
    let two_over_x = lit::<T>(2.0) / ax;

    let mut vals = vec![T::zero(); start + 2];
    vals[start] = T::min_positive_value().sqrt();
    let mut norm = T::zero();
    for k in (1..=start).rev() {
        let kf: T = int(k as i64);
        let v = two_over_x * kf * vals[k] + vals[k + 1];
        vals[k - 1] = v;
        if v.abs() > big {
            for w in vals[k - 1..].iter_mut() {
                *w = *w * shrink;
            }
            norm = norm * shrink;
        }
        if k - 1 > 0 {
            norm = norm + lit::<T>(2.0) * vals[k - 1];
        }
    }
    norm = norm + vals[0];
    for (k, o) in out.iter_mut().enumerate() {
        *o = vals[k] / norm;
    }
    out
}

/// Smallest order beyond which `|J_n(x)|` is below double-precision noise.
pub(crate) fn bessel_j_cutoff(x: f64) -> usize {
    let ax = x.abs();
    (ax + 12.0 * ax.cbrt() + 25.0).ceil() as usize
}

/// Smallest order beyond which `e^{-x} I_n(x)` is below double-precision noise.
pub(crate) fn bessel_i_cutoff(x: f64) -> usize {
    let ax = x.abs();
    ((80.0 * ax).sqrt() + 25.0).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for alpha in -4..5 {
            assert_eq!(laguerre_poly(0, alpha, 3.7_f64), 1.0);
        }
    }

    #[test]
    fn degree_one_alpha_zero() {
        assert_eq!(laguerre_poly(1, 0, 1.0_f64), 0.0);
    }

    #[test]
    fn negative_alpha_value() {
        let v = laguerre(LaguerreArgs { n: 3, alpha: -2, x: 2.0_f64 }).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn negative_degree_rejected() {
        assert!(laguerre(LaguerreArgs { n: -1, alpha: 0, x: 1.0_f64 }).is_err());
    }

    #[test]
    fn negative_alpha_reflection() {
        // L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^k(x)
        let x = 0.7_f64;
        for n in 0..12usize {
            for k in 0..=n {
                let lhs = laguerre_poly(n, -(k as i64), x);
                let ratio: f64 = ((n - k + 1)..=n).map(|j| 1.0 / j as f64).product();
                let rhs = (-x).powi(k as i32) * ratio * laguerre_poly(n - k, k as i64, x);
                assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs.abs()), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bessel_small_values() {
        assert_eq!(bessel_j(0, 0.0_f64), 1.0);
        assert_eq!(bessel_j(3, 0.0_f64), 0.0);
        // tabulated J_0(1), J_1(1), J_5(10)
        assert!((bessel_j(0, 1.0_f64) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1, 1.0_f64) - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(5, 10.0_f64) - -0.234_061_528_186_793_6).abs() < 1e-14);
    }

    #[test]
    fn bessel_reflection() {
        for n in 0..8 {
            let a = bessel_j(-n, 1.5_f64);
            let b = bessel_j(n, 1.5_f64);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(a, sign * b);
        }
        assert_eq!(bessel_j(-2, 1.5_f64), bessel_j(2, 1.5_f64));
    }

    #[test]
    fn bessel_negative_argument() {
        for n in 0..6 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((bessel_j(n, -2.3_f64) - s * bessel_j(n, 2.3_f64)).abs() < 1e-15);
        }
    }

    #[test]
    fn bessel_large_argument() {
        // J_0(100) and J_50(100), reference values from a 50-digit evaluation.
        assert!((bessel_j(0, 100.0_f64) - 0.019_985_850_304_223_122).abs() < 1e-14);
        assert!((bessel_j(50, 100.0_f64) - -0.038_698_339_728_525_38).abs() < 1e-14);
    }

    #[test]
    fn modified_bessel_values() {
        let s = bessel_i_scaled_seq(3, 1.0_f64);
        let e = 1.0_f64.exp();
        assert!((s[0] * e - 1.266_065_877_752_008_4).abs() < 1e-14);
        assert!((s[1] * e - 0.565_159_103_992_485_1).abs() < 1e-14);
        assert!((s[3] * e - 0.022_168_424_924_331_9).abs() < 1e-15);
        let big = bessel_i_scaled_seq(2, 50.0_f64);
        // e^{-50} I_0(50)
        assert!((big[0] - 0.056_561_626_647_454_19).abs() < 1e-14);
    }

    #[test]
    fn f32_instantiation() {
        let v: f32 = laguerre_poly(3, -2, 2.0_f32);
        assert!((v - 2.0 / 3.0).abs() < 1e-6);
        assert!((bessel_j(0, 1.0_f32) - 0.765_197_7).abs() < 1e-6);
    }
}
