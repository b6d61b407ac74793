use mesoq::specfun::{bessel_j, bessel_j_seq, laguerre, laguerre_poly, LaguerreArgs};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

/// Exact `L_n^α(x) = Σ_k (-1)^k C(n+α, n-k) x^k / k!` over the rationals,
/// with the falling-factorial binomial so negative `α` is covered.
fn laguerre_exact(n: usize, alpha: i64, x: f64) -> f64 {
    let x = BigRational::from_float(x).unwrap();
    let top = BigInt::from(n as i64 + alpha);
    let mut sum = BigRational::zero();
    let mut xk = BigRational::one();
    let mut kfact = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            xk = &xk * &x;
            kfact *= BigInt::from(k as i64);
        }
        let r = n - k;
        let mut binom = BigRational::one();
        for j in 0..r {
            binom = binom * BigRational::from_integer(&top - BigInt::from(j as i64)) / BigRational::from_integer(BigInt::from(j as i64 + 1));
        }
        let term = binom * &xk / BigRational::from_integer(kfact.clone());
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.to_f64().unwrap()
}

const XS: [f64; 4] = [0.01, 0.25, 1.0, 4.0];

#[test]
fn laguerre_matches_exact_rational_series() {
    let mut worst = 0.0_f64;
    for n in 0..=20 {
        for alpha in -5..=5 {
            for x in XS {
                let exact = laguerre_exact(n, alpha, x);
                let got = laguerre_poly(n, alpha, x);
                let err = if exact == 0.0 { got.abs() } else { ((got - exact) / exact).abs() };
                worst = worst.max(err);
                assert!(err <= 1e-12, "n={n} α={alpha} x={x}: {got} vs {exact}");
            }
        }
    }
    assert!(worst <= 1e-12);
}

#[test]
fn laguerre_checked_entry_point_agrees() {
    let v = laguerre(LaguerreArgs { n: 7, alpha: -3, x: 0.25 }).unwrap();
    assert!((v - laguerre_exact(7, -3, 0.25)).abs() <= 1e-12 * v.abs());
}

#[test]
fn laguerre_three_term_recurrence() {
    for n in 1..20usize {
        for alpha in -5..=5i64 {
            for x in XS {
                let lhs = (n as f64 + 1.0) * laguerre_poly(n + 1, alpha, x);
                let rhs = (2.0 * n as f64 + 1.0 + alpha as f64 - x) * laguerre_poly(n, alpha, x)
                    - (n as f64 + alpha as f64) * laguerre_poly(n - 1, alpha, x);
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                assert!((lhs - rhs).abs() <= 1e-10 * scale.max(1.0), "n={n} α={alpha} x={x}");
            }
        }
    }
}

#[test]
fn bessel_squares_sum_to_one() {
    for x in [0.1, 1.0, 2.5, 5.0, 34f64.sqrt(), 10.0] {
        let j = bessel_j_seq(60, x);
        let s = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((s - 1.0).abs() <= 1e-12, "x={x}: {s}");
    }
}

proptest! {
    #[test]
    fn bessel_negative_order_reflection(n in 0i64..30, x in 0.0f64..20.0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((bessel_j(-n, x) - sign * bessel_j(n, x)).abs() <= 1e-14);
    }

    #[test]
    fn bessel_recurrence(n in 1i64..25, x in 0.5f64..20.0) {
        let lhs = 2.0 * n as f64 / x * bessel_j(n, x);
        let rhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + lhs.abs()));
    }

    #[test]
    fn laguerre_f32_tracks_f64(n in 0usize..8, alpha in 0i64..4, x in 0.0f64..2.0) {
        let a = laguerre_poly(n, alpha, x);
        let b = laguerre_poly(n, alpha, x as f32) as f64;
        prop_assert!((a - b).abs() <= 1e-4 * (1.0 + a.abs()));
    }
}
