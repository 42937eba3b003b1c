//! Laguerre and associated Laguerre polynomials.
//!
//! Both evaluators use the upward three-term recurrence in the degree,
//!
//! ```text
//! (k+1) L_{k+1}^mu(x) = (2k+1+mu-x) L_k^mu(x) - (k+mu) L_{k-1}^mu(x)
//! ```
//!
//! which is O(m) and never materializes factorials. For x <= 0 (the only
//! regime the probe moments need) every term of the defining series is
//! non-negative, so the recurrence runs without cancellation.

/// Laguerre polynomial `L_m(x)`.
///
/// Degrees up to 10_000 are supported; the result grows monotonically in
/// |x| for x <= 0 and is always >= 1 there.
pub fn laguerre(m: u32, x: f64) -> f64 {
    assoc_laguerre(m, 0, x)
}

/// Associated Laguerre polynomial `L_m^mu(x)` for integer order `mu >= 0`.
///
/// `assoc_laguerre(m, 0, x)` coincides with [`laguerre`].
pub fn assoc_laguerre(m: u32, mu: u32, x: f64) -> f64 {
    debug_assert!(x.is_finite(), "polynomial argument must be finite");
    let mu = f64::from(mu);
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0; // L_0^mu
    let mut cur = 1.0 + mu - x; // L_1^mu
    for k in 1..m {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + mu - x) * cur - (k + mu) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;

    /// Exact-rational summation of the defining series
    ///
    /// ```text
    /// L_m^mu(x) = sum_{k=0}^{m} (-1)^k (mu+m)! / (k! (m-k)! (mu+k)!) x^k
    /// ```
    ///
    /// with the f64 argument promoted to an exact rational, so the result
    /// carries no cancellation error even for large positive x. This is the
    /// independent cross-check path for the recurrence implementation.
    fn series_exact(m: u32, mu: u32, x: f64) -> BigRational {
        let xq = BigRational::from_float(x).expect("finite argument");
        let mut sum = BigRational::zero();
        // coefficient c_k = (mu+m)! / (k! (m-k)! (mu+k)!), accumulated via
        // c_0 = binom(mu+m, m) and c_{k+1} = c_k * (m-k) / ((k+1)(mu+k+1))
        let mut coeff = binomial_exact(m + mu, m);
        let mut x_pow = BigRational::one();
        for k in 0..=m {
            let term = &coeff * &x_pow;
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            if k < m {
                coeff = coeff * BigRational::from_integer(BigInt::from(m - k))
                    / BigRational::from_integer(BigInt::from((k + 1) * (mu + k + 1)));
                x_pow *= &xq;
            }
        }
        sum
    }

    fn binomial_exact(n: u32, k: u32) -> BigRational {
        let mut acc = BigRational::one();
        for i in 0..k {
            acc = acc * BigRational::from_integer(BigInt::from(n - i))
                / BigRational::from_integer(BigInt::from(i + 1));
        }
        acc
    }

    fn binomial_u128(n: u64, k: u64) -> u128 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * u128::from(n - i) / u128::from(i + 1);
        }
        acc
    }

    #[test]
    fn low_degree_values() {
        assert_eq!(laguerre(0, -7.3), 1.0);
        assert_eq!(laguerre(1, -1.0), 2.0);
        assert_relative_eq!(laguerre(2, -4.0), 17.0, max_relative = 1e-14);
        assert_eq!(assoc_laguerre(0, 5, 2.2), 1.0);
        assert_relative_eq!(assoc_laguerre(1, 1, -1.0), 3.0, max_relative = 1e-14);
        assert_relative_eq!(assoc_laguerre(1, 2, -4.0), 7.0, max_relative = 1e-14);
    }

    #[test]
    fn matches_exact_series_on_nonpositive_arguments() {
        for m in 0..=30u32 {
            for mu in [0u32, 1, 2, 3, 5, 10] {
                for x in [0.0, -0.25, -1.0, -4.0, -10.5, -25.0] {
                    let exact = series_exact(m, mu, x).to_f64().unwrap();
                    assert_relative_eq!(
                        assoc_laguerre(m, mu, x),
                        exact,
                        max_relative = 1e-12,
                        epsilon = 1e-300
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_holds_between_independently_summed_values() {
        // (m) L_m^mu = (2m-1+mu-x) L_{m-1}^mu - (m-1+mu) L_{m-2}^mu, with the
        // three polynomial values each summed exactly from the series. The
        // residual is measured against the combined term magnitude so that
        // sign changes of L_m at positive x do not inflate the relative error.
        for m in 2..=30u32 {
            for mu in [0u32, 1, 2, 5, 10] {
                for x in [-25.0, -10.0, -2.5, -1.0, 0.0, 1.0, 2.5, 10.0, 25.0] {
                    let lm = series_exact(m, mu, x).to_f64().unwrap();
                    let lm1 = series_exact(m - 1, mu, x).to_f64().unwrap();
                    let lm2 = series_exact(m - 2, mu, x).to_f64().unwrap();
                    let (mf, muf) = (f64::from(m), f64::from(mu));
                    let lhs = mf * lm;
                    let rhs = (2.0 * mf - 1.0 + muf - x) * lm1 - (mf - 1.0 + muf) * lm2;
                    let scale = lhs.abs()
                        + ((2.0 * mf - 1.0 + muf - x) * lm1).abs()
                        + ((mf - 1.0 + muf) * lm2).abs();
                    assert!(
                        (lhs - rhs).abs() <= 1e-12 * scale.max(1.0),
                        "recurrence residual too large at m={m} mu={mu} x={x}: \
                         lhs={lhs} rhs={rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn high_degrees_stay_finite_at_probe_scales() {
        let v = laguerre(10_000, -1.0);
        assert!(v.is_finite() && v >= 1.0);
        let v = assoc_laguerre(10_000, 2, -0.25);
        assert!(v.is_finite() && v >= 1.0);
    }

    #[test]
    fn value_at_zero_is_binomial_exactly() {
        for m in 0..=20u32 {
            for mu in 0..=20u32 {
                let expect = binomial_u128(u64::from(m + mu), u64::from(m)) as f64;
                assert_eq!(
                    assoc_laguerre(m, mu, 0.0),
                    expect,
                    "L_{m}^{mu}(0) != C({}, {m})",
                    m + mu
                );
            }
        }
    }

    #[test]
    fn exact_series_stays_rational_consistent() {
        // The exact series must itself satisfy the recurrence with zero
        // residual in rational arithmetic; a failure here would invalidate
        // the cross-check oracle, not the implementation.
        for (m, mu, x) in [(7u32, 3u32, 19.5f64), (12, 0, -8.25), (30, 10, 25.0)] {
            let lm = series_exact(m, mu, x);
            let lm1 = series_exact(m - 1, mu, x);
            let lm2 = series_exact(m - 2, mu, x);
            let xq = BigRational::from_float(x).unwrap();
            let two_m = BigRational::from_integer(BigInt::from(2 * m - 1 + mu));
            let lead = BigRational::from_integer(BigInt::from(m));
            let trail = BigRational::from_integer(BigInt::from(m - 1 + mu));
            let residual = lead * &lm - ((two_m - xq) * &lm1 - trail * &lm2);
            assert!(
                residual.is_zero(),
                "oracle residual {residual} at m={m} mu={mu} x={x}"
            );
        }
    }

    proptest! {
        #[test]
        fn order_zero_matches_plain_laguerre(m in 0u32..60, x in -25.0f64..25.0) {
            let a = assoc_laguerre(m, 0, x);
            let b = laguerre(m, x);
            prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(b.abs()).max(1.0));
        }

        #[test]
        fn nonpositive_arguments_give_values_at_least_one(
            m in 0u32..40, mu in 0u32..10, x in -25.0f64..0.0
        ) {
            prop_assert!(assoc_laguerre(m, mu, x) >= 1.0);
        }

        #[test]
        fn grows_with_argument_magnitude_for_nonpositive_x(
            m in 1u32..40, mu in 0u32..10, x in -24.0f64..0.0
        ) {
            let closer = assoc_laguerre(m, mu, x);
            let farther = assoc_laguerre(m, mu, x - 0.5);
            prop_assert!(farther > closer);
        }
    }
}
