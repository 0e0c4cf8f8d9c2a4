//! Exact integer and rational scalars.
//!
//! Everything downstream works over arbitrary-precision rationals kept in
//! canonical lowest terms (positive denominator, sign on the numerator), so
//! equality is structural and rendering is deterministic. No floating point
//! anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Canonical rational from a numerator/denominator pair.
///
/// `BigRational::new` already reduces to lowest terms and keeps the
/// denominator positive; this wrapper only adds the zero-denominator check.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<BigRational, ExactError> {
    let den = den.into();
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(BigRational::new(num.into(), den))
}

/// Rational from an integer.
pub fn rat_int(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Checked exact division; the only rational operation that can fail.
pub fn checked_div(a: &BigRational, b: &BigRational) -> Result<BigRational, ExactError> {
    if b.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(a / b)
}

/// Triangular table of binomial coefficients built by the Pascal recurrence
/// (addition only, no factorials). Grows lazily and monotonically; once built
/// to the needed row it can be shared immutably across threads.
#[derive(Debug, Clone, Default)]
pub struct BinomialCache {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialCache {
    pub fn new() -> Self {
        BinomialCache { rows: Vec::new() }
    }

    /// Cache pre-built through row `max_row` inclusive.
    pub fn with_rows(max_row: usize) -> Self {
        let mut cache = Self::new();
        cache.ensure_rows(max_row);
        cache
    }

    /// Number of rows currently built.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Extend the table through row `max_row` inclusive.
    pub fn ensure_rows(&mut self, max_row: usize) {
        while self.rows.len() <= max_row {
            let m = self.rows.len();
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                if k == 0 || k == m {
                    row.push(BigInt::one());
                } else {
                    row.push(&self.rows[m - 1][k - 1] + &self.rows[m - 1][k]);
                }
            }
            self.rows.push(row);
        }
    }

    /// C(m, k), growing the table as needed. Total on nonnegative inputs:
    /// k > m yields 0.
    pub fn binomial(&mut self, m: usize, k: usize) -> BigInt {
        if k > m {
            return BigInt::zero();
        }
        self.ensure_rows(m);
        self.rows[m][k].clone()
    }

    /// C(m, k) from an already-built table (wait-free shared reads).
    ///
    /// Panics if row `m` has not been built; callers size the cache up front
    /// with [`BinomialCache::with_rows`] or [`BinomialCache::ensure_rows`].
    pub fn get(&self, m: usize, k: usize) -> BigInt {
        if k > m {
            return BigInt::zero();
        }
        self.rows[m][k].clone()
    }
}

/// True iff `r` is a (big) integer.
pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

/// Canonical text for a rational: `p` when integral, `p/q` otherwise.
pub fn rational_text(r: &BigRational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    // Independent oracle: m! / (k! (m-k)!) by plain factorial products.
    fn binomial_by_factorials(m: usize, k: usize) -> BigInt {
        let fact = |x: usize| (1..=x).map(BigInt::from).product::<BigInt>();
        fact(m) / (fact(k) * fact(m - k))
    }

    #[test]
    fn binomial_boundaries() {
        let mut cache = BinomialCache::new();
        assert_eq!(cache.binomial(0, 0), BigInt::from(1));
        assert_eq!(cache.binomial(7, 7), BigInt::from(1));
        assert_eq!(cache.binomial(5, 2), BigInt::from(10));
        assert_eq!(cache.binomial(3, 5), BigInt::from(0)); // k > m
    }

    #[test]
    fn binomial_matches_factorial_formula() {
        let mut cache = BinomialCache::with_rows(30);
        for m in 0..=30 {
            for k in 0..=m {
                assert_eq!(cache.binomial(m, k), binomial_by_factorials(m, k), "C({m},{k})");
            }
        }
    }

    #[test]
    fn binomial_row_sums_are_powers_of_two() {
        let cache = BinomialCache::with_rows(30);
        for m in 0..=30usize {
            let sum: BigInt = (0..=m).map(|k| cache.get(m, k)).sum();
            assert_eq!(sum, BigInt::from(2).pow(m as u32));
        }
    }

    #[test]
    fn binomial_symmetry() {
        let cache = BinomialCache::with_rows(40);
        for m in 0..=40usize {
            for k in 0..=m {
                assert_eq!(cache.get(m, k), cache.get(m, m - k));
            }
        }
    }

    #[test]
    fn cache_grows_monotonically() {
        let mut cache = BinomialCache::new();
        cache.binomial(5, 2);
        assert_eq!(cache.rows(), 6);
        cache.binomial(3, 1);
        assert_eq!(cache.rows(), 6); // no shrink
        cache.binomial(10, 4);
        assert_eq!(cache.rows(), 11);
    }

    #[test]
    fn rational_canonical_forms() {
        assert_eq!(rational(4, 8).unwrap(), rational(1, 2).unwrap());
        assert_eq!(rational(3, -6).unwrap(), rational(-1, 2).unwrap());
        let zero = rational(0, 5).unwrap();
        assert_eq!(zero.numer(), &BigInt::from(0));
        assert_eq!(zero.denom(), &BigInt::from(1));
        assert_eq!(rational(1, 0), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn rational_arithmetic_examples() {
        let half = rational(1, 2).unwrap();
        let third = rational(1, 3).unwrap();
        assert_eq!(&half + &third, rational(5, 6).unwrap());
        assert_eq!(rational(1, 5).unwrap() * rational(5, 1).unwrap(), rat_int(1));
        // the s(n,12) coefficient and its negation cancel exactly
        let b12 = rational(-691, 2730).unwrap();
        assert_eq!(&b12 + &(-&b12), rat_int(0));
        assert!(checked_div(&half, &rat_int(0)).is_err());
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(rational_text(&rational(-691, 2730).unwrap()), "-691/2730");
        assert_eq!(rational_text(&rat_int(7)), "7");
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| rational(p, q).unwrap())
    }

    proptest! {
        #[test]
        fn add_then_subtract_round_trips(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_then_divide_round_trips(a in arb_rational(), b in arb_rational()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(checked_div(&(&a * &b), &b).unwrap(), a);
        }

        #[test]
        fn normalization_is_idempotent(a in arb_rational()) {
            let renormalized = rational(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(&renormalized, &a);
            prop_assert!(renormalized.denom().is_positive() || renormalized.is_zero());
        }
    }
}
