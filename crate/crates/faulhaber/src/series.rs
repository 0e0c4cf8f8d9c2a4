//! Power-sum polynomials by recursion, with two independent oracles.
//!
//! The table construction uses only binomial coefficients and exact rational
//! arithmetic: each `s(n, N)` is obtained from `(n+1)^{N+1}` minus a
//! binomial-weighted combination of all lower orders, divided by `N+1`. No
//! Bernoulli numbers are involved in the construction; they appear here only
//! as an oracle (`power_sum_bernoulli`) alongside brute-force summation
//! (`power_sum_direct`) so the three routes can be checked against each
//! other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{rational, BinomialCache};
use crate::poly::Polynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("order {order} exceeds table maximum {max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("value at n = {n} for order {order} is not an integer (construction bug)")]
    NonIntegerValue { order: usize, n: u64 },
    #[error("Bernoulli cache covers indices 0..={have}, need {need}")]
    InsufficientBernoulli { need: usize, have: usize },
}

/// The finished table `s(n, 0) .. s(n, max_order)`.
///
/// Index `j` holds the polynomial whose value at integer `n` is
/// `1^j + 2^j + ... + n^j` (plus the `k = 0` term, which only matters for
/// `j = 0` where the table stores `n + 1`). Construction is strictly
/// bottom-up because order `N` needs every lower order; once built, the
/// table is immutable and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaulhaberTable {
    entries: Vec<Polynomial>,
}

impl FaulhaberTable {
    /// Build orders `0..=max_order` by the recursion
    /// `s_N = ((n+1)^{N+1} - sum_{j<N} C(N+1, j) * s_j) / (N+1)`.
    pub fn build(max_order: usize) -> FaulhaberTable {
        Self::build_instrumented(max_order).0
    }

    /// [`build`](Self::build), also reporting the cumulative wall-clock time
    /// after each order finishes (index `j` = time to reach order `j`).
    /// The timing vector is monotone nondecreasing by construction.
    pub fn build_instrumented(max_order: usize) -> (FaulhaberTable, Vec<std::time::Duration>) {
        let start = std::time::Instant::now();
        let mut cache = BinomialCache::with_rows(max_order + 1);
        let mut entries: Vec<Polynomial> = Vec::with_capacity(max_order + 1);
        let mut cumulative = Vec::with_capacity(max_order + 1);
        entries.push(Polynomial::from_int_coeffs(&[1, 1]));
        cumulative.push(start.elapsed());
        for order in 1..=max_order {
            let mut acc = Polynomial::binomial_expand(1, order + 1, &mut cache);
            for (j, lower) in entries.iter().enumerate() {
                let weight = BigRational::from_integer(cache.get(order + 1, j));
                acc = &acc - &lower.scale(&weight);
            }
            let divisor = rational(1, order as i64 + 1).expect("order + 1 is nonzero");
            entries.push(acc.scale(&divisor));
            cumulative.push(start.elapsed());
        }
        (FaulhaberTable { entries }, cumulative)
    }

    pub fn max_order(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// The polynomial for one order.
    pub fn poly(&self, order: usize) -> Result<&Polynomial, SeriesError> {
        self.entries.get(order).ok_or(SeriesError::OrderOutOfRange {
            order,
            max: self.max_order(),
        })
    }

    /// Evaluate `s(n, order)` at a concrete integer point.
    ///
    /// The result of a correctly built table is always an integer; a
    /// non-unit denominator is reported as an error rather than truncated,
    /// since it could only mean the construction itself is broken.
    pub fn eval_at(&self, order: usize, n: u64) -> Result<BigInt, SeriesError> {
        let value = self.poly(order)?.eval(&BigRational::from_integer(n.into()));
        if !value.denom().is_one() {
            return Err(SeriesError::NonIntegerValue { order, n });
        }
        Ok(value.to_integer())
    }
}

/// Brute-force oracle: `sum_{k=0}^{n} k^order` as an exact big integer.
///
/// The `k = 0` term uses the `0^0 = 1` convention, so order 0 yields `n + 1`
/// in agreement with the table's base case.
pub fn power_sum_direct(n: u64, order: usize) -> BigInt {
    let mut sum = if order == 0 { BigInt::one() } else { BigInt::zero() };
    for k in 1..=n {
        sum += BigInt::from(k).pow(order as u32);
    }
    sum
}

/// Bernoulli numbers `B_0 .. B_max_index` in the `B_1 = -1/2` convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
}

impl BernoulliCache {
    /// Compute via `B_m = -(1/(m+1)) * sum_{j=0}^{m-1} C(m+1, j) * B_j`
    /// seeded with `B_0 = 1`.
    pub fn compute(max_index: usize) -> BernoulliCache {
        let cache = BinomialCache::with_rows(max_index + 1);
        let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        for m in 1..=max_index {
            let mut sum = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                sum += b * BigRational::from_integer(cache.get(m + 1, j));
            }
            let scale = rational(-1, m as i64 + 1).expect("m + 1 is nonzero");
            values.push(sum * scale);
        }
        BernoulliCache { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Option<&BigRational> {
        self.values.get(index)
    }
}

/// Independent oracle for the table: the classical closed form
/// `s(n, N) = (1/(N+1)) * sum_{j=0}^{N} (-1)^j C(N+1, j) B_j n^{N+1-j}`,
/// with order 0 returning `n + 1` to match the table's base-case convention.
pub fn power_sum_bernoulli(order: usize, cache: &BernoulliCache) -> Result<Polynomial, SeriesError> {
    if cache.max_index() < order {
        return Err(SeriesError::InsufficientBernoulli {
            need: order,
            have: cache.max_index(),
        });
    }
    if order == 0 {
        return Ok(Polynomial::from_int_coeffs(&[1, 1]));
    }
    let binomials = BinomialCache::with_rows(order + 1);
    let mut coeffs = vec![BigRational::zero(); order + 2];
    let lead = rational(1, order as i64 + 1).expect("order + 1 is nonzero");
    for j in 0..=order {
        let b = cache.get(j).expect("cache covers 0..=order");
        let mut c = BigRational::from_integer(binomials.get(order + 1, j)) * b * &lead;
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[order + 1 - j] = c;
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use std::sync::Arc;

    fn expected_low_orders() -> Vec<Polynomial> {
        vec![
            // n + 1
            Polynomial::from_int_coeffs(&[1, 1]),
            // n^2/2 + n/2
            Polynomial::from_int_coeffs(&[0, 1, 1]).scale(&rational(1, 2).unwrap()),
            // n^3/3 + n^2/2 + n/6
            Polynomial::from_int_coeffs(&[0, 1, 3, 2]).scale(&rational(1, 6).unwrap()),
            // n^4/4 + n^3/2 + n^2/4
            Polynomial::from_int_coeffs(&[0, 0, 1, 2, 1]).scale(&rational(1, 4).unwrap()),
            // n^5/5 + n^4/2 + n^3/3 - n/30
            Polynomial::from_int_coeffs(&[0, -1, 0, 10, 15, 6]).scale(&rational(1, 30).unwrap()),
        ]
    }

    #[test]
    fn low_orders_match_hand_expansions() {
        let table = FaulhaberTable::build(4);
        for (order, expected) in expected_low_orders().iter().enumerate() {
            assert_eq!(table.poly(order).unwrap(), expected, "order {order}");
        }
    }

    #[test]
    fn structural_invariants_hold_through_order_sixty() {
        let table = FaulhaberTable::build(60);
        let minus_one = rat_int(-1);
        for order in 0..=60 {
            let p = table.poly(order).unwrap();
            assert_eq!(p.degree(), Some(order + 1), "degree at order {order}");
            assert_eq!(
                p.leading().unwrap(),
                &rational(1, order as i64 + 1).unwrap(),
                "leading coefficient at order {order}"
            );
            if order >= 1 {
                assert_eq!(p.coeff(0), rat_int(0), "constant term at order {order}");
                assert_eq!(
                    p.coeff(order),
                    rational(1, 2).unwrap(),
                    "subleading coefficient at order {order}"
                );
                assert_eq!(p.eval(&minus_one), rat_int(0), "root at -1 for order {order}");
            }
        }
    }

    #[test]
    fn out_of_range_order_is_an_error() {
        let table = FaulhaberTable::build(3);
        assert_eq!(
            table.poly(4).unwrap_err(),
            SeriesError::OrderOutOfRange { order: 4, max: 3 }
        );
        assert_eq!(
            table.eval_at(10, 1).unwrap_err(),
            SeriesError::OrderOutOfRange { order: 10, max: 3 }
        );
    }

    #[test]
    fn direct_summation_examples() {
        assert_eq!(power_sum_direct(3, 2), BigInt::from(14));
        assert_eq!(power_sum_direct(0, 5), BigInt::from(0));
        assert_eq!(power_sum_direct(5, 0), BigInt::from(6));
        assert_eq!(power_sum_direct(10, 1), BigInt::from(55));
        assert_eq!(power_sum_direct(10, 3), BigInt::from(3025));
        // 0^0 = 1: the empty-range sum at order 0 still counts k = 0
        assert_eq!(power_sum_direct(0, 0), BigInt::from(1));
    }

    #[test]
    fn evaluation_agrees_with_direct_summation() {
        let table = FaulhaberTable::build(12);
        for order in 0..=12 {
            for n in [0u64, 1, 2, 3, 7, 50, 999] {
                assert_eq!(
                    table.eval_at(order, n).unwrap(),
                    power_sum_direct(n, order),
                    "order {order}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn telescoping_identity_at_polynomial_level() {
        // s_N(n) - s_N(n-1) = n^N exactly, for each order
        let table = FaulhaberTable::build(30);
        let mut cache = BinomialCache::new();
        for order in 1..=30 {
            let p = table.poly(order).unwrap();
            let shifted = p.compose_shift(-1, &mut cache);
            assert_eq!(
                p - &shifted,
                Polynomial::monomial(rat_int(1), order),
                "order {order}"
            );
        }
    }

    #[test]
    fn bernoulli_values_and_recurrence_consistency() {
        let cache = BernoulliCache::compute(12);
        assert_eq!(cache.get(0).unwrap(), &rat_int(1));
        assert_eq!(cache.get(1).unwrap(), &rational(-1, 2).unwrap());
        assert_eq!(cache.get(2).unwrap(), &rational(1, 6).unwrap());
        assert_eq!(cache.get(4).unwrap(), &rational(-1, 30).unwrap());
        assert_eq!(cache.get(12).unwrap(), &rational(-691, 2730).unwrap());
        for odd in [3usize, 5, 7, 9, 11] {
            assert!(cache.get(odd).unwrap().is_zero(), "B_{odd} should vanish");
        }
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 for every m >= 1
        let binomials = BinomialCache::with_rows(13);
        for m in 1..=12 {
            let mut sum = BigRational::zero();
            for j in 0..=m {
                sum += cache.get(j).unwrap() * BigRational::from_integer(binomials.get(m + 1, j));
            }
            assert!(sum.is_zero(), "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn bernoulli_construction_matches_recursion() {
        let table = FaulhaberTable::build(50);
        let cache = BernoulliCache::compute(50);
        for order in 0..=50 {
            assert_eq!(
                &power_sum_bernoulli(order, &cache).unwrap(),
                table.poly(order).unwrap(),
                "order {order}"
            );
        }
    }

    #[test]
    fn bernoulli_construction_requires_enough_cache() {
        let cache = BernoulliCache::compute(3);
        assert_eq!(
            power_sum_bernoulli(5, &cache).unwrap_err(),
            SeriesError::InsufficientBernoulli { need: 5, have: 3 }
        );
    }

    #[test]
    fn rebuilding_is_deterministic() {
        assert_eq!(FaulhaberTable::build(25), FaulhaberTable::build(25));
    }

    #[test]
    fn finished_table_is_shareable_across_threads() {
        let table = Arc::new(FaulhaberTable::build(20));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let table = Arc::clone(&table);
                std::thread::spawn(move || {
                    for order in 0..=20usize {
                        let n = (order as u64 + t) % 17;
                        assert_eq!(table.eval_at(order, n).unwrap(), power_sum_direct(n, order));
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
