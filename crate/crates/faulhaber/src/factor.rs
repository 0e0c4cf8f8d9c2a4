//! Structural factorization of the power-sum polynomials.
//!
//! Every table entry factors as a parity-mandated product times a primitive
//! integer residual over a single positive denominator: even orders `N >= 2`
//! carry `n(n+1)(2n+1)`, odd orders `N >= 3` carry `n^2(n+1)^2`, and orders
//! 0 and 1 are explicit special classes. The claim is empirical, so the
//! checker treats a failed division or a wrong residual degree as a
//! reportable finding rather than a panic: a sweep over a range records one
//! outcome per order and never aborts early.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exact::rational;
use crate::poly::{IntegerPolynomial, Polynomial};
use crate::series::{FaulhaberTable, SeriesError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("mandated factor product does not divide the order-{order} polynomial")]
    DivisibilityFailure { order: usize },
    #[error("residual degree {actual} at order {order}, expected {expected}")]
    DegreeMismatch { order: usize, expected: usize, actual: usize },
    #[error("subleading-coefficient check needs order >= 1, got {order}")]
    UnsupportedOrder { order: usize },
}

/// Which factorization shape an order falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    SpecialN0,
    SpecialN1,
    EvenGe2,
    OddGe3,
}

impl ParityClass {
    pub fn of(order: usize) -> ParityClass {
        match order {
            0 => ParityClass::SpecialN0,
            1 => ParityClass::SpecialN1,
            n if n % 2 == 0 => ParityClass::EvenGe2,
            _ => ParityClass::OddGe3,
        }
    }
}

/// Multiplicities of the mandated factors `n`, `(n+1)`, `(2n+1)` for a
/// class, plus the residual degree the class predicts.
fn class_shape(order: usize) -> (ParityClass, [u32; 3], usize) {
    match ParityClass::of(order) {
        ParityClass::SpecialN0 => (ParityClass::SpecialN0, [0, 0, 0], 1),
        ParityClass::SpecialN1 => (ParityClass::SpecialN1, [1, 1, 0], 0),
        ParityClass::EvenGe2 => (ParityClass::EvenGe2, [1, 1, 1], order - 2),
        ParityClass::OddGe3 => (ParityClass::OddGe3, [2, 2, 0], order - 3),
    }
}

fn factor_product(multiplicities: [u32; 3]) -> Polynomial {
    let bases = [
        Polynomial::from_int_coeffs(&[0, 1]),
        Polynomial::from_int_coeffs(&[1, 1]),
        Polynomial::from_int_coeffs(&[1, 2]),
    ];
    let mut product = Polynomial::one();
    for (base, &mult) in bases.iter().zip(&multiplicities) {
        for _ in 0..mult {
            product = &product * base;
        }
    }
    product
}

/// One order's factorization: mandated factors, primitive residual, positive
/// denominator, with `factors * residual / denominator` equal to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredForm {
    order: usize,
    parity_class: ParityClass,
    multiplicities: [u32; 3],
    residual: IntegerPolynomial,
    denominator: BigInt,
}

impl FactoredForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parity_class(&self) -> ParityClass {
        self.parity_class
    }

    /// Multiplicities of `n`, `(n+1)`, `(2n+1)` in that order.
    pub fn multiplicities(&self) -> [u32; 3] {
        self.multiplicities
    }

    pub fn residual(&self) -> &IntegerPolynomial {
        &self.residual
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// The mandated factor product as a polynomial.
    pub fn mandated_product(&self) -> Polynomial {
        factor_product(self.multiplicities)
    }

    /// Multiply the parts back together; must equal the polynomial this form
    /// was extracted from.
    pub fn reconstruct(&self) -> Polynomial {
        let scale = rational(BigInt::one(), self.denominator.clone())
            .expect("denominator is positive");
        (&self.mandated_product() * &self.residual.to_polynomial()).scale(&scale)
    }
}

fn factor_polynomial(p: &Polynomial, order: usize) -> Result<FactoredForm, FactorError> {
    let (parity_class, multiplicities, expected_degree) = class_shape(order);
    let quotient = p
        .exact_divide(&factor_product(multiplicities))
        .map_err(|_| FactorError::DivisibilityFailure { order })?;
    let split = quotient
        .extract_content()
        .map_err(|_| FactorError::DivisibilityFailure { order })?;
    // A content numerator other than 1 would mean no integer-denominator
    // form exists; lump it with divisibility since both falsify the shape.
    if !split.content.numer().is_one() {
        return Err(FactorError::DivisibilityFailure { order });
    }
    let actual = split
        .primitive
        .degree()
        .expect("primitive part of a nonzero polynomial");
    if actual != expected_degree {
        return Err(FactorError::DegreeMismatch {
            order,
            expected: expected_degree,
            actual,
        });
    }
    Ok(FactoredForm {
        order,
        parity_class,
        multiplicities,
        residual: split.primitive,
        denominator: split.content.denom().clone(),
    })
}

/// Factor one table entry into its parity-mandated shape.
pub fn structural_factor(table: &FaulhaberTable, order: usize) -> Result<FactoredForm, FactorError> {
    factor_polynomial(table.poly(order)?, order)
}

/// Outcome of the factorization check at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    DivisibilityFailure,
    DegreeMismatch { expected: usize, actual: usize },
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    /// Stable lowercase label used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::DivisibilityFailure => "divisibility_failure",
            CheckOutcome::DegreeMismatch { .. } => "degree_mismatch",
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::DegreeMismatch { expected, actual } => {
                write!(f, "degree_mismatch (expected {expected}, got {actual})")
            }
            other => write!(f, "{}", other.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationEntry {
    pub order: usize,
    pub outcome: CheckOutcome,
    pub elapsed: Duration,
}

/// Order-by-order results of a factorization sweep, ascending, one entry per
/// order in the requested range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    range: (usize, usize),
    entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    pub fn range(&self) -> (usize, usize) {
        self.range
    }

    pub fn entries(&self) -> &[VerificationEntry] {
        &self.entries
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_pass())
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationEntry> {
        self.entries.iter().filter(|e| !e.outcome.is_pass())
    }
}

/// Check every order in `lo..=hi`, recording one outcome per order.
///
/// A failure at one order is data, not a stop condition: the sweep always
/// covers the whole range so a single bad order cannot mask others.
pub fn verify_factorization_range(
    table: &FaulhaberTable,
    lo: usize,
    hi: usize,
) -> Result<VerificationReport, SeriesError> {
    if hi > table.max_order() {
        return Err(SeriesError::OrderOutOfRange {
            order: hi,
            max: table.max_order(),
        });
    }
    let mut entries = Vec::new();
    for order in lo..=hi {
        let start = Instant::now();
        let outcome = match structural_factor(table, order) {
            Ok(_) => CheckOutcome::Pass,
            Err(FactorError::DivisibilityFailure { .. }) => CheckOutcome::DivisibilityFailure,
            Err(FactorError::DegreeMismatch { expected, actual, .. }) => {
                CheckOutcome::DegreeMismatch { expected, actual }
            }
            Err(other) => unreachable!("bounds were checked: {other}"),
        };
        entries.push(VerificationEntry {
            order,
            outcome,
            elapsed: start.elapsed(),
        });
    }
    Ok(VerificationReport { range: (lo, hi), entries })
}

/// True iff the two top coefficients are exactly `1/(order+1)` and `1/2`.
pub fn asymptotic_check(table: &FaulhaberTable, order: usize) -> Result<bool, FactorError> {
    if order == 0 {
        return Err(FactorError::UnsupportedOrder { order });
    }
    let p = table.poly(order)?;
    let lead_ok = p.coeff(order + 1) == rational(1, order as i64 + 1).expect("nonzero");
    let sub_ok = p.coeff(order) == rational(1, 2).expect("nonzero");
    Ok(lead_ok && sub_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn coeffs(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn special_classes() {
        let table = FaulhaberTable::build(1);

        let f0 = structural_factor(&table, 0).unwrap();
        assert_eq!(f0.parity_class(), ParityClass::SpecialN0);
        assert_eq!(f0.multiplicities(), [0, 0, 0]);
        assert_eq!(f0.residual().coeffs(), coeffs(&[1, 1]));
        assert_eq!(f0.denominator(), &BigInt::from(1));

        let f1 = structural_factor(&table, 1).unwrap();
        assert_eq!(f1.parity_class(), ParityClass::SpecialN1);
        assert_eq!(f1.multiplicities(), [1, 1, 0]);
        assert!(f1.residual().is_one());
        assert_eq!(f1.denominator(), &BigInt::from(2));
    }

    #[test]
    fn even_class_examples() {
        let table = FaulhaberTable::build(4);

        let f2 = structural_factor(&table, 2).unwrap();
        assert_eq!(f2.parity_class(), ParityClass::EvenGe2);
        assert_eq!(f2.multiplicities(), [1, 1, 1]);
        assert!(f2.residual().is_one());
        assert_eq!(f2.denominator(), &BigInt::from(6));

        let f4 = structural_factor(&table, 4).unwrap();
        assert_eq!(f4.residual().coeffs(), coeffs(&[-1, 3, 3]));
        assert_eq!(f4.residual().to_string(), "3*n^2+3*n-1");
        assert_eq!(f4.denominator(), &BigInt::from(30));
    }

    #[test]
    fn odd_class_examples() {
        let table = FaulhaberTable::build(5);

        let f3 = structural_factor(&table, 3).unwrap();
        assert_eq!(f3.parity_class(), ParityClass::OddGe3);
        assert_eq!(f3.multiplicities(), [2, 2, 0]);
        assert!(f3.residual().is_one());
        assert_eq!(f3.denominator(), &BigInt::from(4));

        let f5 = structural_factor(&table, 5).unwrap();
        assert_eq!(f5.residual().coeffs(), coeffs(&[-1, 2, 2]));
        assert_eq!(f5.denominator(), &BigInt::from(12));
    }

    #[test]
    fn printed_denominators_low_orders() {
        let table = FaulhaberTable::build(12);
        let expected = [2, 6, 4, 30, 12, 42, 24, 90, 20, 66, 24, 2730];
        for (order, &den) in (1..=12).zip(&expected) {
            let form = structural_factor(&table, order).unwrap();
            assert_eq!(form.denominator(), &BigInt::from(den), "order {order}");
        }
    }

    #[test]
    fn reconstruction_and_primitivity_through_order_forty() {
        use num_integer::Integer;
        let table = FaulhaberTable::build(40);
        for order in 0..=40 {
            let form = structural_factor(&table, order).unwrap();
            assert_eq!(&form.reconstruct(), table.poly(order).unwrap(), "order {order}");
            assert!(form.residual().leading().unwrap() > &BigInt::zero(), "order {order}");
            let mut g = BigInt::zero();
            for c in form.residual().coeffs() {
                g = g.gcd(c);
            }
            assert!(g.is_one(), "order {order}");
        }
    }

    #[test]
    fn degree_law_through_order_forty() {
        let table = FaulhaberTable::build(40);
        for order in 2..=40 {
            let form = structural_factor(&table, order).unwrap();
            let expected = if order % 2 == 0 { order - 2 } else { order - 3 };
            assert_eq!(form.residual().degree(), Some(expected), "order {order}");
        }
    }

    #[test]
    fn corrupted_polynomials_are_findings_not_panics() {
        let table = FaulhaberTable::build(4);
        let s4 = table.poly(4).unwrap();

        // shifting by a constant destroys the root at 0
        let corrupted = s4 + &Polynomial::one();
        assert_eq!(
            factor_polynomial(&corrupted, 4),
            Err(FactorError::DivisibilityFailure { order: 4 })
        );

        // divisible, but residual degree 3 instead of the mandated 2
        let inflated = &factor_product([1, 1, 1]) * &Polynomial::from_int_coeffs(&[0, 0, 0, 1]);
        assert_eq!(
            factor_polynomial(&inflated, 4),
            Err(FactorError::DegreeMismatch { order: 4, expected: 2, actual: 3 })
        );
    }

    #[test]
    fn sweep_covers_every_order_in_ascending_order() {
        let table = FaulhaberTable::build(40);
        let report = verify_factorization_range(&table, 2, 40).unwrap();
        assert_eq!(report.range(), (2, 40));
        assert!(report.all_pass());
        assert_eq!(report.failures().count(), 0);
        let orders: Vec<usize> = report.entries().iter().map(|e| e.order).collect();
        assert_eq!(orders, (2..=40).collect::<Vec<_>>());
    }

    #[test]
    fn sweep_rejects_ranges_beyond_the_table() {
        let table = FaulhaberTable::build(10);
        assert_eq!(
            verify_factorization_range(&table, 2, 11).unwrap_err(),
            SeriesError::OrderOutOfRange { order: 11, max: 10 }
        );
    }

    #[test]
    fn asymptotic_coefficients() {
        let table = FaulhaberTable::build(40);
        assert!(asymptotic_check(&table, 1).unwrap());
        assert!(asymptotic_check(&table, 4).unwrap());
        for order in 1..=40 {
            assert!(asymptotic_check(&table, order).unwrap(), "order {order}");
        }
        assert_eq!(
            asymptotic_check(&table, 0).unwrap_err(),
            FactorError::UnsupportedOrder { order: 0 }
        );
        assert!(matches!(
            asymptotic_check(&table, 41),
            Err(FactorError::Series(SeriesError::OrderOutOfRange { .. }))
        ));
    }

    #[test]
    fn outcome_labels_are_stable() {
        assert_eq!(CheckOutcome::Pass.label(), "pass");
        assert_eq!(CheckOutcome::DivisibilityFailure.label(), "divisibility_failure");
        let mismatch = CheckOutcome::DegreeMismatch { expected: 2, actual: 3 };
        assert_eq!(mismatch.label(), "degree_mismatch");
        assert_eq!(mismatch.to_string(), "degree_mismatch (expected 2, got 3)");
    }
}
