//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored ascending by power with a trailing nonzero
//! invariant; the zero polynomial is the empty coefficient list. The variable
//! is always called `n` in rendered output. Degrees stay small (at most a few
//! hundred) so schoolbook multiplication and plain long division are the
//! right tools; exactness is the point, not asymptotics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{rational_text, BinomialCache};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("zero polynomial has no content decomposition")]
    ZeroPolynomial,
}

/// Univariate polynomial in `n` over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![BigRational::one()] }
    }

    /// Build from ascending coefficients, trimming trailing zeros into the
    /// canonical form.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Convenience constructor from small integer coefficients, ascending.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `c * n^power`.
    pub fn monomial(coeff: BigRational, power: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = coeff;
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `n^power` (zero beyond the stored tail).
    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Every coefficient multiplied by `c`, exactly.
    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact Horner evaluation at `x`.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `(n + shift)^power` with exact binomial coefficients.
    pub fn binomial_expand(shift: i64, power: usize, cache: &mut BinomialCache) -> Polynomial {
        cache.ensure_rows(power);
        let shift = BigInt::from(shift);
        let mut coeffs = Vec::with_capacity(power + 1);
        for i in 0..=power {
            let c = cache.get(power, i) * shift.pow((power - i) as u32);
            coeffs.push(BigRational::from_integer(c));
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Substitute `n + shift` for `n`: returns `p(n + shift)`.
    pub fn compose_shift(&self, shift: i64, cache: &mut BinomialCache) -> Polynomial {
        let mut result = Polynomial::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Polynomial::binomial_expand(shift, i, cache).scale(c);
            result = &result + &term;
        }
        result
    }

    /// Long division: `self = quotient * divisor + remainder` with
    /// `deg(remainder) < deg(divisor)`. The divisor need not be monic;
    /// rational coefficients make the leading-coefficient division exact.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let d_deg = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let s_deg = match self.degree() {
            Some(d) => d,
            None => return Ok((Polynomial::zero(), Polynomial::zero())),
        };
        if s_deg < d_deg {
            return Ok((Polynomial::zero(), self.clone()));
        }

        let lc = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); s_deg - d_deg + 1];
        for i in (0..quot.len()).rev() {
            let idx = i + d_deg;
            if idx >= rem.len() || rem[idx].is_zero() {
                continue;
            }
            let q = &rem[idx] / lc;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                let t = dj * &q;
                rem[i + j] = &rem[i + j] - &t;
            }
            quot[i] = q;
        }
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem)))
    }

    /// Division that must leave no remainder. A nonzero remainder is a
    /// meaningful negative result for the factorization checker, so it comes
    /// back as `PolyError::NotDivisible` rather than a panic.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(q)
    }

    /// Split into rational content times primitive integer part, with
    /// `content * primitive == self` exactly.
    pub fn extract_content(&self) -> Result<ContentSplit, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().expect("nonzero polynomial").is_negative() {
            g = -g;
        }
        let primitive = IntegerPolynomial {
            coeffs: ints.iter().map(|v| v / &g).collect(),
        };
        Ok(ContentSplit {
            content: BigRational::new(g, den_lcm),
            primitive,
        })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Canonical expanded rendering, descending powers with spaced signs:
/// `n^5/5 + n^4/2 + n^3/3 - n/30`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", term_text(&c.abs(), i))?;
        }
        Ok(())
    }
}

fn power_text(power: usize) -> String {
    match power {
        1 => "n".to_string(),
        p => format!("n^{p}"),
    }
}

// |c| * n^power with c already nonnegative
fn term_text(c: &BigRational, power: usize) -> String {
    if power == 0 {
        return rational_text(c);
    }
    let stem = power_text(power);
    if c.is_one() {
        stem
    } else if c.denom().is_one() {
        format!("{}*{}", c.numer(), stem)
    } else if c.numer().is_one() {
        format!("{}/{}", stem, c.denom())
    } else {
        format!("{}*{}/{}", c.numer(), stem, c.denom())
    }
}

/// Primitive integer polynomial: coefficient gcd 1, positive leading
/// coefficient, ascending storage like [`Polynomial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs(
            self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        )
    }
}

/// Compact rendering used inside factored forms, descending powers without
/// spaces: `3*n^2+3*n-1`.
impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", power_text(i))?;
            } else {
                write!(f, "{}*{}", a, power_text(i))?;
            }
        }
        Ok(())
    }
}

/// Result of [`Polynomial::extract_content`]: `content * primitive == input`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentSplit {
    pub content: BigRational,
    pub primitive: IntegerPolynomial,
}
