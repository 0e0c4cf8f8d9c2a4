//! Exact power-sum polynomials `s(n, N) = 1^N + 2^N + ... + n^N`.
//!
//! The polynomials are built by a Bernoulli-free recursion over exact
//! rationals, cross-checked against two independent oracles (direct
//! summation and the classical Bernoulli-number closed form), factored into
//! the parity-mandated product `n(n+1)(2n+1) * P(n)` (even order) or
//! `n^2(n+1)^2 * P(n)` (odd order), and rendered in canonical expanded,
//! factored, and JSON forms that are deterministic down to the byte.

pub mod bench;
pub mod exact;
pub mod factor;
pub mod poly;
pub mod render;
pub mod series;

pub use exact::BinomialCache;
pub use factor::{structural_factor, verify_factorization_range, FactoredForm, VerificationReport};
pub use poly::{IntegerPolynomial, Polynomial};
pub use render::{factored_text, PolynomialDocument};
pub use series::{power_sum_bernoulli, power_sum_direct, BernoulliCache, FaulhaberTable};
