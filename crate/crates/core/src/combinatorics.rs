//! Exact integer combinatorics: factorials, binomial coefficients, and the
//! beta function at positive integer arguments.
//!
//! Every closed-form coefficient in this crate is a ratio of these
//! quantities, so they are computed with arbitrary-precision integers and
//! never through floating-point factorials.

use num_bigint::BigInt;
use num_rational::BigRational;

/// `m!` as an exact integer.
pub fn factorial(m: usize) -> BigInt {
    (2..=m as u64).fold(BigInt::from(1), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Ratio of two binomial coefficients as an exact rational.
pub fn binomial_ratio(num: (usize, usize), den: (usize, usize)) -> BigRational {
    BigRational::new(binomial(num.0, num.1), binomial(den.0, den.1))
}

/// Beta function `B(a, b) = (a-1)! (b-1)! / (a+b-1)!` for integers `a, b >= 1`.
pub fn beta(a: usize, b: usize) -> BigRational {
    assert!(a >= 1 && b >= 1, "beta requires positive integer arguments");
    BigRational::new(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))
}
