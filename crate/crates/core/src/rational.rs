//! Arbitrary-precision rationals and a few helpers used across the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)` extended by zero: it vanishes for `k < 0`
/// and for `0 <= n < k`.
pub fn binom(n: i64, k: i64) -> Rational {
    if k < 0 || (n >= 0 && k > n) {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * rat(n - i) / rat(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * rat(i as i64))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let parsed: Rational = text.parse().ok()?;
    Some(parsed)
}

/// Sign as -1, 0 or 1.
pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x > &Rational::zero() {
        1
    } else {
        -1
    }
}
