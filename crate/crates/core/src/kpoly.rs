//! Polynomials in the adiabatic parameter `k` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `Σ c_p k^p`; only non-zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl KPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(power: u32, coeff: Rational) -> Self {
        Self::from_coeffs([(power, coeff)])
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in coeffs {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, power: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `k^power` (zero if absent).
    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Highest non-zero term as `(power, coefficient)`.
    pub fn leading_term(&self) -> Option<(u32, &Rational)> {
        self.coeffs.iter().next_back().map(|(p, c)| (*p, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(p, x)| (*p, x * c)))
    }

    /// Coefficients of `k^top, k^{top-1}, ..., k^0`.
    pub fn descending(&self, top: u32) -> Vec<Rational> {
        (0..=top).rev().map(|p| self.coeff(p)).collect()
    }
}

impl Add<&KPolynomial> for &KPolynomial {
    type Output = KPolynomial;
    fn add(self, rhs: &KPolynomial) -> KPolynomial {
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_term(*p, c.clone());
        }
        out
    }
}

impl Neg for &KPolynomial {
    type Output = KPolynomial;
    fn neg(self) -> KPolynomial {
        KPolynomial::from_coeffs(self.coeffs.iter().map(|(p, c)| (*p, -c)))
    }
}

impl Sub<&KPolynomial> for &KPolynomial {
    type Output = KPolynomial;
    fn sub(self, rhs: &KPolynomial) -> KPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&KPolynomial> for &KPolynomial {
    type Output = KPolynomial;
    fn mul(self, rhs: &KPolynomial) -> KPolynomial {
        let mut out = KPolynomial::zero();
        for (p, a) in &self.coeffs {
            for (q, b) in &rhs.coeffs {
                out.add_term(p + q, a * b);
            }
        }
        out
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if *p == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if a.is_integer() {
                if !a.is_one() {
                    write!(f, "{a}·")?;
                }
            } else {
                write!(f, "({a})·")?;
            }
            match p {
                1 => write!(f, "k")?,
                _ => write!(f, "k^{p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn arithmetic() {
        let a = KPolynomial::from_coeffs([(0, rat(1)), (1, rat(2))]);
        let b = KPolynomial::from_coeffs([(0, rat(-1)), (1, rat(1))]);
        // (1 + 2k)(k - 1) = 2k^2 - k - 1
        let prod = &a * &b;
        assert_eq!(prod, KPolynomial::from_coeffs([(2, rat(2)), (1, rat(-1)), (0, rat(-1))]));
        assert_eq!(prod.degree(), Some(2));
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &b).coeff(1), rat(3));
        assert_eq!((&a + &b).coeff(0), rat(0));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = KPolynomial::from_coeffs([(3, rat(0)), (1, frac(1, 2)), (1, frac(-1, 2))]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p.leading_term(), None);
    }

    #[test]
    fn descending_coefficients() {
        let p = KPolynomial::from_coeffs([(2, frac(-124, 3)), (0, rat(5))]);
        assert_eq!(p.descending(4), vec![rat(0), rat(0), frac(-124, 3), rat(0), rat(5)]);
        assert_eq!(p.to_string(), "-(124/3)·k^2 + 5");
        let q = KPolynomial::from_coeffs([(3, rat(1)), (1, rat(-2)), (0, frac(-1, 2))]);
        assert_eq!(q.to_string(), "k^3 - 2·k - 1/2");
    }
}
