//! Operations shared by the base ring and the ring of classes on a
//! projectivisation: both are commutative graded algebras in which every
//! element of positive degree is nilpotent.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{binom, Rational};

/// A commutative graded Q-algebra whose positive-degree part is nilpotent of
/// bounded order.
pub trait TruncatedAlgebra {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// Degree-0 part of `a` as a scalar.
    fn constant_term(&self, a: &Self::Elem) -> Rational;

    /// Any product of more than this many positive-degree elements vanishes.
    fn nilpotency_bound(&self) -> usize;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &-Rational::from_integer(1.into())))
    }

    fn pow(&self, a: &Self::Elem, exp: usize) -> Result<Self::Elem> {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Inverse of an element with non-zero constant term, by the finite
    /// geometric series `a0^{-1} Σ (-x/a0)^i` where `x = a - a0`.
    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let a0 = self.constant_term(a);
        if a0.is_zero() {
            return Err(Error::InvalidInput(
                "cannot invert a class with vanishing degree-0 part".into(),
            ));
        }
        let inv0 = a0.recip();
        let nilpotent = self.sub(a, &self.scale(&self.one(), &a0));
        let step = self.scale(&nilpotent, &-inv0.clone());
        let mut term = self.one();
        let mut acc = self.one();
        for _ in 0..self.nilpotency_bound() {
            term = self.mul(&term, &step)?;
            acc = self.add(&acc, &term);
        }
        Ok(self.scale(&acc, &inv0))
    }
}

/// Total Chern class of `E ⊗ M` for a bundle of the given rank with Chern
/// classes `chern[i] = c_i(E)` (missing entries are zero) and a divisor `m`:
/// `c_k(E ⊗ M) = Σ_i C(rank - i, k - i) c_i(E) m^{k-i}`.
///
/// Returns the components `c_0, ..., c_rank`.
pub fn twisted_chern<A: TruncatedAlgebra>(
    alg: &A,
    rank: usize,
    chern: &[A::Elem],
    m: &A::Elem,
) -> Result<Vec<A::Elem>> {
    let mut m_powers = vec![alg.one()];
    for i in 1..=rank {
        let next = alg.mul(&m_powers[i - 1], m)?;
        m_powers.push(next);
    }
    let mut out = Vec::with_capacity(rank + 1);
    for k in 0..=rank {
        let mut ck = alg.zero();
        for (i, ci) in chern.iter().enumerate().take(k + 1) {
            let coeff = binom((rank - i) as i64, (k - i) as i64);
            if coeff.is_zero() {
                continue;
            }
            let term = alg.mul(ci, &m_powers[k - i])?;
            ck = alg.add(&ck, &alg.scale(&term, &coeff));
        }
        out.push(ck);
    }
    Ok(out)
}
