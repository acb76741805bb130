//! Classes on a projectivisation `P(V) → B` of lines in a vector bundle.
//!
//! A [`FiberedClass`] is a polynomial `Σ h^i β_i` in the hyperplane class
//! `h = c_1(O(1))` with coefficients pulled back from the base. No
//! Grothendieck relation is imposed: integration goes through
//! `π_*(h^{s+j} · π^*β) = s_j(V) · β` (with `s = rk V - 1`), so
//! multiplication stays a plain convolution.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{twisted_chern, TruncatedAlgebra};
use crate::chern::BundleData;
use crate::error::{Error, Result};
use crate::kpoly::KPolynomial;
use crate::rational::{binom, Rational};
use crate::ring::{GradedClass, IntersectionRing};

/// `Σ_i h^i · coeffs[i]` on a projectivisation with fibre dimension
/// `fiber_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedClass {
    fiber_dim: usize,
    coeffs: BTreeMap<usize, GradedClass>,
}

impl FiberedClass {
    pub fn zero(fiber_dim: usize) -> Self {
        Self {
            fiber_dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(fiber_dim: usize, coeffs: impl IntoIterator<Item = (usize, GradedClass)>) -> Self {
        let mut out = Self::zero(fiber_dim);
        for (i, c) in coeffs {
            out.add_term(i, &c);
        }
        out
    }

    /// Pullback `π^*β`.
    pub fn lift(beta: &GradedClass, fiber_dim: usize) -> Self {
        Self::from_coeffs(fiber_dim, [(0, beta.clone())])
    }

    fn add_term(&mut self, power: usize, c: &GradedClass) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&power) {
            Some(existing) => existing + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&power);
        } else {
            self.coeffs.insert(power, sum);
        }
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `h^power`.
    pub fn coeff(&self, power: usize) -> GradedClass {
        self.coeffs.get(&power).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &GradedClass)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.fiber_dim, self.terms().map(|(i, b)| (i, b.scaled(c))))
    }

    pub fn add(&self, other: &FiberedClass) -> Self {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }
}

/// Classes on `P(V)` for some `V` of rank `fiber_dim + 1` over `base`.
///
/// Every class is truncated at total degree `fiber_dim + dim B`: anything
/// higher cannot reach the top degree of the total space.
#[derive(Clone, Copy, Debug)]
pub struct FiberedRing<'a> {
    base: &'a IntersectionRing,
    fiber_dim: usize,
}

impl<'a> FiberedRing<'a> {
    pub fn new(base: &'a IntersectionRing, fiber_dim: usize) -> Self {
        Self { base, fiber_dim }
    }

    /// The ring of `P(bundle)`.
    pub fn of_bundle(base: &'a IntersectionRing, bundle: &BundleData) -> Self {
        Self::new(base, bundle.rank() - 1)
    }

    pub fn base(&self) -> &'a IntersectionRing {
        self.base
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    /// Complex dimension of the total space.
    pub fn total_dim(&self) -> usize {
        self.fiber_dim + self.base.dim()
    }

    pub fn lift(&self, beta: &GradedClass) -> FiberedClass {
        FiberedClass::lift(beta, self.fiber_dim)
    }

    pub fn hyperplane(&self) -> FiberedClass {
        FiberedClass::from_coeffs(self.fiber_dim, [(1, self.base.one())])
    }

    fn check(&self, a: &FiberedClass) -> Result<()> {
        if a.fiber_dim != self.fiber_dim {
            return Err(Error::RingMismatch(format!(
                "class lives on a projectivisation of fibre dimension {}, expected {}",
                a.fiber_dim, self.fiber_dim
            )));
        }
        a.terms().try_for_each(|(_, c)| self.base.check(c))
    }

    fn truncate(&self, a: FiberedClass) -> FiberedClass {
        let cap = self.total_dim();
        FiberedClass::from_coeffs(
            self.fiber_dim,
            a.coeffs
                .into_iter()
                .filter(|(i, _)| *i <= cap)
                .map(|(i, c)| (i, c.truncated(cap - i))),
        )
    }

    /// Convolution in `h` with base-ring products of the coefficients.
    pub fn mul(&self, a: &FiberedClass, b: &FiberedClass) -> Result<FiberedClass> {
        self.check(a)?;
        self.check(b)?;
        let cap = self.total_dim();
        let mut out = FiberedClass::zero(self.fiber_dim);
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                if i + j > cap {
                    continue;
                }
                out.add_term(i + j, &self.base.mul(x, y)?);
            }
        }
        Ok(self.truncate(out))
    }

    /// `π_*`: the coefficient of `h^{s+j}` is multiplied by `s_j(bundle)`;
    /// powers below `s` push forward to zero.
    pub fn pushforward(&self, a: &FiberedClass, bundle: &BundleData) -> Result<GradedClass> {
        if bundle.rank() != self.fiber_dim + 1 {
            return Err(Error::RankMismatch {
                fiber_dim: self.fiber_dim,
                rank: bundle.rank(),
            });
        }
        self.check(a)?;
        let segre = bundle.segre_total(self.base)?;
        let mut out = GradedClass::zero();
        for (i, beta) in a.terms() {
            let Some(j) = i.checked_sub(self.fiber_dim) else {
                continue;
            };
            if j > self.base.dim() {
                continue;
            }
            out = &out + &self.base.mul(&segre.part(j), beta)?;
        }
        Ok(out)
    }

    /// `∫_{P(bundle)} a`.
    pub fn integrate(&self, a: &FiberedClass, bundle: &BundleData) -> Result<Rational> {
        Ok(self.base.integrate(&self.pushforward(a, bundle)?))
    }

    /// `c_1` of the total space of `P(bundle)`, restricted to this
    /// projectivisation: `rk(bundle)·h + c_1(B) + c_1(bundle)`.
    ///
    /// When this ring is `P(bundle)` itself this is the usual relative Euler
    /// sequence; for a sub-projectivisation `P(S) ⊂ P(E)` pass `E`.
    pub fn total_space_c1(&self, base_c1: &GradedClass, bundle: &BundleData) -> FiberedClass {
        let rank = Rational::from_integer((bundle.rank() as i64).into());
        self.hyperplane()
            .scaled(&rank)
            .add(&self.lift(&(base_c1 + &bundle.c1())))
    }

    /// Total Chern class of `O(1) ⊗ π^*V` for a bundle `V` on the base.
    pub fn twisted_total_chern(&self, bundle: &BundleData) -> Result<FiberedClass> {
        let chern: Vec<FiberedClass> = (0..=bundle.rank())
            .map(|i| self.lift(&bundle.c(i)))
            .collect();
        let components = twisted_chern(self, bundle.rank(), &chern, &self.hyperplane())?;
        Ok(components
            .iter()
            .fold(FiberedClass::zero(self.fiber_dim), |acc, c| acc.add(c)))
    }

    /// `(h + shift + k·L)^m`, collected by powers of `k`.
    pub fn adiabatic_power(&self, m: usize, polarization: &GradedClass, shift: &Rational) -> Result<KExpansion> {
        let mut terms = BTreeMap::new();
        let mut l_power = self.base.one();
        for a in 0..=m.min(self.base.dim()) {
            if a > 0 {
                l_power = self.base.mul(&l_power, polarization)?;
            }
            if l_power.is_zero() {
                break;
            }
            // (h + shift)^{m-a} = Σ_b C(m-a, b) shift^{m-a-b} h^b
            let rest = m - a;
            let mut class = FiberedClass::zero(self.fiber_dim);
            for b in 0..=rest {
                let coeff = binom(rest as i64, b as i64) * pow_rational(shift, rest - b);
                if coeff.is_zero() {
                    continue;
                }
                class.add_term(b, &l_power.scaled(&coeff));
            }
            let class = self.truncate(class.scaled(&binom(m as i64, a as i64)));
            if !class.is_zero() {
                terms.insert(a as u32, class);
            }
        }
        Ok(KExpansion {
            fiber_dim: self.fiber_dim,
            terms,
        })
    }

    /// `Σ_p k^p ∫_{P(bundle)} classes[p]`.
    pub fn integrate_total(&self, classes: &KExpansion, bundle: &BundleData) -> Result<KPolynomial> {
        let mut out = Vec::new();
        for (p, class) in classes.terms() {
            out.push((p, self.integrate(class, bundle)?));
        }
        Ok(KPolynomial::from_coeffs(out))
    }
}

fn pow_rational(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::from_integer(1.into()), |acc, _| acc * x)
}

impl TruncatedAlgebra for FiberedRing<'_> {
    type Elem = FiberedClass;

    fn zero(&self) -> FiberedClass {
        FiberedClass::zero(self.fiber_dim)
    }

    fn one(&self) -> FiberedClass {
        self.lift(&self.base.one())
    }

    fn add(&self, a: &FiberedClass, b: &FiberedClass) -> FiberedClass {
        a.add(b)
    }

    fn scale(&self, a: &FiberedClass, c: &Rational) -> FiberedClass {
        a.scaled(c)
    }

    fn mul(&self, a: &FiberedClass, b: &FiberedClass) -> Result<FiberedClass> {
        FiberedRing::mul(self, a, b)
    }

    fn constant_term(&self, a: &FiberedClass) -> Rational {
        a.coeff(0).constant_term()
    }

    fn nilpotency_bound(&self) -> usize {
        self.total_dim()
    }
}

/// A class depending polynomially on the formal parameter `k`, stored as
/// `k`-power → [`FiberedClass`]. `k` never enters the ring itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KExpansion {
    fiber_dim: usize,
    terms: BTreeMap<u32, FiberedClass>,
}

impl KExpansion {
    pub fn constant(class: FiberedClass) -> Self {
        let fiber_dim = class.fiber_dim();
        let mut terms = BTreeMap::new();
        if !class.is_zero() {
            terms.insert(0, class);
        }
        Self { fiber_dim, terms }
    }

    pub fn get(&self, power: u32) -> FiberedClass {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(|| FiberedClass::zero(self.fiber_dim))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &FiberedClass)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    /// Multiplies every `k`-coefficient by a `k`-independent class.
    pub fn mul_class(&self, ring: &FiberedRing<'_>, class: &FiberedClass) -> Result<KExpansion> {
        let mut terms = BTreeMap::new();
        for (p, c) in self.terms() {
            let product = ring.mul(c, class)?;
            if !product.is_zero() {
                terms.insert(p, product);
            }
        }
        Ok(KExpansion {
            fiber_dim: self.fiber_dim,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn blowup() -> IntersectionRing {
        IntersectionRing::surface(&["H", "D"], &[vec![rat(1), rat(0)], vec![rat(0), rat(-1)]])
            .unwrap()
    }

    fn div(ring: &IntersectionRing, h: i64, d: i64) -> GradedClass {
        ring.combination(&[("H", rat(h)), ("D", rat(d))]).unwrap()
    }

    fn extension(ring: &IntersectionRing) -> BundleData {
        let s = BundleData::from_classes(ring, 2, &[GradedClass::zero(), ring.point()]).unwrap();
        s.whitney_sum(&BundleData::line_bundle(ring, &div(ring, 1, -3)).unwrap(), ring)
            .unwrap()
    }

    #[test]
    fn lift_is_degree_zero_in_h() {
        let ring = blowup();
        let l = div(&ring, 3, -1);
        let lifted = FiberedClass::lift(&l, 2);
        assert_eq!(lifted.coeff(0), l);
        assert!(lifted.coeff(1).is_zero());
        assert_eq!(FiberedClass::lift(&ring.one(), 2), FiberedRing::new(&ring, 2).one());
        assert_eq!(FiberedClass::lift(&ring.point(), 1).coeff(0), ring.point());
    }

    #[test]
    fn hyperplane_products() {
        let ring = blowup();
        let fr = FiberedRing::new(&ring, 1);
        let h = fr.hyperplane();
        let h2 = fr.mul(&h, &h).unwrap();
        assert_eq!(h2, FiberedClass::from_coeffs(1, [(2, ring.one())]));
        let l = fr.lift(&div(&ring, 3, -1));
        let x = h.add(&l);
        let sq = fr.mul(&x, &x).unwrap();
        let expected = FiberedClass::from_coeffs(
            1,
            [
                (2, ring.one()),
                (1, div(&ring, 6, -2)),
                (0, ring.point().scaled(&rat(8))),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(fr.mul(&x, &fr.one()).unwrap(), x);
    }

    #[test]
    fn mismatched_fiber_dimensions() {
        let ring = blowup();
        let fr = FiberedRing::new(&ring, 1);
        let other = FiberedRing::new(&ring, 2).hyperplane();
        assert!(matches!(fr.mul(&fr.hyperplane(), &other), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn pushforward_of_hyperplane_powers() {
        let ring = blowup();
        let e = extension(&ring);
        let fr = FiberedRing::of_bundle(&ring, &e);
        let s = fr.fiber_dim();
        let hs = FiberedClass::from_coeffs(s, [(s, ring.one())]);
        assert_eq!(fr.pushforward(&hs, &e).unwrap(), ring.one());
        let hs1 = FiberedClass::from_coeffs(s, [(s + 1, ring.one())]);
        assert_eq!(fr.pushforward(&hs1, &e).unwrap(), div(&ring, -1, 3));
        let low = FiberedClass::from_coeffs(s, [(s - 1, div(&ring, 1, 1))]);
        assert!(fr.pushforward(&low, &e).unwrap().is_zero());
    }

    #[test]
    fn pushforward_rank_mismatch() {
        let ring = blowup();
        let e = extension(&ring);
        let fr = FiberedRing::new(&ring, 1);
        assert_eq!(
            fr.pushforward(&fr.hyperplane(), &e),
            Err(Error::RankMismatch { fiber_dim: 1, rank: 3 })
        );
    }

    #[test]
    fn total_space_first_chern_class() {
        let ring = blowup();
        let e = extension(&ring);
        let fr = FiberedRing::of_bundle(&ring, &e);
        let c1x = fr.total_space_c1(&div(&ring, 3, -1), &e);
        assert_eq!(c1x, FiberedClass::from_coeffs(2, [(1, ring.one().scaled(&rat(3))), (0, div(&ring, 4, -4))]));

        let p2 = IntersectionRing::surface(&["H"], &[vec![rat(1)]]).unwrap();
        let c1b = p2.basis_class("H").unwrap().scaled(&rat(3));
        let o = BundleData::trivial(&p2, 1).unwrap();
        let c1 = FiberedRing::of_bundle(&p2, &o).total_space_c1(&c1b, &o);
        assert_eq!(c1, FiberedClass::from_coeffs(0, [(1, p2.one()), (0, c1b.clone())]));
        let o3 = BundleData::trivial(&p2, 3).unwrap();
        let c1 = FiberedRing::of_bundle(&p2, &o3).total_space_c1(&c1b, &o3);
        assert_eq!(c1, FiberedClass::from_coeffs(2, [(1, p2.one().scaled(&rat(3))), (0, c1b)]));
    }

    #[test]
    fn adiabatic_power_expansions() {
        let ring = blowup();
        let fr = FiberedRing::new(&ring, 2);
        let l = div(&ring, 3, -1);
        let h = fr.hyperplane();
        let one = fr.one();

        let first = fr.adiabatic_power(1, &l, &rat(0)).unwrap();
        assert_eq!(first.get(0), h);
        assert_eq!(first.get(1), fr.lift(&l));

        let second = fr.adiabatic_power(2, &l, &rat(1)).unwrap();
        let h2 = fr.mul(&h, &h).unwrap();
        assert_eq!(second.get(0), h2.add(&h.scaled(&rat(2))).add(&one));
        let two_hl = fr.mul(&h, &fr.lift(&l)).unwrap().scaled(&rat(2));
        assert_eq!(second.get(1), two_hl.add(&fr.lift(&l).scaled(&rat(2))));
        assert_eq!(second.get(2), fr.lift(&ring.mul(&l, &l).unwrap()));

        let zeroth = fr.adiabatic_power(0, &l, &rat(1)).unwrap();
        assert_eq!(zeroth.get(0), one);
        assert_eq!(zeroth.terms().count(), 1);
    }

    #[test]
    fn volume_leading_coefficients() {
        let ring = blowup();
        let e = extension(&ring);
        let fr = FiberedRing::of_bundle(&ring, &e);
        let l = div(&ring, 3, -1);
        let vol = fr
            .integrate_total(&fr.adiabatic_power(4, &l, &rat(0)).unwrap(), &e)
            .unwrap();
        // 6 L^2 = 48, -4 c_1(E)·L = 0
        assert_eq!(vol.coeff(2), rat(48));
        assert_eq!(vol.coeff(1), rat(0));
        let constant = KExpansion::constant(fr.one());
        assert!(fr.integrate_total(&constant, &e).unwrap().is_zero());
    }

    #[test]
    fn twisted_chern_of_line_twist() {
        let ring = blowup();
        let fr = FiberedRing::new(&ring, 1);
        let q = BundleData::line_bundle(&ring, &div(&ring, 1, -3)).unwrap();
        let c = fr.twisted_total_chern(&q).unwrap();
        let expected = fr.one().add(&fr.hyperplane()).add(&fr.lift(&div(&ring, 1, -3)));
        assert_eq!(c, expected);
        // inverse multiplies back to one
        let s = fr.invert(&c).unwrap();
        assert_eq!(fr.mul(&s, &c).unwrap(), fr.one());
    }
}
