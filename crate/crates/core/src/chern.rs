//! Characteristic classes of bundles on the base.

use crate::algebra::{twisted_chern, TruncatedAlgebra};
use crate::error::{Error, Result};
use crate::rational::{frac, rat, Rational};
use crate::ring::{GradedClass, IntersectionRing};

/// A vector bundle on the base, remembered only through its rank and total
/// Chern class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    rank: usize,
    total_chern: GradedClass,
}

impl BundleData {
    /// Validates that `total_chern` starts with 1 and has no component above
    /// `min(rank, dim)`.
    pub fn new(ring: &IntersectionRing, rank: usize, total_chern: GradedClass) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidBundle("rank must be positive".into()));
        }
        ring.check(&total_chern)?;
        if total_chern.part(0) != ring.one() {
            return Err(Error::InvalidBundle(
                "total Chern class must have degree-0 part equal to 1".into(),
            ));
        }
        let cap = rank.min(ring.dim());
        if total_chern.max_degree().is_some_and(|d| d > cap) {
            return Err(Error::InvalidBundle(format!(
                "rank-{rank} bundle cannot have Chern classes above degree {cap}"
            )));
        }
        Ok(Self { rank, total_chern })
    }

    /// Bundle with `c_i = classes[i - 1]`; each class must be homogeneous of
    /// degree `i`.
    pub fn from_classes(ring: &IntersectionRing, rank: usize, classes: &[GradedClass]) -> Result<Self> {
        let mut total = ring.one();
        for (i, class) in classes.iter().enumerate() {
            if !class.is_homogeneous_of(i + 1) {
                return Err(Error::InvalidBundle(format!("c_{} is not of degree {}", i + 1, i + 1)));
            }
            total = &total + class;
        }
        Self::new(ring, rank, total)
    }

    pub fn trivial(ring: &IntersectionRing, rank: usize) -> Result<Self> {
        Self::new(ring, rank, ring.one())
    }

    pub fn line_bundle(ring: &IntersectionRing, c1: &GradedClass) -> Result<Self> {
        if !c1.is_homogeneous_of(1) {
            return Err(Error::NonDivisorTwist);
        }
        Self::new(ring, 1, &ring.one() + c1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total_chern(&self) -> &GradedClass {
        &self.total_chern
    }

    /// The `i`-th Chern class.
    pub fn c(&self, i: usize) -> GradedClass {
        self.total_chern.part(i)
    }

    pub fn c1(&self) -> GradedClass {
        self.c(1)
    }

    /// `c(A ⊕ B) = c(A) c(B)`.
    pub fn whitney_sum(&self, other: &BundleData, ring: &IntersectionRing) -> Result<BundleData> {
        let total = ring.mul(&self.total_chern, &other.total_chern)?;
        Self::new(ring, self.rank + other.rank, total)
    }

    /// `c_i(E*) = (-1)^i c_i(E)`.
    pub fn dual(&self) -> BundleData {
        let total = GradedClass::from_components(self.total_chern.components().map(|(d, v)| {
            let flip = d % 2 == 1;
            (d, v.iter().map(|c| if flip { -c } else { c.clone() }).collect())
        }));
        Self {
            rank: self.rank,
            total_chern: total,
        }
    }

    /// Chern classes of `E ⊗ M` for a line bundle with `c_1(M) = m`.
    pub fn tensor_by_line(&self, m: &GradedClass, ring: &IntersectionRing) -> Result<BundleData> {
        if !m.is_homogeneous_of(1) {
            return Err(Error::NonDivisorTwist);
        }
        ring.check(m)?;
        let chern: Vec<GradedClass> = (0..=self.rank).map(|i| self.c(i)).collect();
        let twisted = twisted_chern(ring, self.rank, &chern, m)?;
        let total = twisted
            .iter()
            .fold(GradedClass::zero(), |acc, ck| &acc + ck)
            .truncated(ring.dim());
        Self::new(ring, self.rank, total)
    }

    /// Total Segre class `s(E) = c(E)^{-1}`.
    pub fn segre_total(&self, ring: &IntersectionRing) -> Result<GradedClass> {
        ring.invert(&self.total_chern)
    }

    /// `μ_L(E) = c_1(E)·L^{n-1} / rk E`.
    pub fn slope(&self, polarization: &GradedClass, ring: &IntersectionRing) -> Result<Rational> {
        if !polarization.is_homogeneous_of(1) {
            return Err(Error::InvalidInput("polarization must be a divisor class".into()));
        }
        let power = ring.pow(polarization, ring.dim() - 1)?;
        let degree = ring.integrate(&ring.mul(&self.c1(), &power)?);
        Ok(degree / rat(self.rank as i64))
    }

    /// Chern character up to degree 2, as `(ch_0, ch_1, ch_2)`.
    fn chern_character_surface(&self, ring: &IntersectionRing) -> Result<(Rational, GradedClass, GradedClass)> {
        let c1 = self.c1();
        let c1_sq = ring.mul(&c1, &c1)?;
        let ch2 = (&c1_sq - &self.c(2).scaled(&rat(2))).scaled(&frac(1, 2));
        Ok((rat(self.rank as i64), c1, ch2))
    }

    /// `χ(B, E)` on a surface by Hirzebruch-Riemann-Roch:
    /// `∫ ch_2(E) + ½ ∫ c_1(E)·c_1(B) + rk(E)·(1/12)·∫(c_1(B)² + c_2(B))`.
    ///
    /// `c1sq_plus_c2` is the characteristic number `∫(c_1(B)² + c_2(B))`.
    pub fn euler_characteristic_surface(
        &self,
        c1_base: &GradedClass,
        c1sq_plus_c2: &Rational,
        ring: &IntersectionRing,
    ) -> Result<Rational> {
        if ring.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                found: ring.dim(),
            });
        }
        let (rank, c1, ch2) = self.chern_character_surface(ring)?;
        let mixed = ring.integrate(&ring.mul(&c1, c1_base)?);
        Ok(ring.integrate(&ch2) + mixed * frac(1, 2) + rank * c1sq_plus_c2 * frac(1, 12))
    }

    /// `E ⊗ F` on a base of dimension at most 2, via multiplicativity of the
    /// Chern character.
    pub fn tensor_product(&self, other: &BundleData, ring: &IntersectionRing) -> Result<BundleData> {
        if ring.dim() > 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                found: ring.dim(),
            });
        }
        let (r1, a1, a2) = self.chern_character_surface(ring)?;
        let (r2, b1, b2) = other.chern_character_surface(ring)?;
        let c1 = &a1.scaled(&r2) + &b1.scaled(&r1);
        let ch2 = &(&a2.scaled(&r2) + &b2.scaled(&r1)) + &ring.mul(&a1, &b1)?;
        // c_2 = c_1²/2 - ch_2
        let c2 = &ring.mul(&c1, &c1)?.scaled(&frac(1, 2)) - &ch2;
        let rank = self.rank * other.rank;
        let total = (&(&ring.one() + &c1) + &c2).truncated(rank.min(ring.dim()));
        Self::new(ring, rank, total)
    }
}

/// `χ` together with `h¹ = -χ` when the caller asserts `h⁰ = h² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstCohomology {
    pub euler_characteristic: Rational,
    pub h1: Option<Rational>,
    pub assumes_vanishing: bool,
}

impl FirstCohomology {
    pub fn from_euler_characteristic(chi: Rational, assume_vanishing_h0_h2: bool) -> Self {
        Self {
            h1: assume_vanishing_h0_h2.then(|| -chi.clone()),
            euler_characteristic: chi,
            assumes_vanishing: assume_vanishing_h0_h2,
        }
    }
}
