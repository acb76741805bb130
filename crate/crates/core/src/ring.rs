//! Graded intersection ring of the base.
//!
//! The ring is presented by an explicit basis in each degree `0..=n`, the
//! products of basis classes as rational combinations, and an integration
//! functional on the top degree. Degree 0 is spanned by `1`; the top degree
//! contains the point class `pt` with `∫ pt = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const UNIT_NAME: &str = "1";
pub const POINT_NAME: &str = "pt";

/// Position of a basis class: its degree and index within that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub degree: usize,
    pub index: usize,
}

impl BasisIndex {
    pub fn new(degree: usize, index: usize) -> Self {
        Self { degree, index }
    }
}

/// A possibly inhomogeneous class: for each degree, the coefficient vector
/// over that degree's basis. Degrees whose vector is zero are not stored, so
/// structural equality is equality of classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedClass {
    components: BTreeMap<usize, Vec<Rational>>,
}

impl GradedClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A multiple of the unit.
    pub fn scalar(c: Rational) -> Self {
        Self::from_components([(0, vec![c])])
    }

    pub fn from_components(components: impl IntoIterator<Item = (usize, Vec<Rational>)>) -> Self {
        let mut class = Self {
            components: components.into_iter().collect(),
        };
        class.normalize();
        class
    }

    /// Homogeneous class of degree `degree` with the given coefficients.
    pub fn homogeneous(degree: usize, coeffs: Vec<Rational>) -> Self {
        Self::from_components([(degree, coeffs)])
    }

    fn normalize(&mut self) {
        self.components.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, degree: usize) -> Option<&[Rational]> {
        self.components.get(&degree).map(Vec::as_slice)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &[Rational])> {
        self.components.iter().map(|(d, v)| (*d, v.as_slice()))
    }

    /// The degree-`degree` part of the class.
    pub fn part(&self, degree: usize) -> GradedClass {
        match self.components.get(&degree) {
            Some(v) => Self::homogeneous(degree, v.clone()),
            None => Self::zero(),
        }
    }

    /// Coefficient of the unit.
    pub fn constant_term(&self) -> Rational {
        self.components
            .get(&0)
            .and_then(|v| v.first().cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// True when the class is zero or lives entirely in `degree`.
    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.components.keys().all(|&d| d == degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    /// Drops every component of degree above `max_degree`.
    pub fn truncated(mut self, max_degree: usize) -> Self {
        self.components.retain(|&d, _| d <= max_degree);
        self
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_components(
            self.components
                .iter()
                .map(|(d, v)| (*d, v.iter().map(|x| x * c).collect())),
        )
    }
}

impl Add<&GradedClass> for &GradedClass {
    type Output = GradedClass;

    fn add(self, rhs: &GradedClass) -> GradedClass {
        let mut out = self.components.clone();
        for (d, v) in &rhs.components {
            match out.get_mut(d) {
                Some(acc) => {
                    assert_eq!(acc.len(), v.len(), "adding classes of different rings");
                    for (a, b) in acc.iter_mut().zip(v) {
                        *a += b;
                    }
                }
                None => {
                    out.insert(*d, v.clone());
                }
            }
        }
        GradedClass::from_components(out)
    }
}

impl Add for GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: GradedClass) -> GradedClass {
        &self + &rhs
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        self.scaled(&-Rational::one())
    }
}

impl Neg for GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        -&self
    }
}

impl Sub<&GradedClass> for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self + &(-rhs)
    }
}

impl Sub for GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: GradedClass) -> GradedClass {
        &self - &rhs
    }
}

impl Mul<&Rational> for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &Rational) -> GradedClass {
        self.scaled(rhs)
    }
}

/// The intersection ring of the base `B`, of complex dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRing {
    dim: usize,
    basis: Vec<Vec<String>>,
    /// Products of positive-degree basis classes, stored for both orders.
    products: HashMap<(BasisIndex, BasisIndex), Vec<Rational>>,
    top_degrees: Vec<Rational>,
    names: HashMap<String, BasisIndex>,
}

impl IntersectionRing {
    /// Builds a ring from structure constants.
    ///
    /// `products` must give, for every pair of positive-degree basis classes
    /// whose degrees sum to at most `dim`, their product over the basis of the
    /// sum degree. Supplying only one ordering of a pair is enough. Products
    /// with the unit are implicit. `top_degrees[i]` is `∫` of the `i`-th
    /// top-degree class.
    pub fn new(
        dim: usize,
        basis: Vec<Vec<String>>,
        products: impl IntoIterator<Item = ((BasisIndex, BasisIndex), Vec<Rational>)>,
        top_degrees: Vec<Rational>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidRing(msg));
        if dim == 0 {
            return invalid("base dimension must be positive".into());
        }
        if basis.len() != dim + 1 {
            return invalid(format!(
                "expected basis lists for degrees 0..={dim}, got {}",
                basis.len()
            ));
        }
        if basis[0] != [UNIT_NAME] {
            return invalid("degree 0 must be spanned by the single class `1`".into());
        }
        let mut names = HashMap::new();
        for (degree, classes) in basis.iter().enumerate() {
            for (index, name) in classes.iter().enumerate() {
                if names
                    .insert(name.clone(), BasisIndex::new(degree, index))
                    .is_some()
                {
                    return invalid(format!("duplicate basis class `{name}`"));
                }
            }
        }
        match names.get(POINT_NAME) {
            Some(idx) if idx.degree == dim => {
                if top_degrees.get(idx.index) != Some(&Rational::one()) {
                    return invalid("the point class must integrate to 1".into());
                }
            }
            _ => return invalid(format!("degree {dim} must contain the point class `pt`")),
        }
        if top_degrees.len() != basis[dim].len() {
            return invalid(format!(
                "{} integration values for {} top-degree classes",
                top_degrees.len(),
                basis[dim].len()
            ));
        }

        let mut table: HashMap<(BasisIndex, BasisIndex), Vec<Rational>> = HashMap::new();
        for ((x, y), value) in products {
            for b in [x, y] {
                if b.degree == 0 || b.degree > dim || b.index >= basis[b.degree].len() {
                    return invalid(format!("product key {b:?} is not a positive-degree basis class"));
                }
            }
            let target = x.degree + y.degree;
            if target > dim {
                return invalid(format!("product {x:?}·{y:?} exceeds the top degree"));
            }
            if value.len() != basis[target].len() {
                return invalid(format!(
                    "product {x:?}·{y:?} has {} coefficients, degree {target} has {} classes",
                    value.len(),
                    basis[target].len()
                ));
            }
            for key in [(x, y), (y, x)] {
                if let Some(previous) = table.get(&key) {
                    if previous != &value {
                        return invalid(format!("product {x:?}·{y:?} is not commutative"));
                    }
                }
                table.insert(key, value.clone());
            }
        }

        let ring = Self {
            dim,
            basis,
            products: table,
            top_degrees,
            names,
        };
        for x in ring.positive_basis() {
            for y in ring.positive_basis() {
                if x.degree + y.degree <= dim && !ring.products.contains_key(&(x, y)) {
                    return invalid(format!(
                        "missing product {}·{}",
                        ring.name(x),
                        ring.name(y)
                    ));
                }
            }
        }
        ring.check_associative()?;
        Ok(ring)
    }

    /// Ring of a surface whose degree-1 basis is `divisors` with the given
    /// (symmetric) intersection matrix; degree 2 is spanned by `pt`.
    pub fn surface<S: AsRef<str>>(divisors: &[S], intersection: &[Vec<Rational>]) -> Result<Self> {
        let count = divisors.len();
        if intersection.len() != count || intersection.iter().any(|row| row.len() != count) {
            return Err(Error::InvalidRing(format!(
                "intersection matrix must be {count}×{count}"
            )));
        }
        for i in 0..count {
            for j in 0..i {
                if intersection[i][j] != intersection[j][i] {
                    return Err(Error::InvalidRing(format!(
                        "intersection matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let basis = vec![
            vec![UNIT_NAME.to_string()],
            divisors.iter().map(|s| s.as_ref().to_string()).collect(),
            vec![POINT_NAME.to_string()],
        ];
        let products = (0..count).flat_map(|i| {
            (i..count).map(move |j| {
                (
                    (BasisIndex::new(1, i), BasisIndex::new(1, j)),
                    vec![intersection[i][j].clone()],
                )
            })
        });
        Self::new(2, basis, products, vec![Rational::one()])
    }

    fn positive_basis(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        self.basis
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(d, classes)| (0..classes.len()).map(move |i| BasisIndex::new(d, i)))
    }

    fn check_associative(&self) -> Result<()> {
        let all: Vec<BasisIndex> = self.positive_basis().collect();
        for &x in &all {
            for &y in &all {
                if x.degree + y.degree > self.dim {
                    continue;
                }
                let xy = self.mul(&self.basis_element(x), &self.basis_element(y))?;
                for &z in &all {
                    if x.degree + y.degree + z.degree > self.dim {
                        continue;
                    }
                    let left = self.mul(&xy, &self.basis_element(z))?;
                    let yz = self.mul(&self.basis_element(y), &self.basis_element(z))?;
                    let right = self.mul(&self.basis_element(x), &yz)?;
                    if left != right {
                        return Err(Error::InvalidRing(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            self.name(x),
                            self.name(y),
                            self.name(z),
                            self.name(x),
                            self.name(y),
                            self.name(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis names in the given degree.
    pub fn basis(&self, degree: usize) -> &[String] {
        self.basis.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn name(&self, index: BasisIndex) -> &str {
        &self.basis[index.degree][index.index]
    }

    pub fn find(&self, name: &str) -> Option<BasisIndex> {
        self.names.get(name).copied()
    }

    pub fn basis_element(&self, index: BasisIndex) -> GradedClass {
        let mut coeffs = vec![Rational::zero(); self.basis[index.degree].len()];
        coeffs[index.index] = Rational::one();
        GradedClass::homogeneous(index.degree, coeffs)
    }

    pub fn basis_class(&self, name: &str) -> Result<GradedClass> {
        self.find(name)
            .map(|idx| self.basis_element(idx))
            .ok_or_else(|| Error::UnknownClass(name.to_string()))
    }

    pub fn one(&self) -> GradedClass {
        GradedClass::scalar(Rational::one())
    }

    pub fn point(&self) -> GradedClass {
        self.basis_class(POINT_NAME).expect("point class is always present")
    }

    /// `Σ coeff · class` over named basis classes.
    pub fn combination<S: AsRef<str>>(&self, terms: &[(S, Rational)]) -> Result<GradedClass> {
        terms.iter().try_fold(GradedClass::zero(), |acc, (name, c)| {
            Ok(&acc + &self.basis_class(name.as_ref())?.scaled(c))
        })
    }

    /// Checks that `a` has the shape of an element of this ring.
    pub fn check(&self, a: &GradedClass) -> Result<()> {
        for (d, v) in a.components() {
            if d > self.dim {
                return Err(Error::RingMismatch(format!(
                    "class has a degree-{d} component but the base has dimension {}",
                    self.dim
                )));
            }
            if v.len() != self.basis[d].len() {
                return Err(Error::RingMismatch(format!(
                    "degree-{d} component has {} coefficients, the ring has {} basis classes",
                    v.len(),
                    self.basis[d].len()
                )));
            }
        }
        Ok(())
    }

    /// Product of two classes, truncated above the top degree.
    pub fn mul(&self, a: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
        self.check(a)?;
        self.check(b)?;
        let mut out: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (d1, v1) in a.components() {
            for (d2, v2) in b.components() {
                let d = d1 + d2;
                if d > self.dim {
                    continue;
                }
                let target = out
                    .entry(d)
                    .or_insert_with(|| vec![Rational::zero(); self.basis[d].len()]);
                for (i, x) in v1.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, y) in v2.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let xy = x * y;
                        if d1 == 0 {
                            target[j] += xy;
                        } else if d2 == 0 {
                            target[i] += xy;
                        } else {
                            let key = (BasisIndex::new(d1, i), BasisIndex::new(d2, j));
                            for (t, c) in target.iter_mut().zip(&self.products[&key]) {
                                if !c.is_zero() {
                                    *t += &xy * c;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(GradedClass::from_components(out))
    }

    /// Integration functional: the degree-`dim` component paired with the
    /// declared degrees of the top classes. Lower degrees contribute zero.
    pub fn integrate(&self, a: &GradedClass) -> Rational {
        a.component(self.dim)
            .map(|v| {
                v.iter()
                    .zip(&self.top_degrees)
                    .map(|(x, deg)| x * deg)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .unwrap_or_else(Rational::zero)
    }

    /// Human-readable form such as `3 H - D + 8 pt`.
    pub fn display(&self, a: &GradedClass) -> String {
        let mut out = String::new();
        for (d, v) in a.components() {
            for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let negative = c < &Rational::zero();
                let magnitude = if negative { -c } else { c.clone() };
                if out.is_empty() {
                    if negative {
                        out.push('-');
                    }
                } else {
                    out.push_str(if negative { " - " } else { " + " });
                }
                let name = &self.basis[d][i];
                if d == 0 {
                    let _ = write!(out, "{magnitude}");
                } else if magnitude.is_one() {
                    out.push_str(name);
                } else {
                    let _ = write!(out, "{magnitude} {name}");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl TruncatedAlgebra for IntersectionRing {
    type Elem = GradedClass;

    fn zero(&self) -> GradedClass {
        GradedClass::zero()
    }

    fn one(&self) -> GradedClass {
        IntersectionRing::one(self)
    }

    fn add(&self, a: &GradedClass, b: &GradedClass) -> GradedClass {
        a + b
    }

    fn scale(&self, a: &GradedClass, c: &Rational) -> GradedClass {
        a.scaled(c)
    }

    fn mul(&self, a: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
        IntersectionRing::mul(self, a, b)
    }

    fn constant_term(&self, a: &GradedClass) -> Rational {
        a.constant_term()
    }

    fn nilpotency_bound(&self) -> usize {
        self.dim
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

    #[test]
    fn blowup_products() {
        let ring = blowup();
        let h = ring.basis_class("H").unwrap();
        let d = ring.basis_class("D").unwrap();
        assert_eq!(ring.mul(&h, &h).unwrap(), ring.point());
        assert_eq!(ring.mul(&d, &d).unwrap(), -ring.point());
        assert!(ring.mul(&h, &d).unwrap().is_zero());
    }

    #[test]
    fn anticanonical_square() {
        let ring = blowup();
        let l = div(&ring, 3, -1);
        assert_eq!(ring.mul(&l, &l).unwrap(), ring.point().scaled(&rat(8)));
    }

    #[test]
    fn quotient_class_square() {
        let ring = blowup();
        let q = div(&ring, 1, -3);
        let sq = ring.mul(&q, &q).unwrap();
        assert_eq!(sq, ring.point().scaled(&rat(-8)));
        assert_eq!(ring.integrate(&sq), rat(-8));
    }

    #[test]
    fn integration_basics() {
        let ring = blowup();
        assert_eq!(ring.integrate(&ring.point()), rat(1));
        let hd = ring
            .mul(&ring.basis_class("H").unwrap(), &ring.basis_class("D").unwrap())
            .unwrap();
        assert_eq!(ring.integrate(&hd), rat(0));
        // lower degrees do not contribute
        assert_eq!(ring.integrate(&(&ring.one() + &div(&ring, 2, 5))), rat(0));
    }

    #[test]
    fn unit_is_identity() {
        let ring = blowup();
        let x = &(&div(&ring, 2, -7) + &ring.point().scaled(&rat(3))) + &ring.one();
        assert_eq!(ring.mul(&ring.one(), &x).unwrap(), x);
        assert_eq!(ring.mul(&x, &ring.one()).unwrap(), x);
    }

    #[test]
    fn projective_plane() {
        let ring = IntersectionRing::surface(&["H"], &[vec![rat(1)]]).unwrap();
        let h = ring.basis_class("H").unwrap();
        assert_eq!(ring.mul(&h, &h).unwrap(), ring.point());
    }

    #[test]
    fn empty_picard_group() {
        let ring = IntersectionRing::surface::<&str>(&[], &[]).unwrap();
        assert_eq!(ring.dim(), 2);
        assert!(ring.basis(1).is_empty());
        assert_eq!(ring.integrate(&ring.point()), rat(1));
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let err = IntersectionRing::surface(&["A", "B"], &[vec![rat(0), rat(1)], vec![rat(2), rat(0)]])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)));
    }

    #[test]
    fn rejects_wrong_size() {
        let err = IntersectionRing::surface(&["A", "B"], &[vec![rat(0)]]).unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)));
    }

    fn p3_basis() -> Vec<Vec<String>> {
        ["1", "h", "l", "pt"].iter().map(|s| vec![s.to_string()]).collect()
    }

    #[test]
    fn threefold_from_structure_constants() {
        let b = |d| BasisIndex::new(d, 0);
        let ring = IntersectionRing::new(
            3,
            p3_basis(),
            [
                ((b(1), b(1)), vec![rat(1)]),
                ((b(1), b(2)), vec![rat(1)]),
            ],
            vec![rat(1)],
        )
        .unwrap();
        let h = ring.basis_class("h").unwrap();
        assert_eq!(ring.pow(&h, 3).unwrap(), ring.point());
        assert!(ring.pow(&h, 4).unwrap().is_zero());
        // (1 + h)^{-1} = 1 - h + h^2 - h^3
        let inv = ring.invert(&(&ring.one() + &h)).unwrap();
        let expected = GradedClass::from_components([
            (0, vec![rat(1)]),
            (1, vec![rat(-1)]),
            (2, vec![rat(1)]),
            (3, vec![rat(-1)]),
        ]);
        assert_eq!(inv, expected);
    }

    #[test]
    fn rejects_non_associative_constants() {
        let b = |d| BasisIndex::new(d, 0);
        // a·a = b·b = x, a·b = 0, a·x = b·x = pt: (a·a)·b = pt but a·(a·b) = 0.
        let basis: Vec<Vec<String>> = vec![
            vec!["1".into()],
            vec!["a".into(), "b".into()],
            vec!["x".into()],
            vec!["pt".into()],
        ];
        let a = BasisIndex::new(1, 0);
        let bb = BasisIndex::new(1, 1);
        let err = IntersectionRing::new(
            3,
            basis,
            [
                ((a, a), vec![rat(1)]),
                ((a, bb), vec![rat(0)]),
                ((bb, bb), vec![rat(1)]),
                ((a, b(2)), vec![rat(1)]),
                ((bb, b(2)), vec![rat(1)]),
            ],
            vec![rat(1)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)), "{err:?}");
    }

    #[test]
    fn rejects_missing_product() {
        let b = |d| BasisIndex::new(d, 0);
        let err = IntersectionRing::new(3, p3_basis(), [((b(1), b(1)), vec![rat(1)])], vec![rat(1)])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)));
    }

    #[test]
    fn mismatched_class_is_rejected() {
        let ring = blowup();
        let foreign = GradedClass::homogeneous(1, vec![rat(1), rat(2), rat(3)]);
        assert!(matches!(
            ring.mul(&foreign, &ring.one()),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn display_format() {
        let ring = blowup();
        let x = &div(&ring, 3, -1) + &ring.point().scaled(&rat(8));
        assert_eq!(ring.display(&x), "3 H - D + 8 pt");
        assert_eq!(ring.display(&GradedClass::zero()), "0");
    }
}
