//! Input schema and its validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use adiabatic_core::rational::parse_rational;
use adiabatic_core::{BundleData, GradedClass, IntersectionRing, Rational, TestConfigInput};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational written as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(n) = i64::try_from(self.0.numer()) {
                return serializer.serialize_i64(n);
            }
        }
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exact, E> {
                Err(E::custom(format!(
                    "floating-point value {v} is not accepted; write it as \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                parse_rational(v)
                    .map(Exact)
                    .ok_or_else(|| E::custom(format!("`{v}` is not a rational of the form \"p/q\"")))
            }
        }

        deserializer.deserialize_any(ExactVisitor)
    }
}

/// Divisor name to coefficient.
pub type DivisorCombination = BTreeMap<String, Exact>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub dim: usize,
    pub divisors: Vec<String>,
    pub intersection: Vec<Vec<Exact>>,
    pub c1: DivisorCombination,
    /// `∫(c_1(B)² + c_2(B))`.
    pub c1sq_plus_c2: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub rank: usize,
    #[serde(default)]
    pub c1: DivisorCombination,
    /// `∫ c_2`; must be zero for line bundles.
    #[serde(default = "zero")]
    pub c2: Exact,
}

fn zero() -> Exact {
    Exact(Rational::from_integer(0.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubbundleSpec {
    pub name: String,
    pub sub: BundleSpec,
    pub quot: BundleSpec,
}

/// How many coefficients `a_0, a_1, ...` the verdict may inspect.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MaxOrder {
    #[default]
    All,
    Order(usize),
}

impl MaxOrder {
    pub fn limit(self) -> Option<usize> {
        match self {
            MaxOrder::All => None,
            MaxOrder::Order(n) => Some(n),
        }
    }
}

impl FromStr for MaxOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(MaxOrder::All);
        }
        s.parse()
            .map(MaxOrder::Order)
            .map_err(|_| format!("expected a non-negative integer or \"all\", got `{s}`"))
    }
}

impl Serialize for MaxOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxOrder::All => serializer.serialize_str("all"),
            MaxOrder::Order(n) => serializer.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for MaxOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MaxOrderVisitor;

        impl Visitor<'_> for MaxOrderVisitor {
            type Value = MaxOrder;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"all\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<MaxOrder, E> {
                Ok(MaxOrder::Order(v as usize))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<MaxOrder, E> {
                usize::try_from(v)
                    .map(MaxOrder::Order)
                    .map_err(|_| E::custom(format!("max_order must be non-negative, got {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<MaxOrder, E> {
                if v == "all" {
                    Ok(MaxOrder::All)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(MaxOrderVisitor)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default)]
    pub max_order: MaxOrder,
    #[serde(default)]
    pub crosscheck: bool,
    #[serde(default)]
    pub assume_vanishing_h0_h2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub base: BaseSpec,
    pub polarization: DivisorCombination,
    #[serde(default)]
    pub subbundles: Vec<SubbundleSpec>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Schema,
    Semantic,
}

/// A problem with the input, located by a dotted field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub path: String,
    pub message: String,
}

impl Violation {
    fn semantic(path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            kind: ViolationKind::Semantic,
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::Schema => "schema error",
            ViolationKind::Semantic => "semantic error",
        };
        write!(f, "{kind} at {}: {}", self.path, self.message)
    }
}

impl ProblemSpec {
    /// Parses and validates a JSON document.
    pub fn parse(text: &str) -> Result<Problem, Vec<Violation>> {
        Self::from_json(text)?.validate()
    }

    /// Parses without semantic validation.
    pub fn from_json(text: &str) -> Result<ProblemSpec, Vec<Violation>> {
        let mut de = serde_json::Deserializer::from_str(text);
        let spec: ProblemSpec = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            vec![Violation {
                kind: ViolationKind::Schema,
                path: e.path().to_string(),
                message: e.inner().to_string(),
            }]
        })?;
        de.end().map_err(|e| {
            vec![Violation {
                kind: ViolationKind::Schema,
                path: ".".into(),
                message: e.to_string(),
            }]
        })?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema types always serialize")
    }

    pub fn validate(self) -> Result<Problem, Vec<Violation>> {
        let mut errors = Vec::new();
        let base = &self.base;
        if base.dim != 2 {
            errors.push(Violation::semantic(
                "base.dim",
                format!("only surfaces are supported, got dimension {}", base.dim),
            ));
        }
        let mut seen = BTreeSet::new();
        for (i, name) in base.divisors.iter().enumerate() {
            if name.is_empty() || name == "1" || name == "pt" {
                errors.push(Violation::semantic(
                    format!("base.divisors[{i}]"),
                    format!("`{name}` is not a usable divisor name"),
                ));
            } else if !seen.insert(name.as_str()) {
                errors.push(Violation::semantic(
                    format!("base.divisors[{i}]"),
                    format!("divisor `{name}` declared twice"),
                ));
            }
        }
        let m = base.divisors.len();
        let square = base.intersection.len() == m && base.intersection.iter().all(|row| row.len() == m);
        if !square {
            errors.push(Violation::semantic(
                "base.intersection",
                format!("expected a {m}x{m} matrix"),
            ));
        } else {
            for i in 0..m {
                for j in i + 1..m {
                    if base.intersection[i][j] != base.intersection[j][i] {
                        errors.push(Violation::semantic(
                            format!("base.intersection[{i}][{j}]"),
                            format!(
                                "matrix is not symmetric: {} vs {}",
                                base.intersection[i][j], base.intersection[j][i]
                            ),
                        ));
                    }
                }
            }
        }

        let mut check_combination = |path: String, combination: &DivisorCombination| {
            for name in combination.keys() {
                if !seen.contains(name.as_str()) {
                    errors.push(Violation::semantic(
                        format!("{path}.{name}"),
                        format!("undeclared divisor `{name}`"),
                    ));
                }
            }
        };
        check_combination("base.c1".into(), &base.c1);
        check_combination("polarization".into(), &self.polarization);
        for (i, s) in self.subbundles.iter().enumerate() {
            check_combination(format!("subbundles[{i}].sub.c1"), &s.sub.c1);
            check_combination(format!("subbundles[{i}].quot.c1"), &s.quot.c1);
        }
        for (i, s) in self.subbundles.iter().enumerate() {
            for (part, b) in [("sub", &s.sub), ("quot", &s.quot)] {
                if b.rank == 0 {
                    errors.push(Violation::semantic(
                        format!("subbundles[{i}].{part}.rank"),
                        "rank must be positive",
                    ));
                } else if b.rank == 1 && b.c2.0 != zero().0 {
                    errors.push(Violation::semantic(
                        format!("subbundles[{i}].{part}.c2"),
                        "a line bundle has c2 = 0",
                    ));
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        let matrix: Vec<Vec<Rational>> = base
            .intersection
            .iter()
            .map(|row| row.iter().map(|x| x.0.clone()).collect())
            .collect();
        let ring = IntersectionRing::surface(&base.divisors, &matrix)
            .map_err(|e| vec![Violation::semantic("base", e.to_string())])?;
        let ring = Arc::new(ring);
        let class = |c: &DivisorCombination| {
            let terms: Vec<(&str, Rational)> = c.iter().map(|(k, v)| (k.as_str(), v.0.clone())).collect();
            ring.combination(&terms).expect("names validated")
        };
        let c1_base = class(&base.c1);
        let polarization = class(&self.polarization);
        let volume = ring.integrate(&ring.mul(&polarization, &polarization).expect("same ring"));
        if volume <= zero().0 {
            return Err(vec![Violation::semantic(
                "polarization",
                format!("polarization is not ample: L^2 = {volume}"),
            )]);
        }

        let bundle = |b: &BundleSpec| -> Result<BundleData, String> {
            let c2 = if b.rank >= 2 {
                ring.point().scaled(&b.c2.0)
            } else {
                GradedClass::zero()
            };
            BundleData::from_classes(&ring, b.rank, &[class(&b.c1), c2]).map_err(|e| e.to_string())
        };
        let mut subbundles = Vec::new();
        for (i, s) in self.subbundles.iter().enumerate() {
            let sub = bundle(&s.sub).map_err(|m| vec![Violation::semantic(format!("subbundles[{i}].sub"), m)])?;
            let quot = bundle(&s.quot).map_err(|m| vec![Violation::semantic(format!("subbundles[{i}].quot"), m)])?;
            let input = TestConfigInput::new(ring.clone(), polarization.clone(), c1_base.clone(), sub, quot)
                .map_err(|e| vec![Violation::semantic(format!("subbundles[{i}]"), e.to_string())])?;
            subbundles.push(NamedInput {
                name: s.name.clone(),
                input,
            });
        }
        Ok(Problem {
            c1sq_plus_c2: base.c1sq_plus_c2.0.clone(),
            ring,
            c1_base,
            polarization,
            subbundles,
            spec: self,
        })
    }
}

#[derive(Clone, Debug)]
pub struct NamedInput {
    pub name: String,
    pub input: TestConfigInput,
}

/// A validated problem, ready to run.
#[derive(Clone, Debug)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub ring: Arc<IntersectionRing>,
    pub c1_base: GradedClass,
    pub polarization: GradedClass,
    pub c1sq_plus_c2: Rational,
    pub subbundles: Vec<NamedInput>,
}
