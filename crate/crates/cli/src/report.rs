//! Output documents. Every number is an exact rational rendered as a string.

use adiabatic_core::chern::FirstCohomology;
use adiabatic_core::{crosscheck, BundleData, Bracket, CrosscheckReport, DfReport, Rational, Result, Slopes, TestConfigInput};
use serde::{Serialize, Serializer};

use crate::problem::{MaxOrder, OptionsSpec, Problem};

fn show(r: &Rational) -> String {
    r.to_string()
}

fn show_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(show).collect()
}

/// Options after command-line overrides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub max_order: MaxOrder,
    pub crosscheck: bool,
    pub assume_vanishing_h0_h2: bool,
}

impl From<&OptionsSpec> for RunOptions {
    fn from(o: &OptionsSpec) -> Self {
        RunOptions {
            max_order: o.max_order,
            crosscheck: o.crosscheck,
            assume_vanishing_h0_h2: o.assume_vanishing_h0_h2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseReport {
    pub divisors: Vec<String>,
    pub polarization_volume: String,
    pub c1_base_squared: String,
    pub chi_structure_sheaf: String,
}

impl BaseReport {
    fn new(problem: &Problem) -> Result<Self> {
        let ring = &problem.ring;
        let int = |a, b| -> Result<Rational> { Ok(ring.integrate(&ring.mul(a, b)?)) };
        let trivial = BundleData::trivial(ring, 1)?;
        Ok(BaseReport {
            divisors: problem.spec.base.divisors.clone(),
            polarization_volume: show(&int(&problem.polarization, &problem.polarization)?),
            c1_base_squared: show(&int(&problem.c1_base, &problem.c1_base)?),
            chi_structure_sheaf: show(&trivial.euler_characteristic_surface(
                &problem.c1_base,
                &problem.c1sq_plus_c2,
                ring,
            )?),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeReport {
    pub mu_l_sub: String,
    pub mu_l_total: String,
    pub mu_c1b_sub: String,
    pub mu_c1b_total: String,
}

impl From<&Slopes> for SlopeReport {
    fn from(s: &Slopes) -> Self {
        SlopeReport {
            mu_l_sub: show(&s.mu_l_sub),
            mu_l_total: show(&s.mu_l_total),
            mu_c1b_sub: show(&s.mu_b_sub),
            mu_c1b_total: show(&s.mu_b_total),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub euler_characteristic: String,
    /// `-χ`, present only when `h⁰ = h² = 0` is assumed.
    pub h1: Option<String>,
    pub assumes_vanishing_h0_h2: bool,
}

impl From<FirstCohomology> for CohomologyReport {
    fn from(c: FirstCohomology) -> Self {
        CohomologyReport {
            euler_characteristic: show(&c.euler_characteristic),
            h1: c.h1.as_ref().map(show),
            assumes_vanishing_h0_h2: c.assumes_vanishing,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRow {
    pub bracket: String,
    pub index: usize,
    pub engine: String,
    pub closed_form: Option<String>,
    pub equal: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckTable {
    pub passed: bool,
    pub rows: Vec<CrosscheckRow>,
    /// `(n+r)/(n+r+1)·β_1γ_1 − α_1δ_1`, evaluated at equal `L`-slopes.
    pub cancellation: Option<String>,
}

impl From<&CrosscheckReport> for CrosscheckTable {
    fn from(report: &CrosscheckReport) -> Self {
        CrosscheckTable {
            passed: report.passed(),
            rows: report
                .entries
                .iter()
                .map(|e| CrosscheckRow {
                    bracket: e.bracket.to_string(),
                    index: e.index,
                    engine: show(&e.engine),
                    closed_form: e.closed_form.as_ref().map(show),
                    equal: e.closed_form.as_ref().map(|c| c == &e.engine),
                    note: e.note.clone(),
                })
                .collect(),
            cancellation: report.cancellation.as_ref().map(show),
        }
    }
}

/// First index with `a_i ≠ 0`, or `"all-zero"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeadingIndex(pub Option<usize>);

impl Serialize for LeadingIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(i) => serializer.serialize_u64(i as u64),
            None => serializer.serialize_str("all-zero"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Brackets {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub gamma: Vec<String>,
    pub delta: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubbundleDf {
    pub name: String,
    pub fut_poly: String,
    pub brackets: Brackets,
    /// `a_0, ..., a_{2n}`, `a_i` being the coefficient of `k^{2n-i}`.
    pub coefficients: Vec<String>,
    /// `(n+r)!/L^n · a_i`.
    pub normalized: Vec<String>,
    /// `(n+r+1)!/(2L^n) · a_i`.
    pub scaled: Vec<String>,
    pub slopes: SlopeReport,
    pub leading_index: LeadingIndex,
    pub verdict: String,
    pub h1_sub_tensor_quot_dual: CohomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrosscheckTable>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DfDocument {
    pub base: BaseReport,
    pub max_order: MaxOrder,
    pub subbundles: Vec<SubbundleDf>,
    /// True when every supplied subbundle is stable; says nothing about
    /// subsheaves that were not supplied.
    pub stable_wrt_supplied_list: bool,
}

impl DfDocument {
    pub fn crosscheck_passed(&self) -> bool {
        self.subbundles
            .iter()
            .all(|s| s.crosscheck.as_ref().is_none_or(|c| c.passed))
    }
}

fn sub_tensor_quot_dual(problem: &Problem, input: &TestConfigInput, assume: bool) -> Result<FirstCohomology> {
    let ring = &problem.ring;
    let twisted = if input.quot().rank() == 1 {
        input.sub().tensor_by_line(&-&input.quot().c1(), ring)?
    } else {
        input.sub().tensor_product(&input.quot().dual(), ring)?
    };
    let chi = twisted.euler_characteristic_surface(&problem.c1_base, &problem.c1sq_plus_c2, ring)?;
    Ok(FirstCohomology::from_euler_characteristic(chi, assume))
}

pub fn df(problem: &Problem, options: RunOptions) -> Result<DfDocument> {
    let n = problem.ring.dim() as u32;
    let mut subbundles = Vec::new();
    for named in &problem.subbundles {
        let input = &named.input;
        let report = DfReport::compute(input, options.max_order.limit())?;
        let e = &report.expansion;
        let bracket = |b: Bracket| show_all(&e.bracket(b).descending(n));
        subbundles.push(SubbundleDf {
            name: named.name.clone(),
            fut_poly: e.fut.to_string(),
            brackets: Brackets {
                alpha: bracket(Bracket::Alpha),
                beta: bracket(Bracket::Beta),
                gamma: bracket(Bracket::Gamma),
                delta: bracket(Bracket::Delta),
            },
            coefficients: show_all(&report.coefficients),
            normalized: show_all(&report.normalized),
            scaled: show_all(&report.scaled),
            slopes: (&report.slopes).into(),
            leading_index: LeadingIndex(report.leading_index),
            verdict: report.verdict.to_string(),
            h1_sub_tensor_quot_dual: sub_tensor_quot_dual(problem, input, options.assume_vanishing_h0_h2)?.into(),
            crosscheck: if options.crosscheck {
                Some((&crosscheck(input)?).into())
            } else {
                None
            },
        });
    }
    let stable = subbundles
        .iter()
        .all(|s| s.verdict == adiabatic_core::Verdict::StableWrtSubbundle.as_str());
    Ok(DfDocument {
        base: BaseReport::new(problem)?,
        max_order: options.max_order,
        subbundles,
        stable_wrt_supplied_list: stable,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubbundleChi {
    pub name: String,
    pub chi_sub: String,
    pub chi_quot: String,
    pub chi_total: String,
    pub sub_tensor_quot_dual: CohomologyReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiDocument {
    pub base: BaseReport,
    pub subbundles: Vec<SubbundleChi>,
}

pub fn chi(problem: &Problem, options: RunOptions) -> Result<ChiDocument> {
    let ring = &problem.ring;
    let chi_of = |b: &BundleData| -> Result<String> {
        Ok(show(&b.euler_characteristic_surface(&problem.c1_base, &problem.c1sq_plus_c2, ring)?))
    };
    let mut subbundles = Vec::new();
    for named in &problem.subbundles {
        let input = &named.input;
        subbundles.push(SubbundleChi {
            name: named.name.clone(),
            chi_sub: chi_of(input.sub())?,
            chi_quot: chi_of(input.quot())?,
            chi_total: chi_of(input.total())?,
            sub_tensor_quot_dual: sub_tensor_quot_dual(problem, input, options.assume_vanishing_h0_h2)?.into(),
        });
    }
    Ok(ChiDocument {
        base: BaseReport::new(problem)?,
        subbundles,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubbundleSlopes {
    pub name: String,
    pub slopes: SlopeReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeDocument {
    pub base: BaseReport,
    pub subbundles: Vec<SubbundleSlopes>,
}

pub fn slope(problem: &Problem) -> Result<SlopeDocument> {
    let mut subbundles = Vec::new();
    for named in &problem.subbundles {
        subbundles.push(SubbundleSlopes {
            name: named.name.clone(),
            slopes: (&named.input.slopes()?).into(),
        });
    }
    Ok(SlopeDocument {
        base: BaseReport::new(problem)?,
        subbundles,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubbundleCrosscheck {
    pub name: String,
    pub crosscheck: CrosscheckTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckDocument {
    pub passed: bool,
    pub subbundles: Vec<SubbundleCrosscheck>,
}

pub fn crosscheck_only(problem: &Problem) -> Result<CrosscheckDocument> {
    let mut subbundles = Vec::new();
    for named in &problem.subbundles {
        subbundles.push(SubbundleCrosscheck {
            name: named.name.clone(),
            crosscheck: (&crosscheck(&named.input)?).into(),
        });
    }
    Ok(CrosscheckDocument {
        passed: subbundles.iter().all(|s| s.crosscheck.passed),
        subbundles,
    })
}
