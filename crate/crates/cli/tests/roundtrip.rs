use adiabatic_cli::problem::{BaseSpec, BundleSpec, DivisorCombination, OptionsSpec, SubbundleSpec};
use adiabatic_cli::{Exact, MaxOrder, ProblemSpec};
use adiabatic_core::rational::frac;
use proptest::collection::vec;
use proptest::prelude::*;

fn exact() -> impl Strategy<Value = Exact> {
    (-50i64..=50, 1i64..=7).prop_map(|(n, d)| Exact(frac(n, d)))
}

fn combination(names: Vec<String>) -> impl Strategy<Value = DivisorCombination> {
    vec(exact(), names.len()).prop_map(move |cs| names.iter().cloned().zip(cs).collect())
}

fn bundle(names: Vec<String>) -> impl Strategy<Value = BundleSpec> {
    (1usize..=3, combination(names), exact()).prop_map(|(rank, c1, c2)| BundleSpec { rank, c1, c2 })
}

fn max_order() -> impl Strategy<Value = MaxOrder> {
    prop_oneof![Just(MaxOrder::All), (0usize..6).prop_map(MaxOrder::Order)]
}

fn problem() -> impl Strategy<Value = ProblemSpec> {
    (1usize..=3).prop_flat_map(|m| {
        let names: Vec<String> = (0..m).map(|i| format!("E{i}")).collect();
        let base = (vec(vec(exact(), m), m), combination(names.clone()), exact()).prop_map({
            let names = names.clone();
            move |(intersection, c1, c1sq_plus_c2)| BaseSpec {
                dim: 2,
                divisors: names.clone(),
                intersection,
                c1,
                c1sq_plus_c2,
            }
        });
        let sub = ("[a-z]{1,6}", bundle(names.clone()), bundle(names.clone()))
            .prop_map(|(name, sub, quot)| SubbundleSpec { name, sub, quot });
        let options = (max_order(), any::<bool>(), any::<bool>()).prop_map(|(max_order, crosscheck, assume)| {
            OptionsSpec {
                max_order,
                crosscheck,
                assume_vanishing_h0_h2: assume,
            }
        });
        (base, combination(names), vec(sub, 0..3), options).prop_map(|(base, polarization, subbundles, options)| {
            ProblemSpec {
                base,
                polarization,
                subbundles,
                options,
            }
        })
    })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(spec in problem()) {
        let text = spec.to_json();
        prop_assert_eq!(ProblemSpec::from_json(&text).unwrap(), spec);
    }
}

#[test]
fn integers_and_fraction_strings_are_accepted() {
    let text = r#"{
        "base": {"dim": 2, "divisors": ["H"], "intersection": [["1"]], "c1": {"H": "6/2"}, "c1sq_plus_c2": 12},
        "polarization": {"H": 1}
    }"#;
    let spec = ProblemSpec::from_json(text).unwrap();
    assert_eq!(spec.base.c1["H"], Exact(frac(3, 1)));
    assert_eq!(spec.options.max_order, MaxOrder::All);
    assert!(spec.subbundles.is_empty());
    assert!(spec.to_json().contains("\"H\": 3"));
    let problem = spec.validate().unwrap();
    assert!(problem.subbundles.is_empty());
}

#[test]
fn malformed_rationals_are_rejected() {
    for bad in [r#""1/0""#, r#""1.5""#, "1.5", r#""x""#] {
        let text = format!(
            r#"{{"base": {{"dim": 2, "divisors": ["H"], "intersection": [[1]], "c1": {{"H": 3}}, "c1sq_plus_c2": {bad}}},
                "polarization": {{"H": 1}}}}"#
        );
        let err = ProblemSpec::from_json(&text).unwrap_err();
        assert_eq!(err[0].path, "base.c1sq_plus_c2", "{bad}");
    }
}
