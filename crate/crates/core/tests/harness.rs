use proptest::prelude::*;

use hyperlab::harness::{replay, run_suite, Corpus, PropertyId, Status};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cyclic_rings_have_no_counterexamples(k in 2usize..=16) {
        let report = run_suite(&Corpus::parse(&format!("ring:Z{k}")).unwrap()).unwrap();
        prop_assert_eq!(report.tally().counterexamples, 0, "{}", report.to_text());
        prop_assert!(report.reports.iter().all(|r| r.status != Status::Skipped || r.reason.is_some()));
    }

    #[test]
    fn small_products_have_no_counterexamples(p in 2usize..=4, q in 2usize..=4) {
        let report = run_suite(&Corpus::parse(&format!("ring:Z{p}*ring:Z{q}")).unwrap()).unwrap();
        prop_assert_eq!(report.tally().counterexamples, 0, "{}", report.to_text());
        prop_assert!(report.tally_for(PropertyId::P17).verified > 0);
    }
}

#[test]
fn suite_is_deterministic() {
    let corpus = Corpus::default();
    let first = run_suite(&corpus).unwrap();
    let second = run_suite(&corpus).unwrap();
    assert_eq!(first.to_json(), second.to_json());
    assert_eq!(first.to_text(), second.to_text());
}

#[test]
fn verified_reports_replay() {
    let report = run_suite(&Corpus::parse("paper-2-4,ring:Z2*ring:Z3").unwrap()).unwrap();
    for r in report.reports.iter().filter(|r| r.status != Status::Skipped).step_by(5) {
        assert!(replay(r).unwrap(), "{}", r.render());
    }
}

#[test]
fn json_report_round_trips() {
    let report = run_suite(&Corpus::parse("ring:Z4").unwrap()).unwrap();
    let back: hyperlab::harness::SuiteReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
}
