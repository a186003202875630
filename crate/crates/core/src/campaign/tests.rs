use super::*;
use crate::grp::GroupSpec;

fn group(name: &str, spec: GroupSpec) -> CorpusGroup {
    CorpusGroup {
        name: name.into(),
        spec,
        expect: GroupExpectations::default(),
    }
}

fn small_config() -> CorpusConfig {
    CorpusConfig {
        groups: vec![
            group("Z6", GroupSpec::cyclic(6)),
            group("Q8", GroupSpec::quaternion()),
            group("S3", GroupSpec::symmetric(3)),
            group("A4", GroupSpec::alternating(4)),
        ],
        zxzn_tasks: vec![ZxznTask {
            n: 3,
            bound: 3,
            expect: ZxznExpect::Some,
            witness_cap: Some(2),
        }],
        ..Default::default()
    }
}

fn run(c: &CorpusConfig) -> VerificationReport {
    run_campaign(c, &RunOptions::default()).unwrap()
}

#[test]
fn small_campaign_is_consistent() {
    let r = run(&small_config());
    assert_eq!(r.verdict, Verdict::AllConsistent, "{}", report_to_json(&r));
    let names: Vec<_> = r.groups.iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["A4", "Q8", "S3", "Z6"]);
    assert_eq!(r.checks, CheckRegistry::default().names());
    let z6 = &r.groups[3];
    assert_eq!(z6.cyclic, Some(true));
    assert!(z6.witness.is_none());
    assert!(r.groups[..3].iter().all(|g| g.witness.is_some()));
    assert_eq!(r.zxzn[0].witness_count, 2);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn report_is_byte_stable_across_thread_counts() {
    let c = small_config();
    let one = run_campaign(
        &c,
        &RunOptions {
            timings: false,
            threads: Some(1),
        },
    )
    .unwrap();
    let four = run_campaign(
        &c,
        &RunOptions {
            timings: false,
            threads: Some(4),
        },
    )
    .unwrap();
    assert_eq!(report_to_json(&one), report_to_json(&four));
}

#[test]
fn wrong_expectation_is_a_counterexample() {
    let mut c = small_config();
    c.groups[0].expect.cyclic_diamond = Some(true);
    let r = run(&c);
    assert_eq!(r.verdict, Verdict::CounterexampleFound);
    assert_eq!(r.exit_code(), 1);
    let z6 = r.groups.iter().find(|g| g.name == "Z6").unwrap();
    assert!(z6.failed());
}

#[test]
fn wrong_table_triple_is_a_counterexample() {
    let mut c = small_config();
    c.groups[1].expect.table1 = Some(TableTriple::new(true, true, true));
    let r = run(&c);
    assert_eq!(r.verdict, Verdict::CounterexampleFound);
    let q8 = r.groups.iter().find(|g| g.name == "Q8").unwrap();
    let t = q8.checks.iter().find(|o| o.check == "table1").unwrap();
    assert_eq!(t.status, CheckStatus::Fail);
    assert!(t.detail.as_deref().unwrap().contains("Yes-No-Yes"));
}

#[test]
fn unbuildable_group_is_an_error_not_a_counterexample() {
    let mut c = small_config();
    c.groups.push(group("big", GroupSpec::cyclic(1000)));
    let r = run(&c);
    assert_eq!(r.verdict, Verdict::Error);
    assert_eq!(r.exit_code(), 2);
    // a counterexample still wins
    c.zxzn_tasks.push(ZxznTask {
        n: 4,
        bound: 4,
        expect: ZxznExpect::Some,
        witness_cap: None,
    });
    assert_eq!(run(&c).verdict, Verdict::CounterexampleFound);
}

#[test]
fn power_of_two_tasks_report_vacuous_lemma() {
    let c = CorpusConfig {
        zxzn_tasks: vec![ZxznTask {
            n: 8,
            bound: 6,
            expect: ZxznExpect::None,
            witness_cap: None,
        }],
        ..Default::default()
    };
    let r = run(&c);
    assert_eq!(r.zxzn[0].lemma_status, Some(LemmaStatus::Vacuous));
    assert!(r.zxzn[0].consistent);
}

#[test]
fn invalid_configs_are_rejected() {
    let mut c = small_config();
    c.checks = Some(vec!["no_such_check".into()]);
    assert!(matches!(
        run_campaign(&c, &RunOptions::default()),
        Err(CampaignError::InvalidConfig(_))
    ));
    let mut c = small_config();
    c.groups.push(group("Q8", GroupSpec::quaternion()));
    assert!(run_campaign(&c, &RunOptions::default()).is_err());
    let mut c = small_config();
    c.zxzn_tasks[0].bound = 0;
    assert!(run_campaign(&c, &RunOptions::default()).is_err());
    assert!(CorpusConfig::from_json(r#"{"groups": [], "bogus": 1}"#).is_err());
}

#[test]
fn check_subset_is_honoured() {
    let mut c = small_config();
    c.checks = Some(vec!["main_theorem".into()]);
    let r = run(&c);
    assert!(r.groups.iter().all(|g| g.checks.len() == 1));
}

#[test]
fn config_json_round_trip() {
    let text = r#"{
        "groups": [
            {"name": "Dic3", "spec": {"kind": "dicyclic", "m": 3},
             "expect": {"cyclic": false, "miller_moreno": "semidirect_qp"}}
        ],
        "zxzn_tasks": [{"n": 5, "bound": 5, "expect": "some"}],
        "limits": {"witness_cap": 3}
    }"#;
    let c = CorpusConfig::from_json(text).unwrap();
    assert_eq!(c.limits.witness_cap, 3);
    assert_eq!(c.limits.order_cap, 512);
    assert!(!c.include_default_corpus);
    let r = run(&c);
    assert_eq!(r.verdict, Verdict::AllConsistent, "{}", report_to_json(&r));
    assert_eq!(r.zxzn[0].witnesses.len(), 3);
}
