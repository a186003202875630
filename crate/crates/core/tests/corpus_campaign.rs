use latticeforge::campaign::{
    default_corpus, report_to_json, run_campaign, CheckStatus, CorpusConfig, RunOptions, Verdict,
};
use latticeforge::classify::{table_row, MillerMoreno};
use latticeforge::grp::build;
use latticeforge::lattice::enumerate_subgroups;

#[test]
fn default_campaign_is_consistent_and_stable() {
    let config = CorpusConfig::default_campaign();
    let opts = RunOptions {
        timings: false,
        threads: Some(2),
    };
    let report = run_campaign(&config, &opts).unwrap();
    assert_eq!(
        report.verdict,
        Verdict::AllConsistent,
        "{}",
        report_to_json(&report)
    );
    assert_eq!(report.groups.len(), default_corpus().len());
    for g in &report.groups {
        assert!(g.error.is_none(), "{}: {:?}", g.name, g.error);
        assert!(g.checks.iter().all(|c| c.status != CheckStatus::Fail));
    }
    let names: Vec<&str> = report.groups.iter().map(|g| g.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    // table checks ran on exactly the fifteen annotated groups
    let ran = |check: &str| {
        report
            .groups
            .iter()
            .filter(|g| {
                g.checks
                    .iter()
                    .any(|c| c.check == check && c.status == CheckStatus::Pass)
            })
            .count()
    };
    assert_eq!(ran("table1"), 15);
    assert!(ran("constructive_locators") > 10);
}

#[test]
fn structure_table_impossibilities_over_the_corpus() {
    let mut abelian_minimal = 0;
    for c in default_corpus() {
        let g = build(&c.spec).unwrap();
        let l = enumerate_subgroups(&g).unwrap();
        let rec = table_row(&l).unwrap();
        let (mnc, pg, ups) = rec.triple();
        assert!(!(mnc && !pg && !ups), "{}: Yes-No-No", c.name);
        if mnc && pg && !ups {
            assert!(rec.abelian, "{}: non-abelian Yes-Yes-No", c.name);
        }
        if mnc && rec.abelian {
            abelian_minimal += 1;
            let n = g.order();
            assert!(
                (2..n).any(|p| p * p == n && (2..p).all(|d| p % d != 0)),
                "{}: order {n}",
                c.name
            );
            assert_eq!(rec.miller_moreno, MillerMoreno::ElementaryAbelianP2);
        }
    }
    assert!(abelian_minimal >= 4);
}
