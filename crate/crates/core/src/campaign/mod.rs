//! Verification campaigns: a corpus configuration in, a deterministic report out.

mod checks;
mod corpus;
mod export;

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::{Check, CheckOutcome, CheckRegistry, CheckStatus};
pub use corpus::{
    abelian_primary_decompositions, default_corpus, default_zxzn_tasks, semidirect_specs,
    table1_instances,
};
pub use export::{
    export_lattice_dot, export_lattice_json, export_report_json, lattice_summary, report_to_json,
    LatticeSummary, SubgroupEntry,
};

use crate::classify::{table_row, ClassificationRecord, ClassifyError, MillerMoreno};
use crate::grp::{build_with, BuildOptions, GroupSpec};
use crate::lattice::{EnumerateOptions, SubgroupLattice};
use crate::patterns::{find_cyclic_diamond, DiamondWitness};
use crate::zxzn::{
    search_generalized_cyclic_diamond, witness_properties, LemmaStatus, SearchOptions,
    WitnessProperties, ZDiamondWitness, DEFAULT_WITNESS_CAP,
};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "LATTICEFORGE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CampaignError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// The three structure-table answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableTriple {
    pub minimal_non_cyclic: bool,
    pub prime_generated: bool,
    pub unique_prime_subgroup: bool,
}

impl TableTriple {
    pub fn new(
        minimal_non_cyclic: bool,
        prime_generated: bool,
        unique_prime_subgroup: bool,
    ) -> Self {
        TableTriple {
            minimal_non_cyclic,
            prime_generated,
            unique_prime_subgroup,
        }
    }

    pub fn as_tuple(&self) -> (bool, bool, bool) {
        (
            self.minimal_non_cyclic,
            self.prime_generated,
            self.unique_prime_subgroup,
        )
    }

    pub fn label(&self) -> String {
        let yn = |b: bool| if b { "Yes" } else { "No" };
        format!(
            "{}-{}-{}",
            yn(self.minimal_non_cyclic),
            yn(self.prime_generated),
            yn(self.unique_prime_subgroup)
        )
    }
}

/// Optional per-group claims; a mismatch is reported as a counterexample.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupExpectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_diamond: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table1: Option<TableTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub miller_moreno: Option<MillerMoreno>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusGroup {
    pub name: String,
    pub spec: GroupSpec,
    #[serde(default)]
    pub expect: GroupExpectations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZxznExpect {
    None,
    Some,
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZxznTask {
    pub n: u64,
    pub bound: u64,
    #[serde(default = "unspecified")]
    pub expect: ZxznExpect,
    /// Overrides the campaign-wide witness cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_cap: Option<usize>,
}

fn unspecified() -> ZxznExpect {
    ZxznExpect::Unspecified
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Limits {
    pub order_cap: usize,
    pub subgroup_budget: usize,
    pub witness_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: BuildOptions::default().order_cap,
            subgroup_budget: EnumerateOptions::default().subgroup_budget,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

/// A campaign description, usually read from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusConfig {
    /// Prepend the built-in corpus to `groups`.
    #[serde(default)]
    pub include_default_corpus: bool,
    #[serde(default)]
    pub groups: Vec<CorpusGroup>,
    /// Check names to run; absent means every registered check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub zxzn_tasks: Vec<ZxznTask>,
    #[serde(default)]
    pub limits: Limits,
}

impl CorpusConfig {
    /// The built-in corpus, every check, and the default `Z × Z_n` tasks.
    pub fn default_campaign() -> Self {
        CorpusConfig {
            include_default_corpus: true,
            groups: Vec::new(),
            checks: None,
            zxzn_tasks: default_zxzn_tasks(),
            limits: Limits::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CampaignError> {
        serde_json::from_str(text).map_err(|e| CampaignError::InvalidConfig(e.to_string()))
    }

    /// Groups to run (default corpus first when requested), after validation.
    fn resolved_groups(&self) -> Result<Vec<CorpusGroup>, CampaignError> {
        let mut groups = if self.include_default_corpus {
            default_corpus()
        } else {
            Vec::new()
        };
        groups.extend(self.groups.iter().cloned());
        let mut seen = HashSet::new();
        for g in &groups {
            if g.name.is_empty() {
                return Err(CampaignError::InvalidConfig("empty group name".into()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(CampaignError::InvalidConfig(format!(
                    "duplicate group name {:?}",
                    g.name
                )));
            }
        }
        Ok(groups)
    }

    fn validate(&self, registry: &CheckRegistry) -> Result<(), CampaignError> {
        if let Some(names) = &self.checks {
            for n in names {
                if registry.get(n).is_none() {
                    return Err(CampaignError::InvalidConfig(format!(
                        "unknown check {n:?}; known: {}",
                        registry.names().join(", ")
                    )));
                }
            }
        }
        for t in &self.zxzn_tasks {
            if t.n == 0 || t.n > i64::MAX as u64 {
                return Err(CampaignError::InvalidConfig(format!(
                    "zxzn task modulus {} out of range",
                    t.n
                )));
            }
            if t.bound == 0 {
                return Err(CampaignError::InvalidConfig(format!(
                    "zxzn task n = {} needs a generator bound >= 1",
                    t.n
                )));
            }
        }
        if self.limits.order_cap == 0 || self.limits.subgroup_budget == 0 {
            return Err(CampaignError::InvalidConfig(
                "limits must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Facts computed once per group and shared by all checks.
#[derive(Debug)]
pub struct GroupFacts {
    pub cyclic: bool,
    pub abelian: bool,
    pub distributive: bool,
    pub modular: bool,
    pub cyclic_diamond: Option<DiamondWitness>,
    pub classification: Result<ClassificationRecord, ClassifyError>,
}

/// What a check sees: the lattice, precomputed facts and the group's expectations.
pub struct GroupContext {
    pub name: String,
    pub lattice: SubgroupLattice,
    pub facts: GroupFacts,
    pub expect: GroupExpectations,
}

impl GroupContext {
    pub fn new(name: String, lattice: SubgroupLattice, expect: GroupExpectations) -> Self {
        let facts = GroupFacts {
            cyclic: lattice.is_cyclic_group(),
            abelian: lattice.group().is_abelian(),
            distributive: lattice.is_distributive(),
            modular: lattice.is_modular(),
            cyclic_diamond: find_cyclic_diamond(&lattice),
            classification: table_row(&lattice),
        };
        GroupContext {
            name,
            lattice,
            facts,
            expect,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllConsistent,
    CounterexampleFound,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupResult {
    pub name: String,
    pub order: Option<usize>,
    pub lattice_size: Option<usize>,
    pub cyclic: Option<bool>,
    pub abelian: Option<bool>,
    pub distributive: Option<bool>,
    pub modular: Option<bool>,
    pub witness: Option<DiamondWitness>,
    pub classification: Option<ClassificationRecord>,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl GroupResult {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZWitnessReport {
    #[serde(flatten)]
    pub witness: ZDiamondWitness,
    pub properties: WitnessProperties,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZxznResult {
    pub n: u64,
    pub bound: u64,
    pub expect: ZxznExpect,
    pub witness_count: usize,
    pub witness_cap: usize,
    /// Whether the power-of-two lemma predicates held vacuously (no witness).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_status: Option<LemmaStatus>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub witnesses: Vec<ZWitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportSummary {
    pub groups: usize,
    pub groups_failed: usize,
    pub groups_errored: usize,
    pub zxzn_tasks: usize,
    pub zxzn_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub checks: Vec<String>,
    pub summary: ReportSummary,
    pub groups: Vec<GroupResult>,
    pub zxzn: Vec<ZxznResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationReport {
    /// 0 when consistent, 1 on a counterexample, 2 when some input could not be processed.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::AllConsistent => 0,
            Verdict::CounterexampleFound => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Record wall-clock timings in the report.
    pub timings: bool,
    /// Worker count; `None` defers to `LATTICEFORGE_THREADS`, then to rayon's default.
    pub threads: Option<usize>,
}

fn env_threads() -> Result<Option<usize>, CampaignError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CampaignError::InvalidConfig(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

/// Runs every check on every group and every `Z × Z_n` task.
///
/// Groups run in parallel; the report lists them sorted by name and zxzn tasks in
/// config order, so identical configs give identical reports apart from timings.
/// A counterexample anywhere wins over per-group errors when choosing the verdict.
pub fn run_campaign(
    config: &CorpusConfig,
    opts: &RunOptions,
) -> Result<VerificationReport, CampaignError> {
    let registry = CheckRegistry::default();
    config.validate(&registry)?;
    let groups = config.resolved_groups()?;
    let check_names: Vec<String> = match &config.checks {
        Some(names) => names.clone(),
        None => registry.names().iter().map(|s| s.to_string()).collect(),
    };
    let threads = match opts.threads {
        Some(t) => Some(t.max(1)),
        None => env_threads()?,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CampaignError::ThreadPool(e.to_string()))?;

    let start = Instant::now();
    let limits = config.limits;
    let (mut group_results, zxzn_results) = pool.install(|| {
        let checks: Vec<&dyn Check> = check_names
            .iter()
            .map(|n| registry.get(n).expect("validated"))
            .collect();
        let g: Vec<GroupResult> = groups
            .par_iter()
            .map(|g| run_group(g, &checks, &limits, opts.timings))
            .collect();
        let z: Vec<ZxznResult> = config
            .zxzn_tasks
            .iter()
            .map(|t| run_zxzn_task(t, limits.witness_cap, opts.timings))
            .collect();
        (g, z)
    });
    group_results.sort_by(|a, b| a.name.cmp(&b.name));

    let summary = ReportSummary {
        groups: group_results.len(),
        groups_failed: group_results.iter().filter(|g| g.failed()).count(),
        groups_errored: group_results.iter().filter(|g| g.error.is_some()).count(),
        zxzn_tasks: zxzn_results.len(),
        zxzn_failed: zxzn_results.iter().filter(|z| !z.consistent).count(),
    };
    let verdict = if summary.groups_failed > 0 || summary.zxzn_failed > 0 {
        Verdict::CounterexampleFound
    } else if summary.groups_errored > 0 {
        Verdict::Error
    } else {
        Verdict::AllConsistent
    };
    Ok(VerificationReport {
        verdict,
        checks: check_names,
        summary,
        groups: group_results,
        zxzn: zxzn_results,
        elapsed_ms: opts.timings.then(|| ms(start)),
    })
}

fn run_group(
    g: &CorpusGroup,
    checks: &[&dyn Check],
    limits: &Limits,
    timings: bool,
) -> GroupResult {
    let start = Instant::now();
    let mut result = GroupResult {
        name: g.name.clone(),
        order: None,
        lattice_size: None,
        cyclic: None,
        abelian: None,
        distributive: None,
        modular: None,
        witness: None,
        classification: None,
        checks: Vec::new(),
        error: None,
        elapsed_ms: None,
    };
    let built = build_with(
        &g.spec,
        &BuildOptions {
            order_cap: limits.order_cap,
        },
    )
    .map_err(|e| e.to_string())
    .and_then(|grp| {
        SubgroupLattice::enumerate_shared(
            Arc::new(grp.with_name(g.name.clone())),
            &EnumerateOptions {
                subgroup_budget: limits.subgroup_budget,
            },
        )
        .map_err(|e| e.to_string())
    });
    match built {
        Err(e) => result.error = Some(e),
        Ok(lattice) => {
            let ctx = GroupContext::new(g.name.clone(), lattice, g.expect.clone());
            let f = &ctx.facts;
            result.order = Some(ctx.lattice.group().order());
            result.lattice_size = Some(ctx.lattice.len());
            result.cyclic = Some(f.cyclic);
            result.abelian = Some(f.abelian);
            result.distributive = Some(f.distributive);
            result.modular = Some(f.modular);
            result.witness = f.cyclic_diamond.clone();
            result.classification = f.classification.as_ref().ok().cloned();
            result.checks = checks.iter().map(|c| c.run(&ctx)).collect();
        }
    }
    result.elapsed_ms = timings.then(|| ms(start));
    result
}

/// Runs one bounded `Z × Z_n` search and judges it; `witness_cap` applies unless the task sets its own.
pub fn run_zxzn_task(t: &ZxznTask, witness_cap: usize, timings: bool) -> ZxznResult {
    let start = Instant::now();
    let cap = t.witness_cap.unwrap_or(witness_cap);
    let power_of_two = t.n > 1 && t.n.is_power_of_two();
    let mut result = ZxznResult {
        n: t.n,
        bound: t.bound,
        expect: t.expect,
        witness_count: 0,
        witness_cap: cap,
        lemma_status: None,
        consistent: true,
        detail: None,
        witnesses: Vec::new(),
        elapsed_ms: None,
    };
    let found = match search_generalized_cyclic_diamond(
        t.n,
        t.bound,
        &SearchOptions { witness_cap: cap },
    ) {
        Ok(ws) => ws,
        Err(e) => {
            result.consistent = false;
            result.detail = Some(e.to_string());
            return result;
        }
    };
    let mut problems = Vec::new();
    for w in &found {
        let properties = witness_properties(w);
        if !w.is_valid() {
            problems.push("witness fails re-validation".to_string());
        }
        if properties.bezout == Some(false) {
            problems.push("full-top witness with non-coprime x-components".to_string());
        }
        if properties.theorem_violation {
            problems.push("diamond in Z x Z_(2^N)".to_string());
        }
        result.witnesses.push(ZWitnessReport {
            witness: w.clone(),
            properties,
        });
    }
    result.witness_count = found.len();
    if power_of_two {
        result.lemma_status = Some(if found.is_empty() {
            LemmaStatus::Vacuous
        } else {
            LemmaStatus::Evaluated
        });
    }
    match (t.expect, found.is_empty()) {
        (ZxznExpect::None, false) => problems.push("expected no witness up to the bound".into()),
        (ZxznExpect::Some, true) => problems.push("expected a witness up to the bound".into()),
        _ => {}
    }
    problems.dedup();
    if !problems.is_empty() {
        result.consistent = false;
        result.detail = Some(problems.join("; "));
    }
    result.elapsed_ms = timings.then(|| ms(start));
    result
}

#[cfg(test)]
mod tests;
