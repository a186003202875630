//! Named consistency checks run against every corpus group.

use serde::Serialize;

use super::GroupContext;
use crate::classify::MillerMoreno;
use crate::patterns::{
    find_cyclic_diamond, find_generalized_cyclic_diamond, find_m3, locate_diamond_paq,
    locate_diamond_prime_generated, PatternError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One falsifiable statement evaluated per group.
pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &GroupContext) -> CheckOutcome;
}

fn outcome(name: &str, failures: Vec<String>) -> CheckOutcome {
    CheckOutcome {
        check: name.to_string(),
        status: if failures.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: (!failures.is_empty()).then(|| failures.join("; ")),
    }
}

fn skipped(name: &str, why: &str) -> CheckOutcome {
    CheckOutcome {
        check: name.to_string(),
        status: CheckStatus::Skipped,
        detail: Some(why.to_string()),
    }
}

/// Distributive, cyclic-diamond free and cyclic coincide.
struct OreEquivalence;

impl Check for OreEquivalence {
    fn name(&self) -> &'static str {
        "ore_equivalence"
    }

    fn run(&self, ctx: &GroupContext) -> CheckOutcome {
        let f = &ctx.facts;
        let free = f.cyclic_diamond.is_none();
        let mut fails = Vec::new();
        if f.distributive != f.cyclic {
            fails.push(format!(
                "distributive = {} but cyclic = {}",
                f.distributive, f.cyclic
            ));
        }
        if free != f.cyclic {
            fails.push(format!(
                "cyclic-diamond free = {free} but cyclic = {}",
                f.cyclic
            ));
        }
        outcome(self.name(), fails)
    }
}

/// A cyclic-diamond exists iff the group is non-cyclic, and every witness re-validates.
struct MainTheorem;

impl Check for MainTheorem {
    fn name(&self) -> &'static str {
        "main_theorem"
    }

    fn run(&self, ctx: &GroupContext) -> CheckOutcome {
        let f = &ctx.facts;
        let g = ctx.lattice.group();
        let mut fails = Vec::new();
        match &f.cyclic_diamond {
            Some(w) => {
                if f.cyclic {
                    fails.push("cyclic group has a cyclic-diamond".into());
                }
                if let Err(e) = w.validate(g) {
                    fails.push(e.to_string());
                }
                if !w.is_cyclic_diamond() {
                    fails.push("witness flags do not describe a cyclic-diamond".into());
                }
                // finder hierarchy: cyclic => generalized => M3
                if find_generalized_cyclic_diamond(&ctx.lattice).is_none() {
                    fails.push("generalized finder misses a cyclic-diamond".into());
                }
                if find_m3(&ctx.lattice).is_none() {
                    fails.push("M3 finder misses a cyclic-diamond".into());
                }
            }
            None => {
                if !f.cyclic {
                    fails.push("non-cyclic group without a cyclic-diamond".into());
                }
            }
        }
        let e = &ctx.expect;
        if let Some(want) = e.cyclic_diamond {
            if want != f.cyclic_diamond.is_some() {
                fails.push(format!(
                    "expected cyclic-diamond = {want}, found {}",
                    f.cyclic_diamond.is_some()
                ));
            }
        }
        if let Some(want) = e.cyclic {
            if want != f.cyclic {
                fails.push(format!("expected cyclic = {want}, found {}", f.cyclic));
            }
        }
        outcome(self.name(), fails)
    }
}

/// Minimal non-cyclic groups fall into exactly one family, and the structure-table
/// impossibilities hold.
struct MillerMorenoCheck;

impl Check for MillerMorenoCheck {
    fn name(&self) -> &'static str {
        "miller_moreno"
    }

    fn run(&self, ctx: &GroupContext) -> CheckOutcome {
        let rec = match &ctx.facts.classification {
            Ok(r) => r,
            Err(e) => return outcome(self.name(), vec![e.to_string()]),
        };
        let mut fails = Vec::new();
        let order = ctx.lattice.group().order();
        let mm = rec.miller_moreno;
        if (mm != MillerMoreno::NotMinimalNonCyclic) != rec.minimal_non_cyclic {
            fails.push(format!("family {mm:?} disagrees with minimal_non_cyclic"));
        }
        match mm {
            MillerMoreno::ElementaryAbelianP2 if !rec.abelian => {
                fails.push("elementary abelian family on a non-abelian group".into())
            }
            MillerMoreno::Q8Type | MillerMoreno::SemidirectQp if rec.abelian => {
                fails.push(format!("{mm:?} on an abelian group"))
            }
            _ => {}
        }
        if rec.minimal_non_cyclic && !rec.prime_generated && !rec.unique_prime_subgroup {
            fails.push("type Yes-No-No".into());
        }
        if rec.minimal_non_cyclic
            && rec.prime_generated
            && !rec.unique_prime_subgroup
            && !rec.abelian
        {
            fails.push("finite non-abelian type Yes-Yes-No".into());
        }
        if rec.minimal_non_cyclic && rec.abelian {
            let f = crate::arith::factorize(order as u64);
            if !matches!(f.as_slice(), [(_, 2)]) {
                fails.push(format!(
                    "abelian minimal non-cyclic of order {order}, not p^2"
                ));
            }
        }
        if let Some(want) = ctx.expect.miller_moreno {
            if want != mm {
                fails.push(format!("expected family {want:?}, found {mm:?}"));
            }
        }
        outcome(self.name(), fails)
    }
}

/// The three table columns match the expected triple, where one is given.
struct Table1;

impl Check for Table1 {
    fn name(&self) -> &'static str {
        "table1"
    }

    fn run(&self, ctx: &GroupContext) -> CheckOutcome {
        let Some(want) = ctx.expect.table1 else {
            return skipped(self.name(), "no expected triple");
        };
        let rec = match &ctx.facts.classification {
            Ok(r) => r,
            Err(e) => return outcome(self.name(), vec![e.to_string()]),
        };
        let got = rec.triple();
        let fails = if got == want.as_tuple() {
            vec![]
        } else {
            vec![format!(
                "expected {}, found {}",
                want.label(),
                rec.triple_label()
            )]
        };
        outcome(self.name(), fails)
    }
}

/// Abelian groups have modular lattices; cyclic groups distributive ones.
struct ModularityAbelian;

impl Check for ModularityAbelian {
    fn name(&self) -> &'static str {
        "modularity_abelian"
    }

    fn run(&self, ctx: &GroupContext) -> CheckOutcome {
        let f = &ctx.facts;
        let mut fails = Vec::new();
        if f.abelian && !f.modular {
            fails.push("abelian group with a pentagon".into());
        }
        if f.cyclic && !f.distributive {
            fails.push("cyclic group with a non-distributive lattice".into());
        }
        outcome(self.name(), fails)
    }
}

/// Both locators succeed whenever their hypotheses hold, and their witnesses validate and
/// agree with the generic finder.
struct ConstructiveLocators;

impl Check for ConstructiveLocators {
    fn name(&self) -> &'static str {
        "constructive_locators"
    }

    fn run(&self, ctx: &GroupContext) -> CheckOutcome {
        let g = ctx.lattice.group();
        let mut fails = Vec::new();
        let mut ran = false;
        let generic = find_cyclic_diamond(&ctx.lattice);
        let mut judge =
            |label: &str, r: Result<crate::patterns::DiamondWitness, PatternError>| match r {
                Ok(w) => {
                    ran = true;
                    if let Err(e) = w.validate(g) {
                        fails.push(format!("{label}: {e}"));
                    }
                    if generic.is_none() {
                        fails.push(format!("{label}: generic finder found nothing"));
                    }
                }
                Err(PatternError::PreconditionFailed(_)) => {}
                Err(e @ PatternError::InternalContradiction(_)) => {
                    ran = true;
                    fails.push(format!("{label}: {e}"));
                }
            };
        judge("prime_generated", locate_diamond_prime_generated(g));
        judge("paq", locate_diamond_paq(&ctx.lattice));
        if !ran {
            return skipped(self.name(), "no locator hypotheses hold");
        }
        outcome(self.name(), fails)
    }
}

/// Checks addressable by name, in registration order.
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl CheckRegistry {
    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn register(&mut self, c: Box<dyn Check>) {
        self.checks.retain(|e| e.name() != c.name());
        self.checks.push(c);
    }
}

impl Default for CheckRegistry {
    fn default() -> Self {
        CheckRegistry {
            checks: vec![
                Box::new(OreEquivalence),
                Box::new(MainTheorem),
                Box::new(MillerMorenoCheck),
                Box::new(Table1),
                Box::new(ModularityAbelian),
                Box::new(ConstructiveLocators),
            ],
        }
    }
}
