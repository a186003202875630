use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use super::VerificationReport;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::patterns::{find_cyclic_diamond, DiamondWitness};

pub fn export_lattice_dot(l: &SubgroupLattice, path: &Path) -> io::Result<()> {
    fs::write(path, l.to_dot())
}

/// Pretty-printed JSON with a trailing newline.
pub fn report_to_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn export_report_json(report: &VerificationReport, path: &Path) -> io::Result<()> {
    fs::write(path, report_to_json(report))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupEntry {
    pub id: SubgroupId,
    pub order: usize,
    pub gens: Vec<usize>,
    pub cyclic: bool,
}

/// Everything `lattice --json` writes: subgroups in canonical order, covers as id pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeSummary {
    pub group: String,
    pub order: usize,
    pub subgroups: Vec<SubgroupEntry>,
    pub covers: Vec<(SubgroupId, SubgroupId)>,
    pub cyclic: bool,
    pub abelian: bool,
    pub distributive: bool,
    pub modular: bool,
    pub cyclic_diamond: Option<DiamondWitness>,
}

pub fn lattice_summary(l: &SubgroupLattice) -> LatticeSummary {
    LatticeSummary {
        group: l.group().name().to_string(),
        order: l.group().order(),
        subgroups: l
            .ids()
            .map(|id| SubgroupEntry {
                id,
                order: l.order_of(id),
                gens: l
                    .subgroup(id)
                    .generators()
                    .iter()
                    .map(|g| g.index())
                    .collect(),
                cyclic: l.is_cyclic_subgroup(id),
            })
            .collect(),
        covers: l.covers(),
        cyclic: l.is_cyclic_group(),
        abelian: l.group().is_abelian(),
        distributive: l.is_distributive(),
        modular: l.is_modular(),
        cyclic_diamond: find_cyclic_diamond(l),
    }
}

pub fn export_lattice_json(l: &SubgroupLattice, path: &Path) -> io::Result<()> {
    let mut s = serde_json::to_string_pretty(&lattice_summary(l)).expect("summary serializes");
    s.push('\n');
    fs::write(path, s)
}
