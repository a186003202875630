use serde::{Deserialize, Serialize};

use super::{DiamondWitness, PentagonWitness};
use crate::lattice::{Subgroup, SubgroupId, SubgroupLattice};

/// Which diamonds a search accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiamondKind {
    /// Any M3 sublattice.
    M3,
    /// Cyclic middles and bottom, bottom maximal in at least two middles.
    Cyclic,
    /// Cyclic middles and bottom, bottom maximal in all three middles.
    CyclicStrict,
    /// Cyclic middles and bottom, no maximality condition.
    Generalized,
}

impl DiamondKind {
    fn needs_cyclic(self) -> bool {
        self != DiamondKind::M3
    }

    /// Minimum number of middles the bottom must be maximal in.
    fn maximal_needed(self) -> usize {
        match self {
            DiamondKind::Cyclic => 2,
            DiamondKind::CyclicStrict => 3,
            DiamondKind::M3 | DiamondKind::Generalized => 0,
        }
    }
}

/// Calls `visit(bottom, top, [x, y, z])` for every diamond of the given kind in search
/// order (bottoms ascending, tops descending, middles in canonical order) until it
/// returns `false`.
fn search(
    l: &SubgroupLattice,
    kind: DiamondKind,
    mut visit: impl FnMut(SubgroupId, SubgroupId, [SubgroupId; 3]) -> bool,
) {
    let subgroups = l.subgroups();
    for b in l.ids() {
        if kind.needs_cyclic() && !l.is_cyclic_subgroup(b) {
            continue;
        }
        let b_order = l.order_of(b);
        let tops: Vec<SubgroupId> = l.above(b).iter().filter(|&t| t != b).collect();
        for &t in tops.iter().rev() {
            let cands: Vec<SubgroupId> = l
                .above(b)
                .iter()
                .take_while(|&m| m < t)
                .filter(|&m| m != b && l.leq(m, t))
                .filter(|&m| !kind.needs_cyclic() || l.is_cyclic_subgroup(m))
                .collect();
            if cands.len() < 3 {
                continue;
            }
            let maximal: Vec<bool> = cands.iter().map(|&m| l.is_maximal_in(b, m)).collect();
            let t_order = l.order_of(t);
            // meet = b iff the intersection has |b| elements (both contain b);
            // join = t iff the least common upper bound is t
            let pair_ok = |i: usize, j: usize| {
                let (x, y) = (cands[i], cands[j]);
                let (ox, oy) = (l.order_of(x), l.order_of(y));
                ox * oy / b_order <= t_order
                    && subgroups[x]
                        .members()
                        .intersection_len(subgroups[y].members())
                        == b_order
                    && l.join(x, y) == t
            };
            let need = kind.maximal_needed();
            for i in 0..cands.len() {
                let partners: Vec<usize> =
                    (i + 1..cands.len()).filter(|&j| pair_ok(i, j)).collect();
                for (pj, &j) in partners.iter().enumerate() {
                    for &k in &partners[pj + 1..] {
                        let count = [i, j, k].iter().filter(|&&m| maximal[m]).count();
                        if count >= need
                            && pair_ok(j, k)
                            && !visit(b, t, [cands[i], cands[j], cands[k]])
                        {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// First diamond of the given kind in search order.
pub fn find_diamond(l: &SubgroupLattice, kind: DiamondKind) -> Option<DiamondWitness> {
    let mut found = None;
    search(l, kind, |b, t, middles| {
        found = Some(DiamondWitness::from_ids(l, t, middles, b, None));
        false
    });
    found
}

/// All diamonds of the given kind in search order, at most `cap` of them.
pub fn all_diamonds(l: &SubgroupLattice, kind: DiamondKind, cap: usize) -> Vec<DiamondWitness> {
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    search(l, kind, |b, t, middles| {
        out.push(DiamondWitness::from_ids(l, t, middles, b, None));
        out.len() < cap
    });
    out
}

pub fn find_m3(l: &SubgroupLattice) -> Option<DiamondWitness> {
    find_diamond(l, DiamondKind::M3)
}

pub fn find_cyclic_diamond(l: &SubgroupLattice) -> Option<DiamondWitness> {
    find_diamond(l, DiamondKind::Cyclic)
}

pub fn find_strict_cyclic_diamond(l: &SubgroupLattice) -> Option<DiamondWitness> {
    find_diamond(l, DiamondKind::CyclicStrict)
}

pub fn find_generalized_cyclic_diamond(l: &SubgroupLattice) -> Option<DiamondWitness> {
    find_diamond(l, DiamondKind::Generalized)
}

pub fn find_n5(l: &SubgroupLattice) -> Option<PentagonWitness> {
    // a ⋖ c, b ∧ a = b ∧ c and c ≤ a ∨ b force b incomparable to both
    let (a, b, c) = l.modularity_failure()?;
    let s = |id: SubgroupId| l.subgroup(id).clone();
    Some(PentagonWitness {
        top: s(l.join(a, b)),
        high: s(c),
        low: s(a),
        side: s(b),
        bottom: s(l.meet(a, b)),
    })
}

/// A non-cyclic subgroup all of whose proper subgroups are cyclic; `None` iff the group is
/// cyclic. The canonically first non-cyclic subgroup qualifies since it has minimal order.
pub fn minimal_non_cyclic_subgroup(l: &SubgroupLattice) -> Option<Subgroup> {
    l.ids()
        .find(|&i| !l.is_cyclic_subgroup(i))
        .map(|i| l.subgroup(i).clone())
}
