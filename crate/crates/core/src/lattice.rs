//! Subgroup enumeration and the subgroup lattice.
//!
//! Subgroups are found by a join-closure fixpoint: start from every cyclic subgroup and
//! keep adjoining cyclic subgroups to known subgroups until nothing new appears. Every
//! subgroup is the join of the cyclic subgroups it contains, so the fixpoint is complete.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::bitset::IndexSet;
use crate::grp::{Element, FiniteGroup};

/// Canonical index of a subgroup inside its [`SubgroupLattice`].
pub type SubgroupId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("subgroup count exceeded the budget of {limit}")]
    BudgetExceeded { limit: usize },
}

/// A subgroup of a particular group, stored as a member bitset.
///
/// `generators` is the greedy generating set: scan members in ascending index order and
/// keep each one not already generated by the previous picks. It is determined by the
/// member set alone.
#[derive(Debug, Clone)]
pub struct Subgroup {
    members: IndexSet,
    generators: Vec<Element>,
    group_id: u64,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group_id.hash(state);
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    /// Canonical order: by order, then lexicographically by member list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// Wraps a member set that is already known to be a subgroup of `group`.
    pub fn from_members(group: &FiniteGroup, members: IndexSet) -> Self {
        debug_assert_eq!(members.domain(), group.order());
        let mut generators = Vec::new();
        let mut generated = IndexSet::from_indices(group.order(), [0]);
        for m in members.iter() {
            if !generated.contains(m) {
                generators.push(Element(m));
                generated = group.closure(&generators);
            }
        }
        Subgroup {
            members,
            generators,
            group_id: group.id(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &IndexSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().map(Element)
    }

    pub fn contains(&self, g: Element) -> bool {
        self.members.contains(g.index())
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Direct scan: contains the identity and is closed under products and inverses.
    pub fn is_closed_in(&self, group: &FiniteGroup) -> bool {
        self.contains(group.identity())
            && self.elements().all(|a| {
                self.contains(group.inv(a))
                    && self.elements().all(|b| self.contains(group.mul(a, b)))
            })
    }

    /// A subgroup is cyclic iff it contains an element whose order equals its own order.
    pub fn is_cyclic_in(&self, group: &FiniteGroup) -> bool {
        let n = self.order();
        self.elements().any(|g| group.element_order(g) == n)
    }

    /// Intersection, which is again a subgroup.
    pub fn meet(&self, other: &Subgroup, group: &FiniteGroup) -> Subgroup {
        Subgroup::from_members(group, self.members.intersection(&other.members))
    }

    /// Subgroup generated by the union.
    pub fn join(&self, other: &Subgroup, group: &FiniteGroup) -> Subgroup {
        let gens: Vec<Element> = self
            .generators
            .iter()
            .chain(&other.generators)
            .copied()
            .collect();
        Subgroup::from_members(group, group.closure(&gens))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub subgroup_budget: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            subgroup_budget: 100_000,
        }
    }
}

/// All subgroups of a finite group with containment, covers, meet and join.
///
/// Immutable once built. Meets are bitset intersections, joins are the first common upper
/// bound in canonical order (the unique smallest one), both answered on demand from the
/// precomputed containment sets.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<IndexSet, SubgroupId>,
    above: Vec<IndexSet>,
    below: Vec<IndexSet>,
    lower_covers: Vec<Vec<SubgroupId>>,
    upper_covers: Vec<Vec<SubgroupId>>,
    cyclic: Vec<bool>,
}

pub fn enumerate_subgroups(group: &FiniteGroup) -> Result<SubgroupLattice, LatticeError> {
    SubgroupLattice::enumerate(group, &EnumerateOptions::default())
}

impl SubgroupLattice {
    pub fn enumerate(group: &FiniteGroup, opts: &EnumerateOptions) -> Result<Self, LatticeError> {
        Self::enumerate_shared(Arc::new(group.clone()), opts)
    }

    pub fn enumerate_shared(
        group: Arc<FiniteGroup>,
        opts: &EnumerateOptions,
    ) -> Result<Self, LatticeError> {
        let budget = opts.subgroup_budget;
        let mut found: HashMap<IndexSet, Vec<Element>> = HashMap::new();
        let mut worklist: Vec<IndexSet> = Vec::new();
        // cyclic subgroups, keyed by one generator each
        let mut cyclic_gens: Vec<(Element, IndexSet)> = Vec::new();
        for g in group.elements() {
            let members = group.closure(&[g]);
            if !found.contains_key(&members) {
                if found.len() >= budget {
                    return Err(LatticeError::BudgetExceeded { limit: budget });
                }
                found.insert(members.clone(), vec![g]);
                cyclic_gens.push((g, members.clone()));
                worklist.push(members);
            }
        }
        while let Some(h) = worklist.pop() {
            let h_gens = found[&h].clone();
            for (c, c_members) in &cyclic_gens {
                if c_members.is_subset(&h) {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.push(*c);
                let k = group.closure(&gens);
                if !found.contains_key(&k) {
                    if found.len() >= budget {
                        return Err(LatticeError::BudgetExceeded { limit: budget });
                    }
                    found.insert(k.clone(), gens);
                    worklist.push(k);
                }
            }
        }

        let mut subgroups: Vec<Subgroup> = found
            .into_keys()
            .map(|m| Subgroup::from_members(&group, m))
            .collect();
        subgroups.sort();
        Ok(Self::from_sorted(group, subgroups))
    }

    fn from_sorted(group: Arc<FiniteGroup>, subgroups: Vec<Subgroup>) -> Self {
        let n = subgroups.len();
        let index: HashMap<IndexSet, SubgroupId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        let mut above = vec![IndexSet::new(n); n];
        let mut below = vec![IndexSet::new(n); n];
        for i in 0..n {
            let oi = subgroups[i].order();
            for j in i..n {
                let oj = subgroups[j].order();
                if oj.is_multiple_of(oi) && subgroups[i].is_subgroup_of(&subgroups[j]) {
                    above[i].insert(j);
                    below[j].insert(i);
                }
            }
        }
        // A strictly smaller subgroup is maximal iff it lies in no maximal subgroup found
        // so far; scanning by descending order visits every intermediate one first.
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for j in 0..n {
            let mut covers: Vec<SubgroupId> = Vec::new();
            let candidates: Vec<usize> = below[j].iter().filter(|&i| i != j).collect();
            for &i in candidates.iter().rev() {
                if !covers.iter().any(|&m| below[m].contains(i)) {
                    covers.push(i);
                }
            }
            covers.sort_unstable();
            for &i in &covers {
                upper_covers[i].push(j);
            }
            lower_covers[j] = covers;
        }
        let cyclic = subgroups.iter().map(|s| s.is_cyclic_in(&group)).collect();
        SubgroupLattice {
            group,
            subgroups,
            index,
            above,
            below,
            lower_covers,
            upper_covers,
            cyclic,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn shared_group(&self) -> Arc<FiniteGroup> {
        Arc::clone(&self.group)
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn ids(&self) -> std::ops::Range<SubgroupId> {
        0..self.subgroups.len()
    }

    pub fn id_of(&self, s: &Subgroup) -> Option<SubgroupId> {
        self.index.get(&s.members).copied()
    }

    pub fn id_of_members(&self, members: &IndexSet) -> Option<SubgroupId> {
        self.index.get(members).copied()
    }

    pub fn bottom(&self) -> SubgroupId {
        0
    }

    pub fn top(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    pub fn order_of(&self, id: SubgroupId) -> usize {
        self.subgroups[id].order()
    }

    /// `a ≤ b` (containment).
    #[inline]
    pub fn leq(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.above[a].contains(b)
    }

    /// All subgroups containing `a`, as a set of ids.
    pub fn above(&self, a: SubgroupId) -> &IndexSet {
        &self.above[a]
    }

    /// All subgroups of `a`, as a set of ids.
    pub fn below(&self, a: SubgroupId) -> &IndexSet {
        &self.below[a]
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let m = self.subgroups[a]
            .members
            .intersection(&self.subgroups[b].members);
        self.index[&m]
    }

    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.above[a]
            .first_common(&self.above[b])
            .expect("the whole group is an upper bound")
    }

    /// Maximal subgroups of `b`.
    pub fn lower_covers(&self, b: SubgroupId) -> &[SubgroupId] {
        &self.lower_covers[b]
    }

    pub fn upper_covers(&self, a: SubgroupId) -> &[SubgroupId] {
        &self.upper_covers[a]
    }

    /// Hasse edges as `(lower, upper)` pairs, sorted.
    pub fn covers(&self) -> Vec<(SubgroupId, SubgroupId)> {
        let mut out: Vec<_> = self
            .ids()
            .flat_map(|j| self.lower_covers[j].iter().map(move |&i| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// `a` is a maximal subgroup of `b`: `a < b` with nothing strictly between.
    pub fn is_maximal_in(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.lower_covers[b].binary_search(&a).is_ok()
    }

    pub fn is_cyclic_subgroup(&self, a: SubgroupId) -> bool {
        self.cyclic[a]
    }

    pub fn cyclic_ids(&self) -> impl Iterator<Item = SubgroupId> + '_ {
        self.ids().filter(|&i| self.cyclic[i])
    }

    pub fn is_cyclic_group(&self) -> bool {
        self.cyclic[self.top()]
    }

    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all triples; stops at the first failure.
    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }

    pub fn distributivity_failure(&self) -> Option<(SubgroupId, SubgroupId, SubgroupId)> {
        let n = self.len();
        // the law holds outright when a is the bottom or top, or b and c are comparable
        for a in 1..n.saturating_sub(1) {
            for b in 1..n {
                for c in b + 1..n {
                    if self.leq(b, c) {
                        continue;
                    }
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Modular law `a ∨ (b ∧ c) = (a ∨ b) ∧ c` for all `a ≤ c`.
    ///
    /// A finite lattice is modular iff it is upper and lower semimodular, so only pairs of
    /// distinct covers of a common element (and dually) are examined.
    pub fn is_modular(&self) -> bool {
        self.modularity_failure().is_none()
    }

    /// A triple `(a, b, c)` with `a ⋖ c`, `b ∧ a = b ∧ c` and `c ≤ a ∨ b`: the pentagon
    /// `a ∧ b < a < c < a ∨ b` with side `b`.
    pub fn modularity_failure(&self) -> Option<(SubgroupId, SubgroupId, SubgroupId)> {
        for m in self.ids() {
            let ups = &self.upper_covers[m];
            for (i, &a) in ups.iter().enumerate() {
                for &b in &ups[i + 1..] {
                    let t = self.join(a, b);
                    // a, b cover m = a ∧ b; t must cover both
                    for (x, y) in [(a, b), (b, a)] {
                        if !self.is_maximal_in(x, t) {
                            let c = self.upper_covers[x]
                                .iter()
                                .copied()
                                .find(|&c| self.leq(c, t))
                                .expect("x < t has an upper cover below t");
                            return Some((x, y, c));
                        }
                    }
                }
            }
        }
        for t in self.ids() {
            let downs = &self.lower_covers[t];
            for (i, &a) in downs.iter().enumerate() {
                for &b in &downs[i + 1..] {
                    let m = self.meet(a, b);
                    // t = a ∨ b covers a and b; both must cover m
                    for (x, y) in [(a, b), (b, a)] {
                        if !self.is_maximal_in(m, x) {
                            let low = self.lower_covers[x]
                                .iter()
                                .copied()
                                .find(|&l| self.leq(m, l))
                                .expect("m < x has a lower cover above m");
                            return Some((low, y, x));
                        }
                    }
                }
            }
        }
        None
    }

    fn label(&self, id: SubgroupId) -> String {
        let gens: Vec<String> = self.subgroups[id]
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        format!("order={}; gens=[{}]", self.order_of(id), gens.join(","))
    }

    /// Graphviz rendering of the Hasse diagram, whole group at the top.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph subgroup_lattice {{").unwrap();
        writeln!(
            out,
            "  label=\"{}\";",
            self.group.name().replace('"', "\\\"")
        )
        .unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  edge [arrowhead=none];").unwrap();
        for id in self.ids() {
            writeln!(out, "  {id} [label=\"{}\"];", self.label(id)).unwrap();
        }
        for (lo, hi) in self.covers() {
            writeln!(out, "  {lo} -> {hi};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}
