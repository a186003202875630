//! Diamond (M3) and pentagon (N5) sublattices of subgroup lattices.
//!
//! A *cyclic diamond* is an M3 whose three middles and bottom are cyclic subgroups and
//! whose bottom is maximal in at least two of the middles. Dropping the maximality
//! requirement gives a *generalized cyclic diamond*.

mod finders;
mod locators;
mod registry;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use finders::{
    all_diamonds, find_cyclic_diamond, find_diamond, find_generalized_cyclic_diamond, find_m3,
    find_n5, find_strict_cyclic_diamond, minimal_non_cyclic_subgroup, DiamondKind,
};
pub use locators::{locate_diamond_paq, locate_diamond_prime_generated};
pub use registry::{DetectorRegistry, Pattern, PatternDetector};

use crate::grp::{Element, FiniteGroup};
use crate::lattice::{Subgroup, SubgroupId, SubgroupLattice};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    /// A case the construction's argument rules out was reached.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid witness: {0}")]
pub struct WitnessError(pub String);

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Subgroup", 2)?;
        st.serialize_field("order", &self.order())?;
        let gens: Vec<usize> = self.generators().iter().map(|g| g.index()).collect();
        st.serialize_field("gens", &gens)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiamondFlags {
    pub middles_cyclic: bool,
    pub bottom_cyclic: bool,
    /// Labels (indices into `middles`) of two middles in which the bottom is maximal.
    pub maximal_pair: Option<(usize, usize)>,
}

/// A diamond sublattice: three middles with common pairwise meet `bottom` and join `top`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiamondWitness {
    pub top: Subgroup,
    pub middles: [Subgroup; 3],
    pub bottom: Subgroup,
    pub flags: DiamondFlags,
}

/// `true` iff `inner < outer` with no subgroup strictly between, decided from the table:
/// every element of `outer` outside `inner` must generate `outer` together with `inner`.
pub fn is_maximal_subgroup(g: &FiniteGroup, inner: &Subgroup, outer: &Subgroup) -> bool {
    if inner.order() >= outer.order() || !inner.is_subgroup_of(outer) {
        return false;
    }
    let mut gens: Vec<Element> = inner.generators().to_vec();
    gens.push(Element::IDENTITY);
    outer.elements().filter(|&x| !inner.contains(x)).all(|x| {
        *gens.last_mut().unwrap() = x;
        g.closure(&gens).len() == outer.order()
    })
}

impl DiamondWitness {
    /// Builds a witness from lattice ids, computing every flag against the lattice.
    /// `preferred_pair` is kept as the maximal pair if it qualifies.
    pub fn from_ids(
        l: &SubgroupLattice,
        top: SubgroupId,
        middles: [SubgroupId; 3],
        bottom: SubgroupId,
        preferred_pair: Option<(usize, usize)>,
    ) -> Self {
        let maximal: Vec<bool> = middles
            .iter()
            .map(|&m| l.is_maximal_in(bottom, m))
            .collect();
        let qualifies = |(i, j): (usize, usize)| maximal[i] && maximal[j];
        let maximal_pair = preferred_pair
            .filter(|&p| qualifies(p))
            .or_else(|| [(0, 1), (0, 2), (1, 2)].into_iter().find(|&p| qualifies(p)));
        DiamondWitness {
            top: l.subgroup(top).clone(),
            middles: middles.map(|m| l.subgroup(m).clone()),
            bottom: l.subgroup(bottom).clone(),
            flags: DiamondFlags {
                middles_cyclic: middles.iter().all(|&m| l.is_cyclic_subgroup(m)),
                bottom_cyclic: l.is_cyclic_subgroup(bottom),
                maximal_pair,
            },
        }
    }

    /// Witness from explicit subgroups; flags computed from the group table.
    pub fn from_subgroups(
        g: &FiniteGroup,
        top: Subgroup,
        middles: [Subgroup; 3],
        bottom: Subgroup,
        preferred_pair: Option<(usize, usize)>,
    ) -> Self {
        let maximal: Vec<bool> = middles
            .iter()
            .map(|m| is_maximal_subgroup(g, &bottom, m))
            .collect();
        let qualifies = |(i, j): (usize, usize)| maximal[i] && maximal[j];
        let maximal_pair = preferred_pair
            .filter(|&p| qualifies(p))
            .or_else(|| [(0, 1), (0, 2), (1, 2)].into_iter().find(|&p| qualifies(p)));
        let flags = DiamondFlags {
            middles_cyclic: middles.iter().all(|m| m.is_cyclic_in(g)),
            bottom_cyclic: bottom.is_cyclic_in(g),
            maximal_pair,
        };
        DiamondWitness {
            top,
            middles,
            bottom,
            flags,
        }
    }

    /// Satisfies the cyclic-diamond shape: cyclic middles and bottom, maximal pair present.
    pub fn is_cyclic_diamond(&self) -> bool {
        self.flags.middles_cyclic && self.flags.bottom_cyclic && self.flags.maximal_pair.is_some()
    }

    /// Re-checks everything from the multiplication table alone: closure of all five
    /// subgroups, distinct middles, the six meet/join equalities and every flag claim.
    pub fn validate(&self, g: &FiniteGroup) -> Result<(), WitnessError> {
        let err = |m: String| Err(WitnessError(m));
        let all = [&self.top, &self.bottom]
            .into_iter()
            .chain(self.middles.iter());
        for s in all {
            if s.group_id() != g.id() {
                return err("subgroup belongs to a different group".into());
            }
            if !s.is_closed_in(g) {
                return err(format!(
                    "member set of order {} is not a subgroup",
                    s.order()
                ));
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (x, y) = (&self.middles[i], &self.middles[j]);
            if x == y {
                return err(format!("middles {i} and {j} coincide"));
            }
            if x.is_subgroup_of(y) || y.is_subgroup_of(x) {
                return err(format!("middles {i} and {j} are comparable"));
            }
            if x.meet(y, g) != self.bottom {
                return err(format!("meet of middles {i} and {j} is not the bottom"));
            }
            if x.join(y, g) != self.top {
                return err(format!("join of middles {i} and {j} is not the top"));
            }
        }
        if self.flags.middles_cyclic && !self.middles.iter().all(|m| m.is_cyclic_in(g)) {
            return err("middles claimed cyclic but are not".into());
        }
        if self.flags.bottom_cyclic && !self.bottom.is_cyclic_in(g) {
            return err("bottom claimed cyclic but is not".into());
        }
        if let Some((i, j)) = self.flags.maximal_pair {
            if i == j || i > 2 || j > 2 {
                return err(format!("bad maximal pair labels ({i}, {j})"));
            }
            for k in [i, j] {
                if !is_maximal_subgroup(g, &self.bottom, &self.middles[k]) {
                    return err(format!("bottom is not maximal in middle {k}"));
                }
            }
        }
        Ok(())
    }
}

/// Pentagon sublattice `bottom < low < high < top`, `bottom < side < top`, with `side`
/// incomparable to `low` and `high`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PentagonWitness {
    pub top: Subgroup,
    pub high: Subgroup,
    pub low: Subgroup,
    pub side: Subgroup,
    pub bottom: Subgroup,
}

impl PentagonWitness {
    pub fn validate(&self, g: &FiniteGroup) -> Result<(), WitnessError> {
        let err = |m: &str| Err(WitnessError(m.to_string()));
        for s in [&self.top, &self.high, &self.low, &self.side, &self.bottom] {
            if !s.is_closed_in(g) {
                return err("member set is not a subgroup");
            }
        }
        let lt = |a: &Subgroup, b: &Subgroup| a.is_subgroup_of(b) && a != b;
        if !(lt(&self.bottom, &self.low) && lt(&self.low, &self.high) && lt(&self.high, &self.top))
        {
            return err("long chain is not strict");
        }
        if !(lt(&self.bottom, &self.side) && lt(&self.side, &self.top)) {
            return err("short chain is not strict");
        }
        for x in [&self.low, &self.high] {
            if x.is_subgroup_of(&self.side) || self.side.is_subgroup_of(x) {
                return err("side is comparable with the long chain");
            }
            if x.meet(&self.side, g) != self.bottom {
                return err("meet with side is not the bottom");
            }
            if x.join(&self.side, g) != self.top {
                return err("join with side is not the top");
            }
        }
        Ok(())
    }
}
