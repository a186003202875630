//! Finite groups as validated Cayley tables, plus element-level primitives.

mod build;
mod spec;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use build::{build, build_with, BuildOptions, ASSOCIATIVITY_CHECK_LIMIT};
pub use spec::{GroupSpec, NamedGroupSpec};

use crate::arith::is_prime;
use crate::bitset::IndexSet;
use crate::lattice::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("Cayley table is not a group: {0}")]
    ValidationFailed(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
}

/// An element of a specific [`FiniteGroup`], identified by its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    pub const IDENTITY: Element = Element(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite group stored as its full multiplication table.
///
/// Element 0 is always the identity. The table is immutable after construction,
/// so a group can be shared freely between threads.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    id: u64,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    pub(crate) fn from_validated(
        name: String,
        order: usize,
        table: Vec<u32>,
        check_associativity: bool,
    ) -> Result<Self, GroupError> {
        let fail = |msg: String| Err(GroupError::ValidationFailed(msg));
        if order == 0 || table.len() != order * order {
            return fail(format!("table of size {} for order {order}", table.len()));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return fail(format!(
                    "element 0 is not a two-sided identity (fails at {x})"
                ));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let c = at(a, b);
                if seen[c] == a {
                    return fail(format!("row {a} repeats element {c}"));
                }
                seen[c] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..order {
            for a in 0..order {
                let c = at(a, b);
                if seen[c] == b {
                    return fail(format!("column {b} repeats element {c}"));
                }
                seen[c] = b;
            }
        }
        let mut inverse = vec![0u32; order];
        for (x, slot) in inverse.iter_mut().enumerate() {
            let inv = (0..order)
                .find(|&y| at(x, y) == 0)
                .expect("latin row contains 0");
            if at(inv, x) != 0 {
                return fail(format!("element {x} has no two-sided inverse"));
            }
            *slot = inv as u32;
        }
        if check_associativity {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return fail(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                        }
                    }
                }
            }
        }
        let orders = (0..order)
            .map(|g| {
                let mut k = 1;
                let mut x = g;
                while x != 0 {
                    x = at(x, g);
                    k += 1;
                }
                k
            })
            .collect();
        let mut h = DefaultHasher::new();
        order.hash(&mut h);
        table.hash(&mut h);
        Ok(FiniteGroup {
            name,
            order,
            table,
            inverse,
            orders,
            id: h.finish(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Fingerprint of the multiplication table; subgroups carry it to tie them to their group.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.table[a.0 * self.order + b.0] as usize)
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        Element(self.inverse[a.0] as usize)
    }

    pub fn pow(&self, g: Element, k: usize) -> Element {
        let k = k % self.element_order(g);
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    /// Row `a` of the table as element indices.
    pub fn table_row(&self, a: Element) -> Vec<usize> {
        self.table[a.0 * self.order..(a.0 + 1) * self.order]
            .iter()
            .map(|&c| c as usize)
            .collect()
    }

    /// Smallest `k >= 1` with `g^k = e`.
    #[inline]
    pub fn element_order(&self, g: Element) -> usize {
        self.orders[g.0] as usize
    }

    pub fn commutes(&self, g: Element, h: Element) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(Element(a), Element(b))))
    }

    /// All elements whose order is prime, ascending.
    pub fn prime_order_elements(&self) -> Vec<Element> {
        self.elements()
            .filter(|&g| is_prime(self.element_order(g) as u64))
            .collect()
    }

    /// Member set of the subgroup generated by `gens` (breadth-first closure under right
    /// multiplication, which suffices in a finite group).
    pub fn closure(&self, gens: &[Element]) -> IndexSet {
        let mut members = IndexSet::new(self.order);
        members.insert(0);
        let mut frontier = vec![0usize];
        let gens: Vec<usize> = gens.iter().map(|g| g.0).filter(|&g| g != 0).collect();
        while let Some(x) = frontier.pop() {
            let row = &self.table[x * self.order..(x + 1) * self.order];
            for &g in &gens {
                let y = row[g] as usize;
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members
    }

    pub fn cyclic_subgroup(&self, g: Element) -> Subgroup {
        Subgroup::from_members(self, self.closure(&[g]))
    }

    pub fn generated_subgroup(&self, gens: &[Element]) -> Subgroup {
        Subgroup::from_members(self, self.closure(gens))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self, IndexSet::from_indices(self.order, [0]))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self, IndexSet::full(self.order))
    }

    /// `true` iff some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }
}
