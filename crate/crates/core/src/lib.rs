//! Subgroup lattices of finite groups and of Z x Z_n, with detectors for diamond
//! (M3) and pentagon (N5) sublattices whose nodes are cyclic subgroups.
//!
//! - [`grp`]: groups from declarative specs, as validated Cayley tables.
//! - [`lattice`]: complete subgroup enumeration, meet/join, covers, distributivity and modularity.
//! - [`patterns`]: diamond and pentagon witnesses, generic finders and constructive locators.
//! - [`classify`]: minimal non-cyclic groups and their three families.
//! - [`zxzn`]: exact subgroup arithmetic in Z x Z_n and bounded diamond search.
//! - [`campaign`]: corpus configuration, named checks and verification reports.

pub mod arith;
pub mod bitset;
pub mod campaign;
pub mod classify;
pub mod grp;
pub mod lattice;
pub mod patterns;
pub mod zxzn;

pub use grp::{build, Element, FiniteGroup, GroupError, GroupSpec, NamedGroupSpec};
pub use lattice::{enumerate_subgroups, Subgroup, SubgroupId, SubgroupLattice};
