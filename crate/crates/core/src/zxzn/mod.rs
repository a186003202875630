//! Subgroups of `Z × Z_n` in canonical Hermite form, and bounded diamond search.
//!
//! A subgroup `H` is stored through its preimage in `Z²`, a rank-two lattice that always
//! contains `(0, n)`. The Hermite basis of that lattice is `(d, e), (0, f)` with `d >= 0`,
//! `f | n` and `0 <= e < f`, so equal subgroups have equal fields.

mod hnf;
mod search;

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use hnf::hermite;
pub use search::{
    enumerate_cyclic_subgroups, search_generalized_cyclic_diamond, verify_noncyclic_diamond_2n,
    witness_properties, LemmaStatus, SearchOptions, WitnessProperties, ZDiamondWitness, ZMiddle,
    DEFAULT_WITNESS_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZxznError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("element has modulus {found}, expected {expected}")]
    ModulusMismatch { expected: u64, found: u64 },
}

/// An element `(x, a)` of `Z × Z_n`, with `0 <= a < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZElt {
    x: i64,
    a: u64,
    n: u64,
}

impl ZElt {
    /// Reduces `a` modulo `n`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn new(x: i64, a: i64, n: u64) -> Self {
        assert!(n >= 1, "modulus must be at least 1");
        ZElt {
            x,
            a: (a as i128).rem_euclid(n as i128) as u64,
            n,
        }
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn neg(&self) -> ZElt {
        ZElt::new(-self.x, -(self.a as i64), self.n)
    }

    pub fn add(&self, other: &ZElt) -> ZElt {
        assert_eq!(self.n, other.n, "moduli differ");
        ZElt::new(self.x + other.x, (self.a + other.a) as i64, self.n)
    }

    pub fn scale(&self, k: i64) -> ZElt {
        let a = (self.a as i128 * k as i128).rem_euclid(self.n as i128);
        ZElt::new(self.x * k, a as i64, self.n)
    }
}

impl fmt::Display for ZElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.a)
    }
}

/// Serialized as `[x, a]`.
impl Serialize for ZElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.a)?;
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZForm {
    /// `⟨(0, f)⟩`, of order `n / f`; `f = n` is the trivial subgroup.
    Finite { f: u64 },
    /// `⟨(d, e), (0, f)⟩` with `d > 0`.
    Mixed { d: u64, e: u64, f: u64 },
}

/// A subgroup of `Z × Z_n` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZSubgroup {
    n: u64,
    form: ZForm,
}

impl ZSubgroup {
    pub fn trivial(n: u64) -> Result<Self, ZxznError> {
        canonicalize(&[], n)
    }

    pub fn full(n: u64) -> Result<Self, ZxznError> {
        Ok(ZSubgroup {
            n: check_modulus(n)?,
            form: ZForm::Mixed { d: 1, e: 0, f: 1 },
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn form(&self) -> ZForm {
        self.form
    }

    /// `[d, e, f]`, with `d = e = 0` for the finite forms.
    pub fn canonical(&self) -> [u64; 3] {
        match self.form {
            ZForm::Finite { f } => [0, 0, f],
            ZForm::Mixed { d, e, f } => [d, e, f],
        }
    }

    pub fn is_full(&self) -> bool {
        self.form == (ZForm::Mixed { d: 1, e: 0, f: 1 })
    }

    pub fn is_trivial(&self) -> bool {
        self.form == ZForm::Finite { f: self.n }
    }

    /// Torsion part `⟨(0, f)⟩`.
    pub fn torsion(&self) -> ZSubgroup {
        let f = match self.form {
            ZForm::Finite { f } | ZForm::Mixed { f, .. } => f,
        };
        ZSubgroup {
            n: self.n,
            form: ZForm::Finite { f },
        }
    }

    pub fn contains(&self, e: &ZElt) -> bool {
        assert_eq!(self.n, e.n, "moduli differ");
        match self.form {
            ZForm::Finite { f } => e.x == 0 && e.a.is_multiple_of(f),
            ZForm::Mixed { d, e: ee, f } => {
                let d = d as i128;
                let x = e.x as i128;
                if x % d != 0 {
                    return false;
                }
                let k = x / d;
                (e.a as i128 - k * ee as i128).rem_euclid(f as i128) == 0
            }
        }
    }

    /// A generating set: `(d, e)` and `(0, f)`, omitting zero vectors.
    pub fn generators(&self) -> Vec<ZElt> {
        let n = self.n;
        let mut out = Vec::with_capacity(2);
        if let ZForm::Mixed { d, e, .. } = self.form {
            out.push(ZElt::new(d as i64, e as i64, n));
        }
        let f = self.torsion_index();
        if f != n {
            out.push(ZElt::new(0, f as i64, n));
        }
        out
    }

    fn torsion_index(&self) -> u64 {
        match self.form {
            ZForm::Finite { f } | ZForm::Mixed { f, .. } => f,
        }
    }

    /// Cyclic iff finite, or infinite with trivial torsion (`f = n`).
    pub fn is_cyclic(&self) -> bool {
        match self.form {
            ZForm::Finite { .. } => true,
            ZForm::Mixed { f, .. } => f == self.n,
        }
    }

    pub fn generator(&self) -> Option<ZElt> {
        match self.form {
            ZForm::Finite { f } => Some(ZElt::new(0, f as i64, self.n)),
            ZForm::Mixed { d, e, f } if f == self.n => Some(ZElt::new(d as i64, e as i64, self.n)),
            ZForm::Mixed { .. } => None,
        }
    }

    /// Intersection, from the Hermite form of `[[B1, B1], [B2, 0]]`: rows whose first half
    /// vanishes carry a basis of the intersection lattice in their second half.
    pub fn meet(&self, other: &ZSubgroup) -> ZSubgroup {
        assert_eq!(self.n, other.n, "moduli differ");
        let b1 = self.preimage_basis();
        let b2 = other.preimage_basis();
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(4);
        for r in &b1 {
            rows.push(vec![r[0], r[1], r[0], r[1]]);
        }
        for r in &b2 {
            rows.push(vec![r[0], r[1], 0, 0]);
        }
        hermite(&mut rows);
        let basis: Vec<[i128; 2]> = rows
            .iter()
            .filter(|r| r[0] == 0 && r[1] == 0)
            .map(|r| [r[2], r[3]])
            .collect();
        from_integer_rows(&basis, self.n)
    }

    pub fn join(&self, other: &ZSubgroup) -> ZSubgroup {
        assert_eq!(self.n, other.n, "moduli differ");
        let mut basis = self.preimage_basis();
        basis.extend(other.preimage_basis());
        from_integer_rows(&basis, self.n)
    }

    pub fn is_subgroup_of(&self, other: &ZSubgroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// Basis of the `Z²` preimage; always spans `(0, n)`.
    fn preimage_basis(&self) -> Vec<[i128; 2]> {
        match self.form {
            ZForm::Finite { f } => vec![[0, f as i128]],
            ZForm::Mixed { d, e, f } => vec![[d as i128, e as i128], [0, f as i128]],
        }
    }
}

impl fmt::Display for ZSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            ZForm::Finite { f: ff } => write!(f, "<(0, {ff})>"),
            ZForm::Mixed { d, e, f: ff } if ff == self.n => write!(f, "<({d}, {e})>"),
            ZForm::Mixed { d, e, f: ff } => write!(f, "<({d}, {e}), (0, {ff})>"),
        }
    }
}

/// Serialized as the canonical triple `[d, e, f]`.
impl Serialize for ZSubgroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.canonical().serialize(s)
    }
}

fn check_modulus(n: u64) -> Result<u64, ZxznError> {
    if n == 0 || n > i64::MAX as u64 {
        Err(ZxznError::InvalidModulus)
    } else {
        Ok(n)
    }
}

/// Canonical form of `⟨generators⟩`; the empty list gives the trivial subgroup.
pub fn canonicalize(generators: &[ZElt], n: u64) -> Result<ZSubgroup, ZxznError> {
    let n = check_modulus(n)?;
    if let Some(g) = generators.iter().find(|g| g.n != n) {
        return Err(ZxznError::ModulusMismatch {
            expected: n,
            found: g.n,
        });
    }
    let rows: Vec<[i128; 2]> = generators
        .iter()
        .map(|g| [g.x as i128, g.a as i128])
        .collect();
    Ok(from_integer_rows(&rows, n))
}

fn from_integer_rows(rows: &[[i128; 2]], n: u64) -> ZSubgroup {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.to_vec()).collect();
    m.push(vec![0, n as i128]);
    hermite(&mut m);
    // (0, n) is in the lattice, so column 1 always has a pivot
    let form = match m.as_slice() {
        [r] => ZForm::Finite { f: r[1] as u64 },
        [r0, r1] => ZForm::Mixed {
            d: r0[0] as u64,
            e: r0[1] as u64,
            f: r1[1] as u64,
        },
        _ => unreachable!("rank of a Z² lattice containing (0, n) is 1 or 2"),
    };
    ZSubgroup { n, form }
}

/// 2-adic valuation.
pub fn nu2(x: i64) -> Result<u32, ZxznError> {
    if x == 0 {
        Err(ZxznError::DomainError("nu2 of 0 is undefined".into()))
    } else {
        Ok(x.trailing_zeros())
    }
}

#[cfg(test)]
mod tests;
