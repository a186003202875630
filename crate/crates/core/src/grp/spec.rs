use serde::{Deserialize, Serialize};

/// Declarative description of a finite group.
///
/// JSON form is internally tagged by `kind`, e.g.
/// `{"kind": "dicyclic", "m": 2}` or
/// `{"kind": "direct_product", "factors": [{"kind": "cyclic", "n": 4}, {"kind": "cyclic", "n": 2}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Z_n. Element `k` is the residue `k`; element 1 generates.
    Cyclic { n: usize },
    /// Mixed-radix labeling, first factor most significant.
    DirectProduct { factors: Vec<GroupSpec> },
    /// Order `2n`. Elements `0..n` are rotations `r^k`, `n..2n` are reflections `s r^k`.
    Dihedral { n: usize },
    /// Order `4m`, presented as `<a, x | a^{2m}, x^2 = a^m, x a x^-1 = a^-1>`.
    /// Element `k + 2m*j` is `a^k x^j`. `m = 2` gives Q8.
    Dicyclic { m: usize },
    /// All permutations of `0..n`, lexicographic order.
    Symmetric { n: usize },
    /// Even permutations of `0..n`, lexicographic order.
    Alternating { n: usize },
    /// `Z_q ⋊ Z_{p^a}` with the generator of `Z_{p^a}` acting by `u ↦ action·u`.
    /// Element `u * p^a + v` is the pair `(u, v)`.
    SemidirectZqZpa { q: u64, p: u64, a: u32, action: u64 },
    /// Closure of permutations of `0..degree`, lexicographic order.
    PermGroup {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    /// Explicit multiplication table; element 0 must be the identity.
    CayleyTable { table: Vec<Vec<usize>> },
}

/// A group specification with a display name, the unit of corpus files and `--spec` inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGroupSpec {
    pub name: String,
    pub spec: GroupSpec,
}

impl NamedGroupSpec {
    pub fn new(name: impl Into<String>, spec: GroupSpec) -> Self {
        NamedGroupSpec {
            name: name.into(),
            spec,
        }
    }
}

impl GroupSpec {
    pub fn cyclic(n: usize) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn product(factors: impl IntoIterator<Item = GroupSpec>) -> Self {
        GroupSpec::DirectProduct {
            factors: factors.into_iter().collect(),
        }
    }

    /// Direct product of cyclic groups with the given orders.
    pub fn abelian(orders: &[usize]) -> Self {
        Self::product(orders.iter().map(|&n| Self::cyclic(n)))
    }

    pub fn dihedral(n: usize) -> Self {
        GroupSpec::Dihedral { n }
    }

    pub fn dicyclic(m: usize) -> Self {
        GroupSpec::Dicyclic { m }
    }

    pub fn quaternion() -> Self {
        Self::dicyclic(2)
    }

    pub fn symmetric(n: usize) -> Self {
        GroupSpec::Symmetric { n }
    }

    pub fn alternating(n: usize) -> Self {
        GroupSpec::Alternating { n }
    }

    pub fn semidirect(q: u64, p: u64, a: u32, action: u64) -> Self {
        GroupSpec::SemidirectZqZpa { q, p, a, action }
    }

    /// Short display name derived from the structure.
    pub fn display_name(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("Z{n}"),
            GroupSpec::DirectProduct { factors } if factors.is_empty() => "1".to_string(),
            GroupSpec::DirectProduct { factors } => factors
                .iter()
                .map(|f| match f {
                    GroupSpec::DirectProduct { .. } => format!("({})", f.display_name()),
                    _ => f.display_name(),
                })
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::Dihedral { n } => format!("D{n}"),
            GroupSpec::Dicyclic { m: 2 } => "Q8".to_string(),
            GroupSpec::Dicyclic { m } => format!("Dic{m}"),
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Alternating { n } => format!("A{n}"),
            GroupSpec::SemidirectZqZpa { q, p, a, action } => {
                format!("Z{q}:Z{}[{action}]", p.pow(*a))
            }
            GroupSpec::PermGroup { degree, generators } => {
                format!("Perm({degree};{})", generators.len())
            }
            GroupSpec::CayleyTable { table } => format!("Table({})", table.len()),
        }
    }
}
