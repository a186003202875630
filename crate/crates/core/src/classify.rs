//! Group-level predicates and the classification of minimal non-cyclic groups.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::grp::FiniteGroup;
use crate::lattice::SubgroupLattice;

/// The three families a minimal non-cyclic finite group can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MillerMoreno {
    /// The quaternion group of order 8.
    Q8Type,
    /// `Z_p × Z_p`.
    ElementaryAbelianP2,
    /// `Z_q ⋊ Z_{p^a}` with `q ≡ 1 (mod p)`.
    SemidirectQp,
    NotMinimalNonCyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("minimal non-cyclic group {name} fits none of the three families: {reason}")]
    ClassificationContradiction { name: String, reason: String },
}

/// One row of the structure table plus the family classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub minimal_non_cyclic: bool,
    pub prime_generated: bool,
    pub unique_prime_subgroup: bool,
    pub unique_prime_subgroup_primes: Vec<u64>,
    pub abelian: bool,
    pub miller_moreno: MillerMoreno,
}

impl ClassificationRecord {
    /// The three table answers in column order.
    pub fn triple(&self) -> (bool, bool, bool) {
        (
            self.minimal_non_cyclic,
            self.prime_generated,
            self.unique_prime_subgroup,
        )
    }

    pub fn triple_label(&self) -> String {
        let yn = |b: bool| if b { "Yes" } else { "No" };
        let (a, b, c) = self.triple();
        format!("{}-{}-{}", yn(a), yn(b), yn(c))
    }
}

/// Non-cyclic, and every proper subgroup is cyclic.
pub fn is_minimal_non_cyclic(l: &SubgroupLattice) -> bool {
    !l.is_cyclic_group()
        && l.ids()
            .filter(|&i| i != l.top())
            .all(|i| l.is_cyclic_subgroup(i))
}

/// Generated by its elements of prime order. The trivial group counts (empty generating set).
pub fn is_prime_generated(g: &FiniteGroup) -> bool {
    g.closure(&g.prime_order_elements()).len() == g.order()
}

/// Primes `p` dividing `|G|` such that `G` has exactly one subgroup of order `p`.
pub fn unique_prime_subgroups(l: &SubgroupLattice) -> Vec<u64> {
    factorize(l.group().order() as u64)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| l.ids().filter(|&i| l.order_of(i) == p as usize).count() == 1)
        .collect()
}

pub fn miller_moreno_classify(l: &SubgroupLattice) -> Result<MillerMoreno, ClassifyError> {
    if !is_minimal_non_cyclic(l) {
        return Ok(MillerMoreno::NotMinimalNonCyclic);
    }
    let g = l.group();
    let n = g.order() as u64;
    let contradiction = |reason: String| ClassifyError::ClassificationContradiction {
        name: g.name().to_string(),
        reason,
    };
    let factors = factorize(n);
    if g.is_abelian() {
        return match factors.as_slice() {
            [(_, 2)] => Ok(MillerMoreno::ElementaryAbelianP2),
            _ => Err(contradiction(format!("abelian of order {n}, not p^2"))),
        };
    }
    let involution_subgroups = l.ids().filter(|&i| l.order_of(i) == 2).count();
    if n == 8 && involution_subgroups == 1 {
        return Ok(MillerMoreno::Q8Type);
    }
    // Spectrum check for Z_q ⋊ Z_{p^a}: |G| = q p^a with q ≡ 1 (mod p), an element of
    // order p^a (the acting cyclic factor) and one of order p^(a-1) q.
    let shape = match factors.as_slice() {
        [(p1, e1), (p2, e2)] => {
            let mut options = Vec::new();
            if *e2 == 1 && p2 % p1 == 1 {
                options.push((*p1, *e1, *p2));
            }
            if *e1 == 1 && p1 % p2 == 1 {
                options.push((*p2, *e2, *p1));
            }
            options
        }
        _ => Vec::new(),
    };
    let orders: Vec<u64> = g.elements().map(|x| g.element_order(x) as u64).collect();
    for (p, a, q) in shape {
        let pa = p.pow(a);
        let needed = [pa, pa / p * q];
        if needed.iter().all(|k| orders.contains(k)) {
            return Ok(MillerMoreno::SemidirectQp);
        }
    }
    Err(contradiction(format!(
        "non-abelian of order {n} without the Z_q ⋊ Z_(p^a) element-order spectrum"
    )))
}

pub fn table_row(l: &SubgroupLattice) -> Result<ClassificationRecord, ClassifyError> {
    let primes = unique_prime_subgroups(l);
    Ok(ClassificationRecord {
        minimal_non_cyclic: is_minimal_non_cyclic(l),
        prime_generated: is_prime_generated(l.group()),
        unique_prime_subgroup: !primes.is_empty(),
        unique_prime_subgroup_primes: primes,
        abelian: l.group().is_abelian(),
        miller_moreno: miller_moreno_classify(l)?,
    })
}

/// `Some((p, a, q))` when `|G| = p^a q` for distinct primes, `q` with exponent one.
/// For `|G| = pq` the larger prime plays `q`.
pub fn paq_shape(order: usize) -> Option<(u64, u32, u64)> {
    match factorize(order as u64).as_slice() {
        [(p1, e1), (p2, 1)] => Some((*p1, *e1, *p2)),
        [(p1, 1), (p2, e2)] => Some((*p2, *e2, *p1)),
        _ => None,
    }
    .filter(|&(p, _, q)| is_prime(p) && is_prime(q))
}
