//! The built-in corpus of test groups.

use super::{CorpusGroup, GroupExpectations, TableTriple, ZxznExpect, ZxznTask};
use crate::arith::{factorize, is_prime, multiplicative_order};
use crate::grp::GroupSpec;

/// Largest order in the abelian part of the default corpus.
pub const ABELIAN_ORDER_LIMIT: usize = 64;
/// Largest `q·p^a` in the semidirect part of the default corpus.
pub const SEMIDIRECT_ORDER_LIMIT: u64 = 100;

/// Every group in the default corpus, names unique, in construction order.
///
/// Abelian groups up to order 64 (one per multiset of prime-power factors), dihedral
/// `D3..D16`, dicyclic `Dic2..Dic8`, `S3`, `S4`, `A4`, every `Z_q ⋊ Z_(p^a)` of order at
/// most 100 with one action per possible action order, and the structure-table instances
/// for `(p, q) = (2, 3)` and `(3, 2)`, which carry their expected triples.
pub fn default_corpus() -> Vec<CorpusGroup> {
    let mut out: Vec<CorpusGroup> = Vec::new();
    let mut add = |spec: GroupSpec, table1: Option<TableTriple>| {
        let name = spec.display_name();
        match out.iter_mut().find(|g| g.name == name) {
            Some(existing) => {
                if table1.is_some() {
                    existing.expect.table1 = table1;
                }
            }
            None => out.push(CorpusGroup {
                name,
                spec,
                expect: GroupExpectations {
                    table1,
                    ..Default::default()
                },
            }),
        }
    };
    for n in 1..=ABELIAN_ORDER_LIMIT {
        for factors in abelian_primary_decompositions(n) {
            let spec = if factors.len() == 1 {
                GroupSpec::cyclic(factors[0])
            } else {
                GroupSpec::abelian(&factors)
            };
            add(spec, None);
        }
    }
    for n in 3..=16 {
        add(GroupSpec::dihedral(n), None);
    }
    for m in 2..=8 {
        add(GroupSpec::dicyclic(m), None);
    }
    add(GroupSpec::symmetric(3), None);
    add(GroupSpec::symmetric(4), None);
    add(GroupSpec::alternating(4), None);
    for spec in semidirect_specs(SEMIDIRECT_ORDER_LIMIT) {
        add(spec, None);
    }
    for (spec, triple) in table1_instances() {
        add(spec, Some(triple));
    }
    out
}

/// Structure-table rows with finite instances, for `(p, q) = (2, 3)` and `(3, 2)`.
pub fn table1_instances() -> Vec<(GroupSpec, TableTriple)> {
    let t = TableTriple::new;
    let z = GroupSpec::cyclic;
    let prod = GroupSpec::product;
    vec![
        (GroupSpec::symmetric(3), t(true, true, true)),
        (GroupSpec::abelian(&[2, 2]), t(true, true, false)),
        (GroupSpec::abelian(&[3, 3]), t(true, true, false)),
        (GroupSpec::quaternion(), t(true, false, true)),
        (GroupSpec::abelian(&[2, 2, 3]), t(false, true, true)),
        (GroupSpec::abelian(&[3, 3, 2]), t(false, true, true)),
        (prod([GroupSpec::symmetric(3), z(2)]), t(false, true, true)),
        (GroupSpec::abelian(&[2, 2, 3, 3]), t(false, true, false)),
        (GroupSpec::alternating(4), t(false, true, false)),
        (GroupSpec::abelian(&[4, 6]), t(false, false, true)),
        (GroupSpec::abelian(&[9, 6]), t(false, false, true)),
        (prod([GroupSpec::quaternion(), z(3)]), t(false, false, true)),
        (GroupSpec::abelian(&[4, 2]), t(false, false, false)),
        (GroupSpec::abelian(&[9, 3]), t(false, false, false)),
        (
            prod([GroupSpec::quaternion(), z(2)]),
            t(false, false, false),
        ),
    ]
}

/// Bounded `Z × Z_n` tasks run by the default campaign.
pub fn default_zxzn_tasks() -> Vec<ZxznTask> {
    let mut tasks: Vec<ZxznTask> = (1..=4)
        .map(|big_n| ZxznTask {
            n: 1 << big_n,
            bound: 16,
            expect: ZxznExpect::None,
            witness_cap: None,
        })
        .collect();
    for p in [3, 5, 7] {
        tasks.push(ZxznTask {
            n: p,
            bound: p,
            expect: ZxznExpect::Some,
            witness_cap: None,
        });
    }
    tasks.push(ZxznTask {
        n: 12,
        bound: 12,
        expect: ZxznExpect::Some,
        witness_cap: None,
    });
    tasks
}

/// Prime-power factor lists, one per abelian group of order `n`: primes ascending,
/// exponents of each prime in descending order.
pub fn abelian_primary_decompositions(n: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factorize(n as u64) {
        let mut next = Vec::new();
        for part in partitions(e) {
            for prefix in &acc {
                let mut v = prefix.clone();
                v.extend(part.iter().map(|&k| (p as usize).pow(k)));
                next.push(v);
            }
        }
        acc = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    acc.sort();
    acc
}

/// Partitions of `e` into positive parts, each listed in descending order.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

/// `Z_q ⋊ Z_(p^a)` with `q·p^a <= limit`, one action for each order `p^s`, `1 <= s <= a`,
/// that `Z_q^*` supports: the smallest residue of that order.
pub fn semidirect_specs(limit: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for q in (3..=limit).filter(|&q| is_prime(q)) {
        for p in (2..q).filter(|&p| is_prime(p) && (q - 1) % p == 0) {
            let mut a = 1u32;
            while q * p.pow(a) <= limit {
                for s in 1..=a {
                    let target = p.pow(s);
                    if (q - 1) % target != 0 {
                        break;
                    }
                    if let Some(r) = (2..q).find(|&r| multiplicative_order(r, q) == Some(target)) {
                        out.push(GroupSpec::semidirect(q, p, a, r));
                    }
                }
                a += 1;
            }
        }
    }
    out
}
