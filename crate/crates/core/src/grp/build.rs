use std::collections::{HashMap, VecDeque};

use super::{FiniteGroup, GroupError, GroupSpec};
use crate::arith::{is_prime, pow_mod};

/// Limits applied while constructing groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub order_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { order_cap: 512 }
    }
}

/// Full associativity is only re-checked on constructor output up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;

pub fn build(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    build_with(spec, &BuildOptions::default())
}

pub fn build_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<FiniteGroup, GroupError> {
    let order = expected_order(spec)?;
    if let Some(order) = order {
        if order > opts.order_cap {
            return Err(GroupError::OrderCapExceeded {
                order,
                cap: opts.order_cap,
            });
        }
    }
    let table = raw_table(spec, opts)?;
    let full_check =
        matches!(spec, GroupSpec::CayleyTable { .. }) || table.order <= ASSOCIATIVITY_CHECK_LIMIT;
    FiniteGroup::from_validated(spec.display_name(), table.order, table.cells, full_check)
}

/// Order implied by the parameters; `None` when only known after closure (PermGroup).
fn expected_order(spec: &GroupSpec) -> Result<Option<usize>, GroupError> {
    let invalid = |msg: String| Err(GroupError::InvalidSpec(msg));
    Ok(Some(match spec {
        GroupSpec::Cyclic { n } => {
            if *n == 0 {
                return invalid("cyclic group needs n >= 1".into());
            }
            *n
        }
        GroupSpec::DirectProduct { factors } => {
            let mut total: usize = 1;
            for f in factors {
                match expected_order(f)? {
                    Some(o) => {
                        total = total.saturating_mul(o);
                    }
                    None => return Ok(None),
                }
            }
            total
        }
        GroupSpec::Dihedral { n } => {
            if *n < 3 {
                return invalid(format!("dihedral group needs n >= 3, got {n}"));
            }
            n.saturating_mul(2)
        }
        GroupSpec::Dicyclic { m } => {
            if *m < 2 {
                return invalid(format!("dicyclic group needs m >= 2, got {m}"));
            }
            m.saturating_mul(4)
        }
        GroupSpec::Symmetric { n } => {
            if !(1..=6).contains(n) {
                return invalid(format!("symmetric group degree must be in 1..=6, got {n}"));
            }
            (1..=*n).product()
        }
        GroupSpec::Alternating { n } => {
            if !(3..=6).contains(n) {
                return invalid(format!(
                    "alternating group degree must be in 3..=6, got {n}"
                ));
            }
            (1..=*n).product::<usize>() / 2
        }
        GroupSpec::SemidirectZqZpa { q, p, a, action } => {
            check_semidirect(*q, *p, *a, *action)?;
            let pa = p.checked_pow(*a).unwrap_or(u64::MAX);
            q.saturating_mul(pa).min(usize::MAX as u64) as usize
        }
        GroupSpec::PermGroup { degree, generators } => {
            if *degree == 0 {
                return invalid("permutation degree must be >= 1".into());
            }
            for g in generators {
                check_permutation(g, *degree)?;
            }
            return Ok(None);
        }
        GroupSpec::CayleyTable { table } => {
            if table.is_empty() {
                return invalid("empty Cayley table".into());
            }
            table.len()
        }
    }))
}

fn check_semidirect(q: u64, p: u64, a: u32, action: u64) -> Result<(), GroupError> {
    let invalid = |msg: String| Err(GroupError::InvalidSpec(msg));
    if q == 2 || !is_prime(q) {
        return invalid(format!("q = {q} must be an odd prime"));
    }
    if !is_prime(p) {
        return invalid(format!("p = {p} must be prime"));
    }
    if a == 0 {
        return invalid("exponent a must be >= 1".into());
    }
    if q % p != 1 {
        return invalid(format!("q = {q} is not 1 mod p = {p}"));
    }
    let r = action % q;
    if r == 1 || r == 0 {
        return invalid(format!("action {action} is trivial or not a unit mod {q}"));
    }
    let pa = p
        .checked_pow(a)
        .ok_or_else(|| GroupError::InvalidSpec("p^a overflows".into()))?;
    if pow_mod(r, pa, q) != 1 {
        return invalid(format!("action {action}^(p^a) is not 1 mod {q}"));
    }
    Ok(())
}

fn check_permutation(perm: &[usize], degree: usize) -> Result<(), GroupError> {
    if perm.len() != degree {
        return Err(GroupError::InvalidSpec(format!(
            "generator has length {} but degree is {degree}",
            perm.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &i in perm {
        if i >= degree || std::mem::replace(&mut seen[i], true) {
            return Err(GroupError::InvalidSpec(format!(
                "generator {perm:?} is not a permutation of 0..{degree}"
            )));
        }
    }
    Ok(())
}

struct RawTable {
    order: usize,
    cells: Vec<u32>,
}

impl RawTable {
    fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                cells.push(f(a, b) as u32);
            }
        }
        RawTable { order, cells }
    }

    fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }
}

fn raw_table(spec: &GroupSpec, opts: &BuildOptions) -> Result<RawTable, GroupError> {
    Ok(match spec {
        GroupSpec::Cyclic { n } => {
            let n = *n;
            RawTable::from_fn(n, |a, b| (a + b) % n)
        }
        GroupSpec::DirectProduct { factors } => {
            let mut acc = RawTable {
                order: 1,
                cells: vec![0],
            };
            for f in factors {
                let t = raw_table(f, opts)?;
                let k = t.order;
                acc = RawTable::from_fn(acc.order * k, |x, y| {
                    let (x1, x2) = (x / k, x % k);
                    let (y1, y2) = (y / k, y % k);
                    acc.get(x1, y1) * k + t.get(x2, y2)
                });
            }
            acc
        }
        GroupSpec::Dihedral { n } => {
            let n = *n;
            // r^i s^j with s r = r^-1 s; stored as index i + n*j, written s^j r^i.
            RawTable::from_fn(2 * n, |x, y| {
                let (i, sx) = (x % n, x / n);
                let (k, sy) = (y % n, y / n);
                // (s^sx r^i)(s^sy r^k) = s^(sx+sy) r^(±i + k)
                let i = if sy == 1 { (n - i) % n } else { i };
                ((i + k) % n) + n * ((sx + sy) % 2)
            })
        }
        GroupSpec::Dicyclic { m } => {
            let two_m = 2 * m;
            RawTable::from_fn(2 * two_m, |x, y| {
                let (k, j) = (x % two_m, x / two_m);
                let (l, i) = (y % two_m, y / two_m);
                if j == 0 {
                    (k + l) % two_m + two_m * i
                } else {
                    // a^k x a^l x^i = a^(k-l) x^(1+i)
                    let base = (k + two_m - l) % two_m;
                    if i == 0 {
                        base + two_m
                    } else {
                        (base + m) % two_m
                    }
                }
            })
        }
        GroupSpec::Symmetric { n } => perm_table(all_permutations(*n, false)),
        GroupSpec::Alternating { n } => perm_table(all_permutations(*n, true)),
        GroupSpec::SemidirectZqZpa { q, p, a, action } => {
            let q = *q as usize;
            let pa = p.pow(*a) as usize;
            let r = action % q as u64;
            let powers: Vec<usize> = (0..pa)
                .map(|v| pow_mod(r, v as u64, q as u64) as usize)
                .collect();
            RawTable::from_fn(q * pa, |x, y| {
                let (u1, v1) = (x / pa, x % pa);
                let (u2, v2) = (y / pa, y % pa);
                ((u1 + powers[v1] * u2) % q) * pa + (v1 + v2) % pa
            })
        }
        GroupSpec::PermGroup { degree, generators } => {
            perm_table(perm_closure(*degree, generators, opts.order_cap)?)
        }
        GroupSpec::CayleyTable { table } => {
            let n = table.len();
            let mut cells = Vec::with_capacity(n * n);
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(GroupError::ValidationFailed(format!(
                        "row {i} has length {} but table has {n} rows",
                        row.len()
                    )));
                }
                for &c in row {
                    if c >= n {
                        return Err(GroupError::ValidationFailed(format!(
                            "entry {c} out of range in row {i}"
                        )));
                    }
                    cells.push(c as u32);
                }
            }
            RawTable { order: n, cells }
        }
    })
}

fn is_even(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Permutations of `0..n` in lexicographic order (identity first).
fn all_permutations(n: usize, even_only: bool) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    if even_only {
        out.retain(|p| is_even(p));
    }
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a * b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn perm_closure(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let next = compose(&p, g);
            if !seen.contains_key(&next) {
                if seen.len() >= cap {
                    return Err(GroupError::OrderCapExceeded {
                        order: seen.len() + 1,
                        cap,
                    });
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    let mut perms: Vec<_> = seen.into_keys().collect();
    perms.sort();
    Ok(perms)
}

fn perm_table(perms: Vec<Vec<usize>>) -> RawTable {
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    RawTable::from_fn(perms.len(), |a, b| {
        index[compose(&perms[a], &perms[b]).as_slice()]
    })
}
