use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{canonicalize, nu2, ZElt, ZSubgroup, ZxznError};
use crate::arith::gcd;

pub const DEFAULT_WITNESS_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub witness_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

/// A cyclic middle with its canonical generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZMiddle {
    pub generator: ZElt,
    pub canonical: ZSubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZDiamondWitness {
    pub top: ZSubgroup,
    pub middles: [ZMiddle; 3],
    pub bottom: ZSubgroup,
    pub bound_used: u64,
}

impl ZDiamondWitness {
    pub fn n(&self) -> u64 {
        self.top.n()
    }

    /// The six meet/join equalities, distinct middles, and cyclicity of middles and bottom.
    pub fn is_valid(&self) -> bool {
        let m = self.middles.map(|m| m.canonical);
        let pairs = [(0, 1), (0, 2), (1, 2)];
        pairs.iter().all(|&(i, j)| {
            m[i] != m[j] && m[i].meet(&m[j]) == self.bottom && m[i].join(&m[j]) == self.top
        }) && self.middles.iter().all(|x| {
            x.canonical.is_cyclic() && canonicalize(&[x.generator], self.n()) == Ok(x.canonical)
        }) && self.bottom.is_cyclic()
    }
}

/// Distinct cyclic subgroups `⟨(x, a)⟩` with `0 <= x <= bound`, `0 <= a < n`, in
/// first-occurrence order (x ascending, then a), each with its canonical generator.
pub fn enumerate_cyclic_subgroups(n: u64, bound: u64) -> Result<Vec<ZMiddle>, ZxznError> {
    if bound < 1 {
        return Err(ZxznError::DomainError(
            "generator bound must be at least 1".into(),
        ));
    }
    if bound > i64::MAX as u64 {
        return Err(ZxznError::DomainError("generator bound too large".into()));
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in 0..=bound {
        for a in 0..n {
            let h = canonicalize(&[ZElt::new(x as i64, a as i64, n)], n)?;
            if seen.insert(h) {
                let generator = h
                    .generator()
                    .expect("one generator spans a cyclic subgroup");
                out.push(ZMiddle {
                    generator,
                    canonical: h,
                });
            }
        }
    }
    Ok(out)
}

/// Generalized-cyclic-diamonds among the cyclic subgroups with generator bound `bound`,
/// middles listed by enumeration index, witnesses ordered lexicographically by those
/// indices and truncated to the cap.
pub fn search_generalized_cyclic_diamond(
    n: u64,
    bound: u64,
    opts: &SearchOptions,
) -> Result<Vec<ZDiamondWitness>, ZxznError> {
    let subs = enumerate_cyclic_subgroups(n, bound)?;
    let cap = opts.witness_cap;
    if cap == 0 {
        return Ok(Vec::new());
    }
    let len = subs.len();
    // pair keys (meet, join) for i < j, only when the meet is cyclic
    let keys: Vec<Vec<Option<(ZSubgroup, ZSubgroup)>>> = (0..len)
        .into_par_iter()
        .map(|i| {
            (0..len)
                .map(|j| {
                    if j <= i {
                        return None;
                    }
                    let (x, y) = (&subs[i].canonical, &subs[j].canonical);
                    let m = x.meet(y);
                    m.is_cyclic().then(|| (m, x.join(y)))
                })
                .collect()
        })
        .collect();
    let per_first: Vec<Vec<ZDiamondWitness>> = (0..len)
        .into_par_iter()
        .map(|i| {
            let mut groups: HashMap<(ZSubgroup, ZSubgroup), Vec<usize>> = HashMap::new();
            for (j, key) in keys[i].iter().enumerate().skip(i + 1) {
                if let Some(k) = key {
                    groups.entry(*k).or_default().push(j);
                }
            }
            let mut found: Vec<[usize; 3]> = Vec::new();
            for (key, js) in &groups {
                for (p, &j) in js.iter().enumerate() {
                    for &k in &js[p + 1..] {
                        if keys[j][k].as_ref() == Some(key) {
                            found.push([i, j, k]);
                        }
                    }
                }
            }
            found.sort_unstable();
            found.truncate(cap);
            found
                .into_iter()
                .map(|[i, j, k]| {
                    let (bottom, top) = keys[i][j].expect("pair key present");
                    ZDiamondWitness {
                        top,
                        middles: [subs[i], subs[j], subs[k]],
                        bottom,
                        bound_used: bound,
                    }
                })
                .collect()
        })
        .collect();
    let mut out: Vec<ZDiamondWitness> = per_first.into_iter().flatten().collect();
    out.truncate(cap);
    Ok(out)
}

/// Whether the lemma predicates were evaluated on real witnesses or hold vacuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaStatus {
    Vacuous,
    Evaluated,
}

/// Predicates from the `Z × Z_(2^N)` argument, evaluated on one witness. Every predicate
/// is `None` unless the top is the full group; `nu2_match` also needs a bottom generator
/// with nonzero second component. A zero component elsewhere counts as a mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessProperties {
    pub top_is_full: bool,
    /// Middle x-components pairwise coprime.
    pub bezout: Option<bool>,
    /// At least two middle a-components odd.
    pub parity: Option<bool>,
    /// `ν2` agrees on both components of each middle generator and the bottom generator.
    pub nu2_match: Option<bool>,
    /// At least two middle generators with both components odd.
    pub both_odd: Option<bool>,
    /// Set when the modulus is a power of two: such a witness contradicts freeness.
    pub theorem_violation: bool,
}

pub fn witness_properties(w: &ZDiamondWitness) -> WitnessProperties {
    let n = w.n();
    let power_of_two = n.is_power_of_two() && n > 1;
    let full = w.top.is_full();
    let gens = w.middles.map(|m| m.generator);
    if !full {
        return WitnessProperties {
            top_is_full: false,
            bezout: None,
            parity: None,
            nu2_match: None,
            both_odd: None,
            theorem_violation: power_of_two,
        };
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let bezout = pairs
        .iter()
        .all(|&(i, j)| gcd(gens[i].x(), gens[j].x()) == 1);
    let odd = |v: i64| v.rem_euclid(2) == 1;
    let parity = gens.iter().filter(|g| odd(g.a() as i64)).count() >= 2;
    let both_odd = gens
        .iter()
        .filter(|g| odd(g.x()) && odd(g.a() as i64))
        .count()
        >= 2;
    let bottom_gen = w.bottom.generator().expect("bottom is cyclic");
    let nu2_match = (bottom_gen.a() != 0).then(|| {
        gens.iter().chain(std::iter::once(&bottom_gen)).all(|g| {
            match (nu2(g.x()), nu2(g.a() as i64)) {
                (Ok(u), Ok(v)) => u == v,
                _ => false,
            }
        })
    });
    WitnessProperties {
        top_is_full: true,
        bezout: Some(bezout),
        parity: Some(parity),
        nu2_match,
        both_odd: Some(both_odd),
        theorem_violation: power_of_two,
    }
}

/// Builds `⟨(1,0)⟩, ⟨(1,1)⟩, ⟨(2^N,0),(0,1)⟩` over `⟨(2^N,0)⟩` in `Z × Z_(2^N)` and checks
/// the six meet/join equalities with the full group on top.
pub fn verify_noncyclic_diamond_2n(big_n: u32) -> Result<bool, ZxznError> {
    if big_n == 0 || big_n > 62 {
        return Err(ZxznError::DomainError(format!(
            "N = {big_n} must be in 1..=62"
        )));
    }
    let n = 1u64 << big_n;
    let e = |x: i64, a: i64| ZElt::new(x, a, n);
    let x = canonicalize(&[e(1, 0)], n)?;
    let y = canonicalize(&[e(1, 1)], n)?;
    let z = canonicalize(&[e(n as i64, 0), e(0, 1)], n)?;
    let bottom = canonicalize(&[e(n as i64, 0)], n)?;
    let top = ZSubgroup::full(n)?;
    let middles = [x, y, z];
    Ok([(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| {
        middles[i] != middles[j]
            && middles[i].meet(&middles[j]) == bottom
            && middles[i].join(&middles[j]) == top
    }))
}
