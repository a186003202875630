use std::collections::HashSet;

use proptest::prelude::*;

use super::*;

const WINDOW: i64 = 60;
/// Closure is run over `|x| <= WINDOW + 6`; with generator x-components at most 6 every
/// element with `|x| <= WINDOW` is reachable without leaving that strip.
const STRIP: i64 = WINDOW + 6;

fn e(x: i64, a: i64, n: u64) -> ZElt {
    ZElt::new(x, a, n)
}

/// Members with `|x| <= WINDOW` of the subgroup generated by `gens`, by breadth-first closure.
fn window_closure(gens: &[(i64, u64)], n: u64) -> HashSet<(i64, u64)> {
    let mut steps: Vec<(i64, u64)> = Vec::new();
    for &(x, a) in gens {
        steps.push((x, a % n));
        steps.push((-x, (n - a % n) % n));
    }
    let mut seen = HashSet::from([(0i64, 0u64)]);
    let mut stack = vec![(0i64, 0u64)];
    while let Some((x, a)) = stack.pop() {
        for &(dx, da) in &steps {
            let next = (x + dx, (a + da) % n);
            if next.0.abs() <= STRIP && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.retain(|p| p.0.abs() <= WINDOW);
    seen
}

fn window_of(h: &ZSubgroup) -> HashSet<(i64, u64)> {
    let n = h.n();
    (-WINDOW..=WINDOW)
        .flat_map(|x| (0..n).map(move |a| (x, a)))
        .filter(|&(x, a)| h.contains(&e(x, a as i64, n)))
        .collect()
}

#[test]
fn canonical_examples() {
    assert_eq!(
        canonicalize(&[e(1, 0, 4)], 4).unwrap().canonical(),
        [1, 0, 4]
    );
    assert_eq!(canonicalize(&[], 6).unwrap().form(), ZForm::Finite { f: 6 });
    let h = canonicalize(&[e(2, 1, 4)], 4).unwrap();
    assert_eq!(h.canonical(), [2, 1, 4]);
    assert!(h.is_cyclic());
    assert_eq!(window_of(&h), window_closure(&[(2, 1)], 4));
}

#[test]
fn membership_examples() {
    let h = canonicalize(&[e(1, 1, 4)], 4).unwrap();
    assert!(h.contains(&e(4, 0, 4)));
    assert!(h.contains(&e(0, 0, 4)));
    let t = canonicalize(&[e(0, 1, 4)], 4).unwrap();
    assert!(!t.contains(&e(1, 0, 4)));
}

#[test]
fn meet_join_examples() {
    let x = canonicalize(&[e(1, 0, 3)], 3).unwrap();
    let y = canonicalize(&[e(1, 1, 3)], 3).unwrap();
    assert_eq!(x.meet(&y).canonical(), [3, 0, 3]);
    assert!(x.join(&y).is_full());
    let x4 = canonicalize(&[e(1, 0, 4)], 4).unwrap();
    let y4 = canonicalize(&[e(1, 1, 4)], 4).unwrap();
    assert_eq!(x4.meet(&y4), canonicalize(&[e(4, 0, 4)], 4).unwrap());
    assert_eq!(x4.join(&ZSubgroup::trivial(4).unwrap()), x4);
    assert_eq!(x4.meet(&ZSubgroup::full(4).unwrap()), x4);
}

#[test]
fn cyclicity_and_generators() {
    let h = canonicalize(&[e(1, 0, 4)], 4).unwrap();
    assert_eq!(h.generator(), Some(e(1, 0, 4)));
    let t = canonicalize(&[e(0, 2, 4)], 4).unwrap();
    assert_eq!(t.generator(), Some(e(0, 2, 4)));
    let full = ZSubgroup::full(4).unwrap();
    assert_eq!(full.canonical(), [1, 0, 1]);
    assert!(!full.is_cyclic());
    assert_eq!(full.generator(), None);
    // (0,1) is no multiple of a single element with x != 0
    assert!(full.contains(&e(0, 1, 4)));
}

#[test]
fn nu2_values() {
    assert_eq!(nu2(12), Ok(2));
    assert_eq!(nu2(-7), Ok(0));
    assert_eq!(nu2(224), Ok(5));
    assert!(matches!(nu2(0), Err(ZxznError::DomainError(_))));
}

#[test]
fn bad_inputs() {
    assert_eq!(canonicalize(&[], 0), Err(ZxznError::InvalidModulus));
    assert!(matches!(
        canonicalize(&[e(1, 0, 3)], 4),
        Err(ZxznError::ModulusMismatch { .. })
    ));
    assert!(enumerate_cyclic_subgroups(4, 0).is_err());
    assert!(verify_noncyclic_diamond_2n(0).is_err());
}

#[test]
fn enumeration_counts() {
    // trivial, <(0,1)>, <(1,0)>, <(1,1)>
    let subs = enumerate_cyclic_subgroups(2, 1).unwrap();
    let brute: HashSet<[u64; 3]> = (0..=1)
        .flat_map(|x| (0..2).map(move |a| (x, a)))
        .map(|(x, a)| canonicalize(&[e(x, a, 2)], 2).unwrap().canonical())
        .collect();
    assert_eq!(subs.len(), brute.len());
    assert_eq!(subs.len(), 4);

    let z = enumerate_cyclic_subgroups(1, 5).unwrap();
    assert_eq!(z.len(), 6);
    assert!(z[0].canonical.is_trivial());

    let s3: Vec<[u64; 3]> = enumerate_cyclic_subgroups(3, 3)
        .unwrap()
        .iter()
        .map(|m| m.canonical.canonical())
        .collect();
    for want in [[1, 0, 3], [1, 1, 3], [1, 2, 3], [3, 0, 3]] {
        assert!(s3.contains(&want));
    }
}

#[test]
fn windowed_oracle_small_moduli() {
    for n in 1..=6u64 {
        let subs = enumerate_cyclic_subgroups(n, 4).unwrap();
        let windows: Vec<_> = subs
            .iter()
            .map(|m| {
                let g = m.generator;
                let w = window_closure(&[(g.x(), g.a())], n);
                assert_eq!(window_of(&m.canonical), w);
                w
            })
            .collect();
        for i in 0..subs.len() {
            for j in 0..subs.len() {
                let (h, k) = (&subs[i].canonical, &subs[j].canonical);
                let meet: HashSet<_> = windows[i].intersection(&windows[j]).copied().collect();
                assert_eq!(window_of(&h.meet(k)), meet, "n={n} {h} ^ {k}");
                let (g1, g2) = (subs[i].generator, subs[j].generator);
                let join = window_closure(&[(g1.x(), g1.a()), (g2.x(), g2.a())], n);
                assert_eq!(window_of(&h.join(k)), join, "n={n} {h} v {k}");
            }
        }
    }
}

#[test]
fn example_diamond_for_odd_primes() {
    for p in [3u64, 5, 7] {
        let ws = search_generalized_cyclic_diamond(p, p, &SearchOptions::default()).unwrap();
        let want = [e(1, 0, p), e(1, 1, p), e(1, 2, p)];
        let bottom = canonicalize(&[e(p as i64, 0, p)], p).unwrap();
        assert!(
            ws.iter()
                .any(|w| w.middles.map(|m| m.generator) == want && w.bottom == bottom),
            "p={p}"
        );
        for w in &ws {
            assert!(w.is_valid());
        }
    }
}

#[test]
fn no_diamonds_for_small_powers_of_two() {
    for n in [2u64, 4] {
        assert!(
            search_generalized_cyclic_diamond(n, 8, &SearchOptions::default())
                .unwrap()
                .is_empty()
        );
    }
}

#[test]
fn n12_contains_the_embedded_z3_diamond() {
    let ws = search_generalized_cyclic_diamond(
        12,
        12,
        &SearchOptions {
            witness_cap: 10_000,
        },
    )
    .unwrap();
    let want = [e(1, 0, 12), e(1, 4, 12), e(1, 8, 12)];
    let w = ws
        .iter()
        .find(|w| w.middles.map(|m| m.generator) == want)
        .expect("embedded Z x Z_3 diamond");
    assert_eq!(w.bottom, canonicalize(&[e(3, 0, 12)], 12).unwrap());
    assert_eq!(w.top.canonical(), [1, 0, 4]);
}

#[test]
fn search_is_capped_and_ordered() {
    let all = search_generalized_cyclic_diamond(
        15,
        6,
        &SearchOptions {
            witness_cap: 10_000,
        },
    )
    .unwrap();
    let few = search_generalized_cyclic_diamond(15, 6, &SearchOptions { witness_cap: 5 }).unwrap();
    assert!(all.len() > 5);
    assert_eq!(few.as_slice(), &all[..5]);
    assert!(
        search_generalized_cyclic_diamond(15, 6, &SearchOptions { witness_cap: 0 })
            .unwrap()
            .is_empty()
    );
}

#[test]
fn properties_of_the_example_witness() {
    let ws = search_generalized_cyclic_diamond(3, 3, &SearchOptions::default()).unwrap();
    let w = ws
        .iter()
        .find(|w| w.middles.map(|m| m.generator.x()) == [1, 1, 1])
        .unwrap();
    let props = witness_properties(w);
    assert_eq!(props.bezout, Some(true));
    assert!(!props.theorem_violation);
    for w in &ws {
        let p = witness_properties(w);
        if w.top.is_full() {
            assert_eq!(p.bezout, Some(true));
        } else {
            assert_eq!(p.bezout, None);
        }
    }
}

#[test]
fn noncyclic_diamond_in_power_of_two_moduli() {
    for big_n in 1..=5 {
        assert!(verify_noncyclic_diamond_2n(big_n).unwrap());
        let n = 1u64 << big_n;
        let z = canonicalize(&[e(n as i64, 0, n), e(0, 1, n)], n).unwrap();
        assert_eq!(z.canonical(), [n, 0, 1]);
        assert!(!z.is_cyclic());
    }
}

#[test]
fn witness_json_shape() {
    let ws = search_generalized_cyclic_diamond(3, 1, &SearchOptions::default()).unwrap();
    let v = serde_json::to_value(&ws[0]).unwrap();
    assert_eq!(v["middles"][0]["generator"], serde_json::json!([1, 0]));
    assert_eq!(v["middles"][0]["canonical"], serde_json::json!([1, 0, 3]));
    assert_eq!(v["bottom"], serde_json::json!([3, 0, 3]));
}

fn arb_elt(n: u64) -> impl Strategy<Value = (i64, u64)> {
    (-6i64..=6, 0..n)
}

proptest! {
    #[test]
    fn canonical_form_is_a_set_invariant(
        n in 1u64..=12,
        seed in prop::collection::vec((-6i64..=6, 0u64..12), 0..3),
    ) {
        let gens: Vec<(i64, u64)> = seed.into_iter().map(|(x, a)| (x, a % n)).collect();
        let elts: Vec<ZElt> = gens.iter().map(|&(x, a)| e(x, a as i64, n)).collect();
        let h = canonicalize(&elts, n).unwrap();
        prop_assert_eq!(window_of(&h), window_closure(&gens, n));
        // order of generators does not matter
        let mut rev = elts.clone();
        rev.reverse();
        prop_assert_eq!(canonicalize(&rev, n).unwrap(), h);
        for g in &elts {
            prop_assert!(h.contains(g));
            prop_assert!(h.contains(&g.neg()));
        }
    }

    #[test]
    fn lattice_laws(n in 1u64..=10, a in arb_elt(10), b in arb_elt(10), c in arb_elt(10)) {
        let mk = |(x, r): (i64, u64)| canonicalize(&[e(x, r as i64, n)], n).unwrap();
        let (h, k, l) = (mk(a), mk(b), mk(c));
        prop_assert_eq!(h.meet(&h.join(&k)), h);
        prop_assert_eq!(h.join(&h.meet(&k)), h);
        prop_assert_eq!(h.meet(&k), k.meet(&h));
        prop_assert_eq!(h.join(&k).join(&l), h.join(&k.join(&l)));
        prop_assert_eq!(h.meet(&k).meet(&l), h.meet(&k.meet(&l)));
        prop_assert_eq!(h.is_subgroup_of(&k), h.meet(&k) == h);
        // abelian, hence modular
        if h.is_subgroup_of(&l) {
            prop_assert_eq!(h.join(&k.meet(&l)), h.join(&k).meet(&l));
        }
    }
}
