use std::collections::BTreeSet;
use std::sync::Arc;
use std::thread;

use proptest::prelude::*;

use latticeforge::bitset::IndexSet;
use latticeforge::campaign::semidirect_specs;
use latticeforge::grp::{build, Element, FiniteGroup, GroupSpec};
use latticeforge::lattice::{enumerate_subgroups, SubgroupLattice};
use latticeforge::patterns::{
    find_cyclic_diamond, find_generalized_cyclic_diamond, find_m3, find_n5,
};
use latticeforge::zxzn::{search_generalized_cyclic_diamond, SearchOptions};

fn small_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1usize..=30).prop_map(GroupSpec::cyclic),
        (3usize..=12).prop_map(GroupSpec::dihedral),
        (2usize..=6).prop_map(GroupSpec::dicyclic),
        prop::collection::vec(prop::sample::select(vec![2usize, 3, 4, 5, 6, 9]), 2..=3)
            .prop_filter("order at most 64", |f| f.iter().product::<usize>() <= 64)
            .prop_map(|f| GroupSpec::abelian(&f)),
        Just(GroupSpec::symmetric(3)),
        Just(GroupSpec::symmetric(4)),
        Just(GroupSpec::alternating(4)),
        Just(GroupSpec::semidirect(7, 3, 1, 2)),
        Just(GroupSpec::semidirect(5, 2, 2, 2)),
        Just(GroupSpec::product([
            GroupSpec::quaternion(),
            GroupSpec::cyclic(3)
        ])),
    ]
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([0]);
    let mut stack = vec![0usize];
    while let Some(h) = stack.pop() {
        for &s in gens {
            let next = g.mul(Element(h), Element(s)).index();
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen
}

fn members(l: &SubgroupLattice, id: usize) -> BTreeSet<usize> {
    l.subgroup(id).elements().map(|e| e.index()).collect()
}

fn setup(spec: &GroupSpec) -> (FiniteGroup, SubgroupLattice) {
    let g = build(spec).unwrap();
    let l = enumerate_subgroups(&g).unwrap();
    (g, l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(spec in small_spec(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let g = build(&spec).unwrap();
        let n = g.order();
        let [a, b, c] = [0, 1, 2].map(|i| Element(picks[i].index(n)));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(g.identity(), a), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
    }

    #[test]
    fn every_generated_subgroup_is_enumerated(
        spec in small_spec(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4),
    ) {
        let (g, l) = setup(&spec);
        let gens: Vec<usize> = picks.iter().map(|p| p.index(g.order())).collect();
        let want = closure(&g, &gens);
        let set = IndexSet::from_indices(g.order(), want.iter().copied());
        let id = l.id_of_members(&set);
        prop_assert!(id.is_some(), "<{:?}> missing from the lattice of {}", gens, spec.display_name());
        prop_assert_eq!(members(&l, id.unwrap()), want);
    }

    #[test]
    fn meet_and_join_are_intersection_and_generated_union(
        spec in small_spec(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        let (g, l) = setup(&spec);
        let [a, b, c] = [0, 1, 2].map(|i| picks[i].index(l.len()));
        let (ma, mb) = (members(&l, a), members(&l, b));
        let inter: BTreeSet<usize> = ma.intersection(&mb).copied().collect();
        prop_assert_eq!(members(&l, l.meet(a, b)), inter);
        let union: Vec<usize> = ma.union(&mb).copied().collect();
        prop_assert_eq!(members(&l, l.join(a, b)), closure(&g, &union));

        // lattice laws
        prop_assert_eq!(l.meet(a, b), l.meet(b, a));
        prop_assert_eq!(l.join(a, b), l.join(b, a));
        prop_assert_eq!(l.meet(a, a), a);
        prop_assert_eq!(l.join(a, a), a);
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        prop_assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
        prop_assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));

        // order and the two operations determine each other
        prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
        prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
        prop_assert_eq!(l.leq(a, b), ma.is_subset(&mb));
        prop_assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
    }

    #[test]
    fn covers_are_dual_and_tight(spec in small_spec()) {
        let (_, l) = setup(&spec);
        for a in l.ids() {
            for &b in l.upper_covers(a) {
                prop_assert!(l.lower_covers(b).contains(&a));
                prop_assert!(l.leq(a, b) && a != b);
                // nothing strictly between
                prop_assert!(!l.ids().any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b)));
            }
        }
        let up: usize = l.ids().map(|a| l.upper_covers(a).len()).sum();
        prop_assert_eq!(up, l.covers().len());
    }

    #[test]
    fn detected_patterns_validate(spec in small_spec()) {
        let (g, l) = setup(&spec);
        if let Some(w) = find_cyclic_diamond(&l) {
            prop_assert!(w.validate(&g).is_ok());
            prop_assert!(w.is_cyclic_diamond());
        }
        if let Some(w) = find_m3(&l) {
            prop_assert!(w.validate(&g).is_ok());
        }
        // cyclic => generalized => M3
        let (cyc, gen, m3) = (
            find_cyclic_diamond(&l).is_some(),
            find_generalized_cyclic_diamond(&l).is_some(),
            find_m3(&l).is_some(),
        );
        prop_assert!(!cyc || gen);
        prop_assert!(!gen || m3);
        match find_n5(&l) {
            Some(p) => {
                prop_assert!(p.validate(&g).is_ok());
                prop_assert!(!l.is_modular());
            }
            None => prop_assert!(l.is_modular()),
        }
        // cyclic groups are exactly the diamond-free ones
        prop_assert_eq!(find_cyclic_diamond(&l).is_none(), l.is_cyclic_group());
        prop_assert_eq!(l.is_distributive(), l.is_cyclic_group());
    }
}

fn commutes_all(g: &FiniteGroup) -> bool {
    let n = g.order();
    (0..n).all(|a| (0..n).all(|b| g.mul(Element(a), Element(b)) == g.mul(Element(b), Element(a))))
}

fn oracle_order(g: &FiniteGroup, x: usize) -> usize {
    let (mut y, mut k) = (Element(x), 1);
    while y != g.identity() {
        y = g.mul(y, Element(x));
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lagrange_and_cyclic_subgroups(spec in small_spec(), pick in any::<prop::sample::Index>()) {
        let g = build(&spec).unwrap();
        let x = pick.index(g.order());
        let k = oracle_order(&g, x);
        prop_assert_eq!(g.element_order(Element(x)), k);
        prop_assert_eq!(g.order() % k, 0);
        prop_assert_eq!(g.cyclic_subgroup(Element(x)), g.generated_subgroup(&[Element(x)]));
        prop_assert_eq!(g.cyclic_subgroup(Element(x)).order(), k);
    }

    #[test]
    fn build_is_repeatable(spec in small_spec()) {
        let (a, b) = (build(&spec).unwrap(), build(&spec).unwrap());
        let rows = |g: &FiniteGroup| g.elements().map(|e| g.table_row(e)).collect::<Vec<_>>();
        prop_assert_eq!(rows(&a), rows(&b));
    }

    #[test]
    fn semidirect_orders_and_non_commutativity(spec in prop::sample::select(semidirect_specs(120))) {
        let GroupSpec::SemidirectZqZpa { q, p, a, .. } = spec else { unreachable!() };
        let g = build(&spec).unwrap();
        prop_assert_eq!(g.order() as u64, q * p.pow(a));
        prop_assert!(!commutes_all(&g));
        prop_assert!(!g.is_abelian());
    }

    #[test]
    fn direct_product_order_and_abelianity(
        factors in prop::collection::vec(prop_oneof![
            (1usize..=6).prop_map(GroupSpec::cyclic),
            Just(GroupSpec::symmetric(3)),
            Just(GroupSpec::quaternion()),
        ], 1..=3)
            .prop_filter("order at most 96", |f| {
                f.iter().map(|s| build(s).unwrap().order()).product::<usize>() <= 96
            }),
    ) {
        let parts: Vec<FiniteGroup> = factors.iter().map(|s| build(s).unwrap()).collect();
        let g = build(&GroupSpec::product(factors.clone())).unwrap();
        prop_assert_eq!(g.order(), parts.iter().map(|p| p.order()).product::<usize>());
        prop_assert_eq!(g.is_abelian(), parts.iter().all(commutes_all));
        prop_assert_eq!(g.is_abelian(), commutes_all(&g));
    }

    #[test]
    fn full_top_witnesses_have_coprime_x(n in 1u64..=20, bound in 1u64..=6) {
        let ws = search_generalized_cyclic_diamond(n, bound, &SearchOptions { witness_cap: 50 }).unwrap();
        for w in &ws {
            prop_assert!(w.is_valid());
            if w.top.is_full() {
                let xs = w.middles.map(|m| m.generator.x().unsigned_abs());
                let gcd = |mut a: u64, mut b: u64| { while b != 0 { (a, b) = (b, a % b); } a };
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    prop_assert_eq!(gcd(xs[i], xs[j]), 1, "n={} {:?}", n, xs);
                }
            }
        }
        if n > 1 && n.is_power_of_two() {
            prop_assert!(ws.is_empty());
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for spec in [GroupSpec::symmetric(4), GroupSpec::abelian(&[2, 2, 2, 3])] {
        let (_, a) = setup(&spec);
        let (_, b) = setup(&spec);
        assert_eq!(a.to_dot(), b.to_dot());
    }
}

#[test]
fn concurrent_queries_agree() {
    let (_, l) = setup(&GroupSpec::symmetric(4));
    let l = Arc::new(l);
    let serial: Vec<(usize, usize)> = l
        .ids()
        .flat_map(|a| l.ids().map(move |b| (a, b)))
        .map(|(a, b)| (l.meet(a, b), l.join(a, b)))
        .collect();
    let witness = find_cyclic_diamond(&l);
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let l = Arc::clone(&l);
            thread::spawn(move || {
                let table: Vec<(usize, usize)> = l
                    .ids()
                    .flat_map(|a| l.ids().map(move |b| (a, b)))
                    .map(|(a, b)| (l.meet(a, b), l.join(a, b)))
                    .collect();
                (table, find_cyclic_diamond(&l))
            })
        })
        .collect();
    for h in handles {
        let (table, w) = h.join().unwrap();
        assert_eq!(table, serial);
        assert_eq!(w, witness);
    }
}
