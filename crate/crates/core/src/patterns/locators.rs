use super::{DiamondWitness, PatternError};
use crate::arith::factorize;
use crate::classify::{is_minimal_non_cyclic, is_prime_generated, paq_shape};
use crate::grp::{Element, FiniteGroup};
use crate::lattice::{SubgroupId, SubgroupLattice};

/// Diamond from the first non-commuting pair `x, y` of prime-order elements:
/// top `⟨x, y⟩`, middles `⟨x⟩, ⟨y⟩, ⟨xy⟩`, bottom trivial.
pub fn locate_diamond_prime_generated(g: &FiniteGroup) -> Result<DiamondWitness, PatternError> {
    if g.is_abelian() {
        return Err(PatternError::PreconditionFailed(format!(
            "{} is abelian",
            g.name()
        )));
    }
    if !is_prime_generated(g) {
        return Err(PatternError::PreconditionFailed(format!(
            "{} is not generated by its prime-order elements",
            g.name()
        )));
    }
    let primes = g.prime_order_elements();
    let (x, y) = primes
        .iter()
        .enumerate()
        .find_map(|(i, &x)| {
            primes[i + 1..]
                .iter()
                .find(|&&y| !g.commutes(x, y))
                .map(|&y| (x, y))
        })
        .ok_or_else(|| {
            PatternError::InternalContradiction(
                "non-abelian prime-generated group with commuting prime-order elements".into(),
            )
        })?;
    let w = DiamondWitness::from_subgroups(
        g,
        g.generated_subgroup(&[x, y]),
        [
            g.cyclic_subgroup(x),
            g.cyclic_subgroup(y),
            g.cyclic_subgroup(g.mul(x, y)),
        ],
        g.trivial_subgroup(),
        Some((0, 1)),
    );
    checked(g, w)
}

/// The diamond built in the proof for non-abelian minimal non-cyclic groups of order
/// `p^a q` that are not prime generated. The bottom is `P_N`, the largest unique
/// `p`-subgroup below the Sylow order, and `(0, 1)` is the maximal pair.
pub fn locate_diamond_paq(l: &SubgroupLattice) -> Result<DiamondWitness, PatternError> {
    let g = l.group();
    let pre = |m: String| Err(PatternError::PreconditionFailed(m));
    let contra = |m: String| PatternError::InternalContradiction(m);
    if g.is_abelian() {
        return pre(format!("{} is abelian", g.name()));
    }
    let Some((p, a, q)) = paq_shape(g.order()) else {
        return pre(format!("order {} is not of the form p^a q", g.order()));
    };
    if !is_minimal_non_cyclic(l) {
        return pre(format!("{} is not minimal non-cyclic", g.name()));
    }
    if is_prime_generated(g) {
        return pre(format!("{} is prime generated", g.name()));
    }
    let (p, q) = (p as usize, q as usize);
    let of_order =
        |k: usize| -> Vec<SubgroupId> { l.ids().filter(|&i| l.order_of(i) == k).collect() };

    let n = (1..a)
        .rev()
        .find(|&i| of_order(p.pow(i)).len() == 1)
        .ok_or_else(|| contra("no unique subgroup of order p^i with i < a".into()))?;
    let p_n = of_order(p.pow(n))[0];
    let candidates = of_order(p.pow(n + 1));
    let &[xs, ys, ..] = candidates.as_slice() else {
        return Err(contra(format!(
            "fewer than two subgroups of order {}^{}",
            p,
            n + 1
        )));
    };
    let x = cyclic_generator(l, xs)?;
    let y = cyclic_generator(l, ys)?;
    let xy = g.mul(x, y);
    let ord = g.element_order(xy);
    let third: SubgroupId = match split_order(ord, p, q) {
        Some((i, 0)) if i <= n => {
            return Err(contra(format!("|xy| = {p}^{i} with i <= N = {n}")));
        }
        Some((t, 1)) if t <= n => {
            let c_order = p.pow(a - 1) * q;
            l.ids()
                .find(|&i| l.order_of(i) == c_order && l.is_cyclic_subgroup(i))
                .ok_or_else(|| contra(format!("no cyclic subgroup of order {c_order}")))?
        }
        Some(_) => l
            .id_of(&g.cyclic_subgroup(xy))
            .ok_or_else(|| contra("<xy> missing from the lattice".into()))?,
        None => return Err(contra(format!("|xy| = {ord} is not p^i q^j with j <= 1"))),
    };
    let w = DiamondWitness::from_ids(l, l.top(), [xs, ys, third], p_n, Some((0, 1)));
    if w.flags.maximal_pair != Some((0, 1)) {
        return Err(contra("P_N is not maximal in both <x> and <y>".into()));
    }
    checked(g, w)
}

/// `Some((i, j))` with `k = p^i q^j`, `j <= 1`.
fn split_order(mut k: usize, p: usize, q: usize) -> Option<(u32, u32)> {
    let mut j = 0;
    if k.is_multiple_of(q) {
        k /= q;
        j = 1;
    }
    let f = factorize(k as u64);
    match f.as_slice() {
        [] => Some((0, j)),
        [(r, i)] if *r as usize == p => Some((*i, j)),
        _ => None,
    }
}

fn cyclic_generator(l: &SubgroupLattice, id: SubgroupId) -> Result<Element, PatternError> {
    let s = l.subgroup(id);
    s.elements()
        .find(|&e| l.group().element_order(e) == s.order())
        .ok_or_else(|| {
            PatternError::InternalContradiction(format!(
                "subgroup of order {} is not cyclic",
                s.order()
            ))
        })
}

fn checked(g: &FiniteGroup, w: DiamondWitness) -> Result<DiamondWitness, PatternError> {
    w.validate(g)
        .map_err(|e| PatternError::InternalContradiction(e.to_string()))?;
    if !w.is_cyclic_diamond() {
        return Err(PatternError::InternalContradiction(
            "constructed diamond is not a cyclic-diamond".into(),
        ));
    }
    Ok(w)
}
